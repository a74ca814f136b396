#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cod/common.hpp"

namespace cod {

/// Ground-truth tag attached to a sample by outlier injection.
enum class OutlierTag { none, attribute, klass };

std::string to_string(OutlierTag tag);
OutlierTag parse_outlier_tag(const std::string &text);

/// N samples with n real features and class labels in 1..n_classes.
struct LabeledDataset {
  Matrix features;
  std::vector<int> labels;
  int n_classes = 0;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;  // class_names[label - 1]

  std::size_t size() const { return features.rows(); }
  std::size_t dims() const { return features.cols(); }

  /// Throws cod::Error when a structural invariant does not hold.
  void validate() const;
};

/// Disjoint feature blocks of one dataset. Labels are shared by all views on
/// construction; class-outlier injection may later diverge them per view.
struct MultiViewDataset {
  std::vector<LabeledDataset> views;
  std::vector<std::vector<std::size_t>> view_feature_indices;

  std::size_t size() const { return views.empty() ? 0 : views.front().size(); }
};

/// Selects the label column either by header name or by 0-based index.
struct LabelColumn {
  std::optional<std::string> name;
  std::size_t index = 0;

  /// All-digit text selects by index, anything else by name.
  static LabelColumn parse(const std::string &text);
};

/// Reads a CSV with a header row. A column named `__outlier` is treated as
/// ground truth and never as a feature; it is returned through `truth` when
/// requested.
LabeledDataset load_dataset(const std::filesystem::path &path, const LabelColumn &label_column,
                            std::vector<OutlierTag> *truth = nullptr);

LabeledDataset parse_dataset(std::istream &in, const LabelColumn &label_column,
                             std::vector<OutlierTag> *truth = nullptr);

/// Z-scores every column with the sample (n-1) standard deviation. Constant
/// columns become zero.
LabeledDataset normalize_features(const LabeledDataset &ds);

/// Shuffles the feature indices with `seed` and cuts them into n_views
/// contiguous blocks whose sizes differ by at most one.
MultiViewDataset split_views(const LabeledDataset &ds, std::size_t n_views, std::uint64_t seed);

/// Projects `ds` onto the given feature columns.
LabeledDataset select_features(const LabeledDataset &ds, const std::vector<std::size_t> &columns);

/// Writes the dataset in the loader's format; the label column is named
/// `label`. When truth is given an `__outlier` column is appended.
void write_dataset(std::ostream &out, const LabeledDataset &ds,
                   const std::vector<OutlierTag> *truth = nullptr);

}  // namespace cod
