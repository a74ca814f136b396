#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cod/dataset.hpp"

namespace cod {

enum class ViewsMode { single, per_view };

/// Fractions of class and attribute outliers to inject.
struct OutlierConfig {
  std::string name;
  double class_frac = 0.0;
  double attr_frac = 0.0;
  std::uint64_t seed = 0;
  ViewsMode views_mode = ViewsMode::single;

  void validate() const;
};

/// Named configurations "C-A": C percent class outliers, A percent attribute
/// outliers. Accepts 8-2, 5-5, 2-8, 0-8, 0-5 and 0-2.
OutlierConfig named_config(const std::string &name, std::uint64_t seed = 0);
const std::vector<std::string> &config_names();

struct CorruptedDataset {
  LabeledDataset data;
  std::vector<OutlierTag> truth;
};

struct CorruptedMultiView {
  MultiViewDataset data;
  std::vector<OutlierTag> truth;
};

/// Replaces every feature of floor(fraction * N) random samples by a draw
/// uniform on [min - 2r, min - r] u [max + r, max + 2r], with min, max and
/// range r taken per feature from the clean data (r = 1 for a constant
/// feature).
CorruptedDataset inject_attribute_outliers(const LabeledDataset &ds, double fraction, std::uint64_t seed);
CorruptedMultiView inject_attribute_outliers(const MultiViewDataset &mv, double fraction,
                                             std::uint64_t seed);

/// Exchanges the labels of floor(fraction * N) samples taken in pairs from
/// two distinct random classes. An odd leftover sample moves to a random
/// other class. For multi-view data each exchange happens in a random
/// non-empty subset of views.
CorruptedDataset inject_class_outliers(const LabeledDataset &ds, double fraction, std::uint64_t seed);
CorruptedMultiView inject_class_outliers(const MultiViewDataset &mv, double fraction, std::uint64_t seed);

/// Class injection followed by attribute injection on disjoint samples.
CorruptedDataset build_experiment_instance(const LabeledDataset &ds, const OutlierConfig &config);
CorruptedMultiView build_experiment_instance(const MultiViewDataset &mv, const OutlierConfig &config);

/// Number of samples a fraction selects: floor(fraction * n), robust to the
/// representation error of decimal fractions.
std::size_t outlier_count(double fraction, std::size_t n);

}  // namespace cod
