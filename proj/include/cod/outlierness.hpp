#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "cod/community.hpp"
#include "cod/dataset.hpp"

namespace cod {

using Point2 = std::array<double, 2>;

/// Per-sample coordinates in the outlierness square. `phi` is log-rescaled,
/// `raw_phi` is not. Samples outside every community sit at (0, 0) in both
/// and carry attribute_flag.
struct OutliernessFeatures {
  std::vector<Point2> phi;
  std::vector<Point2> raw_phi;
  std::vector<bool> attribute_flag;

  std::size_t size() const { return phi.size(); }
};

struct DiversityParams {
  /// Upper bound on the normalised label entropy of a homogeneous community.
  double entropy_tol = 0.2;
};

std::vector<double> label_probs(const std::vector<std::size_t> &members, const std::vector<int> &labels,
                                int n_classes);

/// Label proportions p_i of community c (index i-1 for label i).
std::vector<double> community_label_probs(std::size_t c, const CommunitySet &cs,
                                          const std::vector<int> &labels, int n_classes);

/// Natural-log entropy of the probabilities, divided by log(n_classes) so
/// it lies in [0, 1]. Zero for a single class.
double normalized_entropy(const std::vector<double> &probs, int n_classes);

double community_entropy(std::size_t c, const CommunitySet &cs, const std::vector<int> &labels,
                         int n_classes);

/// Share of v's communities whose entropy is at most the tolerance.
double phi1(std::size_t v, const CommunitySet &cs, const std::vector<int> &labels, int n_classes,
            const DiversityParams &params);

/// Mean over v's communities of the fraction of other members labelled like v.
double phi2(std::size_t v, const CommunitySet &cs, const std::vector<int> &labels);

/// 1 / (1 - ln x), with f(0) = 0.
double log_rescale(double x);

OutliernessFeatures outlierness_features(const LabeledDataset &ds, const CommunitySet &cs,
                                         const DiversityParams &params);

/// Coordinate-wise minimum over views of the rescaled features. A sample
/// flagged in any view is flagged in the result.
OutliernessFeatures combine_views(const std::vector<OutliernessFeatures> &per_view);

/// CSV `sample_index,phi1,phi2,attribute_flag`.
void write_features(std::ostream &out, const OutliernessFeatures &features);

}  // namespace cod
