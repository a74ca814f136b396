#include "cod/outlierness.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace cod {

std::vector<double> label_probs(const std::vector<std::size_t> &members, const std::vector<int> &labels,
                                int n_classes) {
  if (members.empty()) throw Error("empty community");
  std::vector<double> p(static_cast<std::size_t>(n_classes), 0.0);
  for (std::size_t v : members) p[static_cast<std::size_t>(labels[v] - 1)] += 1.0;
  for (double &x : p) x /= static_cast<double>(members.size());
  return p;
}

std::vector<double> community_label_probs(std::size_t c, const CommunitySet &cs,
                                          const std::vector<int> &labels, int n_classes) {
  return label_probs(cs[c].members, labels, n_classes);
}

double normalized_entropy(const std::vector<double> &probs, int n_classes) {
  if (n_classes <= 1) return 0.0;
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log(p);
  return std::clamp(h / std::log(static_cast<double>(n_classes)), 0.0, 1.0);
}

double community_entropy(std::size_t c, const CommunitySet &cs, const std::vector<int> &labels,
                         int n_classes) {
  return normalized_entropy(community_label_probs(c, cs, labels, n_classes), n_classes);
}

double phi1(std::size_t v, const CommunitySet &cs, const std::vector<int> &labels, int n_classes,
            const DiversityParams &params) {
  const auto &ids = cs.memberships(v);
  if (ids.empty()) throw Error("phi1: node " + std::to_string(v) + " is in no community");
  std::size_t homogeneous = 0;
  for (std::size_t c : ids)
    if (community_entropy(c, cs, labels, n_classes) <= params.entropy_tol) ++homogeneous;
  return static_cast<double>(homogeneous) / static_cast<double>(ids.size());
}

double phi2(std::size_t v, const CommunitySet &cs, const std::vector<int> &labels) {
  const auto &ids = cs.memberships(v);
  if (ids.empty()) throw Error("phi2: node " + std::to_string(v) + " is in no community");
  double sum = 0.0;
  for (std::size_t c : ids) {
    const auto &members = cs[c].members;
    if (members.size() < 2) throw Error("phi2: community with a single member");
    std::size_t same = 0;
    for (std::size_t w : members)
      if (w != v && labels[w] == labels[v]) ++same;
    sum += static_cast<double>(same) / static_cast<double>(members.size() - 1);
  }
  return sum / static_cast<double>(ids.size());
}

double log_rescale(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error("log_rescale: argument outside [0, 1]");
  if (x == 0.0) return 0.0;
  return 1.0 / (1.0 - std::log(x));
}

OutliernessFeatures outlierness_features(const LabeledDataset &ds, const CommunitySet &cs,
                                         const DiversityParams &params) {
  if (cs.n_nodes() != ds.size()) throw Error("community set does not match the dataset size");
  if (!(params.entropy_tol >= 0.0 && params.entropy_tol <= 1.0))
    throw Error("entropy tolerance must be in [0, 1]");

  std::vector<double> entropy(cs.size());
  for (std::size_t c = 0; c < cs.size(); ++c)
    entropy[c] = community_entropy(c, cs, ds.labels, ds.n_classes);

  const std::size_t n = ds.size();
  OutliernessFeatures out;
  out.phi.assign(n, {0.0, 0.0});
  out.raw_phi.assign(n, {0.0, 0.0});
  out.attribute_flag.assign(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    const auto &ids = cs.memberships(v);
    if (ids.empty()) {
      out.attribute_flag[v] = true;
      continue;
    }
    std::size_t homogeneous = 0;
    for (std::size_t c : ids)
      if (entropy[c] <= params.entropy_tol) ++homogeneous;
    const double p1 = static_cast<double>(homogeneous) / static_cast<double>(ids.size());
    const double p2 = phi2(v, cs, ds.labels);
    out.raw_phi[v] = {p1, p2};
    out.phi[v] = {log_rescale(p1), log_rescale(p2)};
  }
  return out;
}

OutliernessFeatures combine_views(const std::vector<OutliernessFeatures> &per_view) {
  if (per_view.empty()) throw Error("no views to combine");
  OutliernessFeatures out = per_view.front();
  for (std::size_t j = 1; j < per_view.size(); ++j) {
    const auto &view = per_view[j];
    if (view.size() != out.size()) throw Error("views disagree on sample count");
    for (std::size_t v = 0; v < out.size(); ++v) {
      for (std::size_t i = 0; i < 2; ++i) {
        out.phi[v][i] = std::min(out.phi[v][i], view.phi[v][i]);
        out.raw_phi[v][i] = std::min(out.raw_phi[v][i], view.raw_phi[v][i]);
      }
      if (view.attribute_flag[v]) out.attribute_flag[v] = true;
    }
  }
  return out;
}

void write_features(std::ostream &out, const OutliernessFeatures &features) {
  const auto precision = out.precision();
  out << std::setprecision(17) << "sample_index,phi1,phi2,attribute_flag\n";
  for (std::size_t v = 0; v < features.size(); ++v)
    out << v << ',' << features.phi[v][0] << ',' << features.phi[v][1] << ','
        << (features.attribute_flag[v] ? 1 : 0) << '\n';
  out.precision(precision);
}

}  // namespace cod
