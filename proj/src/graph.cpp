#include "cod/graph.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace cod {

DistanceMatrix pairwise_distances(const Matrix &features, Metric metric, std::size_t threads) {
  if (metric != Metric::euclidean) throw Error("unsupported metric");
  const std::size_t n = features.rows();
  DistanceMatrix dm(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto a = features.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto b = features.row(j);
      double ss = 0.0;
      for (std::size_t c = 0; c < a.size(); ++c) {
        const double diff = a[c] - b[c];
        ss += diff * diff;
      }
      const double d = std::sqrt(ss);
      dm(i, j) = d;
      dm(j, i) = d;
    }
  });
  return dm;
}

NeighborLists knn_sets(const DistanceMatrix &dm, std::size_t k, std::size_t threads) {
  const std::size_t n = dm.size();
  if (k < 1 || k + 1 > n)
    throw Error("k must be in [1, N-1]; got k=" + std::to_string(k) + " for N=" + std::to_string(n));
  NeighborLists out(n);
  parallel_for(n, threads, [&](std::size_t i) {
    std::vector<std::size_t> others;
    others.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) others.push_back(j);
    const auto row = dm.row(i);
    auto closer = [&](std::size_t a, std::size_t b) {
      return row[a] < row[b] || (row[a] == row[b] && a < b);
    };
    std::partial_sort(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(k), others.end(),
                      closer);
    others.resize(k);
    out[i] = std::move(others);
  });
  return out;
}

WeightedGraph::WeightedGraph(std::size_t n_nodes, std::size_t k,
                             std::shared_ptr<const DistanceMatrix> distances)
    : k_(k), adjacency_(n_nodes), distances_(std::move(distances)) {}

void WeightedGraph::add_edge(std::size_t i, std::size_t j, double weight) {
  if (i == j) throw Error("self-loops are not allowed");
  auto insert = [](std::vector<Neighbor> &list, std::size_t node, double w) {
    auto it = std::lower_bound(list.begin(), list.end(), node,
                               [](const Neighbor &nb, std::size_t v) { return nb.node < v; });
    if (it != list.end() && it->node == node)
      it->weight = w;
    else
      list.insert(it, Neighbor{node, w});
  };
  insert(adjacency_[i], j, weight);
  insert(adjacency_[j], i, weight);
}

std::optional<double> WeightedGraph::weight(std::size_t i, std::size_t j) const {
  const auto &list = adjacency_[i];
  auto it = std::lower_bound(list.begin(), list.end(), j,
                             [](const Neighbor &nb, std::size_t v) { return nb.node < v; });
  if (it == list.end() || it->node != j) return std::nullopt;
  return it->weight;
}

bool WeightedGraph::has_edge(std::size_t i, std::size_t j) const { return weight(i, j).has_value(); }

std::vector<Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < adjacency_.size(); ++i)
    for (const auto &nb : adjacency_[i])
      if (nb.node > i) out.push_back({i, nb.node, nb.weight});
  return out;
}

std::size_t WeightedGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto &list : adjacency_) twice += list.size();
  return twice / 2;
}

WeightedGraph mutual_knn_graph(std::shared_ptr<const DistanceMatrix> dm, std::size_t k,
                               std::size_t threads) {
  const NeighborLists knn = knn_sets(*dm, k, threads);
  const std::size_t n = dm->size();
  std::vector<std::vector<std::size_t>> sorted(n);
  for (std::size_t i = 0; i < n; ++i) {
    sorted[i] = knn[i];
    std::sort(sorted[i].begin(), sorted[i].end());
  }
  WeightedGraph g(n, k, dm);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : sorted[i]) {
      if (j <= i) continue;
      if (std::binary_search(sorted[j].begin(), sorted[j].end(), i))
        g.add_edge(i, j, 1.0 / ((*dm)(i, j) + 1.0));
    }
  }
  return g;
}

WeightedGraph mutual_knn_graph(const LabeledDataset &ds, std::size_t k, std::size_t threads) {
  return mutual_knn_graph(std::make_shared<const DistanceMatrix>(pairwise_distances(ds, Metric::euclidean, threads)),
                          k, threads);
}

void write_edge_list(std::ostream &out, const WeightedGraph &g) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(12);
  for (const Edge &e : g.edges()) out << e.i << ' ' << e.j << ' ' << e.weight << '\n';
  out.flags(flags);
  out.precision(precision);
}

}  // namespace cod
