#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "cod/common.hpp"
#include "cod/dataset.hpp"

namespace cod {

/// Symmetric N x N matrix of pairwise distances with a zero diagonal.
/// Stored densely; intended for datasets up to a few tens of thousands of rows.
class DistanceMatrix {
public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  double &operator()(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {d_.data() + i * n_, n_}; }

private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

enum class Metric { euclidean };

DistanceMatrix pairwise_distances(const Matrix &features, Metric metric = Metric::euclidean,
                                  std::size_t threads = 1);

inline DistanceMatrix pairwise_distances(const LabeledDataset &ds, Metric metric = Metric::euclidean,
                                         std::size_t threads = 1) {
  return pairwise_distances(ds.features, metric, threads);
}

using NeighborLists = std::vector<std::vector<std::size_t>>;

/// The k nearest other nodes of every node, nearest first. Equal distances
/// are ordered by node index.
NeighborLists knn_sets(const DistanceMatrix &dm, std::size_t k, std::size_t threads = 1);

struct Neighbor {
  std::size_t node;
  double weight;
};

struct Edge {
  std::size_t i;
  std::size_t j;
  double weight;
};

/// Mutual k-nearest-neighbour graph. Edge weights are 1 / (d + 1).
class WeightedGraph {
public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t n_nodes, std::size_t k, std::shared_ptr<const DistanceMatrix> distances);

  std::size_t n_nodes() const { return adjacency_.size(); }
  std::size_t k() const { return k_; }

  /// Neighbours sorted by node index.
  const std::vector<Neighbor> &neighbors(std::size_t v) const { return adjacency_[v]; }
  std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }
  bool has_edge(std::size_t i, std::size_t j) const;
  std::optional<double> weight(std::size_t i, std::size_t j) const;

  /// Every edge once with i < j, in lexicographic order.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  const DistanceMatrix &distances() const { return *distances_; }
  std::shared_ptr<const DistanceMatrix> shared_distances() const { return distances_; }

  /// Adds the undirected edge (i, j). Used by construction and tests.
  void add_edge(std::size_t i, std::size_t j, double weight);

private:
  std::size_t k_ = 0;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::shared_ptr<const DistanceMatrix> distances_;
};

WeightedGraph mutual_knn_graph(std::shared_ptr<const DistanceMatrix> dm, std::size_t k,
                               std::size_t threads = 1);

WeightedGraph mutual_knn_graph(const LabeledDataset &ds, std::size_t k, std::size_t threads = 1);

/// Debug export: one `i j weight` line per edge (i < j), 12 significant digits.
void write_edge_list(std::ostream &out, const WeightedGraph &g);

}  // namespace cod
