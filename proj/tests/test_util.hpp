#pragma once

#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "cod/dataset.hpp"
#include "cod/graph.hpp"
#include "oracles.hpp"

namespace testutil {

inline oracle::Points random_points(std::mt19937_64 &rng, std::size_t n, std::size_t dims) {
  std::normal_distribution<double> g(0.0, 1.0);
  oracle::Points pts(n, std::vector<double>(dims));
  for (auto &p : pts)
    for (double &x : p) x = g(rng);
  return pts;
}

inline cod::LabeledDataset make_dataset(const oracle::Points &pts, const std::vector<int> &labels) {
  cod::LabeledDataset ds;
  ds.features = cod::Matrix(pts.size(), pts.empty() ? 0 : pts.front().size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts[i].size(); ++j) ds.features(i, j) = pts[i][j];
  ds.labels = labels;
  ds.n_classes = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
  for (int c = 1; c <= ds.n_classes; ++c) ds.class_names.push_back("c" + std::to_string(c));
  return ds;
}

inline cod::LabeledDataset make_dataset(const oracle::Points &pts) {
  return make_dataset(pts, std::vector<int>(pts.size(), 1));
}

/// Graph on n nodes with the given edges, weighted 1/(d+1) from `dm`
/// (all-zero distances by default).
inline cod::WeightedGraph graph_from_edges(std::size_t n,
                                           const std::vector<std::pair<std::size_t, std::size_t>> &edges,
                                           std::shared_ptr<const cod::DistanceMatrix> dm = nullptr) {
  if (!dm) dm = std::make_shared<const cod::DistanceMatrix>(n);
  cod::WeightedGraph g(n, n > 0 ? n - 1 : 0, dm);
  for (auto [i, j] : edges) g.add_edge(i, j, 1.0 / ((*dm)(i, j) + 1.0));
  return g;
}

inline cod::WeightedGraph graph_from_adjacency(const oracle::Adjacency &adj) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < adj.size(); ++i)
    for (std::size_t j = i + 1; j < adj.size(); ++j)
      if (adj[i][j]) edges.emplace_back(i, j);
  return graph_from_edges(adj.size(), edges);
}

inline oracle::Adjacency random_adjacency(std::mt19937_64 &rng, std::size_t n, double density) {
  std::bernoulli_distribution coin(density);
  oracle::Adjacency adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) adj[i][j] = adj[j][i] = coin(rng);
  return adj;
}

inline std::filesystem::path temp_path(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / "cod_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace testutil
