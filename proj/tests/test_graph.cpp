#include <doctest.h>

#include <sstream>

#include "cod/graph.hpp"
#include "test_util.hpp"

using namespace cod;

namespace {

std::map<std::pair<std::size_t, std::size_t>, double> edge_map(const WeightedGraph &g) {
  std::map<std::pair<std::size_t, std::size_t>, double> out;
  for (const Edge &e : g.edges()) out[{e.i, e.j}] = e.weight;
  return out;
}

WeightedGraph graph_on(const oracle::Points &pts, std::size_t k) {
  return mutual_knn_graph(testutil::make_dataset(pts), k);
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("euclidean distance") {
  const DistanceMatrix dm = pairwise_distances(testutil::make_dataset({{0.0, 0.0}, {3.0, 4.0}}));
  CHECK(dm(0, 1) == doctest::Approx(5.0));
  CHECK(dm(1, 0) == doctest::Approx(5.0));
  CHECK(dm(0, 0) == 0.0);
}

TEST_CASE("distances agree with the dense reference, single and multi-threaded") {
  std::mt19937_64 rng(1);
  const oracle::Points pts = testutil::random_points(rng, 20, 5);
  const oracle::Dense ref = oracle::distances(pts);
  const auto ds = testutil::make_dataset(pts);
  for (std::size_t threads : {1u, 3u}) {
    const DistanceMatrix dm = pairwise_distances(ds, Metric::euclidean, threads);
    for (std::size_t i = 0; i < 20; ++i)
      for (std::size_t j = 0; j < 20; ++j) {
        CHECK(dm(i, j) == doctest::Approx(ref[i][j]).epsilon(1e-12));
        CHECK(dm(i, j) == dm(j, i));
      }
  }
}

TEST_CASE("kNN on a line") {
  const DistanceMatrix dm = pairwise_distances(testutil::make_dataset({{0.0}, {1.0}, {2.0}, {10.0}}));
  const NeighborLists nn = knn_sets(dm, 2);
  CHECK(nn[0] == std::vector<std::size_t>{1, 2});
  CHECK(nn[1] == std::vector<std::size_t>{0, 2});
  CHECK(nn[3] == std::vector<std::size_t>{2, 1});
}

TEST_CASE("equal distances break ties by lower index") {
  const DistanceMatrix dm = pairwise_distances(testutil::make_dataset({{0.0}, {-1.0}, {1.0}, {5.0}}));
  CHECK(knn_sets(dm, 1)[0] == std::vector<std::size_t>{1});
  CHECK(knn_sets(dm, 2)[0] == std::vector<std::size_t>{1, 2});
}

TEST_CASE("k out of range") {
  const DistanceMatrix dm = pairwise_distances(testutil::make_dataset({{0.0}, {1.0}, {2.0}}));
  CHECK_THROWS_AS(knn_sets(dm, 0), Error);
  CHECK_THROWS_AS(knn_sets(dm, 3), Error);
}

TEST_CASE("kNN sets agree with the reference on random data") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const oracle::Points pts = testutil::random_points(rng, 50, 3);
    const DistanceMatrix dm = pairwise_distances(testutil::make_dataset(pts));
    for (std::size_t k : {1u, 5u, 10u}) CHECK(knn_sets(dm, k) == oracle::knn(oracle::distances(pts), k));
  }
}

TEST_CASE("mutual kNN on a line") {
  const WeightedGraph g = graph_on({{0.0}, {1.0}, {2.0}, {10.0}}, 1);
  CHECK(g.edge_count() == 1);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK(*g.weight(0, 1) == doctest::Approx(0.5));
  CHECK(!g.weight(2, 3).has_value());
  CHECK(g.degree(3) == 0);
}

TEST_CASE("coincident points get weight one") {
  const WeightedGraph g = graph_on({{1.0, 1.0}, {1.0, 1.0}, {9.0, 9.0}}, 1);
  CHECK(*g.weight(0, 1) == 1.0);
}

TEST_CASE("mutual kNN matches the reference on random data") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10 + trial * 2;
    const oracle::Points pts = testutil::random_points(rng, n, 1 + trial % 4);
    const std::size_t k = 1 + trial % 7;
    const WeightedGraph g = mutual_knn_graph(testutil::make_dataset(pts), k, 1 + trial % 2);
    const auto ref = oracle::mutual_knn(oracle::distances(pts), k);
    const auto got = edge_map(g);
    REQUIRE(got.size() == ref.size());
    for (const auto &[e, w] : ref) {
      REQUIRE(got.count(e) == 1);
      CHECK(got.at(e) == doctest::Approx(w).epsilon(1e-12));
    }
    for (std::size_t v = 0; v < n; ++v) {
      CHECK(g.degree(v) <= k);
      for (std::size_t a = 1; a < g.neighbors(v).size(); ++a)
        CHECK(g.neighbors(v)[a - 1].node < g.neighbors(v)[a].node);
    }
  }
}

TEST_CASE("edge sets grow with k") {
  std::mt19937_64 rng(4);
  const oracle::Points pts = testutil::random_points(rng, 40, 3);
  auto previous = edge_map(graph_on(pts, 1));
  for (std::size_t k = 2; k < 15; ++k) {
    const auto current = edge_map(graph_on(pts, k));
    for (const auto &[e, w] : previous) CHECK(current.count(e) == 1);
    previous = current;
  }
}

TEST_CASE("self-loops are rejected") {
  WeightedGraph g(3, 1, std::make_shared<const DistanceMatrix>(3));
  CHECK_THROWS_AS(g.add_edge(1, 1, 1.0), Error);
}

TEST_CASE("edge list export") {
  const WeightedGraph g = graph_on({{0.0}, {1.0}, {2.0}, {10.0}}, 1);
  std::ostringstream out;
  write_edge_list(out, g);
  CHECK(out.str() == "0 1 0.5\n");
}

}  // TEST_SUITE
