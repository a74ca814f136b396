#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cod/outlierness.hpp"
#include "cod/pipeline.hpp"
#include "test_util.hpp"

using namespace cod;

namespace {

OutliernessFeatures features_of(std::vector<Point2> phi, std::vector<bool> flags = {}) {
  OutliernessFeatures f;
  f.phi = phi;
  f.raw_phi = phi;
  f.attribute_flag = flags.empty() ? std::vector<bool>(phi.size(), false) : flags;
  return f;
}

/// Three loose Gaussian clusters labelled by cluster, with a few labels flipped.
std::pair<oracle::Points, std::vector<int>> clustered(std::mt19937_64 &rng, std::size_t n) {
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  oracle::Points pts;
  std::vector<int> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const int c = static_cast<int>(i % 3);
    pts.push_back({4.0 * c + noise(rng), (c == 1 ? 4.0 : 0.0) + noise(rng), noise(rng)});
    labels.push_back(u(rng) < 0.1 ? 1 + (c + 1) % 3 : c + 1);
  }
  return {pts, labels};
}

}  // namespace

TEST_SUITE("outlierness") {

TEST_CASE("label proportions") {
  CHECK(label_probs({0, 1}, {2, 2}, 3) == std::vector<double>{0.0, 1.0, 0.0});
  CHECK(label_probs({0, 1}, {1, 2}, 3) == std::vector<double>{0.5, 0.5, 0.0});
  CHECK_THROWS_AS(label_probs({}, {1}, 1), Error);
}

TEST_CASE("normalized entropy") {
  CHECK(normalized_entropy({0.75, 0.25}, 2) == doctest::Approx(0.811278).epsilon(1e-5));
  CHECK(normalized_entropy({1.0, 0.0, 0.0}, 3) == 0.0);
  CHECK(normalized_entropy({0.5, 0.5}, 2) == doctest::Approx(1.0));
  CHECK(normalized_entropy({1.0 / 3, 1.0 / 3, 1.0 / 3}, 3) == doctest::Approx(1.0));
  CHECK(normalized_entropy({1.0}, 1) == 0.0);
}

TEST_CASE("homogeneity share") {
  // Node 0 sits in a pure community {0,1,2} and a mixed one {0,3,4,5}.
  const std::vector<int> labels{1, 1, 1, 1, 2, 2};
  const CommunitySet cs(6, {{0, 1, 2}, {0, 3, 4, 5}});
  const DiversityParams params{0.2};
  CHECK(phi1(0, cs, labels, 2, params) == doctest::Approx(0.5));
  CHECK(phi1(1, cs, labels, 2, params) == doctest::Approx(1.0));
  CHECK(phi1(4, cs, labels, 2, params) == doctest::Approx(0.0));
  CHECK(phi1(4, cs, labels, 2, DiversityParams{1.0}) == doctest::Approx(1.0));
}

TEST_CASE("label consistency") {
  SUBCASE("all neighbours agree") {
    const CommunitySet cs(3, {{0, 1, 2}});
    CHECK(phi2(0, cs, {1, 1, 1}) == doctest::Approx(1.0));
  }
  SUBCASE("none agree") {
    const CommunitySet cs(3, {{0, 1, 2}});
    CHECK(phi2(0, cs, {1, 2, 2}) == doctest::Approx(0.0));
  }
  SUBCASE("one of three agrees") {
    const CommunitySet cs(4, {{0, 1, 2, 3}});
    CHECK(phi2(0, cs, {1, 1, 2, 2}) == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("averaged over communities") {
    const CommunitySet cs(5, {{0, 1, 2}, {0, 3, 4}});
    CHECK(phi2(0, cs, {1, 1, 1, 2, 2}) == doctest::Approx(0.5));
  }
  SUBCASE("outside every community") {
    const CommunitySet cs(4, {{0, 1, 2}});
    CHECK_THROWS_AS(phi2(3, cs, {1, 1, 1, 1}), Error);
  }
}

TEST_CASE("log rescale") {
  CHECK(log_rescale(1.0) == 1.0);
  CHECK(log_rescale(0.0) == 0.0);
  CHECK(log_rescale(std::exp(-1.0)) == doctest::Approx(0.5));
  CHECK(log_rescale(0.01) > 0.01);
  CHECK_THROWS_AS(log_rescale(1.5), Error);
  CHECK_THROWS_AS(log_rescale(-0.1), Error);
  double previous = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double y = log_rescale(i / 100.0);
    CHECK(y > previous);
    previous = y;
  }
}

TEST_CASE("feature map") {
  LabeledDataset ds = testutil::make_dataset({{0.0}, {0.0}, {0.0}, {0.0}, {0.0}, {0.0}, {9.0}},
                                             {1, 1, 1, 1, 1, 2, 1});
  ds.n_classes = 2;
  SUBCASE("pure community and isolated node") {
    const CommunitySet cs(7, {{0, 1, 2}});
    const auto f = outlierness_features(ds, cs, {0.2});
    CHECK(f.phi[0] == Point2{1.0, 1.0});
    CHECK(!f.attribute_flag[0]);
    CHECK(f.phi[6] == Point2{0.0, 0.0});
    CHECK(f.raw_phi[6] == Point2{0.0, 0.0});
    CHECK(f.attribute_flag[6]);
  }
  SUBCASE("single mislabelled member of a low-entropy community") {
    const CommunitySet cs(7, {{0, 1, 2, 3, 4, 5}});
    const auto f = outlierness_features(ds, cs, {0.7});
    CHECK(f.raw_phi[5][0] == 1.0);
    CHECK(f.raw_phi[5][1] == 0.0);
    CHECK(f.phi[5] == Point2{1.0, 0.0});
    CHECK(f.raw_phi[0][1] == doctest::Approx(0.8));
    CHECK(f.phi[0][1] == doctest::Approx(1.0 / (1.0 - std::log(0.8))));
  }
  SUBCASE("size mismatch") {
    CHECK_THROWS_AS(outlierness_features(ds, CommunitySet(3, {{0, 1, 2}}), {0.2}), Error);
  }
}

TEST_CASE("combining views") {
  SUBCASE("coordinate-wise minimum") {
    const auto a = features_of({{0.8, 0.6}});
    const auto b = features_of({{1.0, 0.9}});
    CHECK(combine_views({a, b}).phi[0] == Point2{0.8, 0.6});
    const auto c = features_of({{0.6, 0.95}});
    CHECK(combine_views({b, c}).phi[0] == Point2{0.6, 0.9});
  }
  SUBCASE("flag in any view") {
    const auto a = features_of({{0.8, 0.6}, {1.0, 1.0}});
    const auto b = features_of({{0.0, 0.0}, {1.0, 1.0}}, {true, false});
    const auto m = combine_views({a, b});
    CHECK(m.phi[0] == Point2{0.0, 0.0});
    CHECK(m.attribute_flag[0]);
    CHECK(!m.attribute_flag[1]);
  }
  SUBCASE("identical views reproduce the single view") {
    std::mt19937_64 rng(21);
    auto [pts, labels] = clustered(rng, 45);
    LabeledDataset ds = testutil::make_dataset(pts, labels);
    PipelineParams params;
    params.k = 10;
    params.q = 3;
    const auto single = single_view_outlierness(ds, params);
    MultiViewDataset mv;
    mv.views = {ds, ds};
    mv.view_feature_indices = {{0, 1, 2}, {0, 1, 2}};
    const auto multi = multiview_outlierness(mv, params);
    CHECK(multi.phi == single.phi);
    CHECK(multi.attribute_flag == single.attribute_flag);
  }
  SUBCASE("mismatched views") {
    CHECK_THROWS_AS(combine_views({features_of({{1.0, 1.0}}), features_of({{1.0, 1.0}, {1.0, 1.0}})}), Error);
    CHECK_THROWS_AS(combine_views({}), Error);
  }
}

TEST_CASE("feature export") {
  std::ostringstream out;
  write_features(out, features_of({{1.0, 0.5}, {0.0, 0.0}}, {false, true}));
  CHECK(out.str() == "sample_index,phi1,phi2,attribute_flag\n0,1,0.5,0\n1,0,0,1\n");
}

TEST_CASE("pipeline agrees with the dense reference") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 15 + static_cast<std::size_t>(trial) % 16;
    auto [pts, labels] = clustered(rng, n);
    LabeledDataset ds = testutil::make_dataset(pts, labels);
    ds.n_classes = 3;
    PipelineParams params;
    params.k = 4 + static_cast<std::size_t>(trial) % 5;
    params.q = 3 + static_cast<std::size_t>(trial) % 2;
    params.percentile = trial % 3 == 0 ? 50.0 : 75.0;
    params.entropy_tol = trial % 2 == 0 ? 0.2 : 0.6;
    params.normalize = false;
    const PipelineResult result = run_pipeline(ds, params);
    const oracle::PhiResult ref =
        oracle::phi(pts, labels, 3, params.k, params.q, params.percentile, params.entropy_tol);

    std::set<std::vector<std::size_t>> got, expected(ref.communities.begin(), ref.communities.end());
    for (const auto &c : result.communities.communities()) got.insert(c.members);
    CHECK(got == expected);
    for (std::size_t v = 0; v < n; ++v) {
      CHECK(result.features.attribute_flag[v] == ref.isolated[v]);
      CHECK(result.features.phi[v][0] == doctest::Approx(ref.phi[v][0]).epsilon(1e-12));
      CHECK(result.features.phi[v][1] == doctest::Approx(ref.phi[v][1]).epsilon(1e-12));
    }
  }
}

}  // TEST_SUITE
