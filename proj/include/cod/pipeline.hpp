#pragma once

#include <cstddef>

#include "cod/community.hpp"
#include "cod/dataset.hpp"
#include "cod/graph.hpp"
#include "cod/outlierness.hpp"

namespace cod {

struct PipelineParams {
  std::size_t k = 40;
  std::size_t q = 8;
  double percentile = 75.0;
  double entropy_tol = 0.2;
  bool normalize = true;
  std::size_t threads = 1;

  void validate() const;
};

/// Intermediate products of one single-view run, kept for inspection.
struct PipelineResult {
  WeightedGraph graph;
  CommunitySet communities;
  OutliernessFeatures features;
};

/// Graph, communities and outlierness features for one view. k is clamped to
/// N-1 for small datasets.
PipelineResult run_pipeline(const LabeledDataset &ds, const PipelineParams &params);

OutliernessFeatures single_view_outlierness(const LabeledDataset &ds, const PipelineParams &params);

/// Runs the single-view pipeline on each view and takes the coordinate-wise
/// minimum of the rescaled features.
OutliernessFeatures multiview_outlierness(const MultiViewDataset &mv, const PipelineParams &params);

}  // namespace cod
