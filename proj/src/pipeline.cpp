#include "cod/pipeline.hpp"

namespace cod {

void PipelineParams::validate() const {
  if (k < 1) throw Error("k must be at least 1");
  if (q < 2) throw Error("q must be at least 2");
  if (!(percentile > 0.0 && percentile <= 100.0)) throw Error("percentile must be in (0, 100]");
  if (!(entropy_tol >= 0.0 && entropy_tol <= 1.0)) throw Error("entropy tolerance must be in [0, 1]");
}

PipelineResult run_pipeline(const LabeledDataset &ds, const PipelineParams &params) {
  params.validate();
  if (ds.size() < 2) throw Error("the pipeline needs at least 2 samples");
  const LabeledDataset prepared = params.normalize ? normalize_features(ds) : ds;
  const std::size_t k = std::min(params.k, ds.size() - 1);

  PipelineResult result;
  result.graph = mutual_knn_graph(prepared, k, params.threads);
  result.communities = detect_communities(result.graph, params.q, params.percentile, params.threads);
  result.features = outlierness_features(prepared, result.communities, {params.entropy_tol});
  return result;
}

OutliernessFeatures single_view_outlierness(const LabeledDataset &ds, const PipelineParams &params) {
  return run_pipeline(ds, params).features;
}

OutliernessFeatures multiview_outlierness(const MultiViewDataset &mv, const PipelineParams &params) {
  if (mv.views.size() < 2) throw Error("multi-view outlierness needs at least 2 views");
  std::vector<OutliernessFeatures> per_view;
  per_view.reserve(mv.views.size());
  for (const auto &view : mv.views) per_view.push_back(single_view_outlierness(view, params));
  return combine_views(per_view);
}

}  // namespace cod
