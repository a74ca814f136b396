#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cod/classifier.hpp"
#include "cod/pipeline.hpp"
#include "cod/simulate.hpp"

namespace cod {

/// Mann-Whitney AUC: probability that a random outlier scores above a random
/// inlier, ties counting one half. O(N log N).
double auc(const std::vector<double> &scores, const std::vector<bool> &truth);

struct ExperimentReport {
  std::string dataset;
  std::string config;
  std::size_t views = 1;
  std::size_t n_repeats = 0;
  double auc_mean = 0.0;
  double auc_std = 0.0;  // sample standard deviation, 0 for one repeat
  std::vector<double> aucs;
  PipelineParams params;
  std::uint64_t seed_base = 0;
};

struct ExperimentOptions {
  std::string dataset_name = "dataset";
  std::size_t n_repeats = 50;
  std::uint64_t seed_base = 0;
  /// Repeats run concurrently on this many workers; each repeat's own
  /// pipeline runs single-threaded.
  std::size_t threads = 1;
};

/// Repeat r injects `config` with seed seed_base + r, runs the pipeline,
/// scores with `model` and records the AUC against the injected truth.
ExperimentReport run_experiment(const LabeledDataset &clean, const OutlierConfig &config,
                                const PipelineParams &params, const OutlierModel &model,
                                const ExperimentOptions &options);

/// As run_experiment with the features split into n_views random disjoint
/// views per repeat (split seed seed_base + r) and per-view injection.
ExperimentReport run_multiview_experiment(const LabeledDataset &clean, std::size_t n_views,
                                          const OutlierConfig &config, const PipelineParams &params,
                                          const OutlierModel &model, const ExperimentOptions &options);

/// Rows `dataset,config,views,repeat,auc`, with a header.
void write_report_csv(std::ostream &out, const std::vector<ExperimentReport> &reports);

/// Aligned text table with one line per report.
void write_summary(std::ostream &out, const std::vector<ExperimentReport> &reports);

}  // namespace cod
