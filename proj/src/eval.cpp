#include "cod/eval.hpp"

#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>

namespace cod {

double auc(const std::vector<double> &scores, const std::vector<bool> &truth) {
  if (scores.size() != truth.size()) throw Error("scores and truth differ in length");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Per tie group: positives beat every negative below and tie with the
  // negatives inside the group. Counts are doubled to stay integral.
  std::uint64_t twice_wins = 0;
  std::uint64_t negatives_below = 0;
  std::uint64_t positives = 0;
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start;
    std::uint64_t pos = 0, neg = 0;
    while (end < n && scores[order[end]] == scores[order[start]]) {
      (truth[order[end]] ? pos : neg) += 1;
      ++end;
    }
    twice_wins += pos * (2 * negatives_below + neg);
    negatives_below += neg;
    positives += pos;
    start = end;
  }
  if (positives == 0 || negatives_below == 0) throw Error("AUC needs both outliers and inliers");
  return static_cast<double>(twice_wins) / (2.0 * static_cast<double>(positives) *
                                            static_cast<double>(negatives_below));
}

namespace {

std::vector<bool> outlier_mask(const std::vector<OutlierTag> &truth) {
  std::vector<bool> mask(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) mask[i] = truth[i] != OutlierTag::none;
  return mask;
}

template <typename RepeatFn>
ExperimentReport run_repeats(const OutlierConfig &config, const PipelineParams &params,
                             const ExperimentOptions &options, std::size_t views, RepeatFn repeat) {
  if (options.n_repeats == 0) throw Error("at least one repeat is required");
  config.validate();
  params.validate();
  ExperimentReport report;
  report.dataset = options.dataset_name;
  report.config = config.name;
  report.views = views;
  report.n_repeats = options.n_repeats;
  report.params = params;
  report.seed_base = options.seed_base;
  report.aucs.assign(options.n_repeats, 0.0);
  parallel_for(options.n_repeats, options.threads,
               [&](std::size_t r) { report.aucs[r] = repeat(options.seed_base + r); });

  const double n = static_cast<double>(options.n_repeats);
  report.auc_mean = std::accumulate(report.aucs.begin(), report.aucs.end(), 0.0) / n;
  double ss = 0.0;
  for (double a : report.aucs) ss += (a - report.auc_mean) * (a - report.auc_mean);
  report.auc_std = options.n_repeats > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return report;
}

}  // namespace

ExperimentReport run_experiment(const LabeledDataset &clean, const OutlierConfig &config,
                                const PipelineParams &params, const OutlierModel &model,
                                const ExperimentOptions &options) {
  PipelineParams inner = params;
  inner.threads = 1;
  return run_repeats(config, params, options, 1, [&](std::uint64_t seed) {
    OutlierConfig c = config;
    c.seed = seed;
    const CorruptedDataset instance = build_experiment_instance(clean, c);
    const OutliernessFeatures features = single_view_outlierness(instance.data, inner);
    return auc(score_outlierness(model, features), outlier_mask(instance.truth));
  });
}

ExperimentReport run_multiview_experiment(const LabeledDataset &clean, std::size_t n_views,
                                          const OutlierConfig &config, const PipelineParams &params,
                                          const OutlierModel &model, const ExperimentOptions &options) {
  if (n_views < 2) throw Error("multi-view experiments need at least 2 views");
  PipelineParams inner = params;
  inner.threads = 1;
  return run_repeats(config, params, options, n_views, [&](std::uint64_t seed) {
    const MultiViewDataset mv = split_views(clean, n_views, seed);
    OutlierConfig c = config;
    c.seed = seed;
    c.views_mode = ViewsMode::per_view;
    const CorruptedMultiView instance = build_experiment_instance(mv, c);
    const OutliernessFeatures features = multiview_outlierness(instance.data, inner);
    return auc(score_outlierness(model, features), outlier_mask(instance.truth));
  });
}

void write_report_csv(std::ostream &out, const std::vector<ExperimentReport> &reports) {
  const auto precision = out.precision();
  out << std::setprecision(17) << "dataset,config,views,repeat,auc\n";
  for (const auto &report : reports)
    for (std::size_t r = 0; r < report.aucs.size(); ++r)
      out << report.dataset << ',' << report.config << ',' << report.views << ',' << r << ','
          << report.aucs[r] << '\n';
  out.precision(precision);
}

void write_summary(std::ostream &out, const std::vector<ExperimentReport> &reports) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::left << std::setw(16) << "dataset" << std::setw(8) << "config" << std::setw(7) << "views"
      << std::setw(9) << "repeats" << "auc (mean +- std)\n";
  out << std::fixed << std::setprecision(3);
  for (const auto &r : reports)
    out << std::left << std::setw(16) << r.dataset << std::setw(8) << r.config << std::setw(7) << r.views
        << std::setw(9) << r.n_repeats << r.auc_mean << " +- " << r.auc_std << '\n';
  out.flags(flags);
  out.precision(precision);
}

}  // namespace cod
