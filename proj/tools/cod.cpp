// Command-line front end: ingest | inject | features | train-model | detect | evaluate.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cod/classifier.hpp"
#include "cod/eval.hpp"
#include "cod/pipeline.hpp"
#include "cod/simulate.hpp"

namespace {

struct RunConfig {
  std::string input;
  std::string label_col;  // empty: last column
  std::size_t k = 40;
  std::size_t q = 8;
  double percentile = 75.0;
  double entropy_tol = 0.2;
  bool no_normalize = false;
  std::uint64_t seed = 0;
  std::size_t views = 1;
  std::size_t threads = cod::default_thread_count();
  std::string model;
  std::string out;
  std::string config_file;

  // command specific
  std::string outlier_config;
  std::size_t repeats = 50;
  double threshold = 0.5;
  std::string graph_out;
  std::string communities_out;

  cod::PipelineParams pipeline() const {
    cod::PipelineParams p;
    p.k = k;
    p.q = q;
    p.percentile = percentile;
    p.entropy_tol = entropy_tol;
    p.normalize = !no_normalize;
    p.threads = threads;
    return p;
  }
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Fills every option the user did not pass on the command line from a flat
/// JSON object keyed by flag name.
void apply_config_file(CLI::App &cmd, RunConfig &cfg) {
  if (cfg.config_file.empty()) return;
  std::ifstream in(cfg.config_file);
  if (!in) throw cod::Error("cannot open config file '" + cfg.config_file + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw cod::Error(std::string("invalid config file: ") + e.what());
  }
  if (!j.is_object()) throw cod::Error("config file must hold a JSON object");
  for (const auto &[key, value] : j.items()) {
    CLI::Option *opt = nullptr;
    try {
      opt = cmd.get_option("--" + key);
    } catch (const CLI::OptionNotFound &) {
      continue;  // keys for other subcommands
    }
    if (opt->count() > 0) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) opt->add_result("true");
    } else if (value.is_string()) {
      opt->add_result(value.get<std::string>());
    } else if (value.is_number()) {
      opt->add_result(value.dump());
    } else {
      throw cod::Error("config key '" + key + "' must be a scalar");
    }
    opt->run_callback();
  }
}

cod::LabelColumn label_column(const RunConfig &cfg, const std::string &path) {
  if (!cfg.label_col.empty()) return cod::LabelColumn::parse(cfg.label_col);
  std::ifstream in(path);
  std::string header;
  if (!in || !std::getline(in, header)) throw cod::Error("cannot read header of '" + path + "'");
  // Default: the last column that is not ground truth.
  std::vector<std::string> names;
  std::stringstream ss(header);
  for (std::string cell; std::getline(ss, cell, ',');) names.push_back(cell);
  std::size_t idx = names.size() - 1;
  while (idx > 0 && names[idx].find("__outlier") != std::string::npos) --idx;
  cod::LabelColumn col;
  col.index = idx;
  return col;
}

cod::LabeledDataset load_input(const RunConfig &cfg, std::vector<cod::OutlierTag> *truth = nullptr) {
  if (cfg.input.empty()) throw UsageError("--input is required");
  return cod::load_dataset(cfg.input, label_column(cfg, cfg.input), truth);
}

/// Opens --out, or stdout when it is empty.
class Output {
public:
  explicit Output(const std::string &path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw cod::Error("cannot write '" + path + "'");
    }
  }
  std::ostream &stream() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw cod::Error("write failed");
  }

private:
  std::ofstream file_;
};

cod::OutliernessFeatures compute_features(const cod::LabeledDataset &ds, const RunConfig &cfg) {
  if (cfg.views > 1) return cod::multiview_outlierness(cod::split_views(ds, cfg.views, cfg.seed), cfg.pipeline());
  return cod::single_view_outlierness(ds, cfg.pipeline());
}

int cmd_ingest(const RunConfig &cfg) {
  cod::LabeledDataset ds = load_input(cfg);
  if (!cfg.no_normalize) ds = cod::normalize_features(ds);
  Output out(cfg.out);
  cod::write_dataset(out.stream(), ds);
  out.finish();
  std::cerr << "samples=" << ds.size() << " features=" << ds.dims() << " classes=" << ds.n_classes << '\n';
  return 0;
}

int cmd_inject(const RunConfig &cfg) {
  const cod::LabeledDataset ds = load_input(cfg);
  const cod::CorruptedDataset corrupted =
      cod::build_experiment_instance(ds, cod::named_config(cfg.outlier_config, cfg.seed));
  Output out(cfg.out);
  cod::write_dataset(out.stream(), corrupted.data, &corrupted.truth);
  out.finish();
  return 0;
}

int cmd_features(const RunConfig &cfg) {
  const cod::LabeledDataset ds = load_input(cfg);
  cod::OutliernessFeatures features;
  if (cfg.views > 1) {
    if (!cfg.graph_out.empty() || !cfg.communities_out.empty())
      throw UsageError("--graph-out and --communities-out need a single view");
    features = compute_features(ds, cfg);
  } else {
    const cod::PipelineResult result = cod::run_pipeline(ds, cfg.pipeline());
    if (!cfg.graph_out.empty()) {
      Output g(cfg.graph_out);
      cod::write_edge_list(g.stream(), result.graph);
      g.finish();
    }
    if (!cfg.communities_out.empty()) {
      Output c(cfg.communities_out);
      cod::write_communities(c.stream(), result.communities);
      c.finish();
    }
    features = result.features;
  }
  Output out(cfg.out);
  cod::write_features(out.stream(), features);
  out.finish();
  return 0;
}

int cmd_train_model(const RunConfig &cfg) {
  cod::TrainingCorpus corpus;
  cod::PipelineParams params = cfg.pipeline();
  params.threads = 1;
  const cod::OutlierModel model = cod::train_default_model(cfg.seed, params, &corpus);
  const double corpus_auc = cod::auc(cod::score_outlierness(model, corpus.features), corpus.truth);
  if (cfg.out.empty()) {
    std::cout << cod::model_to_json(model);
  } else {
    cod::save_model(cfg.out, model);
  }
  std::cerr << "corpus samples=" << corpus.features.size() << " corpus_auc=" << corpus_auc << '\n';
  return 0;
}

int cmd_detect(const RunConfig &cfg) {
  if (cfg.model.empty()) throw UsageError("--model is required");
  const cod::OutlierModel model = cod::load_model(cfg.model);
  const cod::LabeledDataset ds = load_input(cfg);
  const cod::OutliernessFeatures features = compute_features(ds, cfg);
  const std::vector<double> scores = cod::score_outlierness(model, features);
  const std::vector<bool> flags = cod::detect(model, features, cfg.threshold);
  Output out(cfg.out);
  std::ostream &os = out.stream();
  os << std::setprecision(17) << "sample_index,phi1,phi2,score,flag\n";
  for (std::size_t i = 0; i < features.size(); ++i)
    os << i << ',' << features.phi[i][0] << ',' << features.phi[i][1] << ',' << scores[i] << ','
       << (flags[i] ? 1 : 0) << '\n';
  out.finish();
  return 0;
}

int cmd_evaluate(const RunConfig &cfg) {
  const cod::LabeledDataset ds = load_input(cfg);
  const cod::OutlierConfig config = cod::named_config(cfg.outlier_config, cfg.seed);
  cod::PipelineParams params = cfg.pipeline();
  params.threads = 1;
  const cod::OutlierModel model =
      cfg.model.empty() ? cod::train_default_model(cfg.seed, params) : cod::load_model(cfg.model);

  cod::ExperimentOptions options;
  options.dataset_name = std::filesystem::path(cfg.input).stem().string();
  options.n_repeats = cfg.repeats;
  options.seed_base = cfg.seed;
  options.threads = cfg.threads;
  const cod::ExperimentReport report =
      cfg.views > 1 ? cod::run_multiview_experiment(ds, cfg.views, config, params, model, options)
                    : cod::run_experiment(ds, config, params, model, options);
  if (!cfg.out.empty()) {
    Output out(cfg.out);
    cod::write_report_csv(out.stream(), {report});
    out.finish();
  }
  cod::write_summary(std::cout, {report});
  return 0;
}

void add_common(CLI::App *cmd, RunConfig &cfg) {
  cmd->add_option("--input", cfg.input, "CSV dataset with a header row");
  cmd->add_option("--label-col", cfg.label_col, "label column name or 0-based index (default: last)");
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--out", cfg.out, "output file (default: stdout)");
  cmd->add_option("--config-file", cfg.config_file, "flat JSON file with defaults for these flags");
}

void add_pipeline(CLI::App *cmd, RunConfig &cfg) {
  cmd->add_option("--k", cfg.k, "mutual kNN neighbour count")->check(CLI::PositiveNumber);
  cmd->add_option("--q", cfg.q, "clique size for percolation")->check(CLI::Range(2, 1000));
  cmd->add_option("--percentile", cfg.percentile, "edge-weight percentile for delta")
      ->check(CLI::Range(0.0, 100.0));
  cmd->add_option("--entropy-tol", cfg.entropy_tol, "normalised entropy tolerance T")->check(CLI::Range(0.0, 1.0));
  cmd->add_flag("--no-normalize", cfg.no_normalize, "skip z-score normalisation");
  cmd->add_option("--views", cfg.views, "number of disjoint feature views")->check(CLI::Range(1, 64));
  cmd->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Community-based outlier detection"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto *ingest = app.add_subcommand("ingest", "load, validate and normalise a dataset");
  add_common(ingest, cfg);
  ingest->add_flag("--no-normalize", cfg.no_normalize, "write features unchanged");

  auto *inject = app.add_subcommand("inject", "inject class and attribute outliers");
  add_common(inject, cfg);
  inject->add_option("--config", cfg.outlier_config, "outlier configuration")
      ->required()
      ->check(CLI::IsMember(cod::config_names()));

  auto *features = app.add_subcommand("features", "map samples to the outlierness square");
  add_common(features, cfg);
  add_pipeline(features, cfg);
  features->add_option("--graph-out", cfg.graph_out, "write the mkNN edge list");
  features->add_option("--communities-out", cfg.communities_out, "write the communities");

  auto *train = app.add_subcommand("train-model", "train the classifier on a synthetic corpus");
  add_common(train, cfg);
  add_pipeline(train, cfg);

  auto *detect = app.add_subcommand("detect", "score and flag outliers");
  add_common(detect, cfg);
  add_pipeline(detect, cfg);
  detect->add_option("--model", cfg.model, "model JSON file");
  detect->add_option("--threshold", cfg.threshold, "score threshold")->check(CLI::Range(0.0, 1.0));

  auto *evaluate = app.add_subcommand("evaluate", "repeated injection and AUC evaluation");
  add_common(evaluate, cfg);
  add_pipeline(evaluate, cfg);
  evaluate->add_option("--model", cfg.model, "model JSON file (default: train one with --seed)");
  evaluate->add_option("--config", cfg.outlier_config, "outlier configuration")
      ->required()
      ->check(CLI::IsMember(cod::config_names()));
  evaluate->add_option("--repeats", cfg.repeats, "number of repeats")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
    CLI::App *cmd = app.get_subcommands().front();
    apply_config_file(*cmd, cfg);
    if (cmd == ingest) return cmd_ingest(cfg);
    if (cmd == inject) return cmd_inject(cfg);
    if (cmd == features) return cmd_features(cfg);
    if (cmd == train) return cmd_train_model(cfg);
    if (cmd == detect) return cmd_detect(cfg);
    return cmd_evaluate(cfg);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
