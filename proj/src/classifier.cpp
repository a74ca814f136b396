#include "cod/classifier.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cod/simulate.hpp"

namespace cod {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + e^z) without overflow.
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double linear(const std::array<double, 3> &w, const Point2 &x) { return w[0] * x[0] + w[1] * x[1] + w[2]; }

void check_training_input(const std::vector<Point2> &features, const std::vector<bool> &truth) {
  if (features.size() != truth.size()) throw Error("features and truth differ in length");
  const auto outliers = static_cast<std::size_t>(std::count(truth.begin(), truth.end(), true));
  if (outliers == 0 || outliers == truth.size()) throw Error("training needs both classes");
}

}  // namespace

double OutlierModel::score(const Point2 &x) const { return sigmoid(linear(weights, x)); }

double log_loss(const std::array<double, 3> &weights, const std::vector<Point2> &features,
                const std::vector<bool> &truth) {
  double total = 0.0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const double z = linear(weights, features[i]);
    total += softplus(z) - (truth[i] ? z : 0.0);
  }
  return total / static_cast<double>(features.size());
}

std::array<double, 3> log_loss_gradient(const std::array<double, 3> &weights,
                                        const std::vector<Point2> &features, const std::vector<bool> &truth) {
  std::array<double, 3> grad{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < features.size(); ++i) {
    const double r = sigmoid(linear(weights, features[i])) - (truth[i] ? 1.0 : 0.0);
    grad[0] += r * features[i][0];
    grad[1] += r * features[i][1];
    grad[2] += r;
  }
  for (double &g : grad) g /= static_cast<double>(features.size());
  return grad;
}

OutlierModel train_outlier_model(const std::vector<Point2> &features, const std::vector<bool> &truth,
                                 std::uint64_t seed, const TrainingOptions &options,
                                 std::vector<double> *loss_history) {
  check_training_input(features, truth);
  for (const auto &x : features)
    if (!(x[0] >= 0.0 && x[0] <= 1.0 && x[1] >= 0.0 && x[1] <= 1.0))
      throw Error("training features must lie in the unit square");

  OutlierModel model;
  model.kind = "logistic";
  model.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> init(-0.01, 0.01);
  for (double &w : model.weights) w = init(rng);

  std::size_t iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    if (loss_history) loss_history->push_back(log_loss(model.weights, features, truth));
    const auto grad = log_loss_gradient(model.weights, features, truth);
    const double norm = std::sqrt(grad[0] * grad[0] + grad[1] * grad[1] + grad[2] * grad[2]);
    if (norm < options.gradient_tol) break;
    for (std::size_t j = 0; j < 3; ++j) model.weights[j] -= options.step * grad[j];
  }
  model.iterations = iter;
  model.loss = log_loss(model.weights, features, truth);
  if (loss_history) loss_history->push_back(model.loss);
  for (double w : model.weights)
    if (!std::isfinite(w)) throw Error("training diverged");
  return model;
}

std::vector<double> score_outlierness(const OutlierModel &model, const std::vector<Point2> &features) {
  if (!model.trained()) throw Error("outlier model is not trained");
  std::vector<double> scores(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) scores[i] = model.score(features[i]);
  return scores;
}

std::vector<bool> detect(const OutlierModel &model, const OutliernessFeatures &features, double threshold) {
  const std::vector<double> scores = score_outlierness(model, features.phi);
  std::vector<bool> flags(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i)
    flags[i] = features.attribute_flag[i] || scores[i] >= threshold;
  return flags;
}

LabeledDataset gaussian_blobs(std::size_t n_samples, std::size_t n_dims, std::size_t n_classes,
                              double separation, std::uint64_t seed) {
  if (n_samples < n_classes || n_dims == 0 || n_classes == 0) throw Error("invalid blob parameters");
  // Class c sits on axis c mod n_dims, alternating sign, scaled so that two
  // centres on different axes are `separation` apart.
  std::vector<std::vector<double>> centers(n_classes, std::vector<double>(n_dims, 0.0));
  for (std::size_t c = 0; c < n_classes; ++c) {
    const std::size_t axis = c % n_dims;
    const std::size_t lap = c / n_dims;
    const double sign = lap % 2 == 0 ? 1.0 : -1.0;
    const double scale = 1.0 + static_cast<double>(lap / 2);
    centers[c][axis] = sign * scale * separation / std::sqrt(2.0);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  LabeledDataset ds;
  ds.features = Matrix(n_samples, n_dims);
  ds.n_classes = static_cast<int>(n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) ds.class_names.push_back("c" + std::to_string(c + 1));
  for (std::size_t j = 0; j < n_dims; ++j) ds.feature_names.push_back("x" + std::to_string(j));
  for (std::size_t i = 0; i < n_samples; ++i) {
    const std::size_t c = i % n_classes;
    ds.labels.push_back(static_cast<int>(c) + 1);
    for (std::size_t j = 0; j < n_dims; ++j) ds.features(i, j) = centers[c][j] + noise(rng);
  }
  return ds;
}

TrainingCorpus build_training_corpus(std::uint64_t seed, const PipelineParams &params,
                                     const CorpusOptions &options) {
  std::mt19937_64 rng(seed);
  auto between = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  std::uniform_real_distribution<double> separation(options.min_separation, options.max_separation);
  const auto &names = config_names();

  TrainingCorpus corpus;
  for (std::size_t m = 0; m < options.n_datasets; ++m) {
    const std::size_t classes = between(options.min_classes, options.max_classes);
    const std::size_t dims = between(options.min_dims, options.max_dims);
    const std::size_t samples = between(options.min_samples, options.max_samples);
    const double sep = separation(rng);
    const std::uint64_t data_seed = rng();
    const LabeledDataset clean = gaussian_blobs(samples, dims, classes, sep, data_seed);
    const OutlierConfig config = named_config(names[m % names.size()], rng());
    const CorruptedDataset instance = build_experiment_instance(clean, config);
    const OutliernessFeatures features = single_view_outlierness(instance.data, params);
    for (std::size_t i = 0; i < features.size(); ++i) {
      corpus.features.push_back(features.phi[i]);
      corpus.truth.push_back(instance.truth[i] != OutlierTag::none);
    }
  }
  std::ostringstream desc;
  desc << "synthetic gaussian blobs: " << options.n_datasets << " datasets, " << options.min_classes << "-"
       << options.max_classes << " classes, " << options.min_dims << "-" << options.max_dims << " dims, "
       << options.min_samples << "-" << options.max_samples << " samples, seed " << seed;
  corpus.description = desc.str();
  return corpus;
}

OutlierModel train_default_model(std::uint64_t seed, const PipelineParams &params, TrainingCorpus *corpus_out) {
  TrainingCorpus corpus = build_training_corpus(seed, params);
  OutlierModel model = train_outlier_model(corpus.features, corpus.truth, seed);
  model.corpus = corpus.description;
  if (corpus_out) *corpus_out = std::move(corpus);
  return model;
}

std::string model_to_json(const OutlierModel &model) {
  if (!model.trained()) throw Error("cannot serialise an untrained model");
  nlohmann::ordered_json j;
  j["kind"] = model.kind;
  j["weights"] = {model.weights[0], model.weights[1], model.weights[2]};
  j["seed"] = model.seed;
  j["corpus"] = model.corpus;
  j["loss"] = model.loss;
  j["iterations"] = model.iterations;
  return j.dump(2) + "\n";
}

OutlierModel model_from_json(const std::string &text) {
  OutlierModel model;
  try {
    const auto j = nlohmann::json::parse(text);
    model.kind = j.at("kind").get<std::string>();
    const auto &w = j.at("weights");
    if (!w.is_array() || w.size() != 3) throw Error("model weights must be an array of 3 numbers");
    for (std::size_t i = 0; i < 3; ++i) model.weights[i] = w[i].get<double>();
    model.seed = j.value("seed", std::uint64_t{0});
    model.corpus = j.value("corpus", std::string{});
    model.loss = j.value("loss", 0.0);
    model.iterations = j.value("iterations", std::size_t{0});
  } catch (const nlohmann::json::exception &e) {
    throw Error(std::string("invalid model file: ") + e.what());
  }
  if (model.kind != "logistic") throw Error("unsupported model kind '" + model.kind + "'");
  for (double w : model.weights)
    if (!std::isfinite(w)) throw Error("model has non-finite weights");
  return model;
}

void save_model(const std::filesystem::path &path, const OutlierModel &model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model '" + path.string() + "'");
  out << model_to_json(model);
  if (!out) throw Error("failed writing model '" + path.string() + "'");
}

OutlierModel load_model(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace cod
