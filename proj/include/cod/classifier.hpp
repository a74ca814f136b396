#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cod/outlierness.hpp"
#include "cod/pipeline.hpp"

namespace cod {

/// Logistic model on the outlierness square. weights = (w_phi1, w_phi2, bias);
/// the score is the probability of the outlier class.
struct OutlierModel {
  std::string kind;  // "logistic" once trained
  std::array<double, 3> weights{0.0, 0.0, 0.0};
  std::uint64_t seed = 0;
  std::string corpus;
  double loss = 0.0;
  std::size_t iterations = 0;

  bool trained() const { return kind == "logistic"; }
  double score(const Point2 &x) const;
};

struct TrainingOptions {
  std::size_t max_iterations = 10000;
  double gradient_tol = 1e-6;
  double step = 1.0;
};

/// Mean log-loss of the weights on (features, truth); truth true = outlier.
double log_loss(const std::array<double, 3> &weights, const std::vector<Point2> &features,
                const std::vector<bool> &truth);

std::array<double, 3> log_loss_gradient(const std::array<double, 3> &weights,
                                        const std::vector<Point2> &features, const std::vector<bool> &truth);

/// Full-batch gradient descent from a seeded start near zero; stops when the
/// gradient norm drops below gradient_tol or after max_iterations. When
/// loss_history is given it receives the loss before every step and at the end.
OutlierModel train_outlier_model(const std::vector<Point2> &features, const std::vector<bool> &truth,
                                 std::uint64_t seed, const TrainingOptions &options = {},
                                 std::vector<double> *loss_history = nullptr);

std::vector<double> score_outlierness(const OutlierModel &model, const std::vector<Point2> &features);

inline std::vector<double> score_outlierness(const OutlierModel &model, const OutliernessFeatures &features) {
  return score_outlierness(model, features.phi);
}

/// score >= threshold, or the sample lies in no community.
std::vector<bool> detect(const OutlierModel &model, const OutliernessFeatures &features,
                         double threshold = 0.5);

struct CorpusOptions {
  std::size_t n_datasets = 20;
  std::size_t min_classes = 2, max_classes = 5;
  std::size_t min_dims = 2, max_dims = 10;
  std::size_t min_samples = 100, max_samples = 500;
  /// Distance between class centres, in units of the within-class sigma.
  double min_separation = 8.0, max_separation = 15.0;
};

struct TrainingCorpus {
  std::vector<Point2> features;
  std::vector<bool> truth;
  std::string description;
};

/// Gaussian-blob datasets with injected outliers, mapped through the COD
/// pipeline. Dataset m uses the named outlier configurations in rotation.
LabeledDataset gaussian_blobs(std::size_t n_samples, std::size_t n_dims, std::size_t n_classes,
                              double separation, std::uint64_t seed);

TrainingCorpus build_training_corpus(std::uint64_t seed, const PipelineParams &params,
                                     const CorpusOptions &options = {});

/// Builds the synthetic corpus and fits a model on it.
OutlierModel train_default_model(std::uint64_t seed, const PipelineParams &params,
                                 TrainingCorpus *corpus_out = nullptr);

std::string model_to_json(const OutlierModel &model);
OutlierModel model_from_json(const std::string &text);
void save_model(const std::filesystem::path &path, const OutlierModel &model);
OutlierModel load_model(const std::filesystem::path &path);

}  // namespace cod
