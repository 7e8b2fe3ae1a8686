#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pallor/ranking.hpp"

namespace pallor {

// Canonical order; grid-search ties resolve in enum order.
enum class ModelFamily {
  logistic_regression,
  linear_svm,
  k_nearest_neighbors,
  decision_forest,
  boosted_decision_tree,
};

std::string_view model_family_name(ModelFamily family);
std::optional<ModelFamily> model_family_from_name(std::string_view name);

struct ModelSpec {
  ModelFamily family = ModelFamily::logistic_regression;
  std::map<std::string, double> hyperparameters;
  std::uint64_t seed = 0;

  double param(const std::string& key, double fallback) const;
  std::string describe() const;
};

// Per-feature z-score transform frozen from training statistics.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;  // standard deviation floored at 1e-12
  bool identity = true;

  static Standardizer fit(const TrainingSet& data);
  static Standardizer none() { return Standardizer{}; }
  void apply(std::vector<double>& row) const;
};

// Family-specific fitted parameters. Scores are probability / affinity
// estimates in [0,1].
class FittedState {
 public:
  virtual ~FittedState() = default;
  virtual double score(std::span<const double> row) const = 0;
  virtual nlohmann::json to_json() const = 0;
  static std::shared_ptr<FittedState> from_json(ModelFamily family, const nlohmann::json& j);
};

struct Prediction {
  int label;     // score >= 0.5
  double score;  // [0,1]
};

class TrainedModel {
 public:
  ModelSpec spec;
  std::vector<int> selected_features;  // indices into the full vector; empty = all
  Standardizer standardizer;
  std::shared_ptr<const FittedState> state;
  std::size_t expected_input_size = 0;

  double score(std::span<const double> input) const;
  Prediction predict(std::span<const double> input) const;
};

Prediction predict(const TrainedModel& model, std::span<const double> input);

// Fits one model. Deterministic given spec.seed. Scale-sensitive families
// (logistic, SVM, kNN) are standardized internally; trees consume raw values.
TrainedModel train(const ModelSpec& spec, const TrainingSet& data);

// Trains on a column subset of `data`; the returned model consumes full-width
// vectors and gathers the subset itself.
TrainedModel train_on_subset(const ModelSpec& spec, const TrainingSet& data,
                             const std::vector<int>& feature_indices);

// Trains every grid point on `train_data`, evaluates the error rate on
// `validation`, and returns the argmin. Ties resolve by canonical family
// order, then grid-point order.
TrainedModel grid_search_select(const std::vector<ModelSpec>& grid,
                                const TrainingSet& train_data,
                                const TrainingSet& validation);

double validation_error(const TrainedModel& model, const TrainingSet& validation);

// The default hyper-parameter grids, in canonical order:
// logistic l2 {0.01, 0.1, 1}; SVM C {0.1, 1, 10}; kNN k {1, 3, 5};
// forest trees {16, 64} x depth {4, 8}; boosting rounds {50, 200} x
// depth {2, 3} at shrinkage 0.1.
std::vector<ModelSpec> default_model_grids(std::uint64_t seed);

// One small configuration per family, for quick runs and per-plane sweeps.
std::vector<ModelSpec> compact_model_grids(std::uint64_t seed);

nlohmann::json model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const nlohmann::json& j);

}  // namespace pallor
