#include "pallor/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace pallor {
namespace {

using nlohmann::json;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void require_samples(const TrainingSet& data) {
  if (data.sample_count() == 0 || data.feature_count() == 0) {
    throw Error(ErrorCode::degenerate_data, "training set is empty");
  }
}

void require_both_classes(const TrainingSet& data, const char* family) {
  if (!data.has_both_classes()) {
    throw Error(ErrorCode::degenerate_data,
                std::string(family) + " requires both classes in the training data");
  }
}

// ---------------------------------------------------------------------------
// Linear models
// ---------------------------------------------------------------------------

class LinearState final : public FittedState {
 public:
  std::vector<double> weights;
  double bias = 0.0;

  double score(std::span<const double> row) const override {
    double z = bias;
    for (std::size_t i = 0; i < weights.size(); ++i) z += weights[i] * row[i];
    return sigmoid(z);
  }

  json to_json() const override {
    return json{{"weights", weights}, {"bias", bias}};
  }
};

std::shared_ptr<FittedState> fit_logistic(const ModelSpec& spec, const TrainingSet& data) {
  require_both_classes(data, "logistic regression");
  const double l2 = spec.param("l2", 0.1);
  const std::size_t n = data.sample_count();
  const std::size_t d = data.feature_count();

  auto state = std::make_shared<LinearState>();
  state->weights.assign(d, 0.0);
  double& bias = state->bias;
  std::vector<double>& w = state->weights;

  auto loss = [&](const std::vector<double>& wt, double bt) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double z = bt;
      for (std::size_t f = 0; f < d; ++f) z += wt[f] * data.features[i][f];
      // log(1 + exp(-m)) with the stable branch, m = +-z
      const double m = data.labels[i] ? z : -z;
      total += m > 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
    }
    double reg = 0.0;
    for (double v : wt) reg += v * v;
    return total / n + 0.5 * l2 * reg;
  };

  std::vector<double> grad(d);
  std::vector<double> trial_w(d);
  double lr = 1.0;
  double current_loss = loss(w, bias);
  const int max_iterations = 10000;
  for (int iter = 0; iter < max_iterations; ++iter) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_bias = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double z = bias;
      for (std::size_t f = 0; f < d; ++f) z += w[f] * data.features[i][f];
      const double err = sigmoid(z) - data.labels[i];
      for (std::size_t f = 0; f < d; ++f) grad[f] += err * data.features[i][f];
      grad_bias += err;
    }
    double max_grad = std::abs(grad_bias / n);
    for (std::size_t f = 0; f < d; ++f) {
      grad[f] = grad[f] / n + l2 * w[f];
      max_grad = std::max(max_grad, std::abs(grad[f]));
    }
    grad_bias /= n;
    if (max_grad < 1e-6) break;

    // Backtracking step on the full-batch gradient.
    bool stepped = false;
    for (int halving = 0; halving < 60; ++halving) {
      for (std::size_t f = 0; f < d; ++f) trial_w[f] = w[f] - lr * grad[f];
      const double trial_bias = bias - lr * grad_bias;
      const double trial_loss = loss(trial_w, trial_bias);
      if (trial_loss <= current_loss) {
        w = trial_w;
        bias = trial_bias;
        current_loss = trial_loss;
        lr = std::min(lr * 1.2, 1e3);
        stepped = true;
        break;
      }
      lr *= 0.5;
    }
    if (!stepped) break;
  }
  return state;
}

std::shared_ptr<FittedState> fit_svm(const ModelSpec& spec, const TrainingSet& data) {
  require_both_classes(data, "linear SVM");
  const double c = spec.param("c", 1.0);
  const std::size_t n = data.sample_count();
  const std::size_t d = data.feature_count();
  const double lambda = 1.0 / (c * static_cast<double>(n));

  auto state = std::make_shared<LinearState>();
  state->weights.assign(d, 0.0);
  std::vector<double>& w = state->weights;
  double& bias = state->bias;

  // Full-batch subgradient descent with the 1/(lambda t) schedule.
  const int iterations = 2000;
  std::vector<double> grad(d);
  for (int t = 1; t <= iterations; ++t) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_bias = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double y = data.labels[i] ? 1.0 : -1.0;
      double z = bias;
      for (std::size_t f = 0; f < d; ++f) z += w[f] * data.features[i][f];
      if (y * z < 1.0) {
        for (std::size_t f = 0; f < d; ++f) grad[f] -= y * data.features[i][f];
        grad_bias -= y;
      }
    }
    const double lr = 1.0 / (lambda * t);
    for (std::size_t f = 0; f < d; ++f) {
      w[f] -= lr * (lambda * w[f] + grad[f] / n);
    }
    bias -= lr * grad_bias / n;
  }
  return state;
}

// ---------------------------------------------------------------------------
// k-nearest neighbors
// ---------------------------------------------------------------------------

class KnnState final : public FittedState {
 public:
  int k = 1;
  std::vector<std::vector<double>> points;
  std::vector<int> labels;

  double score(std::span<const double> row) const override {
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      double d2 = 0.0;
      for (std::size_t f = 0; f < points[i].size(); ++f) {
        const double diff = points[i][f] - row[f];
        d2 += diff * diff;
      }
      dist.push_back({d2, i});
    }
    // Distance ties resolve to the lower sample index.
    std::sort(dist.begin(), dist.end());
    int positives = 0;
    for (int i = 0; i < k; ++i) positives += labels[dist[i].second];
    return static_cast<double>(positives) / k;
  }

  json to_json() const override {
    return json{{"k", k}, {"points", points}, {"labels", labels}};
  }
};

std::shared_ptr<FittedState> fit_knn(const ModelSpec& spec, const TrainingSet& data) {
  const int k = static_cast<int>(spec.param("k", 3.0));
  if (k < 1 || static_cast<std::size_t>(k) > data.sample_count()) {
    throw Error(ErrorCode::degenerate_data, "kNN needs 1 <= k <= sample count");
  }
  auto state = std::make_shared<KnnState>();
  state->k = k;
  state->points = data.features;
  state->labels = data.labels;
  return state;
}

// ---------------------------------------------------------------------------
// CART trees (shared by the forest and the booster)
// ---------------------------------------------------------------------------

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  double value = 0.0;
  int left = -1;
  int right = -1;
};

struct Tree {
  std::vector<TreeNode> nodes;

  double evaluate(std::span<const double> row) const {
    int at = 0;
    while (nodes[at].feature >= 0) {
      at = row[nodes[at].feature] < nodes[at].threshold ? nodes[at].left : nodes[at].right;
    }
    return nodes[at].value;
  }
};

json tree_to_json(const Tree& tree) {
  json nodes = json::array();
  for (const TreeNode& n : tree.nodes) {
    nodes.push_back({{"f", n.feature}, {"t", n.threshold}, {"v", n.value},
                     {"l", n.left}, {"r", n.right}});
  }
  return nodes;
}

Tree tree_from_json(const json& j) {
  Tree tree;
  for (const json& n : j) {
    tree.nodes.push_back({n.at("f").get<int>(), n.at("t").get<double>(),
                          n.at("v").get<double>(), n.at("l").get<int>(),
                          n.at("r").get<int>()});
  }
  return tree;
}

// Least-squares regression tree. For 0/1 targets the squared-error criterion
// orders splits identically to Gini impurity. Nodes with positive impurity
// split on the best (feature, threshold) candidate, first candidate on ties,
// so patterns with zero first-level gain (XOR) still split while depth
// remains. Leaf values are mean(target), or sum(target)/sum(hessian) when
// hessians are supplied (Newton step for boosting).
class TreeBuilder {
 public:
  TreeBuilder(const std::vector<std::vector<double>>& x, const std::vector<double>& targets,
              const std::vector<double>* hessians, int max_depth)
      : x_(x), targets_(targets), hessians_(hessians), max_depth_(max_depth) {}

  Tree build(const std::vector<int>& samples) {
    tree_.nodes.clear();
    grow(samples, 0);
    return std::move(tree_);
  }

 private:
  static constexpr double kHessianFloor = 1e-12;

  double leaf_value(const std::vector<int>& samples) const {
    double num = 0.0;
    double den = 0.0;
    for (int i : samples) {
      num += targets_[i];
      den += hessians_ ? (*hessians_)[i] : 1.0;
    }
    return num / std::max(den, kHessianFloor);
  }

  int grow(const std::vector<int>& samples, int depth) {
    const int node_index = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back(TreeNode{});

    double sum = 0.0, sum_sq = 0.0;
    for (int i : samples) {
      sum += targets_[i];
      sum_sq += targets_[i] * targets_[i];
    }
    const double n = static_cast<double>(samples.size());
    const double sse = sum_sq - sum * sum / n;

    if (depth >= max_depth_ || samples.size() < 2 || sse <= 1e-15) {
      tree_.nodes[node_index].value = leaf_value(samples);
      return node_index;
    }

    int best_feature = -1;
    double best_threshold = 0.0;
    double best_score = std::numeric_limits<double>::infinity();
    const std::size_t feature_count = x_[0].size();
    std::vector<std::pair<double, double>> column(samples.size());  // (value, target)
    for (std::size_t f = 0; f < feature_count; ++f) {
      for (std::size_t i = 0; i < samples.size(); ++i) {
        column[i] = {x_[samples[i]][f], targets_[samples[i]]};
      }
      std::sort(column.begin(), column.end());
      double left_sum = 0.0, left_sq = 0.0;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        left_sum += column[i].second;
        left_sq += column[i].second * column[i].second;
        if (column[i].first == column[i + 1].first) continue;
        const double nl = static_cast<double>(i + 1);
        const double nr = n - nl;
        const double right_sum = sum - left_sum;
        const double right_sq = sum_sq - left_sq;
        const double score = (left_sq - left_sum * left_sum / nl) +
                             (right_sq - right_sum * right_sum / nr);
        if (score < best_score) {
          best_score = score;
          best_feature = static_cast<int>(f);
          best_threshold = (column[i].first + column[i + 1].first) / 2.0;
        }
      }
    }

    if (best_feature < 0) {
      tree_.nodes[node_index].value = leaf_value(samples);
      return node_index;
    }

    std::vector<int> left, right;
    for (int i : samples) {
      (x_[i][best_feature] < best_threshold ? left : right).push_back(i);
    }
    if (left.empty() || right.empty()) {
      tree_.nodes[node_index].value = leaf_value(samples);
      return node_index;
    }

    tree_.nodes[node_index].feature = best_feature;
    tree_.nodes[node_index].threshold = best_threshold;
    const int left_index = grow(left, depth + 1);
    const int right_index = grow(right, depth + 1);
    tree_.nodes[node_index].left = left_index;
    tree_.nodes[node_index].right = right_index;
    return node_index;
  }

  const std::vector<std::vector<double>>& x_;
  const std::vector<double>& targets_;
  const std::vector<double>* hessians_;
  int max_depth_;
  Tree tree_;
};

// ---------------------------------------------------------------------------
// Decision forest
// ---------------------------------------------------------------------------

class ForestState final : public FittedState {
 public:
  std::vector<Tree> trees;

  double score(std::span<const double> row) const override {
    double total = 0.0;
    for (const Tree& tree : trees) total += tree.evaluate(row);
    return total / trees.size();
  }

  json to_json() const override {
    json arr = json::array();
    for (const Tree& tree : trees) arr.push_back(tree_to_json(tree));
    return json{{"trees", arr}};
  }
};

std::shared_ptr<FittedState> fit_forest(const ModelSpec& spec, const TrainingSet& data) {
  const int tree_count = static_cast<int>(spec.param("trees", 16.0));
  const int depth = static_cast<int>(spec.param("depth", 4.0));
  if (tree_count < 1 || depth < 1) {
    throw Error(ErrorCode::degenerate_data, "forest needs trees >= 1 and depth >= 1");
  }
  const std::size_t n = data.sample_count();
  std::vector<double> targets(n);
  for (std::size_t i = 0; i < n; ++i) targets[i] = data.labels[i];

  auto state = std::make_shared<ForestState>();
  std::mt19937 rng(static_cast<std::uint32_t>(spec.seed));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  TreeBuilder builder(data.features, targets, nullptr, depth);
  for (int t = 0; t < tree_count; ++t) {
    std::vector<int> bag(n);
    for (std::size_t i = 0; i < n; ++i) bag[i] = static_cast<int>(pick(rng));
    state->trees.push_back(builder.build(bag));
  }
  return state;
}

// ---------------------------------------------------------------------------
// Gradient-boosted trees on logistic loss
// ---------------------------------------------------------------------------

class BoostedState final : public FittedState {
 public:
  double base_logit = 0.0;
  double shrinkage = 0.1;
  std::vector<Tree> trees;

  double score(std::span<const double> row) const override {
    double logit = base_logit;
    for (const Tree& tree : trees) logit += shrinkage * tree.evaluate(row);
    return sigmoid(logit);
  }

  json to_json() const override {
    json arr = json::array();
    for (const Tree& tree : trees) arr.push_back(tree_to_json(tree));
    return json{{"base_logit", base_logit}, {"shrinkage", shrinkage}, {"trees", arr}};
  }
};

std::shared_ptr<FittedState> fit_boosted(const ModelSpec& spec, const TrainingSet& data) {
  require_both_classes(data, "boosted trees");
  const int rounds = static_cast<int>(spec.param("rounds", 50.0));
  const int depth = static_cast<int>(spec.param("depth", 2.0));
  const double shrinkage = spec.param("shrinkage", 0.1);
  if (rounds < 1 || depth < 1 || shrinkage <= 0.0) {
    throw Error(ErrorCode::degenerate_data, "invalid boosting parameters");
  }

  const std::size_t n = data.sample_count();
  double positives = 0.0;
  for (int label : data.labels) positives += label;
  const double prior = positives / n;

  auto state = std::make_shared<BoostedState>();
  state->base_logit = std::log(prior / (1.0 - prior));
  state->shrinkage = shrinkage;

  std::vector<double> logits(n, state->base_logit);
  std::vector<double> residuals(n);
  std::vector<double> hessians(n);
  std::vector<int> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);

  for (int round = 0; round < rounds; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(logits[i]);
      residuals[i] = data.labels[i] - p;
      hessians[i] = p * (1.0 - p);
    }
    TreeBuilder builder(data.features, residuals, &hessians, depth);
    Tree tree = builder.build(all);
    for (std::size_t i = 0; i < n; ++i) {
      logits[i] += shrinkage * tree.evaluate(data.features[i]);
    }
    state->trees.push_back(std::move(tree));
  }
  return state;
}

}  // namespace

std::string_view model_family_name(ModelFamily family) {
  switch (family) {
    case ModelFamily::logistic_regression: return "logistic_regression";
    case ModelFamily::linear_svm: return "linear_svm";
    case ModelFamily::k_nearest_neighbors: return "k_nearest_neighbors";
    case ModelFamily::decision_forest: return "decision_forest";
    case ModelFamily::boosted_decision_tree: return "boosted_decision_tree";
  }
  return "unknown";
}

std::optional<ModelFamily> model_family_from_name(std::string_view name) {
  for (ModelFamily f : {ModelFamily::logistic_regression, ModelFamily::linear_svm,
                        ModelFamily::k_nearest_neighbors, ModelFamily::decision_forest,
                        ModelFamily::boosted_decision_tree}) {
    if (model_family_name(f) == name) return f;
  }
  return std::nullopt;
}

double ModelSpec::param(const std::string& key, double fallback) const {
  const auto it = hyperparameters.find(key);
  return it == hyperparameters.end() ? fallback : it->second;
}

std::string ModelSpec::describe() const {
  std::string out(model_family_name(family));
  for (const auto& [key, value] : hyperparameters) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), " %s=%g", key.c_str(), value);
    out += buf;
  }
  return out;
}

Standardizer Standardizer::fit(const TrainingSet& data) {
  Standardizer s;
  s.identity = false;
  const std::size_t d = data.feature_count();
  const std::size_t n = data.sample_count();
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 1.0);
  for (const auto& row : data.features) {
    for (std::size_t f = 0; f < d; ++f) s.mean[f] += row[f];
  }
  for (std::size_t f = 0; f < d; ++f) s.mean[f] /= n;
  std::vector<double> var(d, 0.0);
  for (const auto& row : data.features) {
    for (std::size_t f = 0; f < d; ++f) {
      const double diff = row[f] - s.mean[f];
      var[f] += diff * diff;
    }
  }
  for (std::size_t f = 0; f < d; ++f) {
    s.scale[f] = std::max(std::sqrt(var[f] / n), 1e-12);
  }
  return s;
}

void Standardizer::apply(std::vector<double>& row) const {
  if (identity) return;
  for (std::size_t f = 0; f < row.size(); ++f) {
    row[f] = (row[f] - mean[f]) / scale[f];
  }
}

double TrainedModel::score(std::span<const double> input) const {
  if (input.size() != expected_input_size) {
    throw Error(ErrorCode::schema_mismatch, "feature vector length does not match the model");
  }
  std::vector<double> row;
  if (selected_features.empty()) {
    row.assign(input.begin(), input.end());
  } else {
    row.reserve(selected_features.size());
    for (int idx : selected_features) row.push_back(input[idx]);
  }
  standardizer.apply(row);
  return state->score(row);
}

Prediction TrainedModel::predict(std::span<const double> input) const {
  const double s = score(input);
  return Prediction{s >= 0.5 ? 1 : 0, s};
}

Prediction predict(const TrainedModel& model, std::span<const double> input) {
  return model.predict(input);
}

TrainedModel train(const ModelSpec& spec, const TrainingSet& data) {
  require_samples(data);
  TrainedModel model;
  model.spec = spec;
  model.expected_input_size = data.feature_count();

  const bool standardize = spec.family == ModelFamily::logistic_regression ||
                           spec.family == ModelFamily::linear_svm ||
                           spec.family == ModelFamily::k_nearest_neighbors;
  TrainingSet prepared;
  const TrainingSet* fit_data = &data;
  if (standardize) {
    model.standardizer = Standardizer::fit(data);
    prepared.labels = data.labels;
    prepared.features = data.features;
    for (auto& row : prepared.features) model.standardizer.apply(row);
    fit_data = &prepared;
  }

  switch (spec.family) {
    case ModelFamily::logistic_regression:
      model.state = fit_logistic(spec, *fit_data);
      break;
    case ModelFamily::linear_svm:
      model.state = fit_svm(spec, *fit_data);
      break;
    case ModelFamily::k_nearest_neighbors:
      model.state = fit_knn(spec, *fit_data);
      break;
    case ModelFamily::decision_forest:
      model.state = fit_forest(spec, *fit_data);
      break;
    case ModelFamily::boosted_decision_tree:
      model.state = fit_boosted(spec, *fit_data);
      break;
  }
  return model;
}

TrainedModel train_on_subset(const ModelSpec& spec, const TrainingSet& data,
                             const std::vector<int>& feature_indices) {
  TrainingSet subset;
  subset.labels = data.labels;
  subset.features.reserve(data.sample_count());
  for (const auto& row : data.features) {
    std::vector<double> r;
    r.reserve(feature_indices.size());
    for (int idx : feature_indices) r.push_back(row[idx]);
    subset.features.push_back(std::move(r));
  }
  TrainedModel model = train(spec, subset);
  model.selected_features = feature_indices;
  model.expected_input_size = data.feature_count();
  return model;
}

double validation_error(const TrainedModel& model, const TrainingSet& validation) {
  if (validation.sample_count() == 0) {
    throw Error(ErrorCode::degenerate_data, "empty validation set");
  }
  long wrong = 0;
  for (std::size_t i = 0; i < validation.sample_count(); ++i) {
    if (model.predict(validation.features[i]).label != validation.labels[i]) ++wrong;
  }
  return static_cast<double>(wrong) / validation.sample_count();
}

TrainedModel grid_search_select(const std::vector<ModelSpec>& grid,
                                const TrainingSet& train_data,
                                const TrainingSet& validation) {
  if (grid.empty()) {
    throw Error(ErrorCode::degenerate_data, "empty model grid");
  }
  if (!train_data.has_both_classes()) {
    throw Error(ErrorCode::degenerate_data, "grid search requires both classes in training");
  }
  std::optional<TrainedModel> best;
  double best_error = 0.0;
  int best_family = 0;
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    TrainedModel candidate = train(grid[i], train_data);
    const double error = validation_error(candidate, validation);
    const int family = static_cast<int>(grid[i].family);
    const bool better = !best || error < best_error ||
                        (error == best_error &&
                         (family < best_family || (family == best_family && i < best_index)));
    if (better) {
      best = std::move(candidate);
      best_error = error;
      best_family = family;
      best_index = i;
    }
  }
  return std::move(*best);
}

std::vector<ModelSpec> default_model_grids(std::uint64_t seed) {
  std::vector<ModelSpec> grid;
  for (double l2 : {0.01, 0.1, 1.0}) {
    grid.push_back({ModelFamily::logistic_regression, {{"l2", l2}}, seed});
  }
  for (double c : {0.1, 1.0, 10.0}) {
    grid.push_back({ModelFamily::linear_svm, {{"c", c}}, seed});
  }
  for (double k : {1.0, 3.0, 5.0}) {
    grid.push_back({ModelFamily::k_nearest_neighbors, {{"k", k}}, seed});
  }
  for (double trees : {16.0, 64.0}) {
    for (double depth : {4.0, 8.0}) {
      grid.push_back({ModelFamily::decision_forest,
                      {{"trees", trees}, {"depth", depth}}, seed});
    }
  }
  for (double rounds : {50.0, 200.0}) {
    for (double depth : {2.0, 3.0}) {
      grid.push_back({ModelFamily::boosted_decision_tree,
                      {{"rounds", rounds}, {"depth", depth}, {"shrinkage", 0.1}}, seed});
    }
  }
  return grid;
}

std::vector<ModelSpec> compact_model_grids(std::uint64_t seed) {
  return {
      {ModelFamily::logistic_regression, {{"l2", 0.1}}, seed},
      {ModelFamily::linear_svm, {{"c", 1.0}}, seed},
      {ModelFamily::k_nearest_neighbors, {{"k", 3.0}}, seed},
      {ModelFamily::decision_forest, {{"trees", 16.0}, {"depth", 4.0}}, seed},
      {ModelFamily::boosted_decision_tree,
       {{"rounds", 50.0}, {"depth", 2.0}, {"shrinkage", 0.1}}, seed},
  };
}

std::shared_ptr<FittedState> FittedState::from_json(ModelFamily family, const json& j) {
  switch (family) {
    case ModelFamily::logistic_regression:
    case ModelFamily::linear_svm: {
      auto state = std::make_shared<LinearState>();
      state->weights = j.at("weights").get<std::vector<double>>();
      state->bias = j.at("bias").get<double>();
      return state;
    }
    case ModelFamily::k_nearest_neighbors: {
      auto state = std::make_shared<KnnState>();
      state->k = j.at("k").get<int>();
      state->points = j.at("points").get<std::vector<std::vector<double>>>();
      state->labels = j.at("labels").get<std::vector<int>>();
      return state;
    }
    case ModelFamily::decision_forest: {
      auto state = std::make_shared<ForestState>();
      for (const json& t : j.at("trees")) state->trees.push_back(tree_from_json(t));
      return state;
    }
    case ModelFamily::boosted_decision_tree: {
      auto state = std::make_shared<BoostedState>();
      state->base_logit = j.at("base_logit").get<double>();
      state->shrinkage = j.at("shrinkage").get<double>();
      for (const json& t : j.at("trees")) state->trees.push_back(tree_from_json(t));
      return state;
    }
  }
  throw Error(ErrorCode::schema_mismatch, "unknown model family in archive");
}

nlohmann::json model_to_json(const TrainedModel& model) {
  json j;
  j["family"] = std::string(model_family_name(model.spec.family));
  j["hyperparameters"] = model.spec.hyperparameters;
  j["seed"] = model.spec.seed;
  j["selected_features"] = model.selected_features;
  j["expected_input_size"] = model.expected_input_size;
  j["standardizer"] = {
      {"identity", model.standardizer.identity},
      {"mean", model.standardizer.mean},
      {"scale", model.standardizer.scale},
  };
  j["state"] = model.state->to_json();
  return j;
}

TrainedModel model_from_json(const nlohmann::json& j) {
  TrainedModel model;
  const auto family = model_family_from_name(j.at("family").get<std::string>());
  if (!family) {
    throw Error(ErrorCode::schema_mismatch, "unknown model family in archive");
  }
  model.spec.family = *family;
  model.spec.hyperparameters = j.at("hyperparameters").get<std::map<std::string, double>>();
  model.spec.seed = j.at("seed").get<std::uint64_t>();
  model.selected_features = j.at("selected_features").get<std::vector<int>>();
  model.expected_input_size = j.at("expected_input_size").get<std::size_t>();
  model.standardizer.identity = j.at("standardizer").at("identity").get<bool>();
  model.standardizer.mean = j.at("standardizer").at("mean").get<std::vector<double>>();
  model.standardizer.scale = j.at("standardizer").at("scale").get<std::vector<double>>();
  model.state = FittedState::from_json(*family, j.at("state"));
  return model;
}

}  // namespace pallor
