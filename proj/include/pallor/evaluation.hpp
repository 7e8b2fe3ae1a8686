#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "pallor/features.hpp"
#include "pallor/models.hpp"
#include "pallor/ranking.hpp"
#include "pallor/site.hpp"

namespace pallor {

struct FoldPlan {
  int k = 0;
  std::vector<int> assignments;  // per-sample fold index in [0, k)
  bool stratified = true;

  std::vector<long> fold_sizes() const;
};

// Seeded shuffle inside each class, then round-robin assignment with a global
// cursor: fold sizes differ by at most 1 overall and per class.
FoldPlan make_stratified_folds(const std::vector<int>& labels, int k, std::uint64_t seed);

// Two cascaded binary tasks over grades {0,1,2}: step 1 isolates one class,
// step 2 splits the remaining pair.
struct HierarchyPlan {
  int step1_positive = 0;
  int step2_positive = 1;
  int step2_negative = 2;

  static HierarchyPlan parse(const std::string& text);  // e.g. "0/12,1/2"
  static HierarchyPlan defaults(Site site, bool m2);

  bool step1_is_positive(int grade) const { return grade == step1_positive; }
  bool in_step2_domain(int grade) const {
    return grade == step2_positive || grade == step2_negative;
  }
  int routed_grade(int step1_label, int step2_label) const;
  std::string step1_task_name() const;  // "0/1,2"
  std::string step2_task_name() const;  // "1/2"
  std::string encode() const;           // "0/12,1/2"
};

struct ConfusionMatrix {
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;
  long total() const { return tp + fp + tn + fn; }
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double accuracy = 0.0;
  bool precision_defined = true;
  bool recall_defined = true;
};

Metrics compute_metrics(const ConfusionMatrix& cm);

// Rank-based (Mann-Whitney) AUC; ties contribute 0.5.
double compute_auc(const std::vector<double>& scores, const std::vector<int>& labels);

struct StepReport {
  std::string task_name;
  ConfusionMatrix cm;
  Metrics metrics;
  double auc = 0.5;
  bool auc_defined = false;
  long evaluated = 0;
};

struct SamplePrediction {
  std::string image_id;
  int fold = 0;
  int true_grade = 0;
  bool step1_evaluated = false;
  double step1_score = 0.0;
  int step1_label = 0;
  bool step2_evaluated = false;
  double step2_score = 0.0;
  int step2_label = 0;
  int routed_grade = -1;
};

struct FoldSelection {
  int fold = 0;
  int step = 0;
  std::string model;
  int prefix_size = 0;
  std::vector<int> feature_indices;
  double inner_error = 0.0;
};

struct EvaluationReport {
  Site site = Site::eye;
  std::string model_kind;  // "m1" | "m2"
  std::string ranking;
  std::uint64_t seed = 0;
  HierarchyPlan plan;
  FoldPlan folds;
  StepReport step1;
  StepReport step2;
  double routed_accuracy = 0.0;
  long routed_evaluated = 0;
  std::vector<SamplePrediction> predictions;
  std::vector<FoldSelection> selections;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
  std::string to_text() const;
  void write_csv(const std::filesystem::path& path) const;
};

struct CvOptions {
  RankingMethod ranking = RankingMethod::f_score;
  std::vector<int> prefix_sizes = {5, 10, 15, 20, 27, 54};
  std::vector<ModelSpec> grid;  // defaults to default_model_grids(seed)
  int mi_bins = 10;
  std::uint64_t seed = 0;
};

// Double cross-validation: inner (k-1)-fold splits of each outer training
// portion rank features, pick the prefix size and the grid point by mean
// inner validation error; the winner is refit on the full outer training
// portion and evaluated on the held-out fold. Metrics are pooled over the
// concatenated outer-fold test predictions. Step 2 is evaluated on samples
// whose true grade lies in its domain, independent of step-1 routing.
EvaluationReport run_hierarchical_cv(const std::vector<FeatureVector>& data,
                                     const HierarchyPlan& plan, const FoldPlan& folds,
                                     const CvOptions& options);

struct StepTrainingResult {
  bool valid = false;
  TrainedModel model;
  FoldSelection info;
};

// One hierarchical step: inner-fold selection of (prefix size, grid point) by
// mean validation error, then a refit on all given samples. `sample_indices`
// select rows of `data`; `step_labels` are the aligned binary labels. Invalid
// (with a warning appended) when the samples cannot support the step.
StepTrainingResult train_step_model(const std::vector<FeatureVector>& data,
                                    const std::vector<int>& sample_indices,
                                    const std::vector<int>& step_labels, int inner_k,
                                    const CvOptions& options, std::uint64_t split_seed,
                                    int fold, int step, std::vector<std::string>& warnings);

struct PerPlaneGroup {
  PlaneId plane;
  Enhancement enhancement;
  std::vector<FeatureVector> vectors;
};

struct PlaneRate {
  PlaneId plane;
  Enhancement enhancement;
  double accuracy = 0.0;
  long evaluated = 0;
};

// Cross-validated hierarchical (routed 3-class) accuracy per extrapolated
// plane group, sorted descending; the leading row is the most discriminating
// plane. Requires exactly 36 groups.
std::vector<PlaneRate> per_plane_classification_rates(const std::vector<PerPlaneGroup>& groups,
                                                      const HierarchyPlan& plan,
                                                      const FoldPlan& folds,
                                                      const CvOptions& options);

}  // namespace pallor
