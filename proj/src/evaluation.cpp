#include "pallor/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace pallor {
namespace {

using nlohmann::json;

std::string format_double(double v, int digits = 4) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

TrainingSet build_training_set(const std::vector<FeatureVector>& data,
                               const std::vector<int>& indices,
                               const std::vector<int>& labels) {
  TrainingSet out;
  out.features.reserve(indices.size());
  out.labels = labels;
  for (int i : indices) out.features.push_back(data[i].values);
  return out;
}

}  // namespace

// Grid points that fail to train on an inner split score error 1.0 there.
StepTrainingResult train_step_model(const std::vector<FeatureVector>& data,
                                    const std::vector<int>& train_indices,
                                    const std::vector<int>& step_labels, int inner_k,
                                    const CvOptions& options, std::uint64_t split_seed,
                                    int fold, int step, std::vector<std::string>& warnings) {
  StepTrainingResult out;
  const std::size_t n = train_indices.size();
  if (n < 2) {
    warnings.push_back("fold " + std::to_string(fold) + " step " + std::to_string(step) +
                       " skipped: fewer than two training samples");
    return out;
  }
  TrainingSet full = build_training_set(data, train_indices, step_labels);
  if (!full.has_both_classes()) {
    warnings.push_back("fold " + std::to_string(fold) + " step " + std::to_string(step) +
                       " skipped: training portion missing a class");
    return out;
  }
  const int d = static_cast<int>(full.feature_count());

  std::vector<int> sizes;
  for (int s : options.prefix_sizes) {
    if (s >= 1 && s <= d && std::find(sizes.begin(), sizes.end(), s) == sizes.end()) {
      sizes.push_back(s);
    }
  }
  if (sizes.empty()) sizes.push_back(d);
  std::sort(sizes.begin(), sizes.end());

  const std::vector<ModelSpec>& grid =
      options.grid.empty() ? default_model_grids(options.seed) : options.grid;

  inner_k = std::max(2, std::min(inner_k, static_cast<int>(n)));
  const FoldPlan inner = make_stratified_folds(step_labels, inner_k, split_seed);

  std::vector<std::vector<double>> error_sum(sizes.size(),
                                             std::vector<double>(grid.size(), 0.0));
  std::vector<std::vector<long>> error_count(sizes.size(),
                                             std::vector<long>(grid.size(), 0));

  for (int j = 0; j < inner_k; ++j) {
    std::vector<int> it_train, it_val;
    std::vector<int> it_train_labels, it_val_labels;
    for (std::size_t i = 0; i < n; ++i) {
      if (inner.assignments[i] == j) {
        it_val.push_back(train_indices[i]);
        it_val_labels.push_back(step_labels[i]);
      } else {
        it_train.push_back(train_indices[i]);
        it_train_labels.push_back(step_labels[i]);
      }
    }
    if (it_val.empty()) continue;
    TrainingSet inner_train = build_training_set(data, it_train, it_train_labels);
    if (!inner_train.has_both_classes()) continue;
    TrainingSet inner_val = build_training_set(data, it_val, it_val_labels);
    const RankedFeatures ranked = rank_features(inner_train, options.ranking, options.mi_bins);

    for (std::size_t si = 0; si < sizes.size(); ++si) {
      const std::vector<int> prefix(ranked.order.begin(), ranked.order.begin() + sizes[si]);
      for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        double error = 1.0;
        try {
          const TrainedModel candidate = train_on_subset(grid[gi], inner_train, prefix);
          error = validation_error(candidate, inner_val);
        } catch (const Error&) {
          // untrainable on this split; worst-case error stands
        }
        error_sum[si][gi] += error;
        error_count[si][gi] += 1;
      }
    }
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::size_t best_si = sizes.size();
  std::size_t best_gi = 0;
  double best_error = kInf;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    // Best grid point for this prefix size: mean error, then canonical family,
    // then grid order.
    std::size_t gi_best = grid.size();
    double gi_error = kInf;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      if (error_count[si][gi] == 0) continue;
      const double mean = error_sum[si][gi] / error_count[si][gi];
      const bool better =
          gi_best == grid.size() || mean < gi_error ||
          (mean == gi_error && static_cast<int>(grid[gi].family) <
                                   static_cast<int>(grid[gi_best].family));
      if (better) {
        gi_best = gi;
        gi_error = mean;
      }
    }
    if (gi_best == grid.size()) continue;
    if (best_si == sizes.size() || gi_error < best_error) {  // ties keep the smaller prefix
      best_si = si;
      best_gi = gi_best;
      best_error = gi_error;
    }
  }

  if (best_si == sizes.size()) {
    warnings.push_back("fold " + std::to_string(fold) + " step " + std::to_string(step) +
                       ": all inner splits degenerate, using defaults");
    best_si = sizes.size() - 1;
    best_gi = 0;
    best_error = 1.0;
  }

  const RankedFeatures ranked = rank_features(full, options.ranking, options.mi_bins);
  const std::vector<int> prefix(ranked.order.begin(), ranked.order.begin() + sizes[best_si]);
  try {
    out.model = train_on_subset(grid[best_gi], full, prefix);
  } catch (const Error& e) {
    warnings.push_back("fold " + std::to_string(fold) + " step " + std::to_string(step) +
                       " skipped: " + e.what());
    return out;
  }
  out.valid = true;
  out.info.fold = fold;
  out.info.step = step;
  out.info.model = grid[best_gi].describe();
  out.info.prefix_size = sizes[best_si];
  out.info.feature_indices = prefix;
  out.info.inner_error = best_error;
  return out;
}

std::vector<long> FoldPlan::fold_sizes() const {
  std::vector<long> sizes(k, 0);
  for (int a : assignments) ++sizes[a];
  return sizes;
}

FoldPlan make_stratified_folds(const std::vector<int>& labels, int k, std::uint64_t seed) {
  const std::size_t n = labels.size();
  if (k < 2 || static_cast<std::size_t>(k) > n) {
    throw Error(ErrorCode::too_few_samples,
                "need 2 <= k <= sample count, got k=" + std::to_string(k) + " for n=" +
                    std::to_string(n));
  }
  std::map<int, std::vector<int>> by_class;
  for (std::size_t i = 0; i < n; ++i) by_class[labels[i]].push_back(static_cast<int>(i));

  FoldPlan plan;
  plan.k = k;
  plan.stratified = true;
  plan.assignments.assign(n, 0);
  std::mt19937 rng(static_cast<std::uint32_t>(seed ^ 0x9e3779b97f4a7c15ull));
  int cursor = 0;
  for (auto& [label, indices] : by_class) {
    std::shuffle(indices.begin(), indices.end(), rng);
    for (int idx : indices) {
      plan.assignments[idx] = cursor % k;
      ++cursor;
    }
  }
  return plan;
}

HierarchyPlan HierarchyPlan::parse(const std::string& text) {
  const auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorCode::invalid_spec, "hierarchy '" + text + "': " + why);
  };
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) throw fail("expected two steps separated by ','");
  const std::string step1 = text.substr(0, comma);
  const std::string step2 = text.substr(comma + 1);
  const auto split = [&](const std::string& part) {
    const std::size_t slash = part.find('/');
    if (slash == std::string::npos) throw fail("expected 'pos/neg' in '" + part + "'");
    return std::pair<std::string, std::string>(part.substr(0, slash), part.substr(slash + 1));
  };
  const auto digits = [&](const std::string& s) {
    std::vector<int> out;
    for (char c : s) {
      if (c < '0' || c > '2') throw fail("grades must be 0, 1 or 2");
      out.push_back(c - '0');
    }
    return out;
  };
  const auto [p1, n1] = split(step1);
  const auto [p2, n2] = split(step2);
  const auto pos1 = digits(p1), neg1 = digits(n1), pos2 = digits(p2), neg2 = digits(n2);
  if (pos1.size() != 1 || neg1.size() != 2 || pos2.size() != 1 || neg2.size() != 1) {
    throw fail("step 1 must be one class vs two, step 2 one vs one");
  }
  HierarchyPlan plan;
  plan.step1_positive = pos1[0];
  plan.step2_positive = pos2[0];
  plan.step2_negative = neg2[0];
  const std::set<int> all = {plan.step1_positive, plan.step2_positive, plan.step2_negative};
  if (all != std::set<int>{0, 1, 2}) throw fail("steps must partition {0,1,2}");
  if (std::set<int>(neg1.begin(), neg1.end()) !=
      std::set<int>{plan.step2_positive, plan.step2_negative}) {
    throw fail("step 2 must split step 1's negative side");
  }
  return plan;
}

HierarchyPlan HierarchyPlan::defaults(Site site, bool m2) {
  if (site == Site::tongue && !m2) return parse("1/02,0/2");
  return parse("0/12,1/2");
}

int HierarchyPlan::routed_grade(int step1_label, int step2_label) const {
  if (step1_label == 1) return step1_positive;
  return step2_label == 1 ? step2_positive : step2_negative;
}

std::string HierarchyPlan::step1_task_name() const {
  const int lo = std::min(step2_positive, step2_negative);
  const int hi = std::max(step2_positive, step2_negative);
  return std::to_string(step1_positive) + "/" + std::to_string(lo) + "," + std::to_string(hi);
}

std::string HierarchyPlan::step2_task_name() const {
  return std::to_string(step2_positive) + "/" + std::to_string(step2_negative);
}

std::string HierarchyPlan::encode() const {
  const int lo = std::min(step2_positive, step2_negative);
  const int hi = std::max(step2_positive, step2_negative);
  return std::to_string(step1_positive) + "/" + std::to_string(lo) + std::to_string(hi) + "," +
         std::to_string(step2_positive) + "/" + std::to_string(step2_negative);
}

Metrics compute_metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) {
    throw Error(ErrorCode::empty_matrix, "confusion matrix has no samples");
  }
  Metrics m;
  if (cm.tp + cm.fp > 0) {
    m.precision = static_cast<double>(cm.tp) / (cm.tp + cm.fp);
  } else {
    m.precision_defined = false;
  }
  if (cm.tp + cm.fn > 0) {
    m.recall = static_cast<double>(cm.tp) / (cm.tp + cm.fn);
  } else {
    m.recall_defined = false;
  }
  m.accuracy = static_cast<double>(cm.tp + cm.tn) / cm.total();
  return m;
}

double compute_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size() || scores.empty()) {
    throw Error(ErrorCode::single_class_data, "AUC needs aligned scores and labels");
  }
  long n_pos = 0, n_neg = 0;
  for (int l : labels) (l ? n_pos : n_neg) += 1;
  if (n_pos == 0 || n_neg == 0) {
    throw Error(ErrorCode::single_class_data, "AUC requires both classes");
  }
  std::vector<int> idx(scores.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return scores[a] < scores[b]; });

  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && scores[idx[j + 1]] == scores[idx[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) {
      if (labels[idx[t]]) rank_sum_pos += avg_rank;
    }
    i = j + 1;
  }
  return (rank_sum_pos - static_cast<double>(n_pos) * (n_pos + 1) / 2.0) /
         (static_cast<double>(n_pos) * n_neg);
}

EvaluationReport run_hierarchical_cv(const std::vector<FeatureVector>& data,
                                     const HierarchyPlan& plan, const FoldPlan& folds,
                                     const CvOptions& options) {
  if (data.empty() || folds.assignments.size() != data.size()) {
    throw Error(ErrorCode::degenerate_data, "fold plan does not match the data");
  }
  EvaluationReport report;
  report.site = data[0].site;
  report.ranking = std::string(ranking_method_name(options.ranking));
  report.seed = options.seed;
  report.plan = plan;
  report.folds = folds;
  report.step1.task_name = plan.step1_task_name();
  report.step2.task_name = plan.step2_task_name();
  report.predictions.resize(data.size());

  std::vector<double> step1_scores, step2_scores;
  std::vector<int> step1_truth, step2_truth;
  long routed_correct = 0;

  for (int fold = 0; fold < folds.k; ++fold) {
    std::vector<int> train_idx, test_idx;
    for (std::size_t i = 0; i < data.size(); ++i) {
      (folds.assignments[i] == fold ? test_idx : train_idx).push_back(static_cast<int>(i));
    }
    if (test_idx.empty()) continue;

    std::vector<int> step1_labels;
    step1_labels.reserve(train_idx.size());
    for (int i : train_idx) step1_labels.push_back(plan.step1_is_positive(data[i].grade) ? 1 : 0);

    std::vector<int> step2_train;
    std::vector<int> step2_labels;
    for (int i : train_idx) {
      if (plan.in_step2_domain(data[i].grade)) {
        step2_train.push_back(i);
        step2_labels.push_back(data[i].grade == plan.step2_positive ? 1 : 0);
      }
    }

    const int inner_k = std::max(2, folds.k - 1);
    StepTrainingResult sel1 =
        train_step_model(data, train_idx, step1_labels, inner_k, options,
                       options.seed * 31 + static_cast<std::uint64_t>(fold) * 7 + 1, fold, 1,
                       report.warnings);
    StepTrainingResult sel2 =
        train_step_model(data, step2_train, step2_labels, inner_k, options,
                       options.seed * 31 + static_cast<std::uint64_t>(fold) * 7 + 2, fold, 2,
                       report.warnings);
    if (sel1.valid) report.selections.push_back(sel1.info);
    if (sel2.valid) report.selections.push_back(sel2.info);

    for (int i : test_idx) {
      SamplePrediction& pred = report.predictions[i];
      pred.image_id = data[i].image_id;
      pred.fold = fold;
      pred.true_grade = data[i].grade;

      if (sel1.valid) {
        const Prediction p1 = sel1.model.predict(data[i].values);
        pred.step1_evaluated = true;
        pred.step1_score = p1.score;
        pred.step1_label = p1.label;
        const int truth = plan.step1_is_positive(data[i].grade) ? 1 : 0;
        if (p1.label && truth) ++report.step1.cm.tp;
        if (p1.label && !truth) ++report.step1.cm.fp;
        if (!p1.label && truth) ++report.step1.cm.fn;
        if (!p1.label && !truth) ++report.step1.cm.tn;
        step1_scores.push_back(p1.score);
        step1_truth.push_back(truth);
      }
      if (sel2.valid) {
        const Prediction p2 = sel2.model.predict(data[i].values);
        pred.step2_evaluated = true;
        pred.step2_score = p2.score;
        pred.step2_label = p2.label;
        if (plan.in_step2_domain(data[i].grade)) {
          const int truth = data[i].grade == plan.step2_positive ? 1 : 0;
          if (p2.label && truth) ++report.step2.cm.tp;
          if (p2.label && !truth) ++report.step2.cm.fp;
          if (!p2.label && truth) ++report.step2.cm.fn;
          if (!p2.label && !truth) ++report.step2.cm.tn;
          step2_scores.push_back(p2.score);
          step2_truth.push_back(truth);
        }
      }
      if (pred.step1_evaluated) {
        if (pred.step1_label == 1) {
          pred.routed_grade = plan.step1_positive;
        } else if (pred.step2_evaluated) {
          pred.routed_grade = plan.routed_grade(0, pred.step2_label);
        }
      }
      if (pred.routed_grade >= 0) {
        ++report.routed_evaluated;
        if (pred.routed_grade == pred.true_grade) ++routed_correct;
      }
    }
  }

  report.step1.evaluated = report.step1.cm.total();
  report.step2.evaluated = report.step2.cm.total();
  if (report.step1.evaluated > 0) report.step1.metrics = compute_metrics(report.step1.cm);
  if (report.step2.evaluated > 0) report.step2.metrics = compute_metrics(report.step2.cm);
  const auto safe_auc = [](StepReport& step, const std::vector<double>& scores,
                           const std::vector<int>& truth) {
    try {
      step.auc = compute_auc(scores, truth);
      step.auc_defined = true;
    } catch (const Error&) {
      step.auc_defined = false;
    }
  };
  safe_auc(report.step1, step1_scores, step1_truth);
  safe_auc(report.step2, step2_scores, step2_truth);
  if (report.routed_evaluated > 0) {
    report.routed_accuracy = static_cast<double>(routed_correct) / report.routed_evaluated;
  }
  return report;
}

std::vector<PlaneRate> per_plane_classification_rates(const std::vector<PerPlaneGroup>& groups,
                                                      const HierarchyPlan& plan,
                                                      const FoldPlan& folds,
                                                      const CvOptions& options) {
  if (groups.size() != 36) {
    throw Error(ErrorCode::invalid_spec,
                "expected 36 plane groups, got " + std::to_string(groups.size()));
  }
  std::vector<PlaneRate> rates;
  rates.reserve(groups.size());
  for (const PerPlaneGroup& group : groups) {
    CvOptions opts = options;
    opts.prefix_sizes = {static_cast<int>(group.vectors.empty() ? 1 : group.vectors[0].values.size())};
    const EvaluationReport report = run_hierarchical_cv(group.vectors, plan, folds, opts);
    rates.push_back({group.plane, group.enhancement, report.routed_accuracy,
                     report.routed_evaluated});
  }
  std::stable_sort(rates.begin(), rates.end(),
                   [](const PlaneRate& a, const PlaneRate& b) { return a.accuracy > b.accuracy; });
  return rates;
}

json EvaluationReport::to_json() const {
  const auto step_json = [](const StepReport& step) {
    return json{
        {"task", step.task_name},
        {"confusion", {{"tp", step.cm.tp}, {"fp", step.cm.fp}, {"tn", step.cm.tn}, {"fn", step.cm.fn}}},
        {"precision", step.metrics.precision},
        {"precision_defined", step.metrics.precision_defined},
        {"recall", step.metrics.recall},
        {"recall_defined", step.metrics.recall_defined},
        {"accuracy", step.metrics.accuracy},
        {"auc", step.auc},
        {"auc_defined", step.auc_defined},
        {"evaluated", step.evaluated},
    };
  };
  json selection_rows = json::array();
  for (const FoldSelection& s : selections) {
    selection_rows.push_back({{"fold", s.fold},
                              {"step", s.step},
                              {"model", s.model},
                              {"prefix_size", s.prefix_size},
                              {"feature_indices", s.feature_indices},
                              {"inner_error", s.inner_error}});
  }
  json predictions = json::array();
  for (const SamplePrediction& p : this->predictions) {
    predictions.push_back({{"image_id", p.image_id},
                           {"fold", p.fold},
                           {"true_grade", p.true_grade},
                           {"step1_evaluated", p.step1_evaluated},
                           {"step1_score", p.step1_score},
                           {"step1_label", p.step1_label},
                           {"step2_evaluated", p.step2_evaluated},
                           {"step2_score", p.step2_score},
                           {"step2_label", p.step2_label},
                           {"routed_grade", p.routed_grade}});
  }
  return json{
      {"site", std::string(site_name(site))},
      {"model", model_kind},
      {"ranking", ranking},
      {"seed", seed},
      {"hierarchy", plan.encode()},
      {"folds", {{"k", folds.k}, {"assignments", folds.assignments}, {"stratified", folds.stratified}}},
      {"metrics_note", "pooled over concatenated outer-fold test predictions"},
      {"step1", step_json(step1)},
      {"step2", step_json(step2)},
      {"routed_accuracy", routed_accuracy},
      {"routed_evaluated", routed_evaluated},
      {"selections", selection_rows},
      {"predictions", predictions},
      {"warnings", warnings},
  };
}

std::string EvaluationReport::to_text() const {
  std::ostringstream out;
  out << "pallor evaluation report\n";
  out << "site: " << site_name(site) << "  model: " << model_kind
      << "  ranking: " << ranking << "  folds: " << folds.k << "  seed: " << seed << "\n";
  out << "hierarchy: " << plan.encode() << "\n";
  out << "metrics pooled over concatenated outer-fold test predictions\n\n";

  const auto cell = [](const std::string& s) {
    std::string padded = s;
    while (padded.size() < 10) padded = " " + padded;
    return padded;
  };
  out << "Task " << cell(step1.task_name) << cell(step2.task_name) << "\n";
  const auto row = [&](const char* name, double v1, bool d1, double v2, bool d2) {
    out << name << cell(d1 ? format_double(v1, 3) : "n/a") << cell(d2 ? format_double(v2, 3) : "n/a")
        << "\n";
  };
  row("PR  ", step1.metrics.precision, step1.evaluated > 0 && step1.metrics.precision_defined,
      step2.metrics.precision, step2.evaluated > 0 && step2.metrics.precision_defined);
  row("RE  ", step1.metrics.recall, step1.evaluated > 0 && step1.metrics.recall_defined,
      step2.metrics.recall, step2.evaluated > 0 && step2.metrics.recall_defined);
  row("Acc ", step1.metrics.accuracy, step1.evaluated > 0, step2.metrics.accuracy,
      step2.evaluated > 0);
  row("AUC ", step1.auc, step1.auc_defined, step2.auc, step2.auc_defined);

  out << "\nrouted 3-class accuracy: " << format_double(routed_accuracy, 3) << " over "
      << routed_evaluated << " samples\n";
  if (!selections.empty()) {
    out << "\nselected models per fold:\n";
    for (const FoldSelection& s : selections) {
      out << "  fold " << s.fold << " step " << s.step << ": " << s.model << ", prefix "
          << s.prefix_size << ", inner error " << format_double(s.inner_error, 3) << "\n";
    }
  }
  if (!warnings.empty()) {
    out << "\nwarnings:\n";
    for (const std::string& w : warnings) out << "  " << w << "\n";
  }
  return out.str();
}

void EvaluationReport::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::unreadable_file, "cannot write " + path.string());
  }
  out << "image_id,fold,true_grade,step1_score,step1_label,step2_score,step2_label,routed_grade\n";
  char buf[48];
  for (const SamplePrediction& p : predictions) {
    out << p.image_id << ',' << p.fold << ',' << p.true_grade << ',';
    if (p.step1_evaluated) {
      std::snprintf(buf, sizeof(buf), "%.17g", p.step1_score);
      out << buf << ',' << p.step1_label << ',';
    } else {
      out << ",,";
    }
    if (p.step2_evaluated) {
      std::snprintf(buf, sizeof(buf), "%.17g", p.step2_score);
      out << buf << ',' << p.step2_label << ',';
    } else {
      out << ",,";
    }
    out << p.routed_grade << '\n';
  }
}

}  // namespace pallor
