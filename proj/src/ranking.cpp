#include "pallor/ranking.hpp"

#include <algorithm>
#include <cmath>

namespace pallor {
namespace {

void require_both_classes(const TrainingSet& data) {
  if (!data.has_both_classes()) {
    throw Error(ErrorCode::single_class_data, "ranking requires both classes");
  }
}

std::vector<int> sort_descending(const std::vector<double>& scores) {
  std::vector<int> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  return order;
}

// Equal-width bin index over [lo, hi]; the top edge maps into the last bin.
int bin_index(double v, double lo, double hi, int bins) {
  if (hi <= lo) return 0;
  const int idx = static_cast<int>((v - lo) / (hi - lo) * bins);
  return std::clamp(idx, 0, bins - 1);
}

struct ContingencyTable {
  std::vector<double> cells;  // bins x 2
  std::vector<double> bin_totals;
  double class_totals[2] = {0.0, 0.0};
  double total = 0.0;
  int bins = 0;
};

ContingencyTable build_table(const TrainingSet& data, std::size_t feature, int bins) {
  double lo = data.features[0][feature];
  double hi = lo;
  for (const auto& row : data.features) {
    lo = std::min(lo, row[feature]);
    hi = std::max(hi, row[feature]);
  }
  ContingencyTable t;
  t.bins = bins;
  t.cells.assign(static_cast<std::size_t>(bins) * 2, 0.0);
  t.bin_totals.assign(bins, 0.0);
  for (std::size_t i = 0; i < data.sample_count(); ++i) {
    const int b = bin_index(data.features[i][feature], lo, hi, bins);
    const int c = data.labels[i] ? 1 : 0;
    t.cells[static_cast<std::size_t>(b) * 2 + c] += 1.0;
    t.bin_totals[b] += 1.0;
    t.class_totals[c] += 1.0;
    t.total += 1.0;
  }
  return t;
}

}  // namespace

bool TrainingSet::has_both_classes() const {
  bool has_pos = false, has_neg = false;
  for (int label : labels) {
    (label ? has_pos : has_neg) = true;
  }
  return has_pos && has_neg;
}

std::string_view ranking_method_name(RankingMethod m) {
  switch (m) {
    case RankingMethod::f_score: return "f_score";
    case RankingMethod::mutual_info: return "mutual_info";
    case RankingMethod::chi_squared: return "chi_squared";
  }
  return "unknown";
}

std::optional<RankingMethod> ranking_method_from_name(std::string_view name) {
  if (name == "f_score") return RankingMethod::f_score;
  if (name == "mutual_info") return RankingMethod::mutual_info;
  if (name == "chi_squared") return RankingMethod::chi_squared;
  return std::nullopt;
}

RankedFeatures rank_f_score(const TrainingSet& data) {
  require_both_classes(data);
  const std::size_t d = data.feature_count();
  std::vector<double> scores(d, 0.0);
  for (std::size_t f = 0; f < d; ++f) {
    double sum[2] = {0.0, 0.0};
    long count[2] = {0, 0};
    for (std::size_t i = 0; i < data.sample_count(); ++i) {
      const int c = data.labels[i] ? 1 : 0;
      sum[c] += data.features[i][f];
      ++count[c];
    }
    const double mean0 = sum[0] / count[0];
    const double mean1 = sum[1] / count[1];
    double var[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < data.sample_count(); ++i) {
      const int c = data.labels[i] ? 1 : 0;
      const double dlt = data.features[i][f] - (c ? mean1 : mean0);
      var[c] += dlt * dlt;
    }
    var[0] /= count[0];
    var[1] /= count[1];
    const double gap = mean1 - mean0;
    scores[f] = gap * gap / (var[0] + var[1] + 1e-12);
  }
  return RankedFeatures{sort_descending(scores), scores, RankingMethod::f_score};
}

RankedFeatures rank_mutual_info(const TrainingSet& data, int bins) {
  require_both_classes(data);
  if (bins < 2) {
    throw Error(ErrorCode::invalid_spec, "mutual information needs at least 2 bins");
  }
  const std::size_t d = data.feature_count();
  std::vector<double> scores(d, 0.0);
  for (std::size_t f = 0; f < d; ++f) {
    const ContingencyTable t = build_table(data, f, bins);
    double mi = 0.0;
    for (int b = 0; b < t.bins; ++b) {
      for (int c = 0; c < 2; ++c) {
        const double joint = t.cells[static_cast<std::size_t>(b) * 2 + c] / t.total;
        if (joint <= 0.0) continue;
        const double px = t.bin_totals[b] / t.total;
        const double py = t.class_totals[c] / t.total;
        mi += joint * std::log(joint / (px * py));
      }
    }
    scores[f] = std::max(mi, 0.0);
  }
  return RankedFeatures{sort_descending(scores), scores, RankingMethod::mutual_info};
}

RankedFeatures rank_chi_squared(const TrainingSet& data, int bins) {
  require_both_classes(data);
  if (bins < 2) {
    throw Error(ErrorCode::invalid_spec, "chi-squared needs at least 2 bins");
  }
  const std::size_t d = data.feature_count();
  std::vector<double> scores(d, 0.0);
  for (std::size_t f = 0; f < d; ++f) {
    const ContingencyTable t = build_table(data, f, bins);
    double stat = 0.0;
    for (int b = 0; b < t.bins; ++b) {
      for (int c = 0; c < 2; ++c) {
        const double expected = t.bin_totals[b] * t.class_totals[c] / t.total;
        if (expected <= 0.0) continue;
        const double observed = t.cells[static_cast<std::size_t>(b) * 2 + c];
        stat += (observed - expected) * (observed - expected) / expected;
      }
    }
    scores[f] = stat;
  }
  return RankedFeatures{sort_descending(scores), scores, RankingMethod::chi_squared};
}

RankedFeatures rank_features(const TrainingSet& data, RankingMethod method, int bins) {
  switch (method) {
    case RankingMethod::f_score: return rank_f_score(data);
    case RankingMethod::mutual_info: return rank_mutual_info(data, bins);
    case RankingMethod::chi_squared: return rank_chi_squared(data, bins);
  }
  throw Error(ErrorCode::invalid_spec, "unknown ranking method");
}

}  // namespace pallor
