#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "pallor/error.hpp"

namespace pallor {

// Binary-labeled feature matrix; labels are 0 (negative) or 1 (positive).
struct TrainingSet {
  std::vector<std::vector<double>> features;  // rows x feature_count
  std::vector<int> labels;

  std::size_t sample_count() const { return features.size(); }
  std::size_t feature_count() const { return features.empty() ? 0 : features[0].size(); }
  bool has_both_classes() const;
};

enum class RankingMethod { f_score, mutual_info, chi_squared };

std::string_view ranking_method_name(RankingMethod m);
std::optional<RankingMethod> ranking_method_from_name(std::string_view name);

struct RankedFeatures {
  std::vector<int> order;     // schema indices, best first
  std::vector<double> scores; // aligned with the schema, not with `order`
  RankingMethod method;
};

// Fisher score (mu+ - mu-)^2 / (var+ + var- + 1e-12) per feature, descending,
// ties broken by lower index.
RankedFeatures rank_f_score(const TrainingSet& data);

// Mutual information in nats between the equal-width-binned feature and the
// label.
RankedFeatures rank_mutual_info(const TrainingSet& data, int bins = 10);

// Chi-squared statistic of the bin x label contingency table; cells with zero
// expected count are skipped.
RankedFeatures rank_chi_squared(const TrainingSet& data, int bins = 10);

RankedFeatures rank_features(const TrainingSet& data, RankingMethod method, int bins = 10);

}  // namespace pallor
