#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "carforge/dataset.hpp"
#include "carforge/measures.hpp"
#include "carforge/mining.hpp"

namespace carforge {

/// chi^2 * chi^2 / max chi^2 for one rule; 0 when either is undefined.
double weighted_chi2_contribution(const ContingencyTable& t);

/// Sum of the rules' weighted contributions.
double weighted_chi2_score(std::span<const CARRule> group);

struct RuleWeight {
  MeasureValue chi2;
  MeasureValue max_chi2;
  double contribution = 0.0;
};

enum class PredictionBasis { Unanimous, WeightedChi2, Default };

std::string_view basis_name(PredictionBasis b) noexcept;

struct Prediction {
  ValueIndex label = 0;
  PredictionBasis basis = PredictionBasis::Default;
  // Per class value index; filled only for WeightedChi2.
  std::vector<double> class_scores;
};

/// Ordered rule list plus the fallback class for instances no rule matches.
class ClassifierModel {
 public:
  ClassifierModel(std::vector<CARRule> rules, ValueIndex default_class, const AttributeSchema& schema);

  const std::vector<CARRule>& rules() const noexcept { return rules_; }
  const std::vector<RuleWeight>& weights() const noexcept { return weights_; }
  ValueIndex default_class() const noexcept { return default_class_; }
  std::size_t num_classes() const noexcept { return value_counts_[class_index_]; }

  /// `values` holds one entry per schema attribute; the class slot is ignored.
  /// Throws DataError if the vector does not fit the schema.
  Prediction predict(std::span<const ValueIndex> values) const;

 private:
  std::vector<CARRule> rules_;
  std::vector<RuleWeight> weights_;
  ValueIndex default_class_;
  std::vector<std::size_t> value_counts_;
  AttributeIndex class_index_;
};

inline Prediction predict(const ClassifierModel& model, std::span<const ValueIndex> values) {
  return model.predict(values);
}

struct AccuracyResult {
  std::size_t correct = 0;
  std::size_t total = 0;
};

AccuracyResult evaluate_accuracy(const ClassifierModel& model, const Dataset& test);

/// CSV audit dump: `predicted,actual,basis,score_<class>...`, one row per test instance.
void write_predictions(std::ostream& out, const ClassifierModel& model, const Dataset& test);

}  // namespace carforge
