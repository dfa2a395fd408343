#include "carforge/classifier.hpp"

#include <cstdio>
#include <ostream>

#include "carforge/errors.hpp"
#include "carforge/ordering.hpp"

namespace carforge {

double weighted_chi2_contribution(const ContingencyTable& t) {
  const auto chi2 = evaluate(MeasureId::ChiSquare, t);
  const auto max_chi2 = max_chi_square(t);
  if (!chi2.is_finite() || !max_chi2.is_finite() || max_chi2.to_double() == 0.0) return 0.0;
  const double c = chi2.to_double();
  return c * c / max_chi2.to_double();
}

double weighted_chi2_score(std::span<const CARRule> group) {
  double score = 0.0;
  for (const auto& r : group) score += weighted_chi2_contribution(r.table);
  return score;
}

std::string_view basis_name(PredictionBasis b) noexcept {
  switch (b) {
    case PredictionBasis::Unanimous:
      return "unanimous";
    case PredictionBasis::WeightedChi2:
      return "weighted-chi2";
    case PredictionBasis::Default:
      return "default";
  }
  return "";
}

ClassifierModel::ClassifierModel(std::vector<CARRule> rules, ValueIndex default_class,
                                 const AttributeSchema& schema)
    : rules_(std::move(rules)), default_class_(default_class), class_index_(schema.class_index()) {
  for (const auto& a : schema.attributes()) value_counts_.push_back(a.values.size());
  if (default_class_ >= num_classes()) throw DataError("default class outside the class attribute");
  weights_.reserve(rules_.size());
  for (const auto& r : rules_) {
    if (r.consequent >= num_classes()) throw DataError("rule consequent outside the class attribute");
    for (const auto& item : r.antecedent) {
      if (item.attribute >= value_counts_.size() || item.attribute == class_index_ ||
          item.value >= value_counts_[item.attribute]) {
        throw DataError("rule antecedent does not fit the schema");
      }
    }
    weights_.push_back(RuleWeight{evaluate(MeasureId::ChiSquare, r.table), max_chi_square(r.table),
                                  weighted_chi2_contribution(r.table)});
  }
}

Prediction ClassifierModel::predict(std::span<const ValueIndex> values) const {
  if (values.size() != value_counts_.size()) {
    throw DataError("instance has " + std::to_string(values.size()) + " values, schema has " +
                    std::to_string(value_counts_.size()));
  }
  for (std::size_t a = 0; a < values.size(); ++a) {
    if (a != class_index_ && values[a] >= value_counts_[a]) {
      throw DataError("instance value out of range at attribute " + std::to_string(a));
    }
  }

  const std::size_t k = num_classes();
  std::vector<double> scores(k, 0.0);
  // Best-ranked (CSA) matched rule per class, used to break score ties.
  std::vector<const CARRule*> top(k, nullptr);
  std::size_t matched = 0;
  ValueIndex first_class = 0;
  bool unanimous = true;

  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const auto& r = rules_[i];
    if (!r.matches(values)) continue;
    if (matched == 0) first_class = r.consequent;
    else if (r.consequent != first_class) unanimous = false;
    ++matched;
    scores[r.consequent] += weights_[i].contribution;
    if (!top[r.consequent] || compare_csa(r, *top[r.consequent]) < 0) top[r.consequent] = &r;
  }

  if (matched == 0) return Prediction{default_class_, PredictionBasis::Default, {}};
  if (unanimous) return Prediction{first_class, PredictionBasis::Unanimous, {}};

  ValueIndex best = 0;
  bool have = false;
  for (std::size_t c = 0; c < k; ++c) {
    if (!top[c]) continue;
    if (!have || scores[c] > scores[best] ||
        (scores[c] == scores[best] && compare_csa(*top[c], *top[best]) < 0)) {
      best = static_cast<ValueIndex>(c);
      have = true;
    }
  }
  return Prediction{best, PredictionBasis::WeightedChi2, std::move(scores)};
}

AccuracyResult evaluate_accuracy(const ClassifierModel& model, const Dataset& test) {
  AccuracyResult result;
  for (const auto& inst : test.instances()) {
    ++result.total;
    if (model.predict(inst.values).label == inst.class_label) ++result.correct;
  }
  return result;
}

void write_predictions(std::ostream& out, const ClassifierModel& model, const Dataset& test) {
  const auto& cls = test.schema().class_attribute();
  out << "predicted,actual,basis";
  for (const auto& v : cls.values) out << ",score_" << v;
  out << '\n';
  char buf[32];
  for (const auto& inst : test.instances()) {
    auto p = model.predict(inst.values);
    out << cls.values.at(p.label) << ',' << cls.values.at(inst.class_label) << ','
        << basis_name(p.basis);
    for (std::size_t c = 0; c < cls.values.size(); ++c) {
      out << ',';
      if (c < p.class_scores.size()) {
        std::snprintf(buf, sizeof buf, "%.10g", p.class_scores[c]);
        out << buf;
      }
    }
    out << '\n';
  }
}

}  // namespace carforge
