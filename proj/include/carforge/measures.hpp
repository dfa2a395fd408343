#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "carforge/contingency_table.hpp"

namespace carforge {

enum class MeasureId : std::uint8_t {
  Support,
  Confidence,
  Coverage,
  Prevalence,
  Recall,
  Specificity1,
  Accuracy,
  Lift,
  Leverage1,
  AddedValue,
  RelativeRisk,
  Jaccard,
  CertaintyFactor,
  OddsRatio,
  YuleQ,
  YuleY,
  Klosgen,
  Conviction,
  CollectiveStrength,
  LaplaceCorrection,
  GiniIndex,
  PhiCoefficient,
  JMeasure,
  PiatetskyShapiro,
  Cosine,
  Loevinger,
  InformationGain,
  SebagSchoenauer,
  LeastContradiction,
  OddMultiplier,
  ExampleCounterexampleRate,
  Zhang,
  Correlation,
  Leverage2,
  Coherence,
  Specificity2,
  AllConfidence,
  MaxConfidence,
  Kulczynski,
  ChiSquare,
  WRA,
};

inline constexpr std::size_t kMeasureCount = 41;

const std::array<MeasureId, kMeasureCount>& all_measures() noexcept;

/// Identifier spelling, e.g. "PiatetskyShapiro".
std::string_view measure_name(MeasureId m) noexcept;

/// Case-insensitive lookup of an identifier.
std::optional<MeasureId> find_measure(std::string_view name) noexcept;

/// Like find_measure, but throws ConfigError for unknown names.
MeasureId parse_measure(std::string_view name);

/// Extended real: undefined < -inf < finite < +inf.
class MeasureValue {
 public:
  enum class Kind : std::uint8_t { Undefined, NegInfinity, Finite, PosInfinity };

  constexpr MeasureValue() noexcept = default;

  /// NaN maps to undefined and infinities to their kinds; -0 is normalised to +0.
  static MeasureValue from_double(double x) noexcept;
  static constexpr MeasureValue undefined() noexcept { return MeasureValue(Kind::Undefined, 0.0); }
  static constexpr MeasureValue pos_infinity() noexcept { return MeasureValue(Kind::PosInfinity, 0.0); }
  static constexpr MeasureValue neg_infinity() noexcept { return MeasureValue(Kind::NegInfinity, 0.0); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  bool is_undefined() const noexcept { return kind_ == Kind::Undefined; }

  /// Finite value, +-infinity, or NaN for undefined.
  double to_double() const noexcept;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const MeasureValue& a, const MeasureValue& b) noexcept;
  friend bool operator==(const MeasureValue& a, const MeasureValue& b) noexcept {
    return (a <=> b) == 0;
  }

 private:
  constexpr MeasureValue(Kind k, double v) noexcept : kind_(k), value_(v) {}

  Kind kind_ = Kind::Undefined;
  double value_ = 0.0;
};

enum class KlosgenVariant : std::uint8_t {
  // sqrt(P(XY)) * (P(Y|X) - P(Y))
  A,
  // sqrt(P(XY)) * max(P(Y|X) - P(Y), P(X|Y) - P(X))
  B,
};

struct MeasureOptions {
  KlosgenVariant klosgen = KlosgenVariant::A;
};

MeasureValue evaluate(MeasureId m, const ContingencyTable& t, const MeasureOptions& opts = {});

/// Largest chi-square reachable with the margins of `t` when the antecedent and class
/// co-occur as much as possible. Undefined when any margin is zero.
MeasureValue max_chi_square(const ContingencyTable& t);

}  // namespace carforge
