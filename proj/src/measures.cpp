#include "carforge/measures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

#include "carforge/errors.hpp"

namespace carforge {

namespace {

constexpr std::array<std::string_view, kMeasureCount> kNames = {
    "Support",          "Confidence",
    "Coverage",         "Prevalence",
    "Recall",           "Specificity1",
    "Accuracy",         "Lift",
    "Leverage1",        "AddedValue",
    "RelativeRisk",     "Jaccard",
    "CertaintyFactor",  "OddsRatio",
    "YuleQ",            "YuleY",
    "Klosgen",          "Conviction",
    "CollectiveStrength", "LaplaceCorrection",
    "GiniIndex",        "PhiCoefficient",
    "JMeasure",         "PiatetskyShapiro",
    "Cosine",           "Loevinger",
    "InformationGain",  "SebagSchoenauer",
    "LeastContradiction", "OddMultiplier",
    "ExampleCounterexampleRate", "Zhang",
    "Correlation",      "Leverage2",
    "Coherence",        "Specificity2",
    "AllConfidence",    "MaxConfidence",
    "Kulczynski",       "ChiSquare",
    "WRA",
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// a / b with b == 0 giving +inf, -inf or NaN (undefined) by the sign of a.
double xdiv(double a, double b) {
  if (b == 0.0) {
    if (std::isnan(a) || a == 0.0) return kNaN;
    return a > 0.0 ? kInf : -kInf;
  }
  return a / b;
}

double xmax(double a, double b) { return (std::isnan(a) || std::isnan(b)) ? kNaN : std::max(a, b); }
double xmin(double a, double b) { return (std::isnan(a) || std::isnan(b)) ? kNaN : std::min(a, b); }

// x * log(q), taken as 0 when x == 0.
double xlog(double x, double q) { return x == 0.0 ? 0.0 : x * std::log(q); }

double as_double(std::uint64_t c) { return static_cast<double>(c); }

// Probabilities of one 2x2 table. Complements and conditionals come straight from
// the counts so that quantities which are exactly zero stay exactly zero.
struct Probabilities {
  explicit Probabilities(const ContingencyTable& t) {
    const double n = as_double(t.total());
    xy = as_double(t.n11) / n;
    x_ny = as_double(t.n10) / n;
    nx_y = as_double(t.n01) / n;
    nx_ny = as_double(t.n00) / n;
    x = as_double(t.n_x()) / n;
    y = as_double(t.n_y()) / n;
    nx = as_double(t.n_not_x()) / n;
    ny = as_double(t.n_not_y()) / n;
    y_given_x = xdiv(as_double(t.n11), as_double(t.n_x()));
    ny_given_x = xdiv(as_double(t.n10), as_double(t.n_x()));
    y_given_nx = xdiv(as_double(t.n01), as_double(t.n_not_x()));
    ny_given_nx = xdiv(as_double(t.n00), as_double(t.n_not_x()));
    x_given_y = xdiv(as_double(t.n11), as_double(t.n_y()));
  }

  double xy, x_ny, nx_y, nx_ny;
  double x, y, nx, ny;
  double y_given_x, ny_given_x, y_given_nx, ny_given_nx, x_given_y;
};

double chi_square(const ContingencyTable& t, const Probabilities& p) {
  if (t.n_x() == 0 || t.n_y() == 0 || t.n_not_x() == 0 || t.n_not_y() == 0) return kNaN;
  auto cell = [](double joint, double a, double b) {
    const double e = a * b;
    return (joint - e) * (joint - e) / e;
  };
  return as_double(t.total()) * (cell(p.xy, p.x, p.y) + cell(p.x_ny, p.x, p.ny) +
                                 cell(p.nx_y, p.nx, p.y) + cell(p.nx_ny, p.nx, p.ny));
}

double evaluate_raw(MeasureId m, const ContingencyTable& t, const MeasureOptions& opts) {
  const Probabilities p(t);
  switch (m) {
    case MeasureId::Support:
      return p.xy;
    case MeasureId::Confidence:
      return p.y_given_x;
    case MeasureId::Coverage:
      return p.x;
    case MeasureId::Prevalence:
      return p.y;
    case MeasureId::Recall:
      return p.x_given_y;
    case MeasureId::Specificity1:
      return p.ny_given_nx;
    case MeasureId::Accuracy:
      return p.xy + p.nx_ny;
    case MeasureId::Lift:
      return xdiv(p.y_given_x, p.y);
    case MeasureId::Leverage1:
      return p.y_given_x - p.x * p.y;
    case MeasureId::AddedValue:
      return p.y_given_x - p.y;
    case MeasureId::RelativeRisk:
      return xdiv(p.y_given_x, p.y_given_nx);
    case MeasureId::Jaccard:
    case MeasureId::Coherence:
      return xdiv(p.xy, p.x + p.y - p.xy);
    case MeasureId::CertaintyFactor:
      return xdiv(p.y_given_x - p.y, p.ny);
    case MeasureId::OddsRatio:
      return xdiv(p.xy * p.nx_ny, p.x_ny * p.nx_y);
    case MeasureId::YuleQ: {
      const double ad = p.xy * p.nx_ny, bc = p.x_ny * p.nx_y;
      return xdiv(ad - bc, ad + bc);
    }
    case MeasureId::YuleY: {
      const double ad = std::sqrt(p.xy * p.nx_ny), bc = std::sqrt(p.x_ny * p.nx_y);
      return xdiv(ad - bc, ad + bc);
    }
    case MeasureId::Klosgen: {
      const double gain = p.y_given_x - p.y;
      if (opts.klosgen == KlosgenVariant::A) return std::sqrt(p.xy) * gain;
      return std::sqrt(p.xy) * xmax(gain, p.x_given_y - p.x);
    }
    case MeasureId::Conviction:
      return xdiv(p.x * p.ny, p.x_ny);
    case MeasureId::CollectiveStrength: {
      const double expected = p.x * p.y + p.nx * p.ny;
      const double agree = p.xy + p.nx_ny;
      // 1 - P(X)P(Y) - P(~X)P(~Y) and 1 - P(XY) - P(~X~Y), in complement form.
      const double expected_disagree = p.x * p.ny + p.nx * p.y;
      const double disagree = p.x_ny + p.nx_y;
      return xdiv(agree, expected) * xdiv(expected_disagree, disagree);
    }
    case MeasureId::LaplaceCorrection:
      return (as_double(t.n11) + 1.0) / (as_double(t.n_x()) + 2.0);
    case MeasureId::GiniIndex:
      return p.x * (p.y_given_x * p.y_given_x + p.ny_given_x * p.ny_given_x) +
             p.nx * (p.y_given_nx * p.y_given_nx + p.ny_given_nx * p.ny_given_nx) - p.y * p.y -
             p.ny * p.ny;
    case MeasureId::PhiCoefficient:
      return xdiv(p.xy - p.x * p.y, std::sqrt(p.x * p.y * p.nx * p.ny));
    case MeasureId::JMeasure:
      return xlog(p.xy, xdiv(p.y_given_x, p.y)) + xlog(p.x_ny, xdiv(p.ny_given_x, p.ny));
    case MeasureId::PiatetskyShapiro:
    case MeasureId::Leverage2:
      return p.xy - p.x * p.y;
    case MeasureId::Cosine:
      return xdiv(p.xy, std::sqrt(p.x * p.y));
    case MeasureId::Loevinger:
      return 1.0 - xdiv(p.x * p.ny, p.x_ny);
    case MeasureId::InformationGain:
      return std::log(xdiv(p.xy, p.x * p.y));
    case MeasureId::SebagSchoenauer:
      return xdiv(p.xy, p.x_ny);
    case MeasureId::LeastContradiction:
      return xdiv(p.xy - p.x_ny, p.y);
    case MeasureId::OddMultiplier:
      return xdiv(p.xy * p.ny, p.y * p.x_ny);
    case MeasureId::ExampleCounterexampleRate:
      return 1.0 - xdiv(p.x_ny, p.xy);
    case MeasureId::Zhang:
      return xdiv(p.xy - p.x * p.y, xmax(p.xy * p.ny, p.y * p.x_ny));
    case MeasureId::Correlation:
      return xdiv(p.xy - p.x * p.y, p.x * p.y * p.nx * p.ny);
    case MeasureId::Specificity2:
      return p.nx_ny;
    case MeasureId::AllConfidence:
      return xmin(p.x_given_y, p.y_given_x);
    case MeasureId::MaxConfidence:
      return xmax(p.x_given_y, p.y_given_x);
    case MeasureId::Kulczynski:
      return (p.x_given_y + p.y_given_x) / 2.0;
    case MeasureId::ChiSquare:
      return chi_square(t, p);
    case MeasureId::WRA:
      // P(X) * (P(Y|X) - P(Y)) expanded, so it rounds exactly like PiatetskyShapiro.
      return std::isnan(p.y_given_x) ? kNaN : p.xy - p.x * p.y;
  }
  return kNaN;
}

}  // namespace

const std::array<MeasureId, kMeasureCount>& all_measures() noexcept {
  static const auto ids = [] {
    std::array<MeasureId, kMeasureCount> a{};
    for (std::size_t i = 0; i < kMeasureCount; ++i) a[i] = static_cast<MeasureId>(i);
    return a;
  }();
  return ids;
}

std::string_view measure_name(MeasureId m) noexcept {
  return kNames[static_cast<std::size_t>(m)];
}

std::optional<MeasureId> find_measure(std::string_view name) noexcept {
  auto lower = [](char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); };
  for (std::size_t i = 0; i < kMeasureCount; ++i) {
    const auto& id = kNames[i];
    if (id.size() == name.size() &&
        std::equal(id.begin(), id.end(), name.begin(),
                   [&](char a, char b) { return lower(a) == lower(b); })) {
      return static_cast<MeasureId>(i);
    }
  }
  return std::nullopt;
}

MeasureId parse_measure(std::string_view name) {
  if (auto m = find_measure(name)) return *m;
  throw ConfigError("unknown measure '" + std::string(name) + "'");
}

MeasureValue MeasureValue::from_double(double x) noexcept {
  if (std::isnan(x)) return undefined();
  if (std::isinf(x)) return x > 0 ? pos_infinity() : neg_infinity();
  return MeasureValue(Kind::Finite, x == 0.0 ? 0.0 : x);
}

double MeasureValue::to_double() const noexcept {
  switch (kind_) {
    case Kind::Undefined:
      return kNaN;
    case Kind::NegInfinity:
      return -kInf;
    case Kind::PosInfinity:
      return kInf;
    case Kind::Finite:
      break;
  }
  return value_;
}

std::string MeasureValue::to_string() const {
  switch (kind_) {
    case Kind::Undefined:
      return "undefined";
    case Kind::NegInfinity:
      return "-inf";
    case Kind::PosInfinity:
      return "inf";
    case Kind::Finite:
      break;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

std::strong_ordering operator<=>(const MeasureValue& a, const MeasureValue& b) noexcept {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.kind_ != MeasureValue::Kind::Finite) return std::strong_ordering::equal;
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ > b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

MeasureValue evaluate(MeasureId m, const ContingencyTable& t, const MeasureOptions& opts) {
  if (t.total() == 0) return MeasureValue::undefined();
  return MeasureValue::from_double(evaluate_raw(m, t, opts));
}

MeasureValue max_chi_square(const ContingencyTable& t) {
  const auto n_x = t.n_x(), n_y = t.n_y(), n_nx = t.n_not_x(), n_ny = t.n_not_y();
  if (n_x == 0 || n_y == 0 || n_nx == 0 || n_ny == 0) return MeasureValue::undefined();
  const double n = as_double(t.total());
  const double x = as_double(n_x), y = as_double(n_y), nx = as_double(n_nx), ny = as_double(n_ny);
  const double e = 1.0 / (x * y) + 1.0 / (x * ny) + 1.0 / (nx * y) + 1.0 / (nx * ny);
  const double gap = std::min(x, y) - x * y / n;
  return MeasureValue::from_double(gap * gap * n * e);
}

}  // namespace carforge
