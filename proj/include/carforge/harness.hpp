#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "carforge/classifier.hpp"
#include "carforge/dataset.hpp"
#include "carforge/measures.hpp"
#include "carforge/mining.hpp"
#include "carforge/ordering.hpp"
#include "carforge/selection.hpp"

namespace carforge {

enum class PipelineType {
  // Hybrid(measure, k) then coverage.
  Type1,
  // MCSA(measure) over every mined rule.
  Type2,
  // Top k rules by measure, kept in that order.
  Type3,
  CsaBaseline,
  // prune_specific, then CSA.
  PrepruneCsa,
};

std::string_view pipeline_name(PipelineType t) noexcept;
PipelineType parse_pipeline(std::string_view name);

enum class SelectionMode { Coverage, All };

struct SplitConfig {
  double train_fraction = 0.5;
  std::uint64_t seed = 1;
};

struct PipelineConfig {
  MiningConfig mining{0.10, 0.50, std::nullopt, 100000};
  PipelineType type = PipelineType::CsaBaseline;
  MeasureId measure = MeasureId::Confidence;
  std::size_t k = 30000;
  CoverageConfig coverage;
  SelectionMode selection = SelectionMode::Coverage;
  SplitConfig split;

  void validate() const;
  /// Ordering the pipeline applies to the mined rules (after any pre-pruning).
  OrderingStrategy ordering() const;
  bool uses_measure() const noexcept;
};

struct ReportRow {
  std::string measure;  // "none" for the baselines
  PipelineType type = PipelineType::CsaBaseline;
  std::size_t correct = 0;
  std::size_t test_size = 0;
  std::size_t selected_rules = 0;
  std::size_t candidate_rules = 0;  // rules handed to selection
  std::size_t mined_rules = 0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct BuiltClassifier {
  ClassifierModel model;
  std::size_t candidate_rules = 0;  // rules handed to selection
};

/// Pre-prunes, orders and selects `mined` per `cfg`; the default class is the
/// training majority.
BuiltClassifier build_classifier(std::span<const CARRule> mined, const Dataset& train,
                                 const PipelineConfig& cfg);

/// Mines `train`, then orders, selects, builds the model and scores `test`.
ReportRow run_pipeline(const Dataset& train, const Dataset& test, const PipelineConfig& cfg);

/// Same as run_pipeline on an already mined rule set.
ReportRow run_on_rules(std::span<const CARRule> mined, const Dataset& train, const Dataset& test,
                       const PipelineConfig& cfg);

/// Both baselines, then every measure (sorted by name) under Type1, Type2, Type3.
/// Rows run on up to `threads` workers (0 = hardware concurrency); output order is fixed.
std::vector<ReportRow> run_matrix(const Dataset& train, const Dataset& test,
                                  const PipelineConfig& base, std::span<const MeasureId> measures,
                                  unsigned threads = 0);

void write_report_csv(std::ostream& out, std::span<const ReportRow> rows);
void write_report_json(std::ostream& out, std::span<const ReportRow> rows);

}  // namespace carforge
