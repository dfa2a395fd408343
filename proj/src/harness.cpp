#include "carforge/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "carforge/errors.hpp"

namespace carforge {

namespace {

constexpr std::string_view kNoMeasure = "none";

std::vector<CARRule> gather(std::span<const CARRule> rules, std::span<const std::size_t> idx) {
  std::vector<CARRule> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(rules[i]);
  return out;
}

std::string format_accuracy(const ReportRow& r) {
  if (r.test_size == 0) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f",
                static_cast<double>(r.correct) / static_cast<double>(r.test_size));
  return buf;
}

}  // namespace

std::string_view pipeline_name(PipelineType t) noexcept {
  switch (t) {
    case PipelineType::Type1:
      return "type1";
    case PipelineType::Type2:
      return "type2";
    case PipelineType::Type3:
      return "type3";
    case PipelineType::CsaBaseline:
      return "csa_baseline";
    case PipelineType::PrepruneCsa:
      return "preprune_csa";
  }
  return "";
}

PipelineType parse_pipeline(std::string_view name) {
  for (auto t : {PipelineType::Type1, PipelineType::Type2, PipelineType::Type3,
                 PipelineType::CsaBaseline, PipelineType::PrepruneCsa}) {
    if (pipeline_name(t) == name) return t;
  }
  throw ConfigError("unknown pipeline '" + std::string(name) + "'");
}

bool PipelineConfig::uses_measure() const noexcept {
  return type == PipelineType::Type1 || type == PipelineType::Type2 || type == PipelineType::Type3;
}

void PipelineConfig::validate() const {
  mining.validate();
  coverage.validate();
  if (k == 0) throw ConfigError("k must be >= 1");
  if (mining.max_rules && k > *mining.max_rules) {
    throw ConfigError("k (" + std::to_string(k) + ") exceeds max_rules (" +
                      std::to_string(*mining.max_rules) + ")");
  }
  if (!(split.train_fraction > 0.0 && split.train_fraction <= 1.0)) {
    throw ConfigError("train fraction must lie in (0, 1]");
  }
}

OrderingStrategy PipelineConfig::ordering() const {
  switch (type) {
    case PipelineType::Type1:
      return OrderingStrategy::hybrid(measure, k);
    case PipelineType::Type2:
      return OrderingStrategy::mcsa(measure);
    case PipelineType::Type3:
      return OrderingStrategy::sm(measure);
    case PipelineType::CsaBaseline:
    case PipelineType::PrepruneCsa:
      break;
  }
  return OrderingStrategy::csa();
}

BuiltClassifier build_classifier(std::span<const CARRule> mined, const Dataset& train,
                                 const PipelineConfig& cfg) {
  cfg.validate();
  std::vector<CARRule> preprocessed;
  std::span<const CARRule> pool = mined;
  if (cfg.type == PipelineType::PrepruneCsa) {
    preprocessed = prune_specific(mined);
    pool = preprocessed;
  }

  auto idx = order_indices(pool, cfg.ordering());
  if (cfg.type == PipelineType::Type3 && idx.size() > cfg.k) idx.resize(cfg.k);

  std::vector<CARRule> selected;
  if (cfg.selection == SelectionMode::Coverage) {
    auto trace = run_coverage(pool, idx, train, cfg.coverage);
    selected.reserve(trace.selected.size());
    for (auto pos : trace.selected) selected.push_back(pool[idx[pos]]);
  } else {
    selected = gather(pool, idx);
  }
  return {ClassifierModel(std::move(selected), majority_class(train), train.schema()), idx.size()};
}

ReportRow run_on_rules(std::span<const CARRule> mined, const Dataset& train, const Dataset& test,
                       const PipelineConfig& cfg) {
  if (!(train.schema() == test.schema())) throw DataError("train and test schemas differ");
  auto built = build_classifier(mined, train, cfg);

  ReportRow row;
  row.measure = cfg.uses_measure() ? std::string(measure_name(cfg.measure)) : std::string(kNoMeasure);
  row.type = cfg.type;
  row.selected_rules = built.model.rules().size();
  row.candidate_rules = built.candidate_rules;
  row.mined_rules = mined.size();

  auto acc = evaluate_accuracy(built.model, test);
  row.correct = acc.correct;
  row.test_size = acc.total;
  return row;
}

ReportRow run_pipeline(const Dataset& train, const Dataset& test, const PipelineConfig& cfg) {
  cfg.validate();
  auto mined = mine_cars(train, cfg.mining);
  return run_on_rules(mined, train, test, cfg);
}

std::vector<ReportRow> run_matrix(const Dataset& train, const Dataset& test,
                                  const PipelineConfig& base, std::span<const MeasureId> measures,
                                  unsigned threads) {
  if (measures.empty()) throw ConfigError("measure list is empty");
  base.validate();

  std::vector<MeasureId> sorted(measures.begin(), measures.end());
  std::sort(sorted.begin(), sorted.end(),
            [](MeasureId a, MeasureId b) { return measure_name(a) < measure_name(b); });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<PipelineConfig> jobs;
  for (auto t : {PipelineType::CsaBaseline, PipelineType::PrepruneCsa}) {
    auto cfg = base;
    cfg.type = t;
    jobs.push_back(cfg);
  }
  for (auto m : sorted) {
    for (auto t : {PipelineType::Type1, PipelineType::Type2, PipelineType::Type3}) {
      auto cfg = base;
      cfg.type = t;
      cfg.measure = m;
      jobs.push_back(cfg);
    }
  }

  const auto mined = mine_cars(train, base.mining);
  std::vector<ReportRow> rows(jobs.size());

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        rows[i] = run_on_rules(mined, train, test, jobs[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_report_csv(std::ostream& out, std::span<const ReportRow> rows) {
  out << "measure,pipeline,correct,test_size,accuracy,selected_rules,candidate_rules,mined_rules\n";
  for (const auto& r : rows) {
    out << r.measure << ',' << pipeline_name(r.type) << ',' << r.correct << ',' << r.test_size << ','
        << format_accuracy(r) << ',' << r.selected_rules << ',' << r.candidate_rules << ','
        << r.mined_rules << '\n';
  }
}

void write_report_json(std::ostream& out, std::span<const ReportRow> rows) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["measure"] = r.measure;
    j["pipeline"] = pipeline_name(r.type);
    j["correct"] = r.correct;
    j["test_size"] = r.test_size;
    j["selected_rules"] = r.selected_rules;
    j["candidate_rules"] = r.candidate_rules;
    j["mined_rules"] = r.mined_rules;
    doc.push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace carforge
