// carforge: mine class association rules, classify with them, and run the
// measure x pipeline experiment matrix.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "carforge/classifier.hpp"
#include "carforge/dataset.hpp"
#include "carforge/errors.hpp"
#include "carforge/harness.hpp"
#include "carforge/mining.hpp"
#include "carforge/ordering.hpp"
#include "carforge/rule_io.hpp"

namespace {

using namespace carforge;

constexpr int kExitData = 1;
constexpr int kExitConfig = 2;

struct CommonOptions {
  std::string data;
  std::string test;
  std::string class_column;
  double min_sup = 0.10;
  double min_conf = 0.50;
  std::size_t max_len = 0;  // 0 = unbounded
  std::size_t max_rules = 100000;
  std::string out;
};

struct EvalOptions {
  std::string pipeline = "csa_baseline";
  std::string measure = "Confidence";
  std::vector<std::string> measures;
  std::size_t top_k = 30000;
  std::size_t cover_threshold = 3;
  bool class_match = false;
  std::string select = "coverage";
  double split = 0.5;
  std::uint64_t seed = 1;
  std::string report = "csv";
  std::string predictions;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--data", o.data, "Training CSV (split unless --test is given)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--class", o.class_column, "Class column name or zero-based index")->required();
  cmd->add_option("--min-sup", o.min_sup, "Minimum support fraction")->capture_default_str();
  cmd->add_option("--min-conf", o.min_conf, "Minimum confidence fraction")->capture_default_str();
  cmd->add_option("--max-len", o.max_len, "Maximum antecedent size (0 = unbounded)");
  cmd->add_option("--max-rules", o.max_rules, "Rule cap (0 = unbounded)")->capture_default_str();
  cmd->add_option("--out", o.out, "Output path (default stdout)");
}

void add_eval(CLI::App* cmd, EvalOptions& o) {
  cmd->add_option("--top-k", o.top_k, "Rules kept by type1/type3 pruning")->capture_default_str();
  cmd->add_option("--cover-threshold", o.cover_threshold, "Covers needed to retire an instance")
      ->capture_default_str();
  cmd->add_flag("--class-match", o.class_match, "Only count covers by rules of the instance's class");
  cmd->add_option("--select", o.select, "Rule selection")
      ->check(CLI::IsMember({"coverage", "all"}))
      ->capture_default_str();
  cmd->add_option("--split", o.split, "Per-class training fraction")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Split seed")->capture_default_str();
  cmd->add_option("--report", o.report, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

MiningConfig mining_config(const CommonOptions& o) {
  MiningConfig cfg;
  cfg.min_support = o.min_sup;
  cfg.min_confidence = o.min_conf;
  if (o.max_len) cfg.max_antecedent_len = o.max_len;
  if (o.max_rules) cfg.max_rules = o.max_rules;
  cfg.validate();
  return cfg;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return in;
}

// Training and test sets sharing one schema.
std::pair<Dataset, Dataset> load_train_test(const CommonOptions& c, const EvalOptions& e) {
  if (c.test.empty()) {
    auto in = open_input(c.data);
    return split_stratified(parse_csv(in, c.class_column), e.split, e.seed);
  }
  auto train_in = open_input(c.data);
  auto test_in = open_input(c.test);
  std::istream* inputs[] = {&train_in, &test_in};
  auto sets = parse_csv_shared(inputs, c.class_column);
  return {std::move(sets[0]), std::move(sets[1])};
}

PipelineConfig pipeline_config(const CommonOptions& c, const EvalOptions& e) {
  PipelineConfig cfg;
  cfg.mining = mining_config(c);
  cfg.type = parse_pipeline(e.pipeline);
  cfg.measure = parse_measure(e.measure);
  cfg.k = e.top_k;
  cfg.coverage.cover_threshold = e.cover_threshold;
  cfg.coverage.require_class_match = e.class_match;
  cfg.selection = e.select == "all" ? SelectionMode::All : SelectionMode::Coverage;
  cfg.split = {e.split, e.seed};
  cfg.validate();
  return cfg;
}

// Runs `write` against --out or stdout.
template <typename F>
void emit(const std::string& path, F&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  write(out);
}

void write_rows(std::ostream& os, const std::string& format, std::span<const ReportRow> rows) {
  if (format == "json") write_report_json(os, rows);
  else write_report_csv(os, rows);
}

void run_mine(const CommonOptions& c, const std::string& ordering) {
  auto cfg = mining_config(c);
  auto strategy = ordering.empty() ? std::optional<OrderingStrategy>{}
                                   : std::optional{OrderingStrategy::parse(ordering)};
  auto in = open_input(c.data);
  auto d = parse_csv(in, c.class_column);
  auto rules = mine_cars(d, cfg);
  if (strategy) rules = order(rules, *strategy);
  emit(c.out, [&](std::ostream& os) { write_rules(os, rules, d.schema()); });
}

void run_classify(const CommonOptions& c, const EvalOptions& e) {
  auto cfg = pipeline_config(c, e);
  auto [train, test] = load_train_test(c, e);
  auto mined = mine_cars(train, cfg.mining);
  auto row = run_on_rules(mined, train, test, cfg);
  emit(c.out, [&](std::ostream& os) { write_rows(os, e.report, std::span(&row, 1)); });

  if (!e.predictions.empty()) {
    auto built = build_classifier(mined, train, cfg);
    emit(e.predictions, [&](std::ostream& os) { write_predictions(os, built.model, test); });
  }
}

void run_matrix_cmd(const CommonOptions& c, const EvalOptions& e) {
  auto cfg = pipeline_config(c, e);
  std::vector<MeasureId> measures;
  if (e.measures.empty()) {
    measures.assign(all_measures().begin(), all_measures().end());
  } else {
    for (const auto& m : e.measures) measures.push_back(parse_measure(m));
  }
  auto [train, test] = load_train_test(c, e);
  auto rows = run_matrix(train, test, cfg, measures, e.threads);
  emit(c.out, [&](std::ostream& os) { write_rows(os, e.report, rows); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Associative classification with class association rules"};
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.require_subcommand(1);
  app.fallthrough();  // --config may follow the subcommand name

  CommonOptions mine_opts, classify_opts, matrix_opts;
  EvalOptions classify_eval, matrix_eval;
  std::string ordering;

  auto* mine = app.add_subcommand("mine", "Mine rules and write them one per line");
  add_common(mine, mine_opts);
  mine->add_option("--ordering", ordering, "csa | acs | mcsa:<m> | sm:<m> | hybrid:<m>:<k>");

  auto* classify = app.add_subcommand("classify", "Run one pipeline and report test accuracy");
  add_common(classify, classify_opts);
  add_eval(classify, classify_eval);
  classify->add_option("--test", classify_opts.test, "Separate test CSV (disables the split)")
      ->check(CLI::ExistingFile);
  classify->add_option("--pipeline", classify_eval.pipeline,
                       "type1 | type2 | type3 | csa_baseline | preprune_csa")
      ->capture_default_str();
  classify->add_option("--measure", classify_eval.measure, "Measure identifier")
      ->capture_default_str();
  classify->add_option("--predictions", classify_eval.predictions, "Per-instance prediction CSV");

  auto* matrix = app.add_subcommand("matrix", "Every measure under every pipeline type");
  add_common(matrix, matrix_opts);
  add_eval(matrix, matrix_eval);
  matrix->add_option("--test", matrix_opts.test, "Separate test CSV (disables the split)")
      ->check(CLI::ExistingFile);
  matrix->add_option("--measure", matrix_eval.measures, "Measures to run (default all)")
      ->delimiter(',');
  matrix->add_option("--threads", matrix_eval.threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*mine) run_mine(mine_opts, ordering);
    else if (*classify) run_classify(classify_opts, classify_eval);
    else if (*matrix) run_matrix_cmd(matrix_opts, matrix_eval);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
