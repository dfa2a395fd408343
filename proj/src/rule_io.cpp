#include "carforge/rule_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "carforge/errors.hpp"

namespace carforge {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

Item parse_item(std::string_view text, const AttributeSchema& schema) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos) throw DataError("expected name=value, got '" + std::string(text) + "'");
  auto name = trim(text.substr(0, eq));
  auto value = trim(text.substr(eq + 1));
  auto a = schema.find_attribute(name);
  if (!a) throw DataError("unknown attribute '" + std::string(name) + "'");
  auto v = schema.attribute(*a).find(value);
  if (!v) throw DataError("unknown value '" + std::string(value) + "' for '" + std::string(name) + "'");
  return Item{*a, *v};
}

}  // namespace

std::string format_rule(const CARRule& rule, const AttributeSchema& schema) {
  std::ostringstream os;
  for (std::size_t i = 0; i < rule.antecedent.size(); ++i) {
    const auto& item = rule.antecedent[i];
    const auto& attr = schema.attribute(item.attribute);
    os << (i ? " & " : "") << attr.name << '=' << attr.values.at(item.value);
  }
  const auto& cls = schema.class_attribute();
  const auto& t = rule.table;
  os << " => " << cls.name << '=' << cls.values.at(rule.consequent) << " ; " << t.n11 << ' '
     << t.n_x() << ' ' << t.n_y() << ' ' << t.total();
  return os.str();
}

CARRule parse_rule(std::string_view line, const AttributeSchema& schema) {
  auto arrow = line.find("=>");
  auto semi = line.find(';');
  if (arrow == std::string_view::npos || semi == std::string_view::npos || semi < arrow) {
    throw DataError("malformed rule line '" + std::string(line) + "'");
  }
  CARRule rule;
  auto lhs = trim(line.substr(0, arrow));
  while (!lhs.empty()) {
    auto amp = lhs.find('&');
    rule.antecedent.push_back(parse_item(lhs.substr(0, amp), schema));
    if (amp == std::string_view::npos) break;
    lhs = trim(lhs.substr(amp + 1));
  }
  std::sort(rule.antecedent.begin(), rule.antecedent.end());
  for (std::size_t i = 0; i < rule.antecedent.size(); ++i) {
    if (rule.antecedent[i].attribute == schema.class_index()) {
      throw DataError("class attribute in antecedent");
    }
    if (i && rule.antecedent[i - 1].attribute == rule.antecedent[i].attribute) {
      throw DataError("attribute repeated in antecedent");
    }
  }

  Item cls = parse_item(trim(line.substr(arrow + 2, semi - arrow - 2)), schema);
  if (cls.attribute != schema.class_index()) throw DataError("consequent is not the class attribute");
  rule.consequent = cls.value;

  std::istringstream counts{std::string(line.substr(semi + 1))};
  std::uint64_t n11 = 0, nx = 0, ny = 0, n = 0;
  if (!(counts >> n11 >> nx >> ny >> n)) throw DataError("rule line lacks four counts");
  rule.table = ContingencyTable::from_margins(n11, nx, ny, n);
  return rule;
}

void write_rules(std::ostream& out, std::span<const CARRule> rules, const AttributeSchema& schema) {
  for (const auto& r : rules) out << format_rule(r, schema) << '\n';
}

std::vector<CARRule> read_rules(std::istream& in, const AttributeSchema& schema) {
  std::vector<CARRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    try {
      rules.push_back(parse_rule(t, schema));
    } catch (const ParseError&) {
      throw;
    } catch (const DataError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return rules;
}

}  // namespace carforge
