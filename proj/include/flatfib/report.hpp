#ifndef FLATFIB_REPORT_HPP
#define FLATFIB_REPORT_HPP

// Report documents for the command-line tool: input echo, verdicts, the
// fibration report and labels, serialized as JSON, TSV, or aligned text.
//
// JSON schema (keys in this order):
//   input        { it, name, group: [isometry], subgroup: [isometry] }
//   diagnostics  { normal, complete, notes: [text] }
//   fibration    { type, fiber, base, splits }
//   dual         { exists, type, fiber, base, splits }      (nulls if absent)
//   structure_group { order ("infinite" or integer), iso_type, elements, actions: [[V/N, V⊥/K]] }
//   label, dual_label   text or null
//   row          the eight table columns
//   expected, match     only for catalog comparisons
//
// Isometries are written "a | A", the same syntax the group files use.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "flatfib/calabi.hpp"
#include "flatfib/catalog.hpp"
#include "flatfib/classify.hpp"
#include "flatfib/errors.hpp"

namespace flatfib {

using ordered_json = nlohmann::ordered_json;

/// The eight table columns of one fibration, as text.
struct TableRow {
  std::string no, cn, fibration, split, dual, dual_split, group, action;

  std::vector<std::string> cells() const { return {no, cn, fibration, split, dual, dual_split, group, action}; }
};

inline const std::vector<std::string>& table_header() {
  static const std::vector<std::string> h{"no.", "CN", "fibr.", "split", "dual", "split", "grp.", "structure group action"};
  return h;
}

struct ReportDocument {
  std::optional<int> it;
  std::string name;
  std::vector<Isometry> group;
  std::vector<Isometry> subgroup;
  bool normal = false;
  bool complete = false;
  std::vector<std::string> notes;
  FibrationReport report;
  IsoClassLabel label;
  std::optional<IsoClassLabel> dual_label;
  std::optional<TableExpectation> expected;

  TableRow row() const {
    return TableRow{it ? std::to_string(*it) : "-",
                    name.empty() ? "-" : name,
                    report.type(),
                    report.splits ? "Yes" : "No",
                    report.dual_type(),
                    report.dual_splits ? (*report.dual_splits ? "Yes" : "No") : "-",
                    report.structure.finite() ? report.structure.iso_type() : "infinite",
                    report.structure.finite() ? report.action_text() : "-"};
  }

  /// Column names that disagree with the expectation; empty when matching
  /// or when there is nothing to compare against.
  std::vector<std::string> mismatches() const {
    std::vector<std::string> out;
    if (!expected) return out;
    const TableRow r = row();
    auto cmp = [&](const char* what, const std::string& got, const std::string& want) {
      if (got != want) out.push_back(std::string(what) + ": got '" + got + "', expected '" + want + "'");
    };
    cmp("fibration", r.fibration, expected->fibration);
    cmp("split", r.split, expected->split);
    cmp("dual", r.dual, expected->dual);
    cmp("dual split", r.dual_split, expected->dual_split);
    cmp("group", r.group, expected->group);
    cmp("action", r.action, expected->action);
    cmp("label", label.to_string(), expected->label);
    cmp("dual label", dual_label ? dual_label->to_string() : "-", expected->dual_label);
    return out;
  }
  bool matches() const { return expected && mismatches().empty(); }
};

/// Builds the full report for (group, N), rejecting N that is not a
/// complete normal subgroup.
inline ReportDocument make_report(const SubgroupDesignation& n) {
  ReportDocument doc;
  doc.group = n.parent().generators();
  doc.subgroup = n.generators();
  if (n.dim() != 2) throw rejected_input("reports are only produced for 2-dimensional groups");
  doc.normal = is_normal(n);
  if (!doc.normal) throw rejected_input("subgroup is not normal");
  doc.complete = is_complete(n);
  if (!doc.complete) throw rejected_input("subgroup is not complete");
  const CalabiDecomposition d(n);
  if (d.v().dim() != 1) throw rejected_input("subgroup span must be 1-dimensional");
  doc.notes.push_back("N is normal and complete; span(N) = " + d.v().to_string());
  doc.notes.push_back("K = " + std::to_string(d.k_sub().generators().size()) + " generators, span(K) = " +
                      span(d.k_sub()).to_string());
  doc.report = fibration_report(d);
  doc.label = classify_fibration(d);
  const IsoClassLabel direct = classify_fibration_direct(d);
  if (!(direct == doc.label))
    throw internal_error("label routes disagree: " + doc.label.to_string() + " vs " + direct.to_string());
  if (auto dual = orthogonal_dual(d)) {
    doc.dual_label = classify_fibration(CalabiDecomposition(*dual));
  } else {
    doc.notes.push_back("K does not span the orthogonal complement; no orthogonal dual");
  }
  return doc;
}

inline ReportDocument make_report(const CatalogEntry& e) {
  ReportDocument doc = make_report(e.subgroup());
  doc.it = e.it;
  doc.name = e.conway;
  doc.expected = e.expected;
  return doc;
}

namespace detail {

inline ordered_json isometries_json(const std::vector<Isometry>& xs) {
  ordered_json a = ordered_json::array();
  for (const auto& x : xs) a.push_back(x.to_string());
  return a;
}

inline ordered_json expectation_json(const TableExpectation& e) {
  ordered_json j;
  j["fibration"] = e.fibration;
  j["split"] = e.split;
  j["dual"] = e.dual;
  j["dual_split"] = e.dual_split;
  j["group"] = e.group;
  j["action"] = e.action;
  j["label"] = e.label;
  j["dual_label"] = e.dual_label;
  return j;
}

inline std::string kind_text(const std::optional<OneOrbifoldKind>& k) { return k ? to_string(*k) : ""; }

}  // namespace detail

inline ordered_json to_json(const ReportDocument& doc) {
  ordered_json j;
  j["input"]["it"] = doc.it ? ordered_json(*doc.it) : ordered_json(nullptr);
  j["input"]["name"] = doc.name.empty() ? ordered_json(nullptr) : ordered_json(doc.name);
  j["input"]["group"] = detail::isometries_json(doc.group);
  j["input"]["subgroup"] = detail::isometries_json(doc.subgroup);
  j["diagnostics"]["normal"] = doc.normal;
  j["diagnostics"]["complete"] = doc.complete;
  j["diagnostics"]["notes"] = doc.notes;

  const FibrationReport& r = doc.report;
  j["fibration"]["type"] = r.type();
  j["fibration"]["fiber"] = to_string(r.fiber_kind);
  j["fibration"]["base"] = to_string(r.base_kind);
  j["fibration"]["splits"] = r.splits;
  j["dual"]["exists"] = r.dual_exists;
  if (r.dual_exists) {
    j["dual"]["type"] = r.dual_type();
    j["dual"]["fiber"] = detail::kind_text(r.dual_fiber_kind);
    j["dual"]["base"] = detail::kind_text(r.dual_base_kind);
    j["dual"]["splits"] = *r.dual_splits;
  } else {
    for (const char* k : {"type", "fiber", "base", "splits"}) j["dual"][k] = nullptr;
  }

  const StructureGroup& s = r.structure;
  auto& sg = j["structure_group"];
  sg["order"] = s.order ? ordered_json(*s.order) : ordered_json("infinite");
  sg["iso_type"] = s.finite() ? ordered_json(s.iso_type()) : ordered_json(nullptr);
  sg["elements"] = detail::isometries_json(s.elements);
  sg["actions"] = ordered_json::array();
  for (const auto& [a, b] : s.element_actions) sg["actions"].push_back({a.to_string(), b.to_string()});

  j["label"] = doc.label.to_string();
  j["dual_label"] = doc.dual_label ? ordered_json(doc.dual_label->to_string()) : ordered_json(nullptr);

  const TableRow row = doc.row();
  static const std::vector<std::string> keys{"no", "cn", "fibration", "split", "dual", "dual_split", "group", "action"};
  const auto cells = row.cells();
  for (std::size_t i = 0; i < keys.size(); ++i) j["row"][keys[i]] = cells[i];

  if (doc.expected) {
    j["expected"] = detail::expectation_json(*doc.expected);
    j["match"] = doc.matches();
    j["mismatches"] = doc.mismatches();
  }
  return j;
}

inline std::string tsv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += '\t';
    s += cells[i];
  }
  return s + '\n';
}

inline std::string to_text(const ReportDocument& doc) {
  std::ostringstream out;
  auto line = [&](const std::string& k, const std::string& v) { out << k << std::string(k.size() < 18 ? 18 - k.size() : 1, ' ') << v << '\n'; };
  if (doc.it) line("IT number", std::to_string(*doc.it) + (doc.name.empty() ? "" : " (" + doc.name + ")"));
  for (std::size_t i = 0; i < doc.group.size(); ++i) line(i ? "" : "group", doc.group[i].to_string());
  for (std::size_t i = 0; i < doc.subgroup.size(); ++i) line(i ? "" : "N", doc.subgroup[i].to_string());
  line("normal", doc.normal ? "yes" : "no");
  line("complete", doc.complete ? "yes" : "no");
  const FibrationReport& r = doc.report;
  line("fibration", r.type() + "  fiber " + to_string(r.fiber_kind) + ", base " + to_string(r.base_kind) +
                        ", splits " + (r.splits ? "yes" : "no"));
  if (r.dual_exists)
    line("dual", r.dual_type() + "  fiber " + detail::kind_text(r.dual_fiber_kind) + ", base " +
                     detail::kind_text(r.dual_base_kind) + ", splits " + (*r.dual_splits ? "yes" : "no"));
  else
    line("dual", "none");
  const StructureGroup& s = r.structure;
  if (s.finite()) {
    line("structure group", s.iso_type() + ", order " + std::to_string(*s.order));
    line("actions", r.action_text());
  } else {
    line("structure group", "infinite");
  }
  line("label", doc.label.to_string());
  line("dual label", doc.dual_label ? doc.dual_label->to_string() : "-");
  for (const auto& n : doc.notes) line("note", n);
  if (doc.expected) {
    const auto bad = doc.mismatches();
    line("check", bad.empty() ? "PASS" : "FAIL");
    for (const auto& b : bad) line("mismatch", b);
  }
  return out.str();
}

/// Table over several documents; with `check`, a trailing pass/fail column
/// and the expected values of failing rows.
inline std::string table_text(const std::vector<ReportDocument>& docs, bool check) {
  std::vector<std::vector<std::string>> rows{table_header()};
  if (check) rows.front().push_back("check");
  for (const auto& d : docs) {
    auto cells = d.row().cells();
    if (check) cells.push_back(d.matches() ? "PASS" : "FAIL");
    rows.push_back(std::move(cells));
  }
  // Column widths count code points so "·" aligns like an ASCII character.
  auto width = [](const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
  };
  std::vector<std::size_t> w(rows.front().size(), 0);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], width(r[i]));
  std::ostringstream out;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      out << r[i];
      if (i + 1 < r.size()) out << std::string(w[i] - width(r[i]) + 2, ' ');
    }
    out << '\n';
  }
  if (check) {
    for (const auto& d : docs)
      for (const auto& m : d.mismatches()) out << "row " << d.row().no << ": " << m << '\n';
  }
  return out.str();
}

// ---- input parsing -------------------------------------------------------

/// Parses a list of isometries from text: one "a | A" per line, '#'
/// comments and blank lines ignored. A document starting with '{' is read
/// as JSON and the isometries are taken from input.<key>.
inline std::vector<Isometry> parse_isometry_list(const std::string& text, const std::string& json_key = "group") {
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<Isometry> out;
  if (first != std::string::npos && text[first] == '{') {
    ordered_json j;
    try {
      j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("input") || !j["input"].contains(json_key) || !j["input"][json_key].is_array())
      throw parse_error("JSON document lacks input." + json_key + " array");
    for (const auto& s : j["input"][json_key]) {
      if (!s.is_string()) throw parse_error("input." + json_key + " entries must be strings");
      out.push_back(parse_isometry(s.get<std::string>()));
    }
  } else {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      out.push_back(parse_isometry(line));
    }
  }
  if (out.empty()) throw parse_error("no isometries found");
  const std::size_t n = out.front().dim();
  for (const auto& x : out)
    if (x.dim() != n) throw parse_error("isometries of different dimensions");
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw parse_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline bool is_it_number(const std::string& s) {
  return !s.empty() && s.size() <= 3 && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// ---- census ----------------------------------------------------------------

struct CensusBlock {
  std::string type;
  QuotientKind delta;
  OneOrbifoldKind fiber;
  std::vector<IsoClassLabel> labels;
  std::vector<std::vector<int>> computed_rows;  // rows whose fibration or dual realizes the label
  std::vector<std::vector<int>> expected_rows;  // same, from the catalog's expected labels
};

struct Census {
  std::vector<CensusBlock> blocks;

  std::size_t count() const {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.labels.size();
    return n;
  }
  bool consistent() const {
    for (const auto& b : blocks)
      if (b.computed_rows != b.expected_rows) return false;
    return true;
  }
};

/// All affine classes of 2-dimensional fibrations with 1-dimensional fiber
/// and base, grouped by type, with the catalog rows realizing each.
inline Census make_census(const Catalog& cat) {
  Census c;
  const std::vector<std::pair<QuotientKind, OneOrbifoldKind>> order{
      {QuotientKind::InfiniteCyclic, OneOrbifoldKind::Circle},
      {QuotientKind::InfiniteCyclic, OneOrbifoldKind::Interval},
      {QuotientKind::InfiniteDihedral, OneOrbifoldKind::Interval},
      {QuotientKind::InfiniteDihedral, OneOrbifoldKind::Circle}};
  std::vector<ReportDocument> docs;
  for (const auto& e : cat.entries()) docs.push_back(make_report(e));
  for (const auto& [delta, fiber] : order) {
    CensusBlock b{fibration_type(fiber, base_kind_of(delta)), delta, fiber, enumerate_iso(delta, fiber), {}, {}};
    for (const auto& l : b.labels) {
      std::vector<int> got, want;
      for (const auto& d : docs) {
        const int it = d.it.value_or(0);
        if (d.label == l || (d.dual_label && *d.dual_label == l)) got.push_back(it);
        if (d.expected && (d.expected->label == l.to_string() || d.expected->dual_label == l.to_string()))
          want.push_back(it);
      }
      b.computed_rows.push_back(std::move(got));
      b.expected_rows.push_back(std::move(want));
    }
    c.blocks.push_back(std::move(b));
  }
  return c;
}

inline std::string rows_text(const std::vector<int>& rows) {
  if (rows.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < rows.size(); ++i) s += (i ? "," : "") + std::to_string(rows[i]);
  return s;
}

inline ordered_json to_json(const Census& c) {
  ordered_json j;
  j["count"] = c.count();
  j["consistent"] = c.consistent();
  j["blocks"] = ordered_json::array();
  for (const auto& b : c.blocks) {
    ordered_json jb;
    jb["type"] = b.type;
    jb["count"] = b.labels.size();
    jb["labels"] = ordered_json::array();
    for (std::size_t i = 0; i < b.labels.size(); ++i) {
      ordered_json jl;
      jl["label"] = b.labels[i].to_string();
      jl["rows"] = b.computed_rows[i];
      jl["expected_rows"] = b.expected_rows[i];
      jb["labels"].push_back(std::move(jl));
    }
    j["blocks"].push_back(std::move(jb));
  }
  return j;
}

inline std::string census_tsv(const Census& c) {
  std::string s = tsv_line({"type", "label", "rows", "expected rows"});
  for (const auto& b : c.blocks)
    for (std::size_t i = 0; i < b.labels.size(); ++i)
      s += tsv_line({b.type, b.labels[i].pair_text(), rows_text(b.computed_rows[i]), rows_text(b.expected_rows[i])});
  return s;
}

inline std::string census_text(const Census& c) {
  std::ostringstream out;
  for (const auto& b : c.blocks) {
    out << b.type << "  " << b.labels.size() << " classes\n";
    for (std::size_t i = 0; i < b.labels.size(); ++i) {
      const std::string p = b.labels[i].pair_text();
      out << "  " << p << std::string(p.size() < 20 ? 20 - p.size() : 1, ' ') << "rows " << rows_text(b.computed_rows[i]);
      if (b.computed_rows[i] != b.expected_rows[i]) out << "  (expected " << rows_text(b.expected_rows[i]) << ")";
      out << '\n';
    }
  }
  std::string counts;
  for (const auto& b : c.blocks) counts += (counts.empty() ? "" : " + ") + std::to_string(b.labels.size());
  out << "total " << counts << " = " << c.count() << '\n';
  return out.str();
}

}  // namespace flatfib

#endif  // FLATFIB_REPORT_HPP
