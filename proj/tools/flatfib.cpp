// flatfib: classify co-Seifert fibrations of 2-dimensional space groups.
//
//   flatfib classify --group <file|IT#> [--subgroup <file|auto>] [--format json|tsv|text]
//   flatfib table1   [--format json|tsv|text] [--catalog path]
//   flatfib census   [--format json|tsv|text] [--catalog path]
//
// Exit codes: 0 success, 1 parse/usage error, 2 rejected input, 3 table or
// census mismatch, 4 internal error.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "flatfib/flatfib.hpp"

namespace {

using namespace flatfib;

enum Exit { ok = 0, parse_failure = 1, rejected = 2, mismatch = 3, internal = 4 };

const Catalog& active_catalog(const std::string& flag_path) {
  static std::optional<Catalog> loaded;
  if (!flag_path.empty()) return loaded.emplace(Catalog::load(flag_path));
  if (const char* env = std::getenv("FLATFIB_CATALOG"); env && *env) return loaded.emplace(Catalog::load(env));
  return Catalog::builtin();
}

int run_classify(const std::string& group_src, const std::string& subgroup_src, const std::string& format,
                 const std::string& catalog_path) {
  ReportDocument doc;
  if (is_it_number(group_src)) {
    const int it = std::stoi(group_src);
    const CatalogEntry* e = nullptr;
    try {
      e = &active_catalog(catalog_path).entry(it);
    } catch (const std::out_of_range&) {
      throw parse_error("no catalog group with IT number " + group_src);
    }
    if (subgroup_src == "auto") {
      doc = make_report(*e);
    } else {
      doc = make_report(SubgroupDesignation(e->group, parse_isometry_list(read_file(subgroup_src), "subgroup")));
      doc.it = e->it;
      doc.name = e->conway;
    }
  } else {
    const SpaceGroup g(parse_isometry_list(read_file(group_src), "group"));
    if (subgroup_src == "auto")
      doc = make_report(auto_subgroup(g));
    else
      doc = make_report(SubgroupDesignation(g, parse_isometry_list(read_file(subgroup_src), "subgroup")));
  }
  if (format == "json")
    std::cout << to_json(doc).dump(2) << '\n';
  else if (format == "tsv")
    std::cout << tsv_line(table_header()) << tsv_line(doc.row().cells());
  else
    std::cout << to_text(doc);
  return ok;
}

int run_table1(const std::string& format, const std::string& catalog_path) {
  std::vector<ReportDocument> docs;
  for (const auto& e : active_catalog(catalog_path).entries()) docs.push_back(make_report(e));
  bool all = docs.size() == 9;
  for (const auto& d : docs) all = all && d.matches();
  if (format == "json") {
    ordered_json a = ordered_json::array();
    for (const auto& d : docs) a.push_back(to_json(d));
    std::cout << a.dump(2) << '\n';
  } else if (format == "tsv") {
    auto header = table_header();
    header.push_back("check");
    std::cout << tsv_line(header);
    for (const auto& d : docs) {
      auto cells = d.row().cells();
      cells.push_back(d.matches() ? "PASS" : "FAIL");
      std::cout << tsv_line(cells);
    }
  } else {
    std::size_t pass = 0;
    for (const auto& d : docs) pass += d.matches() ? 1 : 0;
    std::cout << table_text(docs, true) << pass << "/" << docs.size() << " rows " << (all ? "PASS" : "FAIL") << '\n';
  }
  return all ? ok : mismatch;
}

int run_census(const std::string& format, const std::string& catalog_path) {
  const Census c = make_census(active_catalog(catalog_path));
  if (format == "json")
    std::cout << to_json(c).dump(2) << '\n';
  else if (format == "tsv")
    std::cout << census_tsv(c);
  else
    std::cout << census_text(c);
  return c.consistent() ? ok : mismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Co-Seifert fibrations of 2-dimensional space groups"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string catalog_path;
  std::string group_src;
  std::string subgroup_src = "auto";
  const std::vector<std::string> formats{"json", "tsv", "text"};

  auto* classify = app.add_subcommand("classify", "Report the fibration of a group over a complete normal subgroup");
  classify->add_option("--group", group_src, "Group file (one 'a | A' per line, or a JSON report) or IT number 1-9")
      ->required();
  classify->add_option("--subgroup", subgroup_src, "Subgroup file, or 'auto'")->capture_default_str();
  classify->add_option("--format", format)->check(CLI::IsMember(formats))->capture_default_str();
  classify->add_option("--catalog", catalog_path, "Catalog file (overrides FLATFIB_CATALOG)");

  auto* table1 = app.add_subcommand("table1", "Compute every catalog row and compare with the expected table");
  table1->add_option("--format", format)->check(CLI::IsMember(formats))->capture_default_str();
  table1->add_option("--catalog", catalog_path, "Catalog file (overrides FLATFIB_CATALOG)");

  auto* census = app.add_subcommand("census", "List all affine classes and the catalog rows realizing them");
  census->add_option("--format", format)->check(CLI::IsMember(formats))->capture_default_str();
  census->add_option("--catalog", catalog_path, "Catalog file (overrides FLATFIB_CATALOG)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : parse_failure;
  }

  try {
    if (*classify) return run_classify(group_src, subgroup_src, format, catalog_path);
    if (*table1) return run_table1(format, catalog_path);
    if (*census) return run_census(format, catalog_path);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return parse_failure;
  } catch (const rejected_input& e) {
    std::cerr << "rejected: " << e.what() << '\n';
    return rejected;
  } catch (const std::overflow_error& e) {
    std::cerr << "rejected: " << e.what() << '\n';
    return rejected;
  } catch (const std::invalid_argument& e) {
    std::cerr << "rejected: " << e.what() << '\n';
    return rejected;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return internal;
  }
  return parse_failure;
}
