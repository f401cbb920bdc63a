#ifndef FLATFIB_CATALOG_HPP
#define FLATFIB_CATALOG_HPP

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "flatfib/calabi.hpp"
#include "flatfib/errors.hpp"
#include "flatfib/group.hpp"

namespace flatfib {

/// Catalog file format, one block per group:
///
///   [entry]
///   it = 8
///   conway = 22x
///   name = pgg
///   gen = 1/2 1/2 | 1 0 ; 0 -1     (one line per generator, "a | A")
///   subgroup = auto                 (or one `ngen = a | A` line per N generator)
///   fibration = (-)                 (expected columns follow)
///   ...
///   [end]
///
/// Blank lines and lines starting with '#' are ignored. `subgroup = auto`
/// picks the completion along the first coordinate axis whose fibration
/// type matches the `fibration` column.
inline constexpr std::string_view builtin_catalog_text = R"(# Wallpaper groups with IT numbers 1-9, orthonormal coordinates.
# Every group is oriented so that the designated N is the completion of
# its translations along e1. B = diag(1,-1), C = diag(-1,1).
# Expected columns are the Seifert / dual Seifert table for these groups;
# `label` and `dual_label` are the affine classes of the fibration and dual.

[entry]
it = 1
conway = o
name = p1
gen = 1 0 | 1 0 ; 0 1
gen = 0 1 | 1 0 ; 0 1
subgroup = auto
fibration = (·)
split = Yes
dual = (·)
dual_split = Yes
group = C1
action = (idt., idt.)
label = (·) {idt., idt.}
dual_label = (·) {idt., idt.}
[end]

[entry]
it = 2
conway = 2222
name = p2
gen = 1 0 | 1 0 ; 0 1
gen = 0 1 | 1 0 ; 0 1
gen = 0 0 | -1 0 ; 0 -1
subgroup = auto
fibration = (-)
split = Yes
dual = (-)
dual_split = Yes
group = C2
action = (ref., ref.)
label = (-) {ref., ref.}
dual_label = (-) {ref., ref.}
[end]

[entry]
it = 3
conway = **
name = pm
gen = 1 0 | 1 0 ; 0 1
gen = 0 1 | 1 0 ; 0 1
gen = 0 0 | 1 0 ; 0 -1
subgroup = auto
fibration = (-)
split = Yes
dual = [·]
dual_split = Yes
group = C1
action = (idt., idt.)
label = (-) {idt., idt.}
dual_label = [·] {idt., idt.}
[end]

[entry]
it = 4
conway = xx
name = pg
gen = 1 0 | 1 0 ; 0 1
gen = 0 1 | 1 0 ; 0 1
gen = 1/2 0 | 1 0 ; 0 -1
subgroup = auto
fibration = (-)
split = No
dual = (·)
dual_split = Yes
group = C2
action = (2-rot., ref.)
label = (-) {2-rot., 2-rot.}
dual_label = (·) {ref., ref.}
[end]

[entry]
it = 5
conway = *x
name = cm
gen = 1 0 | 1 0 ; 0 1
gen = 1/2 1/2 | 1 0 ; 0 1
gen = 0 0 | 1 0 ; 0 -1
subgroup = auto
fibration = (-)
split = No
dual = [·]
dual_split = Yes
group = C2
action = (2-rot., ref.)
label = (-) {idt., 2-rot.}
dual_label = [·] {ref., ref.}
[end]

[entry]
it = 6
conway = *2222
name = pmm
gen = 1 0 | 1 0 ; 0 1
gen = 0 1 | 1 0 ; 0 1
gen = 0 0 | 1 0 ; 0 -1
gen = 0 0 | -1 0 ; 0 1
subgroup = auto
fibration = [-]
split = Yes
dual = [-]
dual_split = Yes
group = C1
action = (idt., idt.)
label = [-] {idt., idt.}
dual_label = [-] {idt., idt.}
[end]

[entry]
it = 7
conway = 22*
name = pmg
gen = 1 0 | 1 0 ; 0 1
gen = 0 1 | 1 0 ; 0 1
gen = 0 1/2 | 1 0 ; 0 -1
gen = 0 0 | -1 0 ; 0 -1
subgroup = auto
fibration = (-)
split = Yes
dual = [-]
dual_split = Yes
group = C2
action = (ref., ref.)
label = (-) {idt., ref.}
dual_label = [-] {ref., ref.}
[end]

[entry]
it = 8
conway = 22x
name = pgg
gen = 1 0 | 1 0 ; 0 1
gen = 0 1 | 1 0 ; 0 1
gen = 0 0 | -1 0 ; 0 -1
gen = 1/2 1/2 | 1 0 ; 0 -1
subgroup = auto
fibration = (-)
split = No
dual = (-)
dual_split = No
group = D2
action = (ref., ref.), (2-rot., ref.')
label = (-) {2-rot., ref.}
dual_label = (-) {2-rot., ref.}
[end]

[entry]
it = 9
conway = 2*22
name = cmm
gen = 1 0 | 1 0 ; 0 1
gen = 1/2 1/2 | 1 0 ; 0 1
gen = 0 0 | 1 0 ; 0 -1
gen = 0 0 | -1 0 ; 0 1
subgroup = auto
fibration = [-]
split = Yes
dual = [-]
dual_split = Yes
group = C2
action = (ref., ref.)
label = [-] {idt., ref.}
dual_label = [-] {idt., ref.}
[end]
)";

/// Expected table columns for one catalog row, as text.
struct TableExpectation {
  std::string fibration;
  std::string split;
  std::string dual;
  std::string dual_split;
  std::string group;
  std::string action;
  std::string label;
  std::string dual_label;
};

struct CatalogEntry {
  int it = 0;
  std::string conway;
  std::string name;
  SpaceGroup group;
  std::vector<Isometry> n_generators;
  TableExpectation expected;

  SubgroupDesignation subgroup() const { return SubgroupDesignation(group, n_generators); }
  CalabiDecomposition decomposition() const { return CalabiDecomposition(subgroup()); }
};

/// First complete normal subgroup along a coordinate axis, optionally
/// requiring its fibration to have the given type, e.g. "(-)".
inline SubgroupDesignation auto_subgroup(const SpaceGroup& g, const std::optional<std::string>& want_type = {}) {
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const Subspace axis = Subspace::span(g.dim(), {Vec::unit(g.dim(), i)});
    if (lattice_intersect(g.translation_lattice(), axis).rank() == 0) continue;
    SubgroupDesignation cand = completion(g, axis);
    if (!is_normal(cand) || !is_complete(cand) || !(span(cand) == axis)) continue;
    if (want_type && fibration_report(CalabiDecomposition(cand)).type() != *want_type) continue;
    return cand;
  }
  throw rejected_input("no complete normal subgroup along a coordinate axis" +
                       (want_type ? " with fibration type " + *want_type : std::string()));
}

class Catalog {
 public:
  static Catalog parse(std::string_view text) {
    Catalog cat;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    struct Pending {
      std::map<std::string, std::string> fields;
      std::vector<Isometry> gens;
      std::vector<Isometry> ngens;
      bool auto_n = false;
    };
    std::optional<Pending> cur;
    auto fail = [&](const std::string& msg) { throw parse_error("catalog line " + std::to_string(lineno) + ": " + msg); };
    while (std::getline(in, line)) {
      ++lineno;
      const std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      if (t == "[entry]") {
        if (cur) fail("nested [entry]");
        cur.emplace();
        continue;
      }
      if (t == "[end]") {
        if (!cur) fail("[end] without [entry]");
        cat.entries_.push_back(finish(*cur, lineno));
        cur.reset();
        continue;
      }
      if (!cur) fail("field outside [entry]");
      const auto eq = t.find('=');
      if (eq == std::string::npos) fail("expected 'key = value'");
      const std::string key = trim(t.substr(0, eq));
      const std::string value = trim(t.substr(eq + 1));
      try {
        if (key == "gen") {
          cur->gens.push_back(parse_isometry(value));
        } else if (key == "ngen") {
          cur->ngens.push_back(parse_isometry(value));
        } else if (key == "subgroup") {
          if (value != "auto") fail("subgroup must be 'auto' (list N with ngen lines instead)");
          cur->auto_n = true;
        } else {
          cur->fields[key] = value;
        }
      } catch (const rejected_input& e) {
        fail(e.what());
      } catch (const parse_error& e) {
        fail(e.what());
      }
    }
    if (cur) fail("unterminated [entry]");
    return cat;
  }

  static Catalog load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw parse_error("cannot open catalog file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
  }

  static const Catalog& builtin() {
    static const Catalog cat = parse(builtin_catalog_text);
    return cat;
  }

  const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }

  const CatalogEntry& entry(int it) const {
    for (const auto& e : entries_)
      if (e.it == it) return e;
    throw std::out_of_range("no catalog entry with IT number " + std::to_string(it));
  }

 private:
  static std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
  }

  template <class Pending>
  static CatalogEntry finish(Pending& p, std::size_t lineno) {
    auto field = [&](const std::string& k) -> std::string {
      const auto it = p.fields.find(k);
      if (it == p.fields.end())
        throw parse_error("catalog entry ending at line " + std::to_string(lineno) + " lacks '" + k + "'");
      return it->second;
    };
    CatalogEntry e;
    try {
      e.it = std::stoi(field("it"));
    } catch (const std::logic_error&) {
      throw parse_error("catalog entry ending at line " + std::to_string(lineno) + ": bad IT number");
    }
    e.conway = field("conway");
    e.name = field("name");
    e.expected = TableExpectation{field("fibration"), field("split"),  field("dual"),  field("dual_split"),
                                  field("group"),     field("action"), field("label"), field("dual_label")};
    try {
      e.group = SpaceGroup(p.gens);
      if (p.auto_n == !p.ngens.empty())
        throw parse_error("catalog entry ending at line " + std::to_string(lineno) +
                          " needs exactly one of 'subgroup = auto' or ngen lines");
      e.n_generators = p.auto_n ? auto_subgroup(e.group, e.expected.fibration).generators() : p.ngens;
    } catch (const rejected_input& err) {
      throw parse_error("catalog entry IT " + std::to_string(e.it) + ": " + err.what());
    }
    return e;
  }

  std::vector<CatalogEntry> entries_;
};

/// Entry of the built-in catalog, 1 ≤ it ≤ 9.
inline const CatalogEntry& entry(int it) {
  if (it < 1 || it > 9) throw std::out_of_range("IT number must be between 1 and 9");
  return Catalog::builtin().entry(it);
}

/// Γ_v = ⟨e1 + I, v e1 + e2 + I, −I⟩ with N = ⟨e1 + I⟩.
struct PillowFamily {
  Rat v;
  SpaceGroup group;
  SubgroupDesignation n;
};

inline PillowFamily pillow(const Rat& v) {
  if (v < Rat(0) || v >= Rat(1)) throw std::invalid_argument("pillow parameter must satisfy 0 <= v < 1");
  const Isometry t1 = Isometry::translation(Vec{1, 0});
  const Isometry t2 = Isometry::translation(Vec{v, 1});
  const Isometry half_turn = Isometry::linear(Mat{{-1, 0}, {0, -1}});
  SpaceGroup g({t1, t2, half_turn});
  SubgroupDesignation n(g, {t1});
  return PillowFamily{v, std::move(g), std::move(n)};
}

}  // namespace flatfib

#endif  // FLATFIB_CATALOG_HPP
