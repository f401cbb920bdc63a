#ifndef FLATFIB_CALABI_HPP
#define FLATFIB_CALABI_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatfib/errors.hpp"
#include "flatfib/fiber.hpp"
#include "flatfib/group.hpp"

namespace flatfib {

/// A space group Γ split along a complete normal subgroup N: V = Span(N),
/// its complement V⊥, and the kernel K of the action of Γ on V.
class CalabiDecomposition {
 public:
  explicit CalabiDecomposition(SubgroupDesignation n) : n_(std::move(n)) {
    if (!is_complete(n_)) throw rejected_input("subgroup is not complete");
    v_ = span(n_);
    v_perp_ = orthogonal_complement(v_);
    k_ = completion(n_.parent(), v_perp_);
  }

  const SpaceGroup& gamma() const noexcept { return n_.parent(); }
  const SubgroupDesignation& n_sub() const noexcept { return n_; }
  const SubgroupDesignation& k_sub() const noexcept { return k_; }
  const Subspace& v() const noexcept { return v_; }
  const Subspace& v_perp() const noexcept { return v_perp_; }

 private:
  SubgroupDesignation n_;
  SubgroupDesignation k_;
  Subspace v_;
  Subspace v_perp_;
};

/// K = {b + B ∈ Γ : b ∈ V⊥ and V ⊆ Fix(B)}.
inline SubgroupDesignation kernel_of_action(const SubgroupDesignation& n) {
  if (!is_complete(n)) throw rejected_input("subgroup is not complete");
  return completion(n.parent(), orthogonal_complement(span(n)));
}

/// x ∈ NK iff x acts on V like an element of N and on V⊥ like an element
/// of K.
inline bool nk_member(const CalabiDecomposition& d, const Isometry& x) {
  if (!d.gamma().contains(x)) throw rejected_input("nk_member: " + x.to_string() + " is not in the group");
  return d.n_sub().contains(part_along(x, d.v())) && d.k_sub().contains(part_along(x, d.v_perp()));
}

enum class StructureKind { Trivial, Cyclic, Dihedral, Other };

using ActionPair = std::pair<ActionClass, ActionClass>;

/// The structure group Γ/NK with its diagonal action on V/N × V⊥/K.
struct StructureGroup {
  std::optional<std::size_t> order;  // nullopt: infinite
  StructureKind kind = StructureKind::Other;
  /// Coset representatives, identity first. Empty when infinite.
  std::vector<Isometry> elements;
  /// Order of each element modulo NK.
  std::vector<std::size_t> element_orders;
  /// Action of each element; empty unless V and V⊥ are lines.
  std::vector<ActionPair> element_actions;
  /// Indices into `elements` of a generating set picked in Γ-generator order.
  std::vector<std::size_t> generators;
  /// Action of each generator, or of the identity for the trivial group.
  std::vector<ActionPair> action_table;

  bool finite() const noexcept { return order.has_value(); }

  /// C1, C2, D2, ... with D_m of order 2m.
  std::string iso_type() const {
    if (!order) return "infinite";
    switch (kind) {
      case StructureKind::Trivial: return "C1";
      case StructureKind::Cyclic: return "C" + std::to_string(*order);
      case StructureKind::Dihedral: return "D" + std::to_string(*order / 2);
      case StructureKind::Other: return "G" + std::to_string(*order);
    }
    return "?";
  }
};

namespace detail {

/// Labels the second and later reflections of a circle factor whose fixed
/// set sits a quarter turn from the first one as ref.′.
class PrimeLabeler {
 public:
  ActionClass label(const std::optional<FiberChart>& chart, const Isometry& g) {
    if (!chart) return ActionClass::idt();
    ActionClass c = chart->action_class(g);
    if (chart->kind() != OneOrbifoldKind::Circle || c.tag != ActionClass::Tag::Ref) return c;
    const Rat turn = chart->circle_action(g).turn();
    if (!first_) {
      first_ = turn;
      return c;
    }
    if ((turn - *first_).frac() == Rat(1, 2)) return ActionClass::ref_prime();
    return c;
  }

 private:
  std::optional<Rat> first_;
};

inline std::vector<ActionPair> label_actions(const CalabiDecomposition& d, const std::vector<Isometry>& elems) {
  if (d.v().dim() != 1 || d.v_perp().dim() != 1) return {};
  const auto fiber = FiberChart::of(d.n_sub().generators(), d.v());
  const auto dual_fiber = FiberChart::of(d.k_sub().generators(), d.v_perp());
  PrimeLabeler left;
  PrimeLabeler right;
  std::vector<ActionPair> out;
  for (const auto& g : elems) out.emplace_back(left.label(fiber, g), right.label(dual_fiber, g));
  return out;
}

}  // namespace detail

/// [Γ : NK] from the actions on V⊥: Γ/N ≅ Γ' and NK/N ≅ K', so the index is
/// the covolume ratio of their translation lattices times the ratio of
/// their point-group orders. nullopt when K' is not cocompact in V⊥.
inline std::optional<std::size_t> structure_group_order(const CalabiDecomposition& d) {
  const std::size_t n = d.gamma().dim();
  std::vector<Isometry> gamma_parts;
  for (const auto& g : d.gamma().generators()) gamma_parts.push_back(part_along(g, d.v_perp()));
  std::vector<Isometry> k_parts;
  for (const auto& g : d.k_sub().generators()) k_parts.push_back(part_along(g, d.v_perp()));
  const auto gamma_prime = CosetTable::build(n, gamma_parts, SpaceGroup::default_point_group_bound);
  const auto k_prime = CosetTable::build(n, k_parts, SpaceGroup::default_point_group_bound);
  if (k_prime.lattice().rank() != d.v_perp().dim()) return std::nullopt;
  const auto t_index = lattice_index(gamma_prime.lattice(), k_prime.lattice());
  if (!t_index || gamma_prime.order() % k_prime.order() != 0)
    throw internal_error("kernel does not act as a subgroup of finite index on V-perp");
  return static_cast<std::size_t>(*t_index) * (gamma_prime.order() / k_prime.order());
}

inline StructureGroup structure_group(const CalabiDecomposition& d) {
  StructureGroup s;
  s.order = structure_group_order(d);
  if (!s.order) return s;
  const std::size_t order = *s.order;
  const auto& gens = d.gamma().generators();

  auto coset_of = [&](const Isometry& x) -> std::optional<std::size_t> {
    for (std::size_t j = 0; j < s.elements.size(); ++j)
      if (nk_member(d, s.elements[j].inverse() * x)) return j;
    return std::nullopt;
  };

  s.elements.push_back(Isometry::identity(d.gamma().dim()));
  for (std::size_t i = 0; i < s.elements.size(); ++i) {
    for (const auto& g : gens) {
      Isometry h = s.elements[i] * g;
      if (coset_of(h)) continue;
      if (s.elements.size() == order) throw internal_error("more cosets of NK than the index formula allows");
      s.elements.push_back(std::move(h));
    }
  }
  if (s.elements.size() != order) throw internal_error("fewer cosets of NK than the index formula predicts");

  for (const auto& e : s.elements) {
    std::size_t m = 1;
    Isometry p = e;
    while (!nk_member(d, p)) {
      p = p * e;
      if (++m > order) throw internal_error("structure group element order exceeds group order");
    }
    s.element_orders.push_back(m);
  }

  // Generators in Γ-generator order, each kept only if it leaves the
  // subgroup generated so far.
  std::vector<bool> reached(order, false);
  reached[0] = true;
  for (const auto& g : gens) {
    const std::size_t j = *coset_of(g);
    if (reached[j]) continue;
    s.generators.push_back(j);
    std::vector<std::size_t> frontier;
    for (std::size_t i = 0; i < order; ++i)
      if (reached[i]) frontier.push_back(i);
    while (!frontier.empty()) {
      const std::size_t i = frontier.back();
      frontier.pop_back();
      for (const std::size_t gi : s.generators) {
        const std::size_t k = *coset_of(s.elements[i] * s.elements[gi]);
        if (!reached[k]) {
          reached[k] = true;
          frontier.push_back(k);
        }
      }
    }
  }

  const auto max_order = *std::max_element(s.element_orders.begin(), s.element_orders.end());
  if (order == 1) {
    s.kind = StructureKind::Trivial;
  } else if (max_order == order) {
    s.kind = StructureKind::Cyclic;
  } else if (order % 2 == 0 && max_order == order / 2) {
    // Dihedral iff everything outside the cyclic subgroup ⟨r⟩ is an involution.
    const std::size_t r = static_cast<std::size_t>(
        std::find(s.element_orders.begin(), s.element_orders.end(), max_order) - s.element_orders.begin());
    std::vector<bool> in_rotations(order, false);
    Isometry p = Isometry::identity(d.gamma().dim());
    for (std::size_t k = 0; k < max_order; ++k) {
      in_rotations[*coset_of(p)] = true;
      p = p * s.elements[r];
    }
    bool dihedral = true;
    for (std::size_t i = 0; i < order; ++i)
      if (!in_rotations[i] && s.element_orders[i] != 2) dihedral = false;
    s.kind = dihedral ? StructureKind::Dihedral : StructureKind::Other;
  }

  s.element_actions = detail::label_actions(d, s.elements);
  if (!s.element_actions.empty()) {
    std::vector<Isometry> table_elems;
    if (s.generators.empty()) table_elems.push_back(s.elements[0]);
    for (const auto j : s.generators) table_elems.push_back(s.elements[j]);
    s.action_table = detail::label_actions(d, table_elems);
  }
  return s;
}

/// Least m ≥ 1 with x^m ∈ NK, or nullopt if none up to `bound`.
inline std::optional<std::size_t> order_mod_nk(const CalabiDecomposition& d, const Isometry& x, std::size_t bound) {
  Isometry p = x;
  for (std::size_t m = 1; m <= bound; ++m) {
    if (nk_member(d, p)) return m;
    p = p * x;
  }
  return std::nullopt;
}

/// No non-identity structure-group element acts trivially on both factors.
inline bool is_effective(const StructureGroup& s) {
  for (std::size_t i = 1; i < s.element_actions.size(); ++i)
    if (s.element_actions[i].first == ActionClass::idt() && s.element_actions[i].second == ActionClass::idt())
      return false;
  return true;
}

/// K as the orthogonal dual N⊥ when Span(K) = V⊥.
inline std::optional<SubgroupDesignation> orthogonal_dual(const CalabiDecomposition& d) {
  if (span(d.k_sub()) == d.v_perp()) return d.k_sub();
  return std::nullopt;
}

/// The Coxeter generators y ↦ c − y and y ↦ c + q − y of Γ/N acting on the
/// line V⊥, each lifted to some element of Γ.
inline std::pair<Isometry, Isometry> coxeter_lifts(const CalabiDecomposition& d) {
  if (d.v_perp().dim() != 1) throw std::invalid_argument("coxeter_lifts: V-perp is not a line");
  const auto lg = LineGroup::of(d.gamma().generators(), d.v_perp());
  if (!lg.has_reflections()) throw std::invalid_argument("coxeter_lifts: quotient is not dihedral");
  const Rat c = lg.reflection_offset();
  const Rat q = *lg.period();
  auto lift = [&](const Rat& shift) {
    auto g = lift_line_action(d.gamma(), d.v_perp(), LineMap{shift, -1});
    if (!g) throw internal_error("reflection of the quotient has no preimage");
    return *g;
  };
  return {lift(c), lift(c + q)};
}

/// Lift of the translation generator y ↦ y + q of Γ/N acting on V⊥.
inline Isometry cyclic_lift(const CalabiDecomposition& d) {
  if (d.v_perp().dim() != 1) throw std::invalid_argument("cyclic_lift: V-perp is not a line");
  const auto lg = LineGroup::of(d.gamma().generators(), d.v_perp());
  if (lg.has_reflections()) throw std::invalid_argument("cyclic_lift: quotient is not cyclic");
  auto g = lift_line_action(d.gamma(), d.v_perp(), LineMap{*lg.period(), 1});
  if (!g) throw internal_error("generator of the quotient has no preimage");
  return *g;
}

/// The coset Nγ contains an involution νγ. For each point-group coset of N
/// the translation of νγ ranges over offset + Pg + L_N, and νγ = x + C is an
/// involution iff C² = I and x lies in the (−1)-eigenspace of C.
inline bool coset_has_involution(const SubgroupDesignation& n, const Isometry& g) {
  const auto& t = n.table();
  const Mat id = Mat::identity(n.dim());
  for (std::size_t i = 0; i < t.order(); ++i) {
    const Mat& p = t.point_group()[i];
    const Mat c = p * g.linear_part();
    if (!(c * c == id)) continue;
    const Vec target = t.offset(i) + p * g.translation_part();
    if (lattice_solve(t.lattice(), target, eigenspace(c, Rat(-1)))) return true;
  }
  return false;
}

/// Whether 1 → N → Γ → Γ/N → 1 splits. Cyclic quotients always split;
/// dihedral ones split iff both Coxeter cosets contain involutions.
inline bool splits(const CalabiDecomposition& d) {
  if (d.v_perp().dim() != 1) throw std::invalid_argument("splits: only 1-dimensional quotients are supported");
  if (quotient_kind(d.n_sub()) == QuotientKind::InfiniteCyclic) return true;
  const auto [g1, g2] = coxeter_lifts(d);
  return coset_has_involution(d.n_sub(), g1) && coset_has_involution(d.n_sub(), g2);
}

/// Fiber/base notation: parentheses for a circle fiber, brackets for an
/// interval; a dot for a circle base, a dash for an interval.
inline std::string fibration_type(OneOrbifoldKind fiber, OneOrbifoldKind base) {
  const bool circle = fiber == OneOrbifoldKind::Circle;
  return std::string(circle ? "(" : "[") + (base == OneOrbifoldKind::Circle ? "·" : "-") + (circle ? ")" : "]");
}

struct FibrationReport {
  OneOrbifoldKind fiber_kind = OneOrbifoldKind::Circle;
  OneOrbifoldKind base_kind = OneOrbifoldKind::Circle;
  bool splits = false;
  bool dual_exists = false;
  std::optional<OneOrbifoldKind> dual_fiber_kind;
  std::optional<OneOrbifoldKind> dual_base_kind;
  std::optional<bool> dual_splits;
  StructureGroup structure;

  std::string type() const { return fibration_type(fiber_kind, base_kind); }
  std::string dual_type() const {
    if (!dual_exists) return "none";
    return fibration_type(*dual_fiber_kind, *dual_base_kind);
  }
  /// Table-style action column, e.g. "(ref., ref.), (2-rot., ref.')".
  std::string action_text() const {
    std::string s;
    for (std::size_t i = 0; i < structure.action_table.size(); ++i) {
      if (i) s += ", ";
      s += "(" + structure.action_table[i].first.to_string() + ", " + structure.action_table[i].second.to_string() + ")";
    }
    return s;
  }
};

inline OneOrbifoldKind base_kind_of(QuotientKind q) {
  return q == QuotientKind::InfiniteDihedral ? OneOrbifoldKind::Interval : OneOrbifoldKind::Circle;
}

/// The fibration V/N → E²/Γ → V⊥/(Γ/N) and, when K = N⊥, its dual
/// obtained by exchanging N and K.
inline FibrationReport fibration_report(const CalabiDecomposition& d) {
  if (d.gamma().dim() != 2) throw std::invalid_argument("fibration reports are only defined in dimension 2");
  if (d.v().dim() != 1) throw std::invalid_argument("fibration report needs a 1-dimensional subgroup span");
  FibrationReport r;
  r.fiber_kind = LineGroup::of(d.n_sub().generators(), d.v()).orbifold_kind();
  r.base_kind = base_kind_of(quotient_kind(d.n_sub()));
  r.splits = splits(d);
  r.structure = structure_group(d);
  if (auto dual = orthogonal_dual(d)) {
    const CalabiDecomposition dd(*dual);
    r.dual_exists = true;
    r.dual_fiber_kind = LineGroup::of(dd.n_sub().generators(), dd.v()).orbifold_kind();
    r.dual_base_kind = base_kind_of(quotient_kind(dd.n_sub()));
    r.dual_splits = splits(dd);
  }
  if (r.dual_exists != r.structure.finite())
    throw internal_error("orthogonal dual exists but structure group is infinite, or vice versa");
  return r;
}

}  // namespace flatfib

#endif  // FLATFIB_CALABI_HPP
