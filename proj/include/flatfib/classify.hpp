#ifndef FLATFIB_CLASSIFY_HPP
#define FLATFIB_CLASSIFY_HPP

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "flatfib/calabi.hpp"
#include "flatfib/errors.hpp"
#include "flatfib/fiber.hpp"

namespace flatfib {

/// Out(M) for a 1-dimensional M, realized as the subgroup {idt, ref} of the
/// isometries of the fiber.
enum class OutClass { Idt, Ref };

inline OutClass out_class(const CircleIsom& x) { return x.is_reflection() ? OutClass::Ref : OutClass::Idt; }
inline OutClass out_class(IntervalIsom x) { return x == IntervalIsom::Idt ? OutClass::Idt : OutClass::Ref; }

/// Affine-equivalence class of a fibration with 1-dimensional fiber and
/// base: the quotient type Δ, the fiber type, and an unordered pair of
/// action classes drawn from idt., 2-rot., ref.
class IsoClassLabel {
 public:
  IsoClassLabel() = default;
  IsoClassLabel(QuotientKind delta, OneOrbifoldKind fiber, ActionClass a, ActionClass b)
      : delta_(delta), fiber_(fiber), a_(a), b_(b) {
    for (const auto& c : {a_, b_}) {
      const bool legal = c.tag == ActionClass::Tag::Idt || c.tag == ActionClass::Tag::Ref ||
                         (c.tag == ActionClass::Tag::TwoRot && fiber == OneOrbifoldKind::Circle);
      if (!legal) throw std::invalid_argument("label entry " + c.to_string() + " is not a class of order <= 2");
    }
    if (rank(b_) < rank(a_)) std::swap(a_, b_);
  }

  QuotientKind delta_kind() const noexcept { return delta_; }
  OneOrbifoldKind fiber_kind() const noexcept { return fiber_; }
  std::pair<ActionClass, ActionClass> pair() const { return {a_, b_}; }

  std::string type() const { return fibration_type(fiber_, base_kind_of(delta_)); }
  std::string pair_text() const { return "{" + a_.to_string() + ", " + b_.to_string() + "}"; }
  std::string to_string() const { return type() + " " + pair_text(); }

  friend bool operator==(const IsoClassLabel& x, const IsoClassLabel& y) {
    return x.delta_ == y.delta_ && x.fiber_ == y.fiber_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator<(const IsoClassLabel& x, const IsoClassLabel& y) {
    auto key = [](const IsoClassLabel& l) {
      return std::array<int, 4>{static_cast<int>(l.fiber_), static_cast<int>(l.delta_), rank(l.a_), rank(l.b_)};
    };
    return key(x) < key(y);
  }

 private:
  static int rank(const ActionClass& c) { return static_cast<int>(c.tag); }

  QuotientKind delta_ = QuotientKind::InfiniteCyclic;
  OneOrbifoldKind fiber_ = OneOrbifoldKind::Circle;
  ActionClass a_;
  ActionClass b_;
};

namespace detail {

inline void require_order_two(const CircleIsom& x) {
  if (x.order() > 2) throw std::invalid_argument("pair entries must have order 1 or 2, got " + x.to_string());
}

/// Angular distance between the fixed sets of two reflections, in [0, ½].
inline Rat reflection_distance(const CircleIsom& x, const CircleIsom& y) {
  const Rat d = (x.turn() - y.turn()).frac();
  return std::min(d, Rat(1) - d);
}

}  // namespace detail

/// Conjugacy in O(2) of unordered pairs of elements of order ≤ 2. Rotations
/// of order ≤ 2 are central and all reflections are conjugate, so only a pair
/// of two reflections carries an extra invariant: their distance.
inline bool conjugate_pairs(const std::pair<CircleIsom, CircleIsom>& p, const std::pair<CircleIsom, CircleIsom>& q) {
  for (const auto* x : {&p.first, &p.second, &q.first, &q.second}) detail::require_order_two(*x);
  auto classes = [](const std::pair<CircleIsom, CircleIsom>& r) {
    auto a = static_cast<int>(conjugacy_class(r.first).tag);
    auto b = static_cast<int>(conjugacy_class(r.second).tag);
    return std::pair{std::min(a, b), std::max(a, b)};
  };
  if (classes(p) != classes(q)) return false;
  if (p.first.is_reflection() && p.second.is_reflection())
    return detail::reflection_distance(p.first, p.second) == detail::reflection_distance(q.first, q.second);
  return true;
}

/// Whether {x1, (v+I)x2} is conjugate to {y1, y2} for some v in e1 ∩ e2, where
/// e_i is the (−1)-eigenspace of x_i on the line (the whole line for a
/// reflection, zero for a rotation).
inline bool pair_equivalent(const std::pair<CircleIsom, CircleIsom>& p1, const std::pair<CircleIsom, CircleIsom>& p2,
                            const Subspace& e1, const Subspace& e2) {
  const Subspace common = intersect(e1, e2);
  if (common.is_zero()) return conjugate_pairs(p1, p2);
  // A nonzero common eigenspace means both x_i reverse the line; sliding x2
  // by v moves its fixed set, which can realize any target distance.
  if (!p1.first.is_reflection() || !p1.second.is_reflection())
    throw std::invalid_argument("pair_equivalent: eigenspaces do not match the pair");
  if (!p2.first.is_reflection() || !p2.second.is_reflection()) return false;
  const Rat target = detail::reflection_distance(p2.first, p2.second);
  const Rat v = p1.first.turn() - p1.second.turn() + target;
  const CircleIsom moved = CircleIsom::rotation(v) * p1.second;
  return conjugate_pairs({p1.first, moved}, p2);
}

/// The (−1)-eigenspace of x's linear part on the 1-dimensional Span(Z(M)).
inline Subspace reversing_eigenspace(const CircleIsom& x) {
  return eigenspace(Mat{{Rat(x.orientation())}}, Rat(-1), Subspace::full(1));
}

inline bool pair_equivalent(const std::pair<CircleIsom, CircleIsom>& p1, const std::pair<CircleIsom, CircleIsom>& p2) {
  return pair_equivalent(p1, p2, reversing_eigenspace(p1.first), reversing_eigenspace(p1.second));
}

/// Labels of Iso(Δ, M) for 1-dimensional Δ and M, in canonical order.
///
/// Cyclic Δ: pairs {x, x⁻¹} over Out(M) = {idt, ref}. Dihedral Δ with
/// interval fiber: unordered pairs over Isom(I) = {idt, ref}. Dihedral Δ with
/// circle fiber: pairs of order-≤2 isometries of the circle, sampled across
/// rotation and reflection angles and merged by pair_equivalent.
inline std::vector<IsoClassLabel> enumerate_iso(QuotientKind delta, OneOrbifoldKind fiber) {
  if (delta == QuotientKind::Other) throw std::invalid_argument("enumerate_iso: quotient must be 1-dimensional");
  std::vector<IsoClassLabel> out;
  auto add = [&](ActionClass a, ActionClass b) {
    IsoClassLabel l(delta, fiber, a, b);
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  };
  auto of_out = [](OutClass c) { return c == OutClass::Idt ? ActionClass::idt() : ActionClass::ref(); };
  if (delta == QuotientKind::InfiniteCyclic) {
    for (OutClass x : {OutClass::Idt, OutClass::Ref}) add(of_out(x), of_out(x));  // each is its own inverse
  } else if (fiber == OneOrbifoldKind::Interval) {
    for (OutClass x : {OutClass::Idt, OutClass::Ref})
      for (OutClass y : {OutClass::Idt, OutClass::Ref}) add(of_out(x), of_out(y));
  } else {
    std::vector<CircleIsom> sample{CircleIsom::rotation(0), CircleIsom::rotation(Rat(1, 2))};
    for (const Rat& t : {Rat(0), Rat(1, 4), Rat(1, 3), Rat(1, 2), Rat(3, 5)}) sample.push_back(CircleIsom::reflection(t));
    std::vector<std::pair<CircleIsom, CircleIsom>> reps;
    for (std::size_t i = 0; i < sample.size(); ++i)
      for (std::size_t j = i; j < sample.size(); ++j) {
        const std::pair<CircleIsom, CircleIsom> p{sample[i], sample[j]};
        const bool known = std::any_of(reps.begin(), reps.end(), [&](const auto& r) { return pair_equivalent(r, p); });
        if (!known) reps.push_back(p);
      }
    for (const auto& r : reps) add(conjugacy_class(r.first), conjugacy_class(r.second));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// A structure-group element acting on the circle V⊥/K by a rotation of
/// ±1/m turn. Such an element lifts to a generator of Γ/N.
inline Isometry lift_cyclic_generator(const StructureGroup& s, const CalabiDecomposition& d) {
  if (!s.finite()) throw std::invalid_argument("lift_cyclic_generator: structure group is infinite");
  const auto chart = FiberChart::of(d.k_sub().generators(), d.v_perp());
  if (!chart || chart->kind() != OneOrbifoldKind::Circle)
    throw internal_error("cyclic quotient but V-perp/K is not a circle");
  const Rat step(1, static_cast<Rat::int_type>(*s.order));
  for (const auto& e : s.elements) {
    const CircleIsom a = chart->circle_action(e);
    if (a.is_reflection()) continue;
    if (a.turn() == step.frac() || a.turn() == (-step).frac()) return e;
  }
  throw internal_error("no structure-group element rotates V-perp/K by 1/m");
}

/// Representatives (γ1, γ2) whose NK-cosets are the images of a Coxeter
/// pair of Γ/N: order 1, anything; order 2 with K dihedral, the identity and
/// the interval reflection; order 2m with K cyclic, two circle reflections
/// whose product rotates by ±1/m.
inline std::pair<Isometry, Isometry> lift_dihedral_generators(const StructureGroup& s, const CalabiDecomposition& d) {
  if (!s.finite()) throw std::invalid_argument("lift_dihedral_generators: structure group is infinite");
  const std::size_t order = *s.order;
  if (order == 1) return coxeter_lifts(d);
  const auto chart = FiberChart::of(d.k_sub().generators(), d.v_perp());
  if (!chart) throw internal_error("finite structure group but V-perp/K is not compact");
  if (chart->kind() == OneOrbifoldKind::Interval) {
    if (order == 2 && chart->interval_action(s.elements[1]) == IntervalIsom::Ref) return {s.elements[0], s.elements[1]};
  } else if (order % 2 == 0) {
    const Rat step(2, static_cast<Rat::int_type>(order));  // 1/m with order = 2m
    for (std::size_t i = 0; i < order; ++i) {
      if (!chart->circle_action(s.elements[i]).is_reflection()) continue;
      for (std::size_t j = i; j < order; ++j) {
        if (!chart->circle_action(s.elements[j]).is_reflection()) continue;
        const CircleIsom prod = chart->circle_action(s.elements[i] * s.elements[j]);
        if (prod.turn() == step.frac() || prod.turn() == (-step).frac()) return {s.elements[i], s.elements[j]};
      }
    }
  }
  throw internal_error("structure group data matches none of the Coxeter lifting conditions");
}

namespace detail {

inline ActionClass label_entry(const FiberChart& fiber, const Isometry& g, bool dihedral) {
  if (fiber.kind() == OneOrbifoldKind::Interval) return to_action_class(fiber.interval_action(g));
  const CircleIsom a = fiber.circle_action(g);
  if (!dihedral) return out_class(a) == OutClass::Idt ? ActionClass::idt() : ActionClass::ref();
  const ActionClass c = conjugacy_class(a);
  if (c.tag == ActionClass::Tag::Rot) throw internal_error("Coxeter generator acts on the fiber with order > 2");
  return c;
}

inline IsoClassLabel label_from_lifts(const CalabiDecomposition& d, QuotientKind q, const Isometry& g1,
                                      const Isometry& g2) {
  const auto fiber = FiberChart::of(d.n_sub().generators(), d.v());
  if (!fiber) throw internal_error("fiber V/N is not compact");
  const bool dihedral = q == QuotientKind::InfiniteDihedral;
  return IsoClassLabel(q, fiber->kind(), label_entry(*fiber, g1, dihedral), label_entry(*fiber, g2, dihedral));
}

inline void require_line_split(const CalabiDecomposition& d) {
  if (d.v().dim() != 1 || d.v_perp().dim() != 1)
    throw std::invalid_argument("classification needs 1-dimensional fiber and base");
}

}  // namespace detail

/// The label read off the structure group: lift a canonical generating pair
/// through Γ/NK and record its action on V/N.
inline IsoClassLabel classify_fibration(const CalabiDecomposition& d) {
  detail::require_line_split(d);
  const QuotientKind q = quotient_kind(d.n_sub());
  const StructureGroup s = structure_group(d);
  if (q == QuotientKind::InfiniteCyclic) {
    const Isometry g = s.finite() ? lift_cyclic_generator(s, d) : cyclic_lift(d);
    return detail::label_from_lifts(d, q, g, g.inverse());
  }
  const auto [g1, g2] = s.finite() ? lift_dihedral_generators(s, d) : coxeter_lifts(d);
  return detail::label_from_lifts(d, q, g1, g2);
}

/// The same label computed from generators of Γ/N lifted directly from its
/// action on V⊥, bypassing the structure group.
inline IsoClassLabel classify_fibration_direct(const CalabiDecomposition& d) {
  detail::require_line_split(d);
  const QuotientKind q = quotient_kind(d.n_sub());
  if (q == QuotientKind::InfiniteCyclic) {
    const Isometry g = cyclic_lift(d);
    return detail::label_from_lifts(d, q, g, g.inverse());
  }
  const auto [g1, g2] = coxeter_lifts(d);
  return detail::label_from_lifts(d, q, g1, g2);
}

}  // namespace flatfib

#endif  // FLATFIB_CLASSIFY_HPP
