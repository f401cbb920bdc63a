#ifndef FLATFIB_FIBER_HPP
#define FLATFIB_FIBER_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatfib/group.hpp"

namespace flatfib {

/// Isometry of a circle of circumference 1. Orientation +1 is the rotation
/// by `turn`; -1 is θ ↦ turn − θ, the reflection fixing turn/2 and turn/2 + ½.
class CircleIsom {
 public:
  CircleIsom() = default;
  CircleIsom(Rat turn, int orientation) : turn_(turn.frac()), orientation_(orientation < 0 ? -1 : 1) {}

  static CircleIsom rotation(Rat turn) { return {turn, 1}; }
  static CircleIsom reflection(Rat turn) { return {turn, -1}; }

  const Rat& turn() const noexcept { return turn_; }
  int orientation() const noexcept { return orientation_; }
  bool is_reflection() const noexcept { return orientation_ < 0; }

  friend CircleIsom operator*(const CircleIsom& f, const CircleIsom& g) {
    return CircleIsom(f.turn_ + Rat(f.orientation_) * g.turn_, f.orientation_ * g.orientation_);
  }
  CircleIsom inverse() const {
    return is_reflection() ? *this : CircleIsom(-turn_, 1);
  }

  /// Order in O(2). Finite because turns are rational.
  long order() const {
    if (is_reflection()) return 2;
    return turn_.den();
  }

  friend bool operator==(const CircleIsom&, const CircleIsom&) = default;

  std::string to_string() const {
    return (is_reflection() ? "ref@" : "rot@") + turn_.to_string();
  }

 private:
  Rat turn_;
  int orientation_ = 1;
};

enum class IntervalIsom { Idt, Ref };

/// Conjugacy class label of a finite-order 1-orbifold isometry, as used in
/// the structure-group action tables.
struct ActionClass {
  enum class Tag { Idt, TwoRot, Ref, RefPrime, Rot };
  Tag tag = Tag::Idt;
  Rat turn;  // only for Rot

  static ActionClass idt() { return {Tag::Idt, {}}; }
  static ActionClass two_rot() { return {Tag::TwoRot, {}}; }
  static ActionClass ref() { return {Tag::Ref, {}}; }
  static ActionClass ref_prime() { return {Tag::RefPrime, {}}; }
  static ActionClass rot(Rat q) { return {Tag::Rot, q}; }

  friend bool operator==(const ActionClass&, const ActionClass&) = default;

  std::string to_string() const {
    switch (tag) {
      case Tag::Idt: return "idt.";
      case Tag::TwoRot: return "2-rot.";
      case Tag::Ref: return "ref.";
      case Tag::RefPrime: return "ref.'";
      case Tag::Rot: return "rot(" + turn.to_string() + ")";
    }
    return "?";
  }
};

inline ActionClass conjugacy_class(const CircleIsom& x) {
  if (x.is_reflection()) return ActionClass::ref();
  if (x.turn().is_zero()) return ActionClass::idt();
  if (x.turn() == Rat(1, 2)) return ActionClass::two_rot();
  return ActionClass::rot(x.turn());
}

inline ActionClass to_action_class(IntervalIsom x) {
  return x == IntervalIsom::Idt ? ActionClass::idt() : ActionClass::ref();
}

/// The quotient of a line by a discrete group with translations: a circle
/// rescaled to circumference 1, or an interval. Maps isometries normalizing
/// the group to the induced isometry of the quotient.
class FiberChart {
 public:
  /// nullopt when the group has no translations (quotient is not compact).
  static std::optional<FiberChart> of(const std::vector<Isometry>& generators, const Subspace& line) {
    FiberChart c;
    c.line_ = line;
    c.group_ = LineGroup::of(generators, line);
    const auto p = c.group_.period();
    if (!p) return std::nullopt;
    c.period_ = *p;
    return c;
  }

  OneOrbifoldKind kind() const { return group_.orbifold_kind(); }
  const Subspace& line() const noexcept { return line_; }
  const LineGroup& group() const noexcept { return group_; }
  const Rat& period() const noexcept { return period_; }

  CircleIsom circle_action(const Isometry& g) const {
    const LineMap m = line_action(g, line_);
    return CircleIsom(m.shift / period_, m.sign);
  }
  IntervalIsom interval_action(const Isometry& g) const {
    return group_.contains(line_action(g, line_)) ? IntervalIsom::Idt : IntervalIsom::Ref;
  }
  ActionClass action_class(const Isometry& g) const {
    if (kind() == OneOrbifoldKind::Circle) return conjugacy_class(circle_action(g));
    return to_action_class(interval_action(g));
  }
  /// Whether g induces the identity of the quotient.
  bool acts_trivially(const Isometry& g) const { return action_class(g) == ActionClass::idt(); }

 private:
  Subspace line_;
  LineGroup group_;
  Rat period_;
};

}  // namespace flatfib

#endif  // FLATFIB_FIBER_HPP
