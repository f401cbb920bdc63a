#ifndef FLATFIB_GROUP_HPP
#define FLATFIB_GROUP_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "flatfib/errors.hpp"
#include "flatfib/isometry.hpp"
#include "flatfib/lattice.hpp"
#include "flatfib/linalg.hpp"

namespace flatfib {

/// Point group, translation lattice and coset offsets of a group of
/// isometries with finite point group.
///
/// Elements with linear part P form the coset offset(P) + lattice + P, so
/// membership is one point-group lookup plus one lattice test.
class CosetTable {
 public:
  CosetTable() = default;

  /// Closes the linear parts of `generators` into the point group along a
  /// Schreier tree. Each non-tree edge rep(P)·s·rep(Ps)⁻¹ is a pure
  /// translation, and by Schreier's lemma these translations generate the
  /// translation subgroup. Throws rejected_input if the point group grows
  /// past `max_point_group`.
  static CosetTable build(std::size_t dim, const std::vector<Isometry>& generators,
                          std::size_t max_point_group) {
    std::vector<Isometry> steps;
    for (const auto& g : generators) {
      if (g.dim() != dim) throw std::invalid_argument("generator has wrong dimension");
      steps.push_back(g);
      steps.push_back(g.inverse());
    }
    CosetTable t;
    t.dim_ = dim;
    std::vector<Isometry> reps{Isometry::identity(dim)};
    std::map<Mat, std::size_t> index{{reps[0].linear_part(), 0}};
    std::vector<Vec> translations;
    // An infinite point group of rational matrices has unbounded
    // denominators, so overflow during closure also means "not discrete".
    try {
      for (std::size_t i = 0; i < reps.size(); ++i) {
        for (const auto& s : steps) {
          Isometry h = reps[i] * s;
          auto [it, inserted] = index.try_emplace(h.linear_part(), reps.size());
          if (inserted) {
            if (reps.size() >= max_point_group)
              throw rejected_input("point group exceeds " + std::to_string(max_point_group) +
                                   " elements; group is not discrete");
            reps.push_back(std::move(h));
            continue;
          }
          Vec tr = (h * reps[it->second].inverse()).translation_part();
          if (!tr.is_zero()) translations.push_back(std::move(tr));
        }
      }
    } catch (const std::overflow_error&) {
      throw rejected_input("point group closure overflowed; group is not discrete");
    }
    t.lattice_ = Lattice::generated_by(dim, translations);
    for (auto& r : reps) {
      t.points_.push_back(r.linear_part());
      t.offsets_.push_back(t.lattice_.reduce(r.translation_part()));
    }
    t.index_ = std::move(index);
    return t;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t order() const noexcept { return points_.size(); }
  const std::vector<Mat>& point_group() const noexcept { return points_; }
  const Vec& offset(std::size_t i) const { return offsets_.at(i); }
  const Lattice& lattice() const noexcept { return lattice_; }

  std::optional<std::size_t> find(const Mat& m) const {
    const auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// The element offset(i) + P_i.
  Isometry representative(std::size_t i) const { return Isometry(offsets_.at(i), points_.at(i)); }

  bool contains(const Isometry& x) const {
    if (x.dim() != dim_) return false;
    const auto i = find(x.linear_part());
    if (!i) return false;
    return lattice_.contains(x.translation_part() - offsets_[*i]);
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Mat> points_;
  std::vector<Vec> offsets_;
  Lattice lattice_;
  std::map<Mat, std::size_t> index_;
};

/// Crystallographic group given by generators. Construction derives and
/// validates the point group and translation lattice; non-discrete or
/// non-cocompact input is rejected.
class SpaceGroup {
 public:
  static constexpr std::size_t default_point_group_bound = 48;

  SpaceGroup() = default;
  explicit SpaceGroup(std::vector<Isometry> generators,
                      std::size_t point_group_bound = default_point_group_bound)
      : gens_(std::move(generators)) {
    if (gens_.empty()) throw rejected_input("space group needs at least one generator");
    dim_ = gens_.front().dim();
    table_ = CosetTable::build(dim_, gens_, point_group_bound);
    if (table_.lattice().rank() != dim_)
      throw rejected_input("translation lattice has rank " + std::to_string(table_.lattice().rank()) +
                           " < " + std::to_string(dim_) + "; group is not cocompact");
    for (const auto& p : table_.point_group()) {
      std::vector<Vec> image;
      for (const auto& b : table_.lattice().basis()) image.push_back(p * b);
      if (!(Lattice::generated_by(dim_, image) == table_.lattice()))
        throw internal_error("point group does not preserve the translation lattice");
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Isometry>& generators() const noexcept { return gens_; }
  const Lattice& translation_lattice() const noexcept { return table_.lattice(); }
  const std::vector<Mat>& point_group() const noexcept { return table_.point_group(); }
  const CosetTable& table() const noexcept { return table_; }

  bool contains(const Isometry& x) const { return table_.contains(x); }

 private:
  std::size_t dim_ = 0;
  std::vector<Isometry> gens_;
  CosetTable table_;
};

/// Subgroup of a space group named by explicit generating isometries.
class SubgroupDesignation {
 public:
  SubgroupDesignation() = default;
  SubgroupDesignation(SpaceGroup parent, std::vector<Isometry> generators)
      : parent_(std::move(parent)), gens_(std::move(generators)) {
    for (const auto& g : gens_) {
      if (g.dim() != parent_.dim()) throw std::invalid_argument("subgroup generator has wrong dimension");
      if (!parent_.contains(g)) throw rejected_input("subgroup generator " + g.to_string() + " is not in the group");
    }
    table_ = CosetTable::build(parent_.dim(), gens_, parent_.point_group().size() + 1);
  }

  const SpaceGroup& parent() const noexcept { return parent_; }
  const std::vector<Isometry>& generators() const noexcept { return gens_; }
  const CosetTable& table() const noexcept { return table_; }
  std::size_t dim() const noexcept { return parent_.dim(); }

  bool contains(const Isometry& x) const { return table_.contains(x); }

 private:
  SpaceGroup parent_;
  std::vector<Isometry> gens_;
  CosetTable table_;
};

enum class QuotientKind { InfiniteCyclic, InfiniteDihedral, Other };

inline std::string to_string(QuotientKind k) {
  switch (k) {
    case QuotientKind::InfiniteCyclic: return "infinite cyclic";
    case QuotientKind::InfiniteDihedral: return "infinite dihedral";
    case QuotientKind::Other: return "other";
  }
  return "?";
}

enum class OneOrbifoldKind { Circle, Interval };

inline std::string to_string(OneOrbifoldKind k) { return k == OneOrbifoldKind::Circle ? "circle" : "interval"; }

inline bool membership(const SpaceGroup& g, const Isometry& x) {
  if (x.dim() != g.dim()) throw std::invalid_argument("membership: dimension mismatch");
  return g.contains(x);
}

/// Conjugates of every N generator by every parent generator and its
/// inverse stay in N.
inline bool is_normal(const SubgroupDesignation& n) {
  for (const auto& g : n.parent().generators()) {
    const Isometry gi = g.inverse();
    for (const auto& v : n.generators()) {
      if (!n.contains(g * v * gi) || !n.contains(gi * v * g)) return false;
    }
  }
  return true;
}

inline Subspace span(const SubgroupDesignation& n) { return n.table().lattice().span(); }

/// {a + A ∈ g : a ∈ w and w⊥ ⊆ Fix(A)}.
inline SubgroupDesignation completion(const SpaceGroup& g, const Subspace& w) {
  if (w.ambient_dim() != g.dim()) throw std::invalid_argument("completion: dimension mismatch");
  const Subspace w_perp = orthogonal_complement(w);
  const auto& t = g.table();
  std::vector<Isometry> gens;
  const Lattice along = lattice_intersect(t.lattice(), w);
  for (const auto& b : along.basis()) gens.push_back(Isometry::translation(b));
  for (std::size_t i = 0; i < t.order(); ++i) {
    const Mat& p = t.point_group()[i];
    if (p == Mat::identity(g.dim()) || !w_perp.is_fixed_by(p)) continue;
    if (auto x = lattice_solve(t.lattice(), t.offset(i), w)) gens.emplace_back(std::move(*x), p);
  }
  return SubgroupDesignation(g, std::move(gens));
}

/// N equals the set of elements of its parent translating inside V = span(N)
/// and fixing V⊥ pointwise.
inline bool is_complete(const SubgroupDesignation& n) {
  if (!is_normal(n)) throw rejected_input("subgroup is not normal");
  const Subspace v = span(n);
  const Subspace v_perp = orthogonal_complement(v);
  for (const auto& x : n.generators())
    if (!v.contains(x.translation_part()) || !v_perp.is_fixed_by(x.linear_part())) return false;
  const auto full = completion(n.parent(), v);
  return std::all_of(full.generators().begin(), full.generators().end(),
                     [&](const Isometry& x) { return n.contains(x); });
}

/// Affine map in the coordinates of an orthogonal (not normalized) basis.
struct AffineMap {
  Vec translation;
  Mat linear;
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// Gram–Schmidt applied to the canonical echelon basis. Rational, mutually
/// orthogonal, and the first vector is the first echelon vector.
inline std::vector<Vec> orthogonal_basis(const Subspace& s) {
  std::vector<Vec> out;
  for (const auto& b : s.basis()) {
    Vec u = b;
    for (const auto& prev : out) u = u - (dot(b, prev) / dot(prev, prev)) * prev;
    out.push_back(std::move(u));
  }
  return out;
}

/// The action of x on the invariant subspace s, in coordinates of
/// orthogonal_basis(s): the translation is projected to s and the linear
/// part restricted.
inline AffineMap restrict(const Isometry& x, const Subspace& s) {
  if (s.ambient_dim() != x.dim()) throw std::invalid_argument("restrict: dimension mismatch");
  if (!s.is_invariant_under(x.linear_part())) throw rejected_input("restrict: subspace is not invariant");
  const auto u = orthogonal_basis(s);
  const std::size_t k = u.size();
  AffineMap r{Vec(k), Mat(k, k)};
  for (std::size_t i = 0; i < k; ++i) {
    const Rat norm = dot(u[i], u[i]);
    r.translation[i] = dot(x.translation_part(), u[i]) / norm;
    for (std::size_t j = 0; j < k; ++j) r.linear(i, j) = dot(x.linear_part() * u[j], u[i]) / norm;
  }
  return r;
}

/// The isometry of E^n acting as x on s and trivially on s⊥.
inline Isometry part_along(const Isometry& x, const Subspace& s) {
  if (!s.is_invariant_under(x.linear_part())) throw rejected_input("part_along: subspace is not invariant");
  const std::size_t n = x.dim();
  const Mat p = s.projector();
  const Mat q = Mat::identity(n) - p;
  return Isometry(p * x.translation_part(), x.linear_part() * p + q);
}

/// y ↦ sign·y + shift on a line.
struct LineMap {
  Rat shift;
  int sign = 1;

  friend LineMap operator*(const LineMap& f, const LineMap& g) {
    return LineMap{f.shift + Rat(f.sign) * g.shift, f.sign * g.sign};
  }
  LineMap inverse() const { return LineMap{-Rat(sign) * shift, sign}; }
  Isometry as_isometry() const { return Isometry(Vec{shift}, Mat{{Rat(sign)}}); }
  friend bool operator==(const LineMap&, const LineMap&) = default;
};

/// Action of x on the invariant line, in units of the line's first echelon
/// basis vector.
inline LineMap line_action(const Isometry& x, const Subspace& line) {
  if (line.dim() != 1) throw std::invalid_argument("line_action: subspace is not a line");
  const AffineMap r = restrict(x, line);
  return LineMap{r.translation[0], r.linear(0, 0).sign()};
}

/// Discrete group of isometries of a line, in the coordinate of line_action.
class LineGroup {
 public:
  LineGroup() = default;
  static LineGroup of(const std::vector<Isometry>& generators, const Subspace& line) {
    std::vector<Isometry> maps;
    for (const auto& g : generators) maps.push_back(line_action(g, line).as_isometry());
    LineGroup lg;
    lg.table_ = CosetTable::build(1, maps, 2);
    return lg;
  }

  /// Generator of the translations, if there are any.
  std::optional<Rat> period() const {
    if (table_.lattice().rank() == 0) return std::nullopt;
    return table_.lattice().basis()[0][0];
  }
  bool has_reflections() const { return table_.order() == 2; }
  /// Reflections are y ↦ offset + k·period − y. Canonical in [0, period).
  Rat reflection_offset() const {
    const auto i = table_.find(Mat{{Rat(-1)}});
    if (!i) throw std::logic_error("line group has no reflections");
    return table_.offset(*i)[0];
  }
  bool contains(const LineMap& m) const { return table_.contains(m.as_isometry()); }

  /// Infinite cyclic groups quotient the line to a circle, infinite
  /// dihedral groups to an interval.
  OneOrbifoldKind orbifold_kind() const {
    return has_reflections() ? OneOrbifoldKind::Interval : OneOrbifoldKind::Circle;
  }

 private:
  CosetTable table_;
};

/// InfiniteDihedral iff some generator of the parent reverses V⊥; Other
/// unless V⊥ is a line.
inline QuotientKind quotient_kind(const SubgroupDesignation& n) {
  if (!is_complete(n)) throw rejected_input("subgroup is not complete");
  const Subspace v_perp = orthogonal_complement(span(n));
  if (v_perp.dim() != 1) return QuotientKind::Other;
  for (const auto& g : n.parent().generators())
    if (line_action(g, v_perp).sign < 0) return QuotientKind::InfiniteDihedral;
  return QuotientKind::InfiniteCyclic;
}

/// All products of at most `radius` generators and inverses, deduplicated,
/// in breadth-first order. Independent of the coset tables; tests use it as
/// an oracle.
inline std::vector<Isometry> enumerate_ball(const std::vector<Isometry>& generators, std::size_t dim,
                                            std::size_t radius) {
  std::vector<Isometry> steps;
  for (const auto& g : generators) {
    steps.push_back(g);
    steps.push_back(g.inverse());
  }
  std::vector<Isometry> out{Isometry::identity(dim)};
  std::unordered_set<Isometry> seen{out.front()};
  std::size_t layer_begin = 0;
  for (std::size_t r = 0; r < radius; ++r) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i)
      for (const auto& s : steps) {
        Isometry h = out[i] * s;
        if (seen.insert(h).second) out.push_back(std::move(h));
      }
    layer_begin = layer_end;
  }
  return out;
}

inline std::vector<Isometry> enumerate_ball(const SpaceGroup& g, std::size_t radius) {
  return enumerate_ball(g.generators(), g.dim(), radius);
}

inline std::vector<Isometry> enumerate_ball(const SubgroupDesignation& n, std::size_t radius) {
  return enumerate_ball(n.generators(), n.dim(), radius);
}

/// Some element of g whose action on the line `line` is `target`, if any.
/// Solved per point-group coset: the translation must lie in
/// offset + lattice and project onto the line as target.shift.
inline std::optional<Isometry> lift_line_action(const SpaceGroup& g, const Subspace& line, const LineMap& target) {
  const Vec& u = line.basis().front();
  const Subspace across = orthogonal_complement(line);
  const auto& t = g.table();
  for (std::size_t i = 0; i < t.order(); ++i) {
    const Mat& p = t.point_group()[i];
    if (!line.is_invariant_under(p)) continue;
    if (p * u != Rat(target.sign) * u) continue;
    const Vec along = target.shift * u;
    if (auto x = lattice_solve(t.lattice(), t.offset(i) - along, across)) return Isometry(*x + along, p);
  }
  return std::nullopt;
}

}  // namespace flatfib

#endif  // FLATFIB_GROUP_HPP
