#ifndef FLATFIB_LATTICE_HPP
#define FLATFIB_LATTICE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatfib/linalg.hpp"

namespace flatfib {

/// Row Hermite normal form of a rational matrix under integer row operations.
///
/// transform * input == form, transform is unimodular, and the first `rank`
/// rows of `form` are in Hermite normal form: pivot columns strictly
/// increase, pivots are positive, and the entries above each pivot lie in
/// [0, pivot). The remaining rows of `form` are zero and the matching rows of
/// `transform` are a basis of the integer left kernel of the input.
struct HermiteResult {
  Mat form;
  Mat transform;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

namespace detail {

inline void swap_rows(Mat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
inline void negate_row(Mat& m, std::size_t a) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) = -m(a, j);
}
// row[a] -= q * row[b]
inline void sub_row(Mat& m, std::size_t a, std::size_t b, const Rat& q) {
  if (q.is_zero()) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) -= q * m(b, j);
}

}  // namespace detail

/// Entries are rational, so the Euclidean step uses floor of rational
/// quotients; it terminates because all entries share a common denominator.
inline HermiteResult hermite_form(Mat a) {
  const std::size_t k = a.rows();
  Mat u = Mat::identity(k);
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < a.cols() && r < k; ++c) {
    bool found = false;
    for (;;) {
      std::size_t best = k;
      for (std::size_t i = r; i < k; ++i)
        if (!a(i, c).is_zero() && (best == k || a(i, c).abs() < a(best, c).abs())) best = i;
      if (best == k) break;
      found = true;
      detail::swap_rows(a, r, best);
      detail::swap_rows(u, r, best);
      if (a(r, c).sign() < 0) {
        detail::negate_row(a, r);
        detail::negate_row(u, r);
      }
      bool clean = true;
      for (std::size_t i = r + 1; i < k; ++i) {
        if (a(i, c).is_zero()) continue;
        const Rat q((a(i, c) / a(r, c)).floor());
        detail::sub_row(a, i, r, q);
        detail::sub_row(u, i, r, q);
        if (!a(i, c).is_zero()) clean = false;
      }
      if (clean) break;
    }
    if (!found) continue;
    for (std::size_t i = 0; i < r; ++i) {
      const Rat q((a(i, c) / a(r, c)).floor());
      detail::sub_row(a, i, r, q);
      detail::sub_row(u, i, r, q);
    }
    pivots.push_back(c);
    ++r;
  }
  return HermiteResult{std::move(a), std::move(u), r, std::move(pivots)};
}

/// Discrete subgroup of Q^n generated by finitely many rational vectors.
///
/// The basis is the Hermite normal form of the generators, so two lattices
/// are equal exactly when their bases are.
class Lattice {
 public:
  Lattice() = default;

  static Lattice zero(std::size_t ambient) { return Lattice(ambient); }
  static Lattice standard(std::size_t ambient) {
    std::vector<Vec> b;
    for (std::size_t i = 0; i < ambient; ++i) b.push_back(Vec::unit(ambient, i));
    return generated_by(ambient, b);
  }
  static Lattice generated_by(std::size_t ambient, const std::vector<Vec>& generators) {
    Lattice l(ambient);
    if (generators.empty()) return l;
    const auto h = hermite_form(Mat::from_rows(generators, ambient));
    for (std::size_t i = 0; i < h.rank; ++i) l.basis_.push_back(h.form.row(i));
    l.pivots_ = h.pivots;
    return l;
  }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  const std::vector<Vec>& basis() const noexcept { return basis_; }

  /// Integer coordinates of v in the basis, if v is a lattice vector.
  std::optional<std::vector<Rat::int_type>> coordinates(Vec v) const {
    if (v.dim() != ambient_) throw std::invalid_argument("lattice: vector dimension mismatch");
    std::vector<Rat::int_type> z(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Rat c = v[pivots_[i]] / basis_[i][pivots_[i]];
      if (!c.is_integer()) return std::nullopt;
      z[i] = c.num();
      v = v - c * basis_[i];
    }
    if (!v.is_zero()) return std::nullopt;
    return z;
  }
  bool contains(const Vec& v) const { return coordinates(v).has_value(); }

  /// Representative of v modulo the lattice, reduced against each pivot
  /// into [0, pivot). Canonical for the coset v + L.
  Vec reduce(Vec v) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Rat q((v[pivots_[i]] / basis_[i][pivots_[i]]).floor());
      v = v - q * basis_[i];
    }
    return v;
  }

  Subspace span() const { return Subspace::span(ambient_, basis_); }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  std::string to_string() const {
    std::string s = "Z<";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (i) s += ", ";
      s += "(" + basis_[i].to_string() + ")";
    }
    return s + ">";
  }

 private:
  explicit Lattice(std::size_t ambient) : ambient_(ambient) {}
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

/// Some x in (target + l) that lies in `constraint`, or nullopt when the
/// coset misses the subspace. Decided by Hermite reduction of the integer
/// system W (target + B^T z) = 0 with W spanning the complement of the
/// constraint.
inline std::optional<Vec> lattice_solve(const Lattice& l, const Vec& target, const Subspace& constraint) {
  const std::size_t n = l.ambient_dim();
  if (target.dim() != n || constraint.ambient_dim() != n)
    throw std::invalid_argument("lattice_solve: dimension mismatch");
  const Subspace normals = orthogonal_complement(constraint);
  if (normals.is_zero()) return target;
  const std::size_t w = normals.dim();
  const auto& b = l.basis();
  Vec rhs(w);
  for (std::size_t j = 0; j < w; ++j) rhs[j] = -dot(normals.basis()[j], target);
  if (b.empty()) {
    if (rhs.is_zero()) return target;
    return std::nullopt;
  }
  Mat a(b.size(), w);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < w; ++j) a(i, j) = dot(normals.basis()[j], b[i]);
  const auto h = hermite_form(a);
  // Solve y^T H = rhs^T, then z^T = y^T U.
  std::vector<Rat> y(b.size());
  for (std::size_t i = 0; i < h.rank; ++i) {
    const std::size_t p = h.pivots[i];
    const Rat yi = rhs[p] / h.form(i, p);
    if (!yi.is_integer()) return std::nullopt;
    y[i] = yi;
    for (std::size_t j = 0; j < w; ++j) rhs[j] -= yi * h.form(i, j);
  }
  if (!rhs.is_zero()) return std::nullopt;
  Vec x = target;
  for (std::size_t c = 0; c < b.size(); ++c) {
    Rat zc;
    for (std::size_t i = 0; i < h.rank; ++i) zc += y[i] * h.transform(i, c);
    if (!zc.is_zero()) x = x + zc * b[c];
  }
  return x;
}

/// The sublattice l ∩ s.
inline Lattice lattice_intersect(const Lattice& l, const Subspace& s) {
  const std::size_t n = l.ambient_dim();
  if (s.ambient_dim() != n) throw std::invalid_argument("lattice_intersect: dimension mismatch");
  const Subspace normals = orthogonal_complement(s);
  if (normals.is_zero() || l.rank() == 0) return l;
  const auto& b = l.basis();
  Mat a(b.size(), normals.dim());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < normals.dim(); ++j) a(i, j) = dot(normals.basis()[j], b[i]);
  const auto h = hermite_form(a);
  std::vector<Vec> gens;
  for (std::size_t i = h.rank; i < b.size(); ++i) {
    Vec v(n);
    for (std::size_t c = 0; c < b.size(); ++c) v = v + h.transform(i, c) * b[c];
    gens.push_back(std::move(v));
  }
  return Lattice::generated_by(n, gens);
}

/// Index [l : sub] when sub is a full-rank sublattice of l, else nullopt.
inline std::optional<Rat::int_type> lattice_index(const Lattice& l, const Lattice& sub) {
  if (l.ambient_dim() != sub.ambient_dim() || l.rank() != sub.rank()) return std::nullopt;
  const std::size_t r = l.rank();
  Mat coords(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    const auto z = l.coordinates(sub.basis()[i]);
    if (!z) return std::nullopt;
    for (std::size_t j = 0; j < r; ++j) coords(i, j) = Rat((*z)[j]);
  }
  // Hermite form is triangular; the index is the product of its pivots.
  const auto h = hermite_form(coords);
  if (h.rank < r) return std::nullopt;
  Rat det = 1;
  for (std::size_t i = 0; i < r; ++i) det *= h.form(i, h.pivots[i]);
  return det.num();
}

}  // namespace flatfib

#endif  // FLATFIB_LATTICE_HPP
