#ifndef FLATFIB_LINALG_HPP
#define FLATFIB_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "flatfib/errors.hpp"
#include "flatfib/rational.hpp"

namespace flatfib {

class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t dim) : e_(dim) {}
  Vec(std::initializer_list<Rat> xs) : e_(xs) {}
  explicit Vec(std::vector<Rat> xs) : e_(std::move(xs)) {}

  static Vec unit(std::size_t dim, std::size_t i) {
    Vec v(dim);
    v[i] = 1;
    return v;
  }

  std::size_t dim() const noexcept { return e_.size(); }
  Rat& operator[](std::size_t i) { return e_[i]; }
  const Rat& operator[](std::size_t i) const { return e_[i]; }
  auto begin() const noexcept { return e_.begin(); }
  auto end() const noexcept { return e_.end(); }

  bool is_zero() const noexcept {
    return std::all_of(e_.begin(), e_.end(), [](const Rat& x) { return x.is_zero(); });
  }

  friend Vec operator+(Vec a, const Vec& b) {
    check_dims(a, b);
    for (std::size_t i = 0; i < a.dim(); ++i) a[i] += b[i];
    return a;
  }
  friend Vec operator-(Vec a, const Vec& b) {
    check_dims(a, b);
    for (std::size_t i = 0; i < a.dim(); ++i) a[i] -= b[i];
    return a;
  }
  friend Vec operator-(Vec a) {
    for (auto& x : a.e_) x = -x;
    return a;
  }
  friend Vec operator*(const Rat& s, Vec a) {
    for (auto& x : a.e_) x *= s;
    return a;
  }
  friend Rat dot(const Vec& a, const Vec& b) {
    check_dims(a, b);
    Rat s;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
  }
  friend bool operator==(const Vec&, const Vec&) = default;
  friend auto operator<=>(const Vec& a, const Vec& b) { return a.e_ <=> b.e_; }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i) s += ' ';
      s += e_[i].to_string();
    }
    return s;
  }

 private:
  static void check_dims(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("vector dimension mismatch");
  }
  std::vector<Rat> e_;
};

/// Dense rational matrix, row-major. Linear parts of isometries are square;
/// intermediate systems may be rectangular.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
  Mat(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      e_.insert(e_.end(), r.begin(), r.end());
    }
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Mat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  Vec row(std::size_t i) const {
    Vec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
  }
  Vec col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_row(std::size_t i, const Vec& v) {
    if (v.dim() != cols_) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Mat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rat& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }
  friend Vec operator*(const Mat& a, const Vec& v) {
    if (a.cols_ != v.dim()) throw std::invalid_argument("matrix-vector dimension mismatch");
    Vec r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }
  friend Mat operator+(Mat a, const Mat& b) {
    a.check_same(b);
    for (std::size_t k = 0; k < a.e_.size(); ++k) a.e_[k] += b.e_[k];
    return a;
  }
  friend Mat operator-(Mat a, const Mat& b) {
    a.check_same(b);
    for (std::size_t k = 0; k < a.e_.size(); ++k) a.e_[k] -= b.e_[k];
    return a;
  }
  friend Mat operator*(const Rat& s, Mat a) {
    for (auto& x : a.e_) x *= s;
    return a;
  }
  friend bool operator==(const Mat&, const Mat&) = default;
  friend auto operator<=>(const Mat& a, const Mat& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    return a.e_ <=> b.e_;
  }

  bool is_orthogonal() const { return is_square() && transpose() * (*this) == identity(rows_); }

  /// Rows separated by " ; ", as in the isometry text format.
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) s += " ; ";
      s += row(i).to_string();
    }
    return s;
  }

  const std::vector<Rat>& data() const noexcept { return e_; }

 private:
  void check_same(const Mat& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  }
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> e_;
};

struct RrefResult {
  Mat form;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form over the rationals.
inline RrefResult rref(Mat m) {
  RrefResult out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rat inv = Rat(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Rat f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.form = std::move(m);
  return out;
}

/// Basis of {x : m x = 0}, one vector per free column.
inline std::vector<Vec> nullspace(const Mat& m) {
  const auto red = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < red.rank; ++i) v[red.pivots[i]] = -red.form(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Mat inverse(const Mat& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Mat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto red = rref(aug);
  if (red.rank < n || red.pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
  Mat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = red.form(i, n + j);
  return inv;
}

/// Linear subspace of Q^n, stored by its reduced row-echelon basis so that
/// equal subspaces compare equal.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient) { return Subspace(ambient); }
  static Subspace full(std::size_t ambient) {
    std::vector<Vec> b;
    for (std::size_t i = 0; i < ambient; ++i) b.push_back(Vec::unit(ambient, i));
    return span(ambient, b);
  }
  static Subspace span(std::size_t ambient, const std::vector<Vec>& vectors) {
    Subspace s(ambient);
    if (vectors.empty()) return s;
    Mat m(vectors.size(), ambient);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].dim() != ambient) throw std::invalid_argument("spanning vector has wrong dimension");
      m.set_row(i, vectors[i]);
    }
    const auto red = rref(m);
    for (std::size_t i = 0; i < red.rank; ++i) s.basis_.push_back(red.form.row(i));
    return s;
  }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  bool is_zero() const noexcept { return basis_.empty(); }
  const std::vector<Vec>& basis() const noexcept { return basis_; }

  bool contains(const Vec& v) const {
    if (v.dim() != ambient_) throw std::invalid_argument("vector dimension mismatch");
    auto b = basis_;
    b.push_back(v);
    return span(ambient_, b).dim() == dim();
  }
  bool contains(const Subspace& other) const {
    return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Vec& v) { return contains(v); });
  }
  bool is_invariant_under(const Mat& m) const {
    return std::all_of(basis_.begin(), basis_.end(), [&](const Vec& v) { return contains(m * v); });
  }
  /// m fixes every vector of the subspace.
  bool is_fixed_by(const Mat& m) const {
    return std::all_of(basis_.begin(), basis_.end(), [&](const Vec& v) { return m * v == v; });
  }

  /// Orthogonal projector onto the subspace.
  Mat projector() const {
    if (basis_.empty()) return Mat(ambient_, ambient_);
    const Mat b = Mat::from_rows(basis_, ambient_);
    const Mat bt = b.transpose();
    return bt * inverse(b * bt) * b;
  }

  friend bool operator==(const Subspace&, const Subspace&) = default;

  std::string to_string() const {
    if (basis_.empty()) return "{0}";
    std::string s = "span{";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (i) s += ", ";
      s += "(" + basis_[i].to_string() + ")";
    }
    return s + "}";
  }

 private:
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;
};

inline Subspace orthogonal_complement(const Subspace& s) {
  const std::size_t n = s.ambient_dim();
  if (s.is_zero()) return Subspace::full(n);
  return Subspace::span(n, nullspace(Mat::from_rows(s.basis(), n)));
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
  auto v = a.basis();
  v.insert(v.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient_dim(), v);
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
  return orthogonal_complement(subspace_sum(orthogonal_complement(a), orthogonal_complement(b)));
}

/// {v in restrict_to : m v = lambda v}.
inline Subspace eigenspace(const Mat& m, const Rat& lambda, const Subspace& restrict_to) {
  const std::size_t n = restrict_to.ambient_dim();
  if (!m.is_square() || m.rows() != n) throw std::invalid_argument("eigenspace: dimension mismatch");
  if (!restrict_to.is_invariant_under(m)) throw rejected_input("eigenspace: subspace is not invariant");
  if (restrict_to.is_zero()) return restrict_to;
  const Mat shifted = m - lambda * Mat::identity(n);
  const Mat basis_cols = Mat::from_rows(restrict_to.basis(), n).transpose();
  std::vector<Vec> vs;
  for (const auto& c : nullspace(shifted * basis_cols)) vs.push_back(basis_cols * c);
  return Subspace::span(n, vs);
}

inline Subspace eigenspace(const Mat& m, const Rat& lambda) {
  return eigenspace(m, lambda, Subspace::full(m.rows()));
}

}  // namespace flatfib

#endif  // FLATFIB_LINALG_HPP
