#ifndef FLATFIB_ISOMETRY_HPP
#define FLATFIB_ISOMETRY_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "flatfib/errors.hpp"
#include "flatfib/linalg.hpp"

namespace flatfib {

/// Euclidean isometry x -> a + A x with rational translation a and rational
/// orthogonal A.
class Isometry {
 public:
  Isometry() = default;
  Isometry(Vec translation, Mat linear) : a_(std::move(translation)), m_(std::move(linear)) {
    if (!m_.is_square() || m_.rows() != a_.dim())
      throw std::invalid_argument("isometry: translation and linear part disagree on dimension");
    if (!m_.is_orthogonal()) throw rejected_input("isometry: linear part " + m_.to_string() + " is not orthogonal");
  }

  static Isometry identity(std::size_t n) { return Isometry(Vec(n), Mat::identity(n)); }
  static Isometry translation(Vec a) {
    const auto n = a.dim();
    return Isometry(std::move(a), Mat::identity(n));
  }
  static Isometry linear(Mat m) {
    const auto n = m.rows();
    return Isometry(Vec(n), std::move(m));
  }

  std::size_t dim() const noexcept { return a_.dim(); }
  const Vec& translation_part() const noexcept { return a_; }
  const Mat& linear_part() const noexcept { return m_; }

  bool is_identity() const { return a_.is_zero() && m_ == Mat::identity(dim()); }
  bool is_translation() const { return m_ == Mat::identity(dim()); }

  Vec apply(const Vec& x) const { return a_ + m_ * x; }

  Isometry inverse() const {
    Mat t = m_.transpose();
    Vec b = -(t * a_);
    return Isometry(unchecked{}, std::move(b), std::move(t));
  }

  Isometry pow(long k) const {
    Isometry base = k < 0 ? inverse() : *this;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    Isometry acc = identity(dim());
    while (e) {
      if (e & 1UL) acc = compose(acc, base);
      base = compose(base, base);
      e >>= 1UL;
    }
    return acc;
  }

  /// (a + A) ∘ (b + B) = (a + A b) + A B
  friend Isometry compose(const Isometry& f, const Isometry& g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("compose: dimension mismatch");
    return Isometry(unchecked{}, f.a_ + f.m_ * g.a_, f.m_ * g.m_);
  }
  friend Isometry operator*(const Isometry& f, const Isometry& g) { return compose(f, g); }

  friend bool operator==(const Isometry&, const Isometry&) = default;
  friend auto operator<=>(const Isometry& a, const Isometry& b) {
    if (auto c = a.m_ <=> b.m_; c != 0) return c;
    return a.a_ <=> b.a_;
  }

  /// "a | A" with matrix rows separated by ';', e.g. "1/2 1/2 | 1 0 ; 0 -1".
  std::string to_string() const { return a_.to_string() + " | " + m_.to_string(); }

 private:
  struct unchecked {};
  Isometry(unchecked, Vec a, Mat m) : a_(std::move(a)), m_(std::move(m)) {}

  Vec a_;
  Mat m_;
};

/// x ↦ g x g⁻¹
inline Isometry conjugate(const Isometry& g, const Isometry& x) { return g * x * g.inverse(); }

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t j = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > j) out.push_back(s.substr(j, i - j));
  }
  return out;
}

}  // namespace detail

/// Parses the "a | A" text form. The dimension is the number of translation
/// entries; the matrix must have that many rows of that many entries.
inline Isometry parse_isometry(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) throw parse_error("isometry '" + std::string(text) + "' lacks '|'");
  std::vector<Rat> a;
  for (auto tok : detail::split_ws(text.substr(0, bar))) a.push_back(Rat::parse(tok));
  const std::size_t n = a.size();
  if (n == 0) throw parse_error("isometry '" + std::string(text) + "' has an empty translation");
  Mat m(n, n);
  std::string_view rest = text.substr(bar + 1);
  std::size_t row = 0;
  for (;;) {
    const auto semi = rest.find(';');
    const auto toks = detail::split_ws(rest.substr(0, semi));
    if (row >= n || toks.size() != n)
      throw parse_error("isometry '" + std::string(text) + "': expected a " + std::to_string(n) + "x" +
                        std::to_string(n) + " matrix");
    for (std::size_t j = 0; j < n; ++j) m(row, j) = Rat::parse(toks[j]);
    ++row;
    if (semi == std::string_view::npos) break;
    rest = rest.substr(semi + 1);
  }
  if (row != n) throw parse_error("isometry '" + std::string(text) + "': matrix has too few rows");
  return Isometry(Vec(std::move(a)), std::move(m));
}

}  // namespace flatfib

template <>
struct std::hash<flatfib::Isometry> {
  std::size_t operator()(const flatfib::Isometry& g) const noexcept {
    std::size_t h = 0;
    auto mix = [&h](const flatfib::Rat& r) {
      h ^= std::hash<flatfib::Rat>{}(r) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (const auto& x : g.translation_part()) mix(x);
    for (const auto& x : g.linear_part().data()) mix(x);
    return h;
  }
};

#endif  // FLATFIB_ISOMETRY_HPP
