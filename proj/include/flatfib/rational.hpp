#ifndef FLATFIB_RATIONAL_HPP
#define FLATFIB_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "flatfib/errors.hpp"

namespace flatfib {

/// Exact rational number over 64-bit integers.
///
/// Always kept in lowest terms with a positive denominator, so structural
/// equality is numeric equality. Intermediate products are formed in 128 bits;
/// a result that does not fit back into 64 bits throws std::overflow_error
/// instead of wrapping.
class Rat {
 public:
  using int_type = std::int64_t;

  constexpr Rat() noexcept = default;
  constexpr Rat(int_type n) noexcept : num_(n) {}  // NOLINT: implicit from integer
  Rat(int_type n, int_type d) { *this = from_wide(n, d); }

  int_type num() const noexcept { return num_; }
  int_type den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

  /// Largest integer not exceeding the value.
  int_type floor() const noexcept {
    int_type q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  /// Representative of the value modulo 1 in [0, 1).
  Rat frac() const { return *this - Rat(floor()); }

  Rat abs() const noexcept {
    Rat r = *this;
    if (r.num_ < 0) r.num_ = -r.num_;
    return r;
  }

  Rat operator-() const noexcept {
    Rat r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    if (a.den_ == b.den_) return from_wide(wide(a.num_) + b.num_, a.den_);
    return from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return from_wide(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
  }

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) noexcept {
    const wide lhs = wide(a.num_) * b.den_;
    const wide rhs = wide(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "p", "-p", or "p/q".
  static Rat parse(std::string_view text);

 private:
  using wide = __int128;

  static wide gcd(wide a, wide b) noexcept {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      wide t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rat from_wide(wide n, wide d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const wide g = gcd(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr wide lo = std::numeric_limits<int_type>::min() + 1;
    constexpr wide hi = std::numeric_limits<int_type>::max();
    if (n < lo || n > hi || d > hi) throw std::overflow_error("rational overflow");
    Rat r;
    r.num_ = static_cast<int_type>(n);
    r.den_ = static_cast<int_type>(d);
    return r;
  }

  int_type num_ = 0;
  int_type den_ = 1;
};

inline Rat Rat::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> int_type {
    if (s.empty()) throw parse_error("empty number in '" + std::string(text) + "'");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) throw parse_error("malformed number '" + std::string(text) + "'");
    wide v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw parse_error("malformed number '" + std::string(text) + "'");
      v = v * 10 + (s[i] - '0');
      if (v > std::numeric_limits<int_type>::max()) throw parse_error("number out of range '" + std::string(text) + "'");
    }
    return static_cast<int_type>(neg ? -v : v);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  const int_type d = parse_int(text.substr(slash + 1));
  if (d == 0) throw parse_error("zero denominator in '" + std::string(text) + "'");
  return Rat(parse_int(text.substr(0, slash)), d);
}

inline std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

}  // namespace flatfib

template <>
struct std::hash<flatfib::Rat> {
  std::size_t operator()(const flatfib::Rat& r) const noexcept {
    const std::size_t h = std::hash<std::int64_t>{}(r.num());
    return h ^ (std::hash<std::int64_t>{}(r.den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

#endif  // FLATFIB_RATIONAL_HPP
