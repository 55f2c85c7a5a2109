#pragma once

#include <charconv>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "ruledmod/errors.hpp"

namespace ruledmod {

// Exact rational number over 64-bit integers, always stored in lowest terms
// with a positive denominator. Intermediate products are taken in 128 bits;
// a reduced result that does not fit in 64 bits throws std::overflow_error
// instead of wrapping. There is no floating point anywhere in this library.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n) {}
  Rational(long long n, long long d) { *this = make(n, d); }

  // Accepts "p", "-p" and "p/q" with q > 0; everything else is rejected.
  static Rational parse(std::string_view text);

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

  // Round toward -infinity / +infinity.
  long long floor() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  long long ceil() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  friend Rational operator-(const Rational& x) { return make(-i128(x.num_), x.den_); }

  friend Rational operator+(const Rational& x, const Rational& y) {
    return make(i128(x.num_) * y.den_ + i128(y.num_) * x.den_, i128(x.den_) * y.den_);
  }
  friend Rational operator-(const Rational& x, const Rational& y) {
    return make(i128(x.num_) * y.den_ - i128(y.num_) * x.den_, i128(x.den_) * y.den_);
  }
  friend Rational operator*(const Rational& x, const Rational& y) {
    return make(i128(x.num_) * y.num_, i128(x.den_) * y.den_);
  }
  friend Rational operator/(const Rational& x, const Rational& y) {
    if (y.num_ == 0) throw input_error("division by zero");
    return make(i128(x.num_) * y.den_, i128(x.den_) * y.num_);
  }

  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }
  Rational& operator/=(const Rational& y) { return *this = *this / y; }

  // Canonical form makes fieldwise equality exact equality of values.
  friend bool operator==(const Rational&, const Rational&) = default;

  friend bool operator<(const Rational& x, const Rational& y) {
    return i128(x.num_) * y.den_ < i128(y.num_) * x.den_;
  }
  friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
  friend bool operator<=(const Rational& x, const Rational& y) { return !(y < x); }
  friend bool operator>=(const Rational& x, const Rational& y) { return !(x < y); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

 private:
  using i128 = __int128;
  using u128 = unsigned __int128;

  static u128 abs128(i128 v) { return v < 0 ? u128(-(v + 1)) + 1 : u128(v); }

  static u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
      u128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational make(i128 n, i128 d) {
    if (d == 0) throw input_error("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    u128 g = gcd128(abs128(n), u128(d));
    if (g > 1) {
      n /= i128(g);
      d /= i128(g);
    }
    constexpr i128 lo = std::numeric_limits<long long>::min();
    constexpr i128 hi = std::numeric_limits<long long>::max();
    if (n < lo || n > hi || d > hi) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  long long num_ = 0;
  long long den_ = 1;
};

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw input_error("malformed rational: '" + std::string(text) + "'");
  };
  auto parse_ll = [&](std::string_view part, long long& out) {
    const char* first = part.data();
    const char* last = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !part.empty();
  };
  std::size_t slash = text.find('/');
  long long n = 0;
  long long d = 1;
  if (slash == std::string_view::npos) {
    if (!parse_ll(text, n)) return fail();
  } else {
    if (!parse_ll(text.substr(0, slash), n)) return fail();
    std::string_view dpart = text.substr(slash + 1);
    if (dpart.empty() || dpart.front() == '-' || !parse_ll(dpart, d)) return fail();
    if (d == 0) throw input_error("zero denominator in rational: '" + std::string(text) + "'");
  }
  return Rational(n, d);
}

}  // namespace ruledmod
