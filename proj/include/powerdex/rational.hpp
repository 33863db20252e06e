#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace powerdex {

/// Thrown for malformed user input (bad JSON, invalid games, size caps).
/// The CLI maps this to exit code 2.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Arbitrary precision fraction, always kept in lowest terms with a positive
/// denominator. Thin value wrapper around GMP's mpq_class.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I value) : q_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)

  template <std::integral I, std::integral J>
  Rational(I num, J den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q_.canonicalize();
  }

  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Accepts "p/q", "p", or a finite decimal such as "-0.125" (converted exactly).
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& str) {
      const auto b = str.find_first_not_of(" \t\n\r");
      const auto e = str.find_last_not_of(" \t\n\r");
      str = (b == std::string::npos) ? std::string() : str.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty()) throw input_error("empty rational literal");

    const auto check_digits = [&](std::string_view part, bool allow_sign) {
      std::size_t i = 0;
      if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
      if (i >= part.size()) throw input_error("malformed rational literal '" + s + "'");
      for (; i < part.size(); ++i) {
        if (part[i] < '0' || part[i] > '9') throw input_error("malformed rational literal '" + s + "'");
      }
    };

    if (const auto slash = s.find('/'); slash != std::string::npos) {
      std::string num = s.substr(0, slash);
      std::string den = s.substr(slash + 1);
      check_digits(num, true);
      check_digits(den, false);
      mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
      mpz_class d(den, 10);
      if (d == 0) throw input_error("zero denominator in '" + s + "'");
      return Rational(mpq_class(n, d));
    }
    if (const auto dot = s.find('.'); dot != std::string::npos) {
      std::string whole = s.substr(0, dot);
      std::string frac = s.substr(dot + 1);
      bool negative = false;
      if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
        negative = whole[0] == '-';
        whole = whole.substr(1);
      }
      if (whole.empty()) whole = "0";
      if (frac.empty()) frac = "0";
      check_digits(whole, false);
      check_digits(frac, false);
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
      mpz_class n = mpz_class(whole, 10) * scale + mpz_class(frac, 10);
      if (negative) n = -n;
      return Rational(mpq_class(n, scale));
    }
    check_digits(s, true);
    return Rational(mpq_class(mpz_class(s[0] == '+' ? s.substr(1) : s, 10)));
  }

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  /// Canonical "p/q" form; integers are written with denominator 1.
  std::string str() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

  double to_double() const { return q_.get_d(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Integer power with a non-negative exponent.
inline Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return Rational(mpq_class(num, den));
}

}  // namespace powerdex

template <>
struct std::hash<powerdex::Rational> {
  std::size_t operator()(const powerdex::Rational& r) const {
    return std::hash<std::string>{}(r.str());
  }
};
