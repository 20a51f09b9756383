#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "toricdvr/error.hpp"

namespace toricdvr {

using Integer = boost::multiprecision::cpp_int;

// Exact rational number kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den);

  // Accepts "a", "a/b", "-a/b" with optional surrounding blanks.
  static Rational parse(std::string_view text);

  Integer num() const { return boost::multiprecision::numerator(value_); }
  Integer den() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_ == 0; }
  bool is_integer() const { return den() == 1; }
  int sign() const { return value_.sign(); }

  Integer floor() const;
  Integer ceil() const;
  Rational abs() const { return value_.sign() < 0 ? -*this : *this; }

  // Always "num/den", so that 1 prints as "1/1".
  std::string to_string() const;

  Rational operator-() const { return Rational(Raw{}, -value_); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& q);

 private:
  using Raw_t = boost::multiprecision::cpp_rational;
  struct Raw {};
  Rational(Raw, Raw_t v) : value_(std::move(v)) {}

  Raw_t value_;
};

Rational pow(const Rational& base, long long exponent);

// Value of a discrete valuation: an integer or +infinity.
class ValInt {
 public:
  ValInt() = default;  // infinity
  explicit ValInt(long long v) : value_(v) {}

  static ValInt infinity() { return ValInt(); }

  bool is_infinite() const { return !value_.has_value(); }
  long long value() const;

  friend ValInt operator+(const ValInt& a, const ValInt& b);
  friend bool operator==(const ValInt& a, const ValInt& b) = default;
  // INFINITY compares above every integer.
  friend std::strong_ordering operator<=>(const ValInt& a, const ValInt& b);

 private:
  std::optional<long long> value_;
};

ValInt min(const ValInt& a, const ValInt& b);
std::ostream& operator<<(std::ostream& os, const ValInt& v);

bool is_prime(long long n);

// The DVR is Z localised at p, with uniformizer p and residue field F_p.
class ValuationConfig {
 public:
  explicit ValuationConfig(long long p = 2);
  long long p() const { return p_; }
  friend bool operator==(const ValuationConfig&, const ValuationConfig&) = default;

 private:
  long long p_;
};

ValInt padic_val(const Integer& n, const ValuationConfig& cfg);
ValInt padic_val(const Rational& q, const ValuationConfig& cfg);

// Image in F_p of a p-integral rational number.
long long reduce_mod_p(const Rational& q, const ValuationConfig& cfg);
long long mod_p(long long a, long long p);
long long inverse_mod_p(long long a, long long p);

struct ResidueVector {
  std::vector<long long> entries;  // each in [0, p)
  friend bool operator==(const ResidueVector&, const ResidueVector&) = default;
};

// Divides entry i by p^scaling[i] and reduces modulo p.
ResidueVector reduce_vector(std::span<const Rational> v, std::span<const long long> scaling,
                            const ValuationConfig& cfg);

using IntMatrix = std::vector<std::vector<Integer>>;

// Invariant factors d1 | d2 | ... of an integer matrix; length min(rows, cols),
// zeros for the rank deficit.
std::vector<Integer> smith_invariants(const IntMatrix& a);

}  // namespace toricdvr
