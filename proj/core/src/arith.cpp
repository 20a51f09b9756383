#include "toricdvr/arith.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <utility>

namespace toricdvr {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::SingularBasis: return "SingularBasis";
    case ErrorCode::NotStronglyConvex: return "NotStronglyConvex";
    case ErrorCode::NotAFan: return "NotAFan";
    case ErrorCode::NonIntegralVertex: return "NonIntegralVertex";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::RecessionNotFan: return "RecessionNotFan";
    case ErrorCode::NotAVertex: return "NotAVertex";
    case ErrorCode::NonIntegerValues: return "NonIntegerValues";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::NotInLink: return "NotInLink";
    case ErrorCode::ValuesOutOfRange: return "ValuesOutOfRange";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::OutsideSupport: return "OutsideSupport";
    case ErrorCode::NoCoveringCone: return "NoCoveringCone";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::ConditionIFailed: return "ConditionIFailed";
    case ErrorCode::ConditionIIFailed: return "ConditionIIFailed";
    case ErrorCode::ComplexMismatch: return "ComplexMismatch";
    case ErrorCode::OutsideStar: return "OutsideStar";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Rational

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  value_ = Raw_t(num);
  value_ /= Raw_t(den);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  value_ /= o.value_;
  return *this;
}

namespace {

Integer parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw Error(ErrorCode::SchemaError, "malformed rational '" + std::string(whole) + "'");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw Error(ErrorCode::SchemaError, "malformed rational '" + std::string(whole) + "'");
  Integer out = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw Error(ErrorCode::SchemaError, "malformed rational '" + std::string(whole) + "'");
    out = out * 10 + (s[i] - '0');
  }
  return neg ? Integer(-out) : out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, text));
  auto n = parse_integer(trim(s.substr(0, slash)), text);
  auto d = parse_integer(trim(s.substr(slash + 1)), text);
  if (d == 0) throw Error(ErrorCode::SchemaError, "zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

Integer Rational::floor() const {
  Integer q = num() / den();  // truncates toward zero
  if (sign() < 0 && q * den() != num()) q -= 1;
  return q;
}

Integer Rational::ceil() const {
  Integer q = num() / den();
  if (sign() > 0 && q * den() != num()) q += 1;
  return q;
}

std::string Rational::to_string() const { return num().str() + "/" + den().str(); }

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

Rational pow(const Rational& base, long long exponent) {
  if (exponent < 0) return Rational(1) / pow(base, -exponent);
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------- ValInt

long long ValInt::value() const {
  if (!value_) throw Error(ErrorCode::InvalidArgument, "value of infinite valuation");
  return *value_;
}

ValInt operator+(const ValInt& a, const ValInt& b) {
  if (a.is_infinite() || b.is_infinite()) return ValInt::infinity();
  return ValInt(*a.value_ + *b.value_);
}

std::strong_ordering operator<=>(const ValInt& a, const ValInt& b) {
  if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
  if (a.is_infinite()) return std::strong_ordering::greater;
  if (b.is_infinite()) return std::strong_ordering::less;
  return *a.value_ <=> *b.value_;
}

ValInt min(const ValInt& a, const ValInt& b) { return b < a ? b : a; }

std::ostream& operator<<(std::ostream& os, const ValInt& v) {
  if (v.is_infinite()) return os << "INFINITY";
  return os << v.value();
}

// ---------------------------------------------------------------- valuation

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

ValuationConfig::ValuationConfig(long long p) : p_(p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
}

ValInt padic_val(const Integer& n, const ValuationConfig& cfg) {
  if (n == 0) return ValInt::infinity();
  Integer m = n;
  const Integer p = cfg.p();
  long long v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return ValInt(v);
}

ValInt padic_val(const Rational& q, const ValuationConfig& cfg) {
  if (q.is_zero()) return ValInt::infinity();
  return ValInt(padic_val(q.num(), cfg).value() - padic_val(q.den(), cfg).value());
}

long long mod_p(long long a, long long p) {
  long long r = a % p;
  return r < 0 ? r + p : r;
}

long long inverse_mod_p(long long a, long long p) {
  a = mod_p(a, p);
  if (a == 0) throw Error(ErrorCode::InvalidArgument, "zero has no inverse mod p");
  // extended Euclid
  long long t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return mod_p(t, p);
}

long long reduce_mod_p(const Rational& q, const ValuationConfig& cfg) {
  if (padic_val(q, cfg) < ValInt(0))
    throw Error(ErrorCode::NotIntegral, q.to_string() + " has negative valuation");
  const Integer p = cfg.p();
  Integer n = q.num() % p;
  Integer d = q.den() % p;
  long long nn = mod_p(static_cast<long long>(n), cfg.p());
  long long dd = mod_p(static_cast<long long>(d), cfg.p());
  return nn * inverse_mod_p(dd, cfg.p()) % cfg.p();
}

ResidueVector reduce_vector(std::span<const Rational> v, std::span<const long long> scaling,
                            const ValuationConfig& cfg) {
  if (v.size() != scaling.size())
    throw Error(ErrorCode::InvalidArgument, "vector and scaling lengths differ");
  ResidueVector out;
  out.entries.reserve(v.size());
  const Rational p(cfg.p());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational scaled = v[i] * pow(p, -scaling[i]);
    out.entries.push_back(reduce_mod_p(scaled, cfg));
  }
  return out;
}

// ---------------------------------------------------------------- Smith form

std::vector<Integer> smith_invariants(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  const std::size_t k = std::min(rows, cols);
  std::vector<Integer> diag;
  diag.reserve(k);

  for (std::size_t t = 0; t < k; ++t) {
    for (;;) {
      // smallest nonzero pivot in the trailing block
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) {
        diag.resize(k, Integer(0));
        return diag;
      }
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        Integer q = a[i][t] / a[t][t];
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        Integer q = a[t][j] / a[t][t];
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // pivot must divide the whole trailing block
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

}  // namespace toricdvr
