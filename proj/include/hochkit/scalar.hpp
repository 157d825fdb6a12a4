#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hochkit {

// Exact scalars. Two kinds: arbitrary-precision rationals (GMP) and prime
// fields with runtime modulus. All arithmetic in the engine is exact.

using Rational = mpq_class;

inline bool is_zero(const Rational& a) { return sgn(a) == 0; }
inline Rational inv(const Rational& a) {
  if (is_zero(a)) throw std::domain_error("division by zero");
  return Rational(1) / a;
}

// Prime-field element. The modulus travels with the value; a default or
// int-constructed element has modulus 0 and acts as an integer literal that
// adopts the modulus of the first moded operand it meets (Eigen's internals
// create Scalar(0)/Scalar(1) literals). Inverting a bare literal other than
// +-1 throws: field data must be created through Field<Fp>.
struct Fp {
  long long v = 0;
  long long p = 0;

  Fp() = default;
  Fp(int n) : v(n) {}
  Fp(long long n) : v(n) {}
  Fp(long long n, long long mod) : v(n), p(mod) { reduce(); }

  void reduce() {
    if (p != 0) {
      v %= p;
      if (v < 0) v += p;
    }
  }

  friend long long common_mod(const Fp& a, const Fp& b) {
    if (a.p != 0 && b.p != 0 && a.p != b.p)
      throw std::invalid_argument("prime-field modulus mismatch");
    return a.p != 0 ? a.p : b.p;
  }

  friend Fp operator+(const Fp& a, const Fp& b) {
    long long m = common_mod(a, b);
    if (m == 0) {
      long long r;
      if (__builtin_add_overflow(a.v, b.v, &r)) throw std::overflow_error("Fp literal overflow");
      return Fp(r);
    }
    return Fp(Fp(a.v, m).v + Fp(b.v, m).v, m);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    long long m = common_mod(a, b);
    if (m == 0) {
      long long r;
      if (__builtin_sub_overflow(a.v, b.v, &r)) throw std::overflow_error("Fp literal overflow");
      return Fp(r);
    }
    return Fp(Fp(a.v, m).v - Fp(b.v, m).v, m);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    long long m = common_mod(a, b);
    if (m == 0) {
      long long r;
      if (__builtin_mul_overflow(a.v, b.v, &r)) throw std::overflow_error("Fp literal overflow");
      return Fp(r);
    }
    __int128 prod = static_cast<__int128>(Fp(a.v, m).v) * Fp(b.v, m).v;
    return Fp(static_cast<long long>(prod % m), m);
  }
  friend Fp operator-(const Fp& a) { return Fp(-a.v, a.p); }

  Fp& operator+=(const Fp& b) { return *this = *this + b; }
  Fp& operator-=(const Fp& b) { return *this = *this - b; }
  Fp& operator*=(const Fp& b) { return *this = *this * b; }

  friend bool operator==(const Fp& a, const Fp& b) {
    long long m = common_mod(a, b);
    if (m == 0) return a.v == b.v;
    return Fp(a.v, m).v == Fp(b.v, m).v;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

inline bool is_zero(const Fp& a) { return a.p == 0 ? a.v == 0 : Fp(a.v, a.p).v == 0; }

inline Fp inv(const Fp& a) {
  if (a.p == 0) {
    if (a.v == 1 || a.v == -1) return a;
    throw std::logic_error("cannot invert an unmoded prime-field literal");
  }
  long long r = Fp(a.v, a.p).v;
  if (r == 0) throw std::domain_error("division by zero in F_p");
  // extended Euclid
  long long t = 0, newt = 1, q = a.p, newr = r;
  while (newr != 0) {
    long long quot = q / newr;
    long long tmp = t - quot * newt;
    t = newt;
    newt = tmp;
    tmp = q - quot * newr;
    q = newr;
    newr = tmp;
  }
  return Fp(t, a.p);
}

inline Fp operator/(const Fp& a, const Fp& b) { return a * inv(b); }

template <class Stream>
Stream& operator<<(Stream& os, const Fp& a) {
  os << a.v;
  if (a.p) os << " (mod " << a.p << ")";
  return os;
}

// Runtime descriptor of the scalar kind, used at io and cli boundaries.
struct ScalarSpec {
  bool rational = true;
  long long p = 0;

  static ScalarSpec parse(const std::string& s);
  std::string name() const { return rational ? "rational" : "fp:" + std::to_string(p); }
  friend bool operator==(const ScalarSpec&, const ScalarSpec&) = default;
};

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline ScalarSpec ScalarSpec::parse(const std::string& s) {
  if (s == "rational") return ScalarSpec{};
  if (s.rfind("fp:", 0) == 0) {
    long long p = std::stoll(s.substr(3));
    if (!is_prime(p)) throw std::invalid_argument("prime-field modulus must be prime: " + s);
    if (p >= (1LL << 31)) throw std::invalid_argument("prime-field modulus too large: " + s);
    return ScalarSpec{false, p};
  }
  throw std::invalid_argument("unknown scalar kind: " + s);
}

// Field context: makes scalars of the right kind out of integers/strings.
template <class S>
struct Field;

template <>
struct Field<Rational> {
  Field() = default;
  explicit Field(const ScalarSpec& sp) {
    if (!sp.rational) throw std::invalid_argument("scalar kind mismatch: expected rational");
  }
  Rational of(long long n) const { return Rational(static_cast<long>(n)); }
  Rational parse(const std::string& s) const {
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
      throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
  }
  std::string str(const Rational& a) const { return a.get_str(); }
  ScalarSpec spec() const { return ScalarSpec{}; }
};

template <>
struct Field<Fp> {
  long long p = 2;
  Field() = default;
  explicit Field(long long mod) : p(mod) { check(); }
  explicit Field(const ScalarSpec& sp) : p(sp.p) {
    if (sp.rational) throw std::invalid_argument("scalar kind mismatch: expected prime field");
    check();
  }
  void check() const {
    if (!is_prime(p)) throw std::invalid_argument("modulus is not prime: " + std::to_string(p));
  }
  Fp of(long long n) const { return Fp(n, p); }
  Fp parse(const std::string& s) const {
    // accepts plain integers and a/b with b invertible
    auto slash = s.find('/');
    if (slash == std::string::npos) return of(std::stoll(s));
    return of(std::stoll(s.substr(0, slash))) / of(std::stoll(s.substr(slash + 1)));
  }
  std::string str(const Fp& a) const { return std::to_string(Fp(a.v, p).v); }
  ScalarSpec spec() const { return ScalarSpec{false, p}; }
};

}  // namespace hochkit

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

template <>
struct NumTraits<hochkit::Fp> : GenericNumTraits<hochkit::Fp> {
  typedef hochkit::Fp Real;
  typedef hochkit::Fp NonInteger;
  typedef hochkit::Fp Nested;
  typedef hochkit::Fp Literal;
  static inline Real epsilon() { return hochkit::Fp(0); }
  static inline Real dummy_precision() { return hochkit::Fp(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 0,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 4,
    MulCost = 6
  };
};

}  // namespace Eigen
