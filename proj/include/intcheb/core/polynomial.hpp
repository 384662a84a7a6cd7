#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "intcheb/core/numbers.hpp"

namespace intcheb {

/// Dense univariate polynomial, coefficients stored low-to-high.
///
/// The leading (highest-index) coefficient is nonzero unless the polynomial
/// is identically zero, in which case the coefficient vector is empty and
/// `degree()` is -1. Every constructor and arithmetic operation funnels
/// through `normalize()`, so structural equality is mathematical equality.
template <class T>
class Polynomial {
 public:
  using value_type = T;

  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if constexpr (std::is_same_v<T, Rational>) {
      for (auto& q : c_) q.canonicalize();
    }
    normalize();
  }
  Polynomial(std::initializer_list<T> coeffs) : Polynomial(std::vector<T>(coeffs)) {}

  static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }
  static Polynomial monomial(T c, std::size_t k) {
    std::vector<T> v(k + 1, T(0));
    v[k] = std::move(c);
    return Polynomial(std::move(v));
  }
  static Polynomial x() { return monomial(T(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<T>& coeffs() const { return c_; }

  /// Coefficient of x^k; zero past the degree.
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  const T& leading() const { return c_.back(); }

  template <class U>
  auto operator()(const U& x) const {
    using R = std::conditional_t<std::is_same_v<U, Rational> || std::is_same_v<T, Rational>,
                                 Rational, T>;
    R acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<unsigned long>(k);
    return Polynomial(std::move(d));
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    normalize();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    normalize();
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    normalize();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<T> c_;
};

using IntPoly = Polynomial<Integer>;
using RatPoly = Polynomial<Rational>;

template <class T>
Polynomial<T> pow(const Polynomial<T>& p, unsigned long e) {
  Polynomial<T> result = Polynomial<T>::constant(T(1));
  Polynomial<T> base = p;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

/// p(q(x)) by Horner over polynomials.
template <class T>
Polynomial<T> compose(const Polynomial<T>& p, const Polynomial<T>& q) {
  Polynomial<T> acc;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * q + Polynomial<T>::constant(*it);
  return acc;
}

/// x^n p(1/x) for n = deg p.
template <class T>
Polynomial<T> reversed(const Polynomial<T>& p) {
  std::vector<T> c(p.coeffs().rbegin(), p.coeffs().rend());
  return Polynomial<T>(std::move(c));
}

inline RatPoly to_rational(const IntPoly& p) {
  std::vector<Rational> c(p.coeffs().begin(), p.coeffs().end());
  return RatPoly(std::move(c));
}

inline Integer content(const IntPoly& p) {
  Integer g = 0;
  for (const auto& a : p.coeffs()) g = gcd(g, a);
  return g;
}

/// Divides by the content and makes the leading coefficient positive.
inline IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  Integer g = content(p);
  if (p.leading() < 0) g = -g;
  std::vector<Integer> c;
  c.reserve(p.coeffs().size());
  for (const auto& a : p.coeffs()) c.push_back(divexact(a, g));
  return IntPoly(std::move(c));
}

/// Primitive integer polynomial proportional to `p` (positive leading coefficient).
inline IntPoly primitive_part(const RatPoly& p) {
  if (p.is_zero()) return {};
  Integer den = 1;
  for (const auto& q : p.coeffs()) den = lcm(den, Integer(q.get_den()));
  std::vector<Integer> c;
  c.reserve(p.coeffs().size());
  for (const auto& q : p.coeffs()) c.push_back(Integer(q.get_num()) * divexact(den, q.get_den()));
  return primitive_part(IntPoly(std::move(c)));
}

/// Euclidean division over Q: a = q*b + r, deg r < deg b.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw PreconditionError("zero_polynomial", "division by the zero polynomial");
  std::vector<Rational> rem = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {RatPoly{}, a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational& lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational f = rem[static_cast<std::size_t>(k)] / lb;
    quo[static_cast<std::size_t>(k - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

/// Monic gcd over Q (zero if both inputs are zero).
inline RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * Rational(Rational(1) / a.leading());
}

/// Primitive gcd of integer polynomials (computed over Q).
inline IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  return primitive_part(gcd(to_rational(a), to_rational(b)));
}

/// Exact quotient a / b over Q; throws if b does not divide a.
inline RatPoly exact_quotient(const RatPoly& a, const RatPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw PreconditionError("not_divisible", "polynomial division leaves a remainder");
  return q;
}

inline IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
  RatPoly q = exact_quotient(to_rational(a), to_rational(b));
  std::vector<Integer> c;
  for (const auto& v : q.coeffs()) {
    if (v.get_den() != 1) throw PreconditionError("not_divisible", "quotient is not integral");
    c.emplace_back(v.get_num());
  }
  return IntPoly(std::move(c));
}

/// Coefficients of p(x0 + h) as a polynomial in h.
inline RatPoly taylor_shift(const RatPoly& p, const Rational& x0) {
  std::vector<Rational> c = p.coeffs();
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] += x0 * c[j];
  return RatPoly(std::move(c));
}

/// Yun's squarefree decomposition over Q. Returns primitive factors f_i
/// (positive leading coefficients) with multiplicities, such that
/// p = const * prod f_i^{m_i}, and the f_i are squarefree and pairwise coprime.
inline std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p) {
  std::vector<std::pair<IntPoly, int>> out;
  if (p.degree() < 1) return out;
  RatPoly f = to_rational(primitive_part(p));
  RatPoly df = f.derivative();
  RatPoly a = gcd(f, df);
  RatPoly b = exact_quotient(f, a);
  RatPoly c = exact_quotient(df, a);
  RatPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    RatPoly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(primitive_part(g), i);
    RatPoly nb = exact_quotient(b, g);
    c = exact_quotient(d, g);
    b = std::move(nb);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

inline std::string to_string(const IntPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (int k = p.degree(); k >= 0; --k) {
    const Integer& a = p.coeffs()[static_cast<std::size_t>(k)];
    if (a == 0) continue;
    Integer m = abs(a);
    if (!s.empty()) s += a < 0 ? " - " : " + ";
    else if (a < 0) s += "-";
    if (m != 1 || k == 0) s += to_string(m);
    if (k >= 1) s += "x";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s;
}

}  // namespace intcheb
