#pragma once

/**
 * @file exact_poly.hpp
 * @brief Exact polynomial arithmetic in one indeterminate y.
 *
 * Poly<C> is a dense, ascending-degree polynomial over one of three
 * coefficient domains:
 *
 *   Poly<Integer>    integer polynomials (genus polynomials)
 *   Poly<Rational>   intermediate stages of the closed forms (chi/2, sigma/4)
 *   Poly<MultiPoly>  formal polynomials whose coefficients are themselves
 *                    polynomials in named symbols
 *
 * Mixing domains is a compile-time error; explicit conversions are provided.
 * Canonical form: the highest stored coefficient is nonzero, or no
 * coefficients are stored (zero polynomial).
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <type_traits>
#include <vector>

#include "genus_forge/errors.hpp"

namespace genus_forge {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Integer& v) { return sgn(v) == 0; }
inline bool is_zero(const Rational& v) { return sgn(v) == 0; }

inline bool is_integral(const Rational& v) { return v.get_den() == 1; }

inline std::string to_string(const Integer& v) { return v.get_str(); }

// Reduced p/q with positive denominator, or plain p when q == 1.
inline std::string to_string(const Rational& v) {
  Rational r = v;
  r.canonicalize();
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Integer ipow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

// -1 raised to an arbitrary (possibly negative) integer power.
constexpr int sign_pow(long exp) { return (exp % 2 == 0) ? 1 : -1; }

////////////////////////////////////////////////////////////////////////////
// MultiPoly: sparse polynomial in named symbols with rational coefficients.
////////////////////////////////////////////////////////////////////////////

// Exponent vector keyed by symbol name; absent symbols have exponent 0.
// std::map ordering gives the canonical monomial order: symbols sorted by
// name, then exponents compared lexicographically.
using Monomial = std::map<std::string, unsigned>;

class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  MultiPoly() = default;

  explicit MultiPoly(const Rational& constant) {
    Rational c = constant;
    c.canonicalize();
    if (!genus_forge::is_zero(c)) terms_.emplace(Monomial{}, std::move(c));
  }
  explicit MultiPoly(const Integer& constant) : MultiPoly(Rational(constant)) {}
  explicit MultiPoly(long constant) : MultiPoly(Rational(constant)) {}

  static MultiPoly symbol(const std::string& name) {
    MultiPoly out;
    out.terms_.emplace(Monomial{{name, 1U}}, Rational(1));
    return out;
  }

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  unsigned total_degree() const {
    unsigned best = 0;
    for (const auto& [mono, c] : terms_) {
      unsigned d = 0;
      for (const auto& [name, e] : mono) d += e;
      best = std::max(best, d);
    }
    return best;
  }

  std::set<std::string> symbols() const {
    std::set<std::string> out;
    for (const auto& [mono, c] : terms_)
      for (const auto& [name, e] : mono) out.insert(name);
    return out;
  }

  // Constant term (coefficient of the empty monomial).
  Rational constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  // Coefficient of the degree-one monomial `name`.
  Rational linear_coefficient(const std::string& name) const {
    auto it = terms_.find(Monomial{{name, 1U}});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool has_integer_coefficients() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return is_integral(t.second); });
  }

  // True when every coefficient is an integer multiple of `m`.
  bool coefficients_divisible_by(const Integer& m) const {
    for (const auto& [mono, c] : terms_) {
      if (!is_integral(c)) return false;
      if (!mpz_divisible_p(c.get_num().get_mpz_t(), m.get_mpz_t())) return false;
    }
    return true;
  }

  MultiPoly& operator+=(const MultiPoly& rhs) {
    for (const auto& [mono, c] : rhs.terms_) accumulate(mono, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& rhs) {
    for (const auto& [mono, c] : rhs.terms_) accumulate(mono, Rational(-c));
    return *this;
  }
  MultiPoly& operator*=(const Rational& s) {
    if (genus_forge::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [mono, c] : terms_) {
      c *= s;
      c.canonicalize();
    }
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(MultiPoly a) {
    for (auto& [mono, c] : a.terms_) c = -c;
    return a;
  }
  friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (const auto& [name, e] : mb) m[name] += e;
        out.accumulate(m, Rational(ca * cb));
      }
    }
    return out;
  }
  MultiPoly& operator*=(const MultiPoly& rhs) { return *this = *this * rhs; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  // Replaces every occurrence of `name` by `value`.
  MultiPoly substitute(const std::string& name, const MultiPoly& value) const {
    MultiPoly out;
    std::vector<MultiPoly> powers{MultiPoly(1L)};
    for (const auto& [mono, c] : terms_) {
      auto it = mono.find(name);
      if (it == mono.end()) {
        out.accumulate(mono, c);
        continue;
      }
      while (powers.size() <= it->second) powers.push_back(powers.back() * value);
      Monomial rest = mono;
      rest.erase(name);
      MultiPoly piece;
      piece.terms_.emplace(std::move(rest), c);
      out += piece * powers[it->second];
    }
    return out;
  }

  // Exact value under an assignment; unassigned symbols are an error.
  Rational evaluate(const std::map<std::string, Integer>& assignment) const {
    Rational total = 0;
    for (const auto& [mono, c] : terms_) {
      Rational term = c;
      for (const auto& [name, e] : mono) {
        auto it = assignment.find(name);
        if (it == assignment.end()) throw validation_error("unassigned symbol " + name);
        term *= Rational(ipow(it->second, e));
      }
      total += term;
    }
    return total;
  }

  // e.g. "3 + 2*a0 - 1/4*a1*b0^2"; "0" for the zero polynomial.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, c] : terms_) {
      Rational mag = abs(c);
      if (first) {
        if (sgn(c) < 0) os << "-";
      } else {
        os << (sgn(c) < 0 ? " - " : " + ");
      }
      first = false;
      bool wrote = false;
      if (mono.empty() || mag != 1) {
        os << genus_forge::to_string(mag);
        wrote = true;
      }
      for (const auto& [name, e] : mono) {
        if (wrote) os << "*";
        os << name;
        if (e != 1) os << "^" << e;
        wrote = true;
      }
    }
    return os.str();
  }

 private:
  void accumulate(const Monomial& mono, const Rational& c) {
    if (genus_forge::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(mono, c);
    if (inserted) {
      it->second.canonicalize();
    } else {
      it->second += c;
      if (genus_forge::is_zero(it->second)) terms_.erase(it);
    }
  }

  TermMap terms_;
};

inline bool is_zero(const MultiPoly& v) { return v.is_zero(); }
inline std::string to_string(const MultiPoly& v) { return v.to_string(); }

////////////////////////////////////////////////////////////////////////////
// Poly<C>: dense univariate polynomial in y.
////////////////////////////////////////////////////////////////////////////

template <class C>
struct coefficient_domain;
template <>
struct coefficient_domain<Integer> {
  static constexpr std::string_view name = "integer";
};
template <>
struct coefficient_domain<Rational> {
  static constexpr std::string_view name = "rational";
};
template <>
struct coefficient_domain<MultiPoly> {
  static constexpr std::string_view name = "formal";
};

template <class C>
class Poly {
 public:
  using coefficient_type = C;

  Poly() = default;
  explicit Poly(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
  Poly(std::initializer_list<C> coeffs) : coeffs_(coeffs) { normalize(); }

  static Poly constant(C c) { return Poly(std::vector<C>{std::move(c)}); }

  // c * y^degree
  static Poly monomial(C c, std::size_t degree) {
    std::vector<C> v(degree + 1);
    v[degree] = std::move(c);
    return Poly(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  std::span<const C> coeffs() const { return coeffs_; }

  // Coefficient of y^i, zero past the degree.
  C coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : C{}; }

  Poly& operator+=(const Poly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    normalize();
    return *this;
  }
  Poly& operator-=(const Poly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    normalize();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }

  // Schoolbook convolution.
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    std::vector<C> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (genus_forge::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(out));
  }
  Poly& operator*=(const Poly& rhs) { return *this = *this * rhs; }

  // Scalar multiple by a coefficient-domain value.
  friend Poly scale(Poly p, const C& s) {
    for (auto& c : p.coeffs_) c = c * s;
    p.normalize();
    return p;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void normalize() {
    if constexpr (std::is_same_v<C, Rational>)
      for (auto& c : coeffs_) c.canonicalize();
    while (!coeffs_.empty() && genus_forge::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<C> coeffs_;
};

using IntPoly = Poly<Integer>;
using RatPoly = Poly<Rational>;
using FormalPoly = Poly<MultiPoly>;

// The indeterminate y.
template <class C = Integer>
Poly<C> y_power(std::size_t n) {
  return Poly<C>::monomial(C(1), n);
}

template <class C>
Poly<C> pow(const Poly<C>& base, unsigned n) {
  Poly<C> out = Poly<C>::constant(C(1));
  for (unsigned i = 0; i < n; ++i) out *= base;
  return out;
}

// Rational scalar multiple, for Rational and MultiPoly coefficient domains.
template <class C>
Poly<C> scale_rational(const Poly<C>& p, const Rational& s) {
  std::vector<C> v(p.coeffs().begin(), p.coeffs().end());
  for (auto& c : v) c = c * s;
  return Poly<C>(std::move(v));
}

// Coefficientwise conversion between domains (Integer -> Rational,
// Integer -> MultiPoly, Rational -> MultiPoly).
template <class To, class From>
Poly<To> convert(const Poly<From>& p) {
  std::vector<To> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.push_back(To(c));
  return Poly<To>(std::move(v));
}

// Integer polynomial when every coefficient is integral.
inline std::optional<IntPoly> to_integer_poly(const RatPoly& p) {
  std::vector<Integer> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    if (!is_integral(c)) return std::nullopt;
    v.push_back(c.get_num());
  }
  return IntPoly(std::move(v));
}

// Exact division by 2 or 4 (or any scalar) that must leave integer
// coefficients; throws otherwise.
inline IntPoly exact_div(const IntPoly& p, const Integer& d) {
  std::vector<Integer> v;
  for (const auto& c : p.coeffs()) {
    if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
      throw validation_error("coefficient " + c.get_str() + " not divisible by " + d.get_str());
    Integer q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    v.push_back(q);
  }
  return IntPoly(std::move(v));
}

// Horner evaluation.
inline Integer evaluate(const IntPoly& p, const Integer& point) {
  Integer acc = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * point + *it;
  return acc;
}

inline Rational evaluate(const IntPoly& p, Rational point) {
  point.canonicalize();
  Rational acc = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * point + Rational(*it);
  return acc;
}

inline Rational evaluate(const RatPoly& p, Rational point) {
  point.canonicalize();
  Rational acc = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * point + *it;
  return acc;
}

inline MultiPoly evaluate(const FormalPoly& p, Rational point) {
  point.canonicalize();
  MultiPoly acc;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * point + *it;
  return acc;
}

namespace detail {

inline bool is_negative(const Integer& c) { return sgn(c) < 0; }
inline bool is_negative(const Rational& c) { return sgn(c) < 0; }
inline bool is_constant(const MultiPoly& c) { return c.size() == 1 && c.terms().begin()->first.empty(); }
// Only bare constants carry a sign outside the parentheses.
inline bool is_negative(const MultiPoly& c) { return is_constant(c) && sgn(c.constant_term()) < 0; }

inline std::string magnitude(const Integer& c) { return to_string(Integer(abs(c))); }
inline std::string magnitude(const Rational& c) { return to_string(Rational(abs(c))); }
inline std::string magnitude(const MultiPoly& c) {
  return is_constant(c) ? magnitude(c.constant_term()) : "(" + c.to_string() + ")";
}

}  // namespace detail

// Ascending-degree text form `c0 + c1*y + c2*y^2` with explicit signs; zero
// coefficients are omitted and the zero polynomial renders as "0".
template <class C>
std::string to_string(const Poly<C>& p, std::string_view var = "y") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    const C& c = p.coeffs()[i];
    if (is_zero(c)) continue;
    bool neg = detail::is_negative(c);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    os << detail::magnitude(c);
    if (i >= 1) os << "*" << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

template <class C>
std::ostream& operator<<(std::ostream& os, const Poly<C>& p) {
  return os << to_string(p);
}

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

}  // namespace genus_forge
