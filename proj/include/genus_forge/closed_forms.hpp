#pragma once

/**
 * @file closed_forms.hpp
 * @brief chi_y from the Todd genus, Euler characteristic, signature and the
 *        low-index chi^i, for odd dimension, dimension 4k and 4k+2.
 *
 * Each closed form is a sum  sum_t  weight_t * scalar_t * cofactor_t(y)
 * where scalar_t is one of tau, sigma, chi or a low chi^i, weight_t is a
 * rational constant (1, +-1/2, +-1/4) and cofactor_t an integer polynomial.
 * cofactor_table() returns that list; the same list drives the numeric
 * closed forms here, the bundle defect decompositions and the symbolic
 * verifier.
 *
 * The required low entries are
 *   dim 2u+1 : chi^1 .. chi^{u-1}
 *   dim 4k   : chi^1 .. chi^{2k-2}
 *   dim 4k+2 : chi^1 .. chi^{2k-1}
 */

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "genus_forge/errors.hpp"
#include "genus_forge/exact_poly.hpp"
#include "genus_forge/hodge_core.hpp"

namespace genus_forge {

enum class DimensionShape { point, odd, four_k, four_k_plus_two };

inline DimensionShape shape_of(int dim) {
  if (dim < 0) throw dimension_error("negative dimension " + std::to_string(dim));
  if (dim == 0) return DimensionShape::point;
  if (dim % 2 == 1) return DimensionShape::odd;
  return dim % 4 == 0 ? DimensionShape::four_k : DimensionShape::four_k_plus_two;
}

inline std::size_t required_low_chi_count(int dim) {
  switch (shape_of(dim)) {
    case DimensionShape::point:
      return 0;
    case DimensionShape::odd:
      return static_cast<std::size_t>(std::max((dim - 1) / 2 - 1, 0));
    case DimensionShape::four_k:
      return static_cast<std::size_t>(dim / 2 - 2);
    case DimensionShape::four_k_plus_two:
      return static_cast<std::size_t>(std::max((dim - 2) / 2 - 1, 0));
  }
  return 0;
}

enum class Role { todd, signature, euler, chi };

inline std::string to_string(Role r) {
  switch (r) {
    case Role::todd:
      return "todd";
    case Role::signature:
      return "signature";
    case Role::euler:
      return "euler";
    case Role::chi:
      return "chi";
  }
  return "?";
}

struct CofactorTerm {
  Role role;
  int index;  // chi^index for Role::chi, 0 otherwise
  Rational weight;
  IntPoly cofactor;
};

namespace detail {

inline IntPoly one() { return IntPoly{1}; }
inline IntPoly y_to(long n) { return y_power<Integer>(static_cast<std::size_t>(n)); }
// 1 + s*y^n
inline IntPoly one_plus(int s, long n) { return one() + scale(y_to(n), Integer(s)); }

}  // namespace detail

inline std::vector<CofactorTerm> cofactor_table(int dim) {
  using detail::one_plus;
  using detail::y_to;
  std::vector<CofactorTerm> out;
  const IntPoly one_plus_y{1, 1};
  const IntPoly one_minus_y{1, -1};

  switch (shape_of(dim)) {
    case DimensionShape::point:
      out.push_back({Role::todd, 0, 1, IntPoly{1}});
      break;

    case DimensionShape::odd: {
      const long u = (dim - 1) / 2;
      const int s = sign_pow(u + 1);
      // Vanishes identically for curves (u = 0).
      out.push_back({Role::todd, 0, 1, one_plus(s, u) * one_plus(-s, u + 1)});
      out.push_back({Role::euler, 0, Rational(sign_pow(u), 2), y_to(u) * one_minus_y});
      for (long i = 1; i <= u - 1; ++i) {
        const int t = sign_pow(u - i);
        out.push_back({Role::chi, static_cast<int>(i), 1, y_to(i) * one_plus(-t, u - i) * one_plus(t, u - i + 1)});
      }
      break;
    }

    case DimensionShape::four_k: {
      const long k = dim / 4;
      out.push_back({Role::todd, 0, 1, pow(one_plus(-1, 2 * k), 2)});
      out.push_back({Role::signature, 0, Rational(1, 4), y_to(2 * k - 1) * pow(one_plus_y, 2)});
      out.push_back({Role::euler, 0, Rational(-1, 4), y_to(2 * k - 1) * pow(one_minus_y, 2)});
      for (long j = 1; j <= k - 1; ++j)
        out.push_back({Role::chi, static_cast<int>(2 * j), 1, y_to(2 * j) * pow(one_plus(-1, 2 * k - 2 * j), 2)});
      for (long j = 1; j <= k - 1; ++j)
        out.push_back({Role::chi, static_cast<int>(2 * j - 1), 1,
                       y_to(2 * j - 1) * one_plus(-1, 2 * k - 2 * j) * one_plus(-1, 2 * k - 2 * j + 2)});
      break;
    }

    case DimensionShape::four_k_plus_two: {
      const long k = (dim - 2) / 4;
      // Vanishes identically for surfaces (k = 0).
      out.push_back({Role::todd, 0, 1, one_plus(-1, 2 * k) * one_plus(-1, 2 * k + 2)});
      out.push_back({Role::signature, 0, Rational(1, 4), y_to(2 * k) * pow(one_plus_y, 2)});
      out.push_back({Role::euler, 0, Rational(1, 4), y_to(2 * k) * pow(one_minus_y, 2)});
      for (long j = 1; j <= k - 1; ++j)
        out.push_back({Role::chi, static_cast<int>(2 * j), 1,
                       y_to(2 * j) * one_plus(-1, 2 * k - 2 * j) * one_plus(-1, 2 * k - 2 * j + 2)});
      for (long j = 1; j <= k; ++j)
        out.push_back({Role::chi, static_cast<int>(2 * j - 1), 1, y_to(2 * j - 1) * pow(one_plus(-1, 2 * k - 2 * j + 2), 2)});
      break;
    }
  }
  return out;
}

// sum_t weight_t * scalar(role_t, index_t) * cofactor_t, over any coefficient
// domain T that supports T * Rational (Rational, MultiPoly).
template <class T, class ScalarFn>
Poly<T> combine_cofactors(const std::vector<CofactorTerm>& table, ScalarFn&& scalar) {
  Poly<T> out;
  for (const auto& term : table) {
    const T s = scalar(term.role, term.index) * term.weight;
    if (is_zero(s)) continue;
    out += scale(convert<T>(term.cofactor), s);
  }
  return out;
}

struct ClosedFormInput {
  int dim = 0;
  std::optional<Integer> todd;
  std::optional<Integer> euler;
  std::optional<Integer> signature;
  std::vector<Integer> low_chi;  // chi^1 .. chi^m, m = required_low_chi_count(dim)
};

namespace detail {

inline bool divisible(const Integer& v, long m) { return mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(m)) != 0; }

inline const Integer& require(const std::optional<Integer>& v, const char* what, int dim) {
  if (!v) throw validation_error(std::string(what) + " is required in dimension " + std::to_string(dim));
  return *v;
}

// Checks every precondition and fills in values forced by the others
// (tau for curves and surfaces, euler/signature for points).
inline ClosedFormInput normalize_input(const ClosedFormInput& in) {
  ClosedFormInput out = in;
  const int n = in.dim;
  const DimensionShape shape = shape_of(n);
  if (in.low_chi.size() != required_low_chi_count(n))
    throw validation_error("dimension " + std::to_string(n) + " needs " + std::to_string(required_low_chi_count(n)) +
                           " low chi entries (chi^1..), got " + std::to_string(in.low_chi.size()));

  switch (shape) {
    case DimensionShape::point: {
      const Integer& t = require(in.todd, "todd genus", n);
      if (in.euler && *in.euler != t) throw validation_error("point: euler must equal todd");
      if (in.signature && *in.signature != t) throw validation_error("point: signature must equal todd");
      out.euler = t;
      out.signature = t;
      break;
    }
    case DimensionShape::odd: {
      if (in.signature && sgn(*in.signature) != 0)
        throw validation_error("signature must be 0 in odd dimension, got " + in.signature->get_str());
      out.signature = Integer(0);
      if (n == 1) {
        if (!in.todd && !in.euler) throw validation_error("curve needs the todd genus or the euler characteristic");
        if (in.euler && !divisible(*in.euler, 2))
          throw validation_error("euler characteristic must be even in odd dimension, got " + in.euler->get_str());
        if (in.todd && in.euler && Integer(2 * *in.todd) != *in.euler)
          throw validation_error("curve: todd genus " + in.todd->get_str() + " inconsistent with euler/2 = " +
                                 Integer(*in.euler / 2).get_str());
        if (!in.euler) out.euler = Integer(2 * *in.todd);
        if (!in.todd) out.todd = Integer(*in.euler / 2);
        break;
      }
      require(in.todd, "todd genus", n);
      const Integer& e = require(in.euler, "euler characteristic", n);
      if (!divisible(e, 2))
        throw validation_error("euler characteristic must be even in odd dimension, got " + e.get_str());
      break;
    }
    case DimensionShape::four_k: {
      require(in.todd, "todd genus", n);
      const Integer& e = require(in.euler, "euler characteristic", n);
      const Integer& s = require(in.signature, "signature", n);
      if (!divisible(Integer(s - e), 4))
        throw validation_error("congruence sigma - chi = 0 mod 4 violated: sigma - chi = " + Integer(s - e).get_str());
      if (!divisible(Integer(s + e), 2))
        throw validation_error("congruence sigma + chi = 0 mod 2 violated: sigma + chi = " + Integer(s + e).get_str());
      break;
    }
    case DimensionShape::four_k_plus_two: {
      const Integer& e = require(in.euler, "euler characteristic", n);
      const Integer& s = require(in.signature, "signature", n);
      if (!divisible(Integer(s + e), 4))
        throw validation_error("congruence sigma + chi = 0 mod 4 violated: sigma + chi = " + Integer(s + e).get_str());
      if (!divisible(Integer(s - e), 2))
        throw validation_error("congruence sigma - chi = 0 mod 2 violated: sigma - chi = " + Integer(s - e).get_str());
      if (n == 2) {
        const Integer forced = (s + e) / 4;
        if (in.todd && *in.todd != forced)
          throw validation_error("surface: todd genus " + in.todd->get_str() + " inconsistent with (sigma + chi)/4 = " +
                                 forced.get_str());
        out.todd = forced;
      } else {
        require(in.todd, "todd genus", n);
      }
      break;
    }
  }
  return out;
}

inline Rational scalar_of(const ClosedFormInput& in, Role role, int index) {
  switch (role) {
    case Role::todd:
      return Rational(*in.todd);
    case Role::signature:
      return Rational(*in.signature);
    case Role::euler:
      return Rational(*in.euler);
    case Role::chi:
      return Rational(in.low_chi.at(static_cast<std::size_t>(index - 1)));
  }
  return Rational(0);
}

inline GenusPolynomial integral_or_throw(const RatPoly& p, const char* what) {
  auto ip = to_integer_poly(p);
  if (!ip) throw validation_error(std::string(what) + ": closed form has non-integer coefficients " + to_string(p));
  return *ip;
}

inline GenusPolynomial evaluate_closed_form(const ClosedFormInput& raw) {
  const ClosedFormInput in = normalize_input(raw);
  const RatPoly p = combine_cofactors<Rational>(cofactor_table(in.dim),
                                                [&](Role r, int i) { return scalar_of(in, r, i); });
  return integral_or_throw(p, "closed form");
}

}  // namespace detail

// Dimension 2u+1.
inline GenusPolynomial chi_y_odd(const ClosedFormInput& in) {
  if (in.dim < 1 || in.dim % 2 == 0) throw dimension_error("chi_y_odd needs odd dimension, got " + std::to_string(in.dim));
  return detail::evaluate_closed_form(in);
}

// Dimension 4k, k >= 1. Dimension 0 goes through chi_y_closed_form.
inline GenusPolynomial chi_y_4k(const ClosedFormInput& in) {
  if (in.dim == 0) throw dimension_error("chi_y_4k needs k >= 1; use the constant path for dimension 0");
  if (in.dim < 0 || in.dim % 4 != 0) throw dimension_error("chi_y_4k needs dimension 4k, got " + std::to_string(in.dim));
  return detail::evaluate_closed_form(in);
}

// Dimension 4k+2, k >= 0.
inline GenusPolynomial chi_y_4k2(const ClosedFormInput& in) {
  if (in.dim < 2 || in.dim % 4 != 2) throw dimension_error("chi_y_4k2 needs dimension 4k+2, got " + std::to_string(in.dim));
  return detail::evaluate_closed_form(in);
}

// Any dimension, including the constant polynomial in dimension 0.
inline GenusPolynomial chi_y_closed_form(const ClosedFormInput& in) { return detail::evaluate_closed_form(in); }

// Hand-expanded forms for dimensions 1..5, written out independently of
// cofactor_table():
//   1: tau (1 - y)
//   2: (sigma/4)(1+y)^2 + (chi/4)(1-y)^2
//   3: tau (1+y)^2 (1-y) - (chi/2) y (1-y)
//   4: tau (1-y^2)^2 + (sigma/4) y (1+y)^2 - (chi/4) y (1-y)^2
//   5: tau (1-y^2)(1+y^3) + chi^1 y (1+y)^2 (1-y) + (chi/2) y^2 (1-y)
inline GenusPolynomial chi_y_small_dim(const ClosedFormInput& raw) {
  if (raw.dim < 1 || raw.dim > 5) throw dimension_error("small-dimension forms cover 1..5, got " + std::to_string(raw.dim));
  const ClosedFormInput in = detail::normalize_input(raw);
  const RatPoly y{0, 1};
  const RatPoly one_plus_y{1, 1};
  const RatPoly one_minus_y{1, -1};
  const RatPoly one_minus_y2{1, 0, -1};
  const Rational tau(*in.todd);
  const Rational chi(*in.euler);
  const Rational sigma(*in.signature);
  RatPoly out;
  switch (in.dim) {
    case 1:
      out = scale(one_minus_y, tau);
      break;
    case 2:
      out = scale(one_plus_y * one_plus_y, Rational(sigma / 4)) + scale(one_minus_y * one_minus_y, Rational(chi / 4));
      break;
    case 3:
      out = scale(one_plus_y * one_plus_y * one_minus_y, tau) - scale(y * one_minus_y, Rational(chi / 2));
      break;
    case 4:
      out = scale(one_minus_y2 * one_minus_y2, tau) + scale(y * one_plus_y * one_plus_y, Rational(sigma / 4)) -
            scale(y * one_minus_y * one_minus_y, Rational(chi / 4));
      break;
    case 5: {
      const RatPoly one_plus_y3{1, 0, 0, 1};
      const Rational chi1(in.low_chi.at(0));
      out = scale(one_minus_y2 * one_plus_y3, tau) + scale(y * one_plus_y * one_plus_y * one_minus_y, chi1) +
            scale(y * y * one_minus_y, Rational(chi / 2));
      break;
    }
  }
  return detail::integral_or_throw(out, "small-dimension form");
}

// Reconstructs the full chi-vector: the middle entries come from the
// invariants, the upper half from duality.
//   odd 2u+1 (u>=1): chi^u = (-1)^{u+1} tau + (-1)^u chi/2 + sum_{i<u} (-1)^{u-i-1} chi^i
//   4k:   chi^{2k} = (sigma+chi)/2 - 2 tau - 2 sum_{j<k} chi^{2j}
//         chi^{2k-1} = (sigma-chi)/4 - sum_{j<k} chi^{2j-1}
//   4k+2: chi^{2k} = (sigma+chi)/4 - tau - sum_{j<k} chi^{2j}       (k>=1)
//         chi^{2k+1} = (sigma-chi)/2 - 2 sum_{j<=k} chi^{2j-1}
inline ChiVector complete_chi_vector(const ClosedFormInput& raw) {
  const ClosedFormInput in = detail::normalize_input(raw);
  const int n = in.dim;
  const Integer& tau = *in.todd;
  const Integer& chi = *in.euler;
  const Integer& sigma = *in.signature;

  std::vector<Integer> full(static_cast<std::size_t>(n) + 1);
  full[0] = tau;
  for (std::size_t i = 0; i < in.low_chi.size(); ++i) full[i + 1] = in.low_chi[i];

  switch (shape_of(n)) {
    case DimensionShape::point:
      break;
    case DimensionShape::odd: {
      const int u = (n - 1) / 2;
      if (u >= 1) {
        Integer mid = sign_pow(u + 1) * tau + sign_pow(u) * (chi / 2);
        for (int i = 1; i <= u - 1; ++i) mid += sign_pow(u - i - 1) * full[i];
        full[u] = mid;
      }
      for (int p = u + 1; p <= n; ++p) full[p] = -full[n - p];
      break;
    }
    case DimensionShape::four_k: {
      const int k = n / 4;
      Integer even = (sigma + chi) / 2 - 2 * tau;
      Integer odd = (sigma - chi) / 4;
      for (int j = 1; j <= k - 1; ++j) {
        even -= 2 * full[2 * j];
        odd -= full[2 * j - 1];
      }
      full[2 * k] = even;
      full[2 * k - 1] = odd;
      for (int p = 2 * k + 1; p <= n; ++p) full[p] = full[n - p];
      break;
    }
    case DimensionShape::four_k_plus_two: {
      const int k = (n - 2) / 4;
      if (k >= 1) {
        Integer even = (sigma + chi) / 4 - tau;
        for (int j = 1; j <= k - 1; ++j) even -= full[2 * j];
        full[2 * k] = even;
      }
      Integer odd = (sigma - chi) / 2;
      for (int j = 1; j <= k; ++j) odd -= 2 * full[2 * j - 1];
      full[2 * k + 1] = odd;
      for (int p = 2 * k + 2; p <= n; ++p) full[p] = full[n - p];
      break;
    }
  }
  return ChiVector(std::move(full), n);
}

// The closed-form input a chi-vector determines: its invariants plus the
// required low entries.
inline ClosedFormInput closed_form_input(const ChiVector& c) {
  const InvariantSet inv = invariants(c);
  ClosedFormInput in;
  in.dim = c.dim();
  in.todd = inv.todd;
  in.euler = inv.euler;
  in.signature = inv.signature;
  const std::size_t m = required_low_chi_count(c.dim());
  for (std::size_t i = 1; i <= m; ++i) in.low_chi.push_back(c[static_cast<int>(i)]);
  return in;
}

// Rejects a chi-vector and separately supplied invariants that disagree;
// names the first mismatching field.
inline void check_consistency(const ChiVector& c, const ClosedFormInput& in) {
  if (c.dim() != in.dim)
    throw validation_error("inconsistent dimension: chi-vector has " + std::to_string(c.dim()) + ", invariants say " +
                           std::to_string(in.dim));
  const InvariantSet inv = invariants(c);
  auto check = [](const char* name, const std::optional<Integer>& given, const Integer& actual) {
    if (given && *given != actual)
      throw validation_error(std::string("inconsistent ") + name + ": chi-vector gives " + actual.get_str() +
                             ", supplied " + given->get_str());
  };
  check("todd", in.todd, inv.todd);
  check("euler", in.euler, inv.euler);
  check("signature", in.signature, inv.signature);
  for (std::size_t i = 0; i < in.low_chi.size(); ++i) {
    if (i + 1 > static_cast<std::size_t>(c.dim())) throw validation_error("too many low chi entries");
    check(("chi^" + std::to_string(i + 1)).c_str(), in.low_chi[i], c[static_cast<int>(i + 1)]);
  }
}

}  // namespace genus_forge
