#pragma once

// Hodge diamonds, chi-vectors and the genus polynomial chi_y.
//
// A chi-vector of a dimension-n variety X is (chi^0, ..., chi^n) with
// chi^p = sum_q (-1)^q h^{p,q}. Every smooth compact variety satisfies the
// duality chi^p = (-1)^n chi^{n-p}; strict construction enforces it.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "genus_forge/errors.hpp"
#include "genus_forge/exact_poly.hpp"

namespace genus_forge {

enum class Strictness { strict, lax };

using GenusPolynomial = IntPoly;

class HodgeDiamond {
 public:
  // h[p][q] = dim H^q(X, Omega^p). Checks shape, nonnegativity, Hodge
  // symmetry and Serre duality; reports the first offending (p, q).
  explicit HodgeDiamond(std::vector<std::vector<Integer>> h) : h_(std::move(h)) {
    if (h_.empty()) throw validation_error("hodge diamond is empty");
    const std::size_t size = h_.size();
    for (std::size_t p = 0; p < size; ++p)
      if (h_[p].size() != size)
        throw validation_error("hodge diamond row " + std::to_string(p) + " has length " +
                               std::to_string(h_[p].size()) + ", expected " + std::to_string(size));
    const std::size_t n = size - 1;
    for (std::size_t p = 0; p <= n; ++p) {
      for (std::size_t q = 0; q <= n; ++q) {
        const auto where = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
        if (sgn(h_[p][q]) < 0) throw validation_error("negative hodge number at " + where);
        if (h_[p][q] != h_[q][p]) throw validation_error("hodge symmetry violated at " + where);
        if (h_[p][q] != h_[n - p][n - q]) throw validation_error("serre duality violated at " + where);
      }
    }
  }

  int dim() const { return static_cast<int>(h_.size()) - 1; }
  const Integer& at(int p, int q) const { return h_.at(p).at(q); }
  const std::vector<std::vector<Integer>>& table() const { return h_; }

 private:
  std::vector<std::vector<Integer>> h_;
};

// First index pair (p, n-p) at which c[p] != (-1)^n c[n-p].
inline std::optional<std::pair<int, int>> find_duality_violation(std::span<const Integer> c, int dim) {
  for (int p = 0; p <= dim / 2; ++p) {
    const Integer& mirror = c[static_cast<std::size_t>(dim - p)];
    const Integer expected = (dim % 2 == 0) ? mirror : Integer(-mirror);
    if (c[static_cast<std::size_t>(p)] != expected) return std::pair{p, dim - p};
  }
  return std::nullopt;
}

class ChiVector {
 public:
  ChiVector() : dim_(0), c_{Integer(0)} {}

  ChiVector(std::vector<Integer> raw, int dim, Strictness mode = Strictness::strict) : dim_(dim), c_(std::move(raw)) {
    if (dim < 0) throw validation_error("dimension must be nonnegative, got " + std::to_string(dim));
    if (c_.size() != static_cast<std::size_t>(dim) + 1)
      throw validation_error("chi-vector of dimension " + std::to_string(dim) + " needs " + std::to_string(dim + 1) +
                             " entries, got " + std::to_string(c_.size()));
    violation_ = find_duality_violation(c_, dim_);
    if (violation_ && mode == Strictness::strict) {
      const auto [p, q] = *violation_;
      throw validation_error("duality violated at (" + std::to_string(p) + "," + std::to_string(q) + "): chi^" +
                             std::to_string(p) + " = " + c_[p].get_str() + " but (-1)^" + std::to_string(dim) +
                             " chi^" + std::to_string(q) + " = " +
                             Integer(dim % 2 == 0 ? c_[q] : Integer(-c_[q])).get_str());
    }
  }

  // Builds the vector from its free half chi^0..chi^{floor(n/2)}; the rest
  // is forced by duality. For odd n the entry chi^{(n+1)/2} is -chi^{(n-1)/2}.
  static ChiVector from_lower_half(std::span<const Integer> lower, int dim) {
    if (lower.size() != static_cast<std::size_t>(dim / 2) + 1)
      throw validation_error("lower half of a dimension-" + std::to_string(dim) + " chi-vector has " +
                             std::to_string(dim / 2 + 1) + " entries");
    std::vector<Integer> c(static_cast<std::size_t>(dim) + 1);
    for (int p = 0; p <= dim; ++p) {
      if (p <= dim / 2)
        c[p] = lower[p];
      else
        c[p] = (dim % 2 == 0) ? lower[dim - p] : Integer(-lower[dim - p]);
    }
    return ChiVector(std::move(c), dim);
  }

  int dim() const { return dim_; }
  std::span<const Integer> entries() const { return c_; }
  const Integer& operator[](int p) const { return c_.at(static_cast<std::size_t>(p)); }

  bool satisfies_duality() const { return !violation_.has_value(); }
  const std::optional<std::pair<int, int>>& duality_violation() const { return violation_; }

  friend bool operator==(const ChiVector& a, const ChiVector& b) { return a.dim_ == b.dim_ && a.c_ == b.c_; }

 private:
  int dim_;
  std::vector<Integer> c_;
  std::optional<std::pair<int, int>> violation_;
};

inline ChiVector validate_chi_vector(std::vector<Integer> raw, int dim, Strictness mode = Strictness::strict) {
  return ChiVector(std::move(raw), dim, mode);
}

struct InvariantSet {
  int dim = 0;
  Integer euler;
  Integer todd;
  Integer signature;

  friend bool operator==(const InvariantSet&, const InvariantSet&) = default;
};

inline ChiVector chi_from_diamond(const HodgeDiamond& d) {
  const int n = d.dim();
  std::vector<Integer> c(static_cast<std::size_t>(n) + 1);
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) c[p] += (q % 2 == 0) ? d.at(p, q) : Integer(-d.at(p, q));
  return ChiVector(std::move(c), n);
}

inline GenusPolynomial genus_polynomial(const ChiVector& c) {
  return GenusPolynomial(std::vector<Integer>(c.entries().begin(), c.entries().end()));
}

// chi at y=-1, tau at y=0, sigma at y=+1.
inline InvariantSet invariants(const ChiVector& c) {
  const GenusPolynomial p = genus_polynomial(c);
  return InvariantSet{c.dim(), evaluate(p, Integer(-1)), c[0], evaluate(p, Integer(1))};
}

// Coefficient p equals (-1)^dim times coefficient dim-p.
inline bool is_sign_palindromic(const GenusPolynomial& p, int dim) {
  if (p.degree() > dim) return false;
  for (int i = 0; i <= dim; ++i) {
    Integer mirror = p.coefficient(static_cast<std::size_t>(dim - i));
    if (dim % 2 != 0) mirror = -mirror;
    if (p.coefficient(static_cast<std::size_t>(i)) != mirror) return false;
  }
  return true;
}

// chi^i(F x B) = sum_j chi^j(F) chi^{i-j}(B).
inline ChiVector product_chi(const ChiVector& f, const ChiVector& b) {
  const int n = f.dim() + b.dim();
  std::vector<Integer> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = std::max(0, i - b.dim()); j <= std::min(i, f.dim()); ++j) c[i] += f[j] * b[i - j];
  const bool strict = f.satisfies_duality() && b.satisfies_duality();
  return ChiVector(std::move(c), n, strict ? Strictness::strict : Strictness::lax);
}

}  // namespace genus_forge
