#pragma once

// Multiplicativity defects of fiber bundles F -> E -> B.
//
// For a strict triple (chi(E) = chi(F) chi(B)) the difference
// chi_y(E) - chi_y(F) chi_y(B) expands over the same cofactors as the closed
// form of chi_y(E), with every scalar replaced by its defect against F x B:
//
//   odd total:  (tau defect) * T(y) + sum_i (chi^i defect) * C_i(y)
//   even total: (tau defect) * T(y) + (sigma defect)/4 * S(y) + sum_i ...
//
// The euler term drops out because its defect is zero.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "genus_forge/closed_forms.hpp"
#include "genus_forge/errors.hpp"
#include "genus_forge/exact_poly.hpp"
#include "genus_forge/hodge_core.hpp"

namespace genus_forge {

class BundleTriple {
 public:
  // Dimension additivity is always enforced. Strict mode additionally
  // requires duality on all three vectors and chi(E) = chi(F) chi(B).
  BundleTriple(ChiVector fiber, ChiVector base, ChiVector total, Strictness mode = Strictness::strict)
      : fiber_(std::move(fiber)), base_(std::move(base)), total_(std::move(total)), mode_(mode) {
    if (total_.dim() != fiber_.dim() + base_.dim())
      throw dimension_error("total dimension " + std::to_string(total_.dim()) + " != fiber " +
                            std::to_string(fiber_.dim()) + " + base " + std::to_string(base_.dim()));
    const Integer e_total = invariants(total_).euler;
    const Integer e_product = invariants(fiber_).euler * invariants(base_).euler;
    euler_ok_ = e_total == e_product;
    duality_ok_ = fiber_.satisfies_duality() && base_.satisfies_duality() && total_.satisfies_duality();
    if (mode_ == Strictness::strict) {
      if (!duality_ok_) throw validation_error("strict bundle triple needs duality-valid chi-vectors");
      if (!euler_ok_)
        throw validation_error("euler multiplicativity violated: chi(E) = " + e_total.get_str() +
                               " but chi(F) chi(B) = " + e_product.get_str());
    }
  }

  // Total space given by its invariants and low chi entries.
  static BundleTriple with_total_invariants(ChiVector fiber, ChiVector base, const ClosedFormInput& total,
                                            Strictness mode = Strictness::strict) {
    return BundleTriple(std::move(fiber), std::move(base), complete_chi_vector(total), mode);
  }

  const ChiVector& fiber() const { return fiber_; }
  const ChiVector& base() const { return base_; }
  const ChiVector& total() const { return total_; }
  Strictness mode() const { return mode_; }
  int dim() const { return total_.dim(); }

  bool euler_multiplicative() const { return euler_ok_; }
  bool constraints_hold() const { return euler_ok_ && duality_ok_; }

 private:
  ChiVector fiber_;
  ChiVector base_;
  ChiVector total_;
  Strictness mode_;
  bool euler_ok_ = false;
  bool duality_ok_ = false;
};

// chi_y(E) - chi_y(F) chi_y(B), computed literally.
inline GenusPolynomial difference_direct(const BundleTriple& t) {
  return genus_polynomial(t.total()) - genus_polynomial(t.fiber()) * genus_polynomial(t.base());
}

template <class T>
struct DefectTerm {
  Role role;
  int index;
  T defect;          // tau(E) - tau(F)tau(B), sigma(E) - sigma(F)sigma(B) or chi^i(E) - chi^i(F x B)
  Rational weight;   // 1 or 1/4
  IntPoly cofactor;
};

// Defect terms over any coefficient domain (Integer-valued Rational for
// numeric triples, MultiPoly for the symbolic verifier). `total` and
// `product` are the full chi-vectors of E and F x B as T values.
template <class T>
std::vector<DefectTerm<T>> defect_terms(int dim, const std::vector<T>& total, const std::vector<T>& product) {
  std::vector<DefectTerm<T>> out;
  for (const auto& term : cofactor_table(dim)) {
    if (term.role == Role::euler) continue;
    T defect;
    switch (term.role) {
      case Role::todd:
        defect = total[0] - product[0];
        break;
      case Role::signature:
        for (std::size_t p = 0; p < total.size(); ++p) defect += total[p] - product[p];
        break;
      case Role::chi:
        defect = total[static_cast<std::size_t>(term.index)] - product[static_cast<std::size_t>(term.index)];
        break;
      case Role::euler:
        break;
    }
    out.push_back({term.role, term.index, defect, term.weight, term.cofactor});
  }
  return out;
}

template <class T>
Poly<T> sum_defect_terms(const std::vector<DefectTerm<T>>& terms) {
  Poly<T> out;
  for (const auto& t : terms) out += scale(convert<T>(t.cofactor), T(t.defect * t.weight));
  return out;
}

struct DegreeDefect {
  int index;
  Integer defect;
  IntPoly cofactor;
};

struct DefectDecomposition {
  int dim = 0;
  Integer todd_defect;
  std::optional<Integer> signature_defect;  // even total dimension only
  std::vector<DegreeDefect> per_degree;
  std::vector<DefectTerm<Rational>> terms;
  GenusPolynomial difference;

  // sum of defect x cofactor over every term.
  RatPoly sum() const { return sum_defect_terms(terms); }
};

inline DefectDecomposition difference_decomposition(const BundleTriple& t) {
  if (!t.euler_multiplicative())
    throw validation_error("defect decomposition needs chi(E) = chi(F) chi(B)");
  const ChiVector product = product_chi(t.fiber(), t.base());
  std::vector<Rational> e, p;
  for (const auto& c : t.total().entries()) e.emplace_back(c);
  for (const auto& c : product.entries()) p.emplace_back(c);

  DefectDecomposition out;
  out.dim = t.dim();
  out.terms = defect_terms<Rational>(t.dim(), e, p);
  out.difference = difference_direct(t);
  for (const auto& term : out.terms) {
    const Integer d = term.defect.get_num();
    switch (term.role) {
      case Role::todd:
        out.todd_defect = d;
        break;
      case Role::signature:
        out.signature_defect = d;
        break;
      case Role::chi:
        out.per_degree.push_back({term.index, d, term.cofactor});
        break;
      case Role::euler:
        break;
    }
  }
  if (t.dim() % 2 == 0 && t.dim() > 0 && !out.signature_defect) out.signature_defect = Integer(0);
  return out;
}

struct SignatureResidueReport {
  Integer signature_total;
  Integer signature_product;
  Integer difference;
  Integer residue;  // difference mod 4, in 0..3
  // Parity of difference/4 when 4 divides the difference. Reported only;
  // no claim is attached to it.
  std::optional<Integer> quarter_parity;
  bool violated = false;
  bool constraints_hold = true;
};

inline Integer mod_nonneg(const Integer& v, long m) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(m));
  return r;
}

inline SignatureResidueReport signature_mod4_check(const BundleTriple& t) {
  SignatureResidueReport r;
  r.signature_total = invariants(t.total()).signature;
  r.signature_product = invariants(t.fiber()).signature * invariants(t.base()).signature;
  r.difference = r.signature_total - r.signature_product;
  r.residue = mod_nonneg(r.difference, 4);
  r.violated = sgn(r.residue) != 0;
  if (!r.violated) r.quarter_parity = mod_nonneg(Integer(r.difference / 4), 2);
  r.constraints_hold = t.constraints_hold();
  return r;
}

struct CongruenceCheck {
  std::string name;  // e.g. "sigma - chi = 0 mod 4"
  Integer value;
  long modulus;
  bool pass;
};

// Every congruence the dimension implies:
//   odd:  chi = 0 mod 2, sigma = 0
//   4k:   sigma - chi = 0 mod 4, sigma + chi = 0 mod 2
//   4k+2: sigma + chi = 0 mod 4, sigma - chi = 0 mod 2
inline std::vector<CongruenceCheck> congruence_report(const ChiVector& c) {
  const InvariantSet inv = invariants(c);
  auto check = [](std::string name, Integer value, long m) {
    const bool pass = m == 0 ? sgn(value) == 0 : sgn(mod_nonneg(value, m)) == 0;
    return CongruenceCheck{std::move(name), std::move(value), m, pass};
  };
  std::vector<CongruenceCheck> out;
  switch (shape_of(c.dim())) {
    case DimensionShape::point:
      break;
    case DimensionShape::odd:
      out.push_back(check("chi = 0 mod 2", inv.euler, 2));
      out.push_back(check("sigma = 0", inv.signature, 0));
      break;
    case DimensionShape::four_k:
      out.push_back(check("sigma - chi = 0 mod 4", Integer(inv.signature - inv.euler), 4));
      out.push_back(check("sigma + chi = 0 mod 2", Integer(inv.signature + inv.euler), 2));
      break;
    case DimensionShape::four_k_plus_two:
      out.push_back(check("sigma + chi = 0 mod 4", Integer(inv.signature + inv.euler), 4));
      out.push_back(check("sigma - chi = 0 mod 2", Integer(inv.signature - inv.euler), 2));
      break;
  }
  return out;
}

enum class Multiplicativity { for_all_y, only_at_minus_one, not_at_minus_one };

inline std::string to_string(Multiplicativity m) {
  switch (m) {
    case Multiplicativity::for_all_y:
      return "multiplicative-for-all-y";
    case Multiplicativity::only_at_minus_one:
      return "multiplicative-only-at-minus-one";
    case Multiplicativity::not_at_minus_one:
      return "not-multiplicative-at-minus-one";
  }
  return "?";
}

struct Equivalence {
  std::string statement;  // right-hand side of "difference = 0 <=> ..."
  bool holds;
  bool agrees;  // holds == (difference is zero)
};

struct MultiplicativityVerdict {
  Multiplicativity kind;
  GenusPolynomial difference;
  // Which of the distinguished values y = -1, 0, 1 are roots of the difference.
  bool vanishes_at_minus_one;
  bool vanishes_at_zero;
  bool vanishes_at_one;
  std::vector<Equivalence> equivalences;

  bool all_agree() const {
    for (const auto& e : equivalences)
      if (!e.agrees) return false;
    return true;
  }
};

// "only at -1" refers to the distinguished values -1, 0, 1; the difference
// may still have other real roots.
inline MultiplicativityVerdict multiplicativity_verdict(const BundleTriple& t) {
  const DefectDecomposition d = difference_decomposition(t);
  MultiplicativityVerdict v;
  v.difference = d.difference;
  v.vanishes_at_minus_one = is_zero(evaluate(d.difference, Integer(-1)));
  v.vanishes_at_zero = is_zero(evaluate(d.difference, Integer(0)));
  v.vanishes_at_one = is_zero(evaluate(d.difference, Integer(1)));
  const bool zero = d.difference.is_zero();
  if (zero)
    v.kind = Multiplicativity::for_all_y;
  else
    v.kind = v.vanishes_at_minus_one ? Multiplicativity::only_at_minus_one : Multiplicativity::not_at_minus_one;

  auto add = [&](std::string statement, bool holds) { v.equivalences.push_back({std::move(statement), holds, holds == zero}); };

  bool all_defects_zero = true;
  for (const auto& term : d.terms) all_defects_zero = all_defects_zero && is_zero(term.defect);
  add("every defect in the decomposition is 0", all_defects_zero);

  const bool todd_ok = is_zero(d.todd_defect);
  const int f = t.fiber().dim();
  const int b = t.base().dim();
  switch (t.dim()) {
    case 2:
      if (f == 1 && b == 1) add("sigma(E) = 0", sgn(invariants(t.total()).signature) == 0);
      add("tau(E) = tau(F) tau(B)", todd_ok);
      break;
    case 3:
      add("tau(E) = tau(F) tau(B)", todd_ok);
      break;
    case 4:
      add("tau(E) = tau(F) tau(B) and sigma(E) = sigma(F) sigma(B)", todd_ok && is_zero(*d.signature_defect));
      break;
    case 5: {
      const Integer chi1_defect =
          t.total()[1] - t.fiber()[0] * (b >= 1 ? t.base()[1] : Integer(0)) - (f >= 1 ? t.fiber()[1] : Integer(0)) * t.base()[0];
      add("tau(E) = tau(F) tau(B) and chi^1(E) = tau(F) chi^1(B) + chi^1(F) tau(B)", todd_ok && is_zero(chi1_defect));
      break;
    }
    default:
      break;
  }
  return v;
}

struct Fibration {
  Integer base_genus;
  Integer fiber_genus;
};

struct BundleExample {
  long g = 0;
  long n = 0;
  InvariantSet total;
  GenusPolynomial chi_y;
  Fibration fibration1;
  Fibration fibration2;

  // The surface as a strict triple for one of the two fibrations (1 or 2).
  BundleTriple as_triple(int which) const;
};

// Genus-g curve: chi-vector (1-g, g-1).
inline ChiVector curve_chi(const Integer& genus) {
  return ChiVector({Integer(1 - genus), Integer(genus - 1)}, 1);
}

inline BundleTriple BundleExample::as_triple(int which) const {
  const Fibration& fib = which == 1 ? fibration1 : fibration2;
  ChiVector total({chi_y.coefficient(0), chi_y.coefficient(1), chi_y.coefficient(2)}, 2);
  return BundleTriple(curve_chi(fib.fiber_genus), curve_chi(fib.base_genus), std::move(total));
}

// Surfaces X_{g,n} with two fibrations over curves:
//   sigma = (4/3) g(g-1)(n^2-1) n^{2g-3}
//   chi   = 4 g(g-1)(gn-1) n^{2g-2}
//   tau   = (1/3) g(g-1) n^{2g-3} (3gn^2 - 3n + n^2 - 1)
//   chi_y = g(gn-1) n^{2g-2} (g-1) (1-y)^2 + (1/3) g(g-1)(n^2-1) n^{2g-3} (1+y)^2
//   (b1, f1) = (g, g(gn-1) n^{2g-2} + 1), (b2, f2) = (g(g-1) n^{2g-2} + 1, gn)
inline BundleExample bryan_donagi_example(long g, long n) {
  if (g < 2 || n < 2)
    throw validation_error("bryan-donagi parameters need g, n >= 2, got (" + std::to_string(g) + "," + std::to_string(n) + ")");
  const Integer G(g);
  const Integer N(n);
  const Integer n2g3 = ipow(N, static_cast<unsigned long>(2 * g - 3));
  const Integer n2g2 = n2g3 * N;

  auto exact = [](Rational r, const char* what) {
    r.canonicalize();
    if (!is_integral(r)) throw validation_error(std::string("non-integral ") + what);
    return Integer(r.get_num());
  };

  BundleExample ex;
  ex.g = g;
  ex.n = n;
  ex.total.dim = 2;
  ex.total.signature = exact(Rational(4 * G * (G - 1) * (N * N - 1) * n2g3, 3), "signature");
  ex.total.euler = 4 * G * (G - 1) * (G * N - 1) * n2g2;
  ex.total.todd = exact(Rational(G * (G - 1) * n2g3 * (3 * G * N * N - 3 * N + N * N - 1), 3), "todd genus");

  const IntPoly one_minus_y_sq = pow(IntPoly{1, -1}, 2);
  const IntPoly one_plus_y_sq = pow(IntPoly{1, 1}, 2);
  const Integer a = G * (G * N - 1) * n2g2 * (G - 1);
  const Integer b = exact(Rational(G * (G - 1) * (N * N - 1) * n2g3, 3), "chi_y coefficient");
  ex.chi_y = scale(one_minus_y_sq, a) + scale(one_plus_y_sq, b);

  ex.fibration1 = {G, Integer(G * (G * N - 1) * n2g2 + 1)};
  ex.fibration2 = {Integer(G * (G - 1) * n2g2 + 1), Integer(G * N)};
  return ex;
}

}  // namespace genus_forge
