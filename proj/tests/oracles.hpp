#pragma once

// Independent reference computations for the tests. Plain int64 arithmetic,
// no dependency on the library's polynomial or closed-form code.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracle {

using Vec = std::vector<std::int64_t>;

// Schoolbook convolution.
inline Vec convolve(const Vec& a, const Vec& b) {
  Vec out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// chi-vector of P^n from its diagonal hodge diamond: alternating column sums.
inline Vec projective_space(int n) {
  Vec c(static_cast<std::size_t>(n) + 1);
  for (int p = 0; p <= n; ++p) {
    std::int64_t sum = 0;
    for (int q = 0; q <= n; ++q) sum += (p == q ? 1 : 0) * (q % 2 == 0 ? 1 : -1);
    c[p] = sum;
  }
  return c;
}

inline Vec curve(std::int64_t g) { return {1 - g, g - 1}; }

inline std::int64_t at(const Vec& c, std::int64_t y) {
  std::int64_t acc = 0, pw = 1;
  for (auto v : c) {
    acc += v * pw;
    pw *= y;
  }
  return acc;
}

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t out = 1;
  for (int i = 0; i < e; ++i) out *= b;
  return out;
}

inline std::int64_t exact_div(std::int64_t a, std::int64_t b) {
  if (a % b != 0) throw std::logic_error("oracle: inexact division");
  return a / b;
}

struct Surface {
  std::int64_t sigma, chi, tau;
  Vec chi_y;
  std::int64_t b1, f1, b2, f2;
};

// Direct substitution into the X_{g,n} formulas.
inline Surface bryan_donagi(std::int64_t g, std::int64_t n) {
  Surface s{};
  s.sigma = exact_div(4 * g * (g - 1) * (n * n - 1) * ipow(n, 2 * static_cast<int>(g) - 3), 3);
  s.chi = 4 * g * (g - 1) * (g * n - 1) * ipow(n, 2 * static_cast<int>(g) - 2);
  s.tau = exact_div(g * (g - 1) * ipow(n, 2 * static_cast<int>(g) - 3) * (3 * g * n * n - 3 * n + n * n - 1), 3);
  const std::int64_t a = g * (g * n - 1) * ipow(n, 2 * static_cast<int>(g) - 2) * (g - 1);
  const std::int64_t b = exact_div(g * (g - 1) * (n * n - 1) * ipow(n, 2 * static_cast<int>(g) - 3), 3);
  // a (1 - 2y + y^2) + b (1 + 2y + y^2)
  s.chi_y = {a + b, -2 * a + 2 * b, a + b};
  s.b1 = g;
  s.f1 = g * (g * n - 1) * ipow(n, 2 * static_cast<int>(g) - 2) + 1;
  s.b2 = g * (g - 1) * ipow(n, 2 * static_cast<int>(g) - 2) + 1;
  s.f2 = g * n;
  return s;
}

}  // namespace oracle
