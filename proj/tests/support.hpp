#ifndef BORDCALC_TESTS_SUPPORT_HPP
#define BORDCALC_TESTS_SUPPORT_HPP

// Hand-rolled generators for the property tests.

#include <random>
#include <string>
#include <vector>

#include "bordcalc/bordcalc.hpp"

namespace testsupport {

using namespace bordcalc;

class Gen {
 public:
  explicit Gen(unsigned long long seed) : rng_(seed) {}

  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return between(0, 1) == 1; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(between(0, static_cast<int>(v.size()) - 1))];
  }

  /// Random sum of up to `terms` monomials in the named variables; exponents of
  /// `e` range over [e_lo, e_hi], the rest over [0, max_exp].
  gf2::GradedPoly poly(const std::vector<std::string>& names, int terms, int max_exp, int e_lo = 0, int e_hi = 0) {
    gf2::GradedPoly p = poly_zero();
    const int n = between(0, terms);
    for (int t = 0; t < n; ++t) {
      gf2::GradedPoly m = poly_one();
      for (const auto& name : names) {
        int x = name == "e" ? between(e_lo, e_hi) : between(0, max_exp);
        if (x != 0) m *= poly_var(var_id(name), x);
      }
      p += m;
    }
    return p;
  }

  /// Homogeneous element of L of degree d with e-exponents in [-d - 2, 2].
  LaurentElem laurent(int d, int terms) {
    LaurentElem p = poly_zero();
    for (int t = 0; t < terms; ++t) {
      const int k = between(-2, 2);
      const int w = d + k;  // degree carried by a and c
      if (w < 0) continue;
      gf2::GradedPoly m = poly_one();
      int left = w;
      while (left > 0) {
        int part = between(1, left);
        if (coin() && is_generator_degree(part)) m *= poly_var(a_var(part));
        else m *= poly_var(c_var(part));
        left -= part;
      }
      p += m * euler_power(k);
    }
    return p;
  }

  /// Product of G(i,n) and X_n factors, optionally times a coefficient and e^k.
  Presentation generator_product(int max_factors, bool with_e) {
    Presentation p = Presentation::one();
    const int n = between(1, max_factors);
    for (int f = 0; f < n; ++f) {
      const int idx = between(2, 5), i = between(0, 2);
      p = p * Presentation::g(i, idx);
    }
    if (coin()) p = p.times(poly_var(a_var(pick(std::vector<int>{2, 4, 5}))));
    if (with_e && coin()) p = p * Presentation::e(between(1, 3));
    return p;
  }

  Presentation presentation(int max_terms, bool with_e) {
    Presentation p;
    const int n = between(1, max_terms);
    for (int t = 0; t < n; ++t) p += generator_product(3, with_e);
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<std::vector<bool>> all_subsets(std::size_t n) {
  std::vector<std::vector<bool>> out;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    std::vector<bool> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1U;
    out.push_back(std::move(s));
  }
  return out;
}

/// Brute-force solver: some subset of `v` summing to `target`.
inline bool subset_reaches(const std::vector<gf2::GradedPoly>& v, const gf2::GradedPoly& target) {
  for (const auto& s : all_subsets(v.size())) {
    gf2::GradedPoly acc = poly_zero();
    for (std::size_t i = 0; i < v.size(); ++i)
      if (s[i]) acc += v[i];
    if (acc == target) return true;
  }
  return false;
}

/// Brute-force rank: log2 of the number of distinct subset sums.
inline std::size_t subset_rank(const std::vector<gf2::GradedPoly>& v) {
  std::vector<std::string> sums;
  for (const auto& s : all_subsets(v.size())) {
    gf2::GradedPoly acc = poly_zero();
    for (std::size_t i = 0; i < v.size(); ++i)
      if (s[i]) acc += v[i];
    sums.push_back(gf2::to_string(acc));
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  std::size_t r = 0;
  while ((1UL << r) < sums.size()) ++r;
  return r;
}

inline gf2::GradedPoly P(const std::string& text) { return gf2::parse(text, alphabet()); }

}  // namespace testsupport

#endif  // BORDCALC_TESTS_SUPPORT_HPP
