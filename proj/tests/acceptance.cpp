// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bordcalc/bordcalc.hpp"

using namespace bordcalc;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

constexpr int kMaxDegree = 8;
constexpr unsigned long long kSeed = 20240601;

std::vector<LaurentElem> images_of(const std::vector<FormalMonomial>& basis) {
  std::vector<LaurentElem> v;
  v.reserve(basis.size());
  for (const auto& b : basis) v.push_back(localize(b));
  return v;
}

std::vector<FormalMonomial> geometric_basis(int d) {
  std::vector<FormalMonomial> out;
  for (const auto& b : basis_by_weight(d, 0, std::max(d, 0)))
    if (b.epow() == 0) out.push_back(b);
  return out;
}

// 1. Every L-monomial with |d| <= 8 clears and round-trips. L has infinitely
// many monomials per degree; the sweep covers (a,c)-weight <= 8.
Outcome localization_generation() {
  Outcome o;
  std::size_t n = 0;
  for (int d = -kMaxDegree; d <= kMaxDegree; ++d)
    for (const auto& x : laurent_monomials(d, kMaxDegree)) {
      ++n;
      auto f = clear_denominators(x);
      o.require(expand_cleared(f) == x, "round trip fails for " + gf2::to_string(x));
    }
  if (o.ok) o.note = std::to_string(n) + " monomials";
  return o;
}

// 2. rank ker(alpha) = rank e*MO on each slice, and e is injective.
Outcome gysin_exactness() {
  Outcome o;
  NormalFormEngine eng;
  for (int d = -kMaxDegree; d <= kMaxDegree; ++d) {
    auto B = basis_by_weight(d, -2, std::max(d, 0) + 1);
    auto Bp = basis_by_weight(d + 1, -1, std::max(d, 0) + 2);
    std::vector<CoefElem> alphas;
    for (const auto& b : B) alphas.push_back(alpha(b));
    const std::size_t kernel = B.size() - gf2::rank(alphas);
    std::vector<LaurentElem> multiples;
    for (const auto& b : Bp) multiples.push_back(localize(eng.normal_form(Presentation::e() * Presentation(b))));
    const std::size_t r = gf2::rank(multiples);
    o.require(r == Bp.size(), "e not injective in degree " + std::to_string(d + 1));
    o.require(r == kernel, "rank ker alpha = " + std::to_string(kernel) + " but rank e*MO = " + std::to_string(r) +
                               " in degree " + std::to_string(d));
    // e*MO lands in ker(alpha)
    for (const auto& b : Bp) o.require(alpha(Presentation::e() * Presentation(b)).is_zero(), "alpha(e*x) != 0");
  }
  return o;
}

// 3. Independence of basis images; normal form of 200 random products.
Outcome presentation_completeness() {
  Outcome o;
  for (int d = -kMaxDegree; d <= kMaxDegree; ++d) {
    auto slice = basis_by_weight(d, -2, std::max(d, 0) + 1);
    o.require(gf2::rank(images_of(slice)) == slice.size(), "dependent basis slice in degree " + std::to_string(d));
    auto window = basis_in_window(d, 1);
    o.require(gf2::rank(images_of(window)) == window.size(), "dependent window in degree " + std::to_string(d));
  }
  Sampler s(kSeed);
  NormalFormEngine eng;
  for (int k = 0; k < 200; ++k) {
    auto x = s.generator_product(kMaxDegree, s.coin(0.3));
    auto y = eng.normal_form(x);
    o.require(localize(y) == localize(x), "normal form changes localization of " + to_string(x));
    o.require(eng.normal_form(y) == y, "normal form not idempotent on " + to_string(x));
  }
  return o;
}

// 4. Gamma towers: fixed-point dictionary against localization.
Outcome gamma_model() {
  Outcome o;
  int cases = 0;
  for (int n = 1; n <= kMaxDegree; ++n) {
    ManifoldExpr m = ManifoldExpr::proj(n);
    for (int i = 0; i + n <= kMaxDegree; ++i) {
      ++cases;
      o.require(dictionary(phi(m)) == localize(Presentation::g(i, n)),
                "G(" + std::to_string(i) + "," + std::to_string(n) + ")");
      m = ManifoldExpr::gamma_of(m);
    }
  }
  if (o.ok) o.note = std::to_string(cases) + " towers";
  return o;
}

// 5. Products of G generators are geometric; powers of e are not.
Outcome geometric_subring() {
  Outcome o;
  Sampler s(kSeed + 5);
  NormalFormEngine eng;
  for (int k = 0; k < 200; ++k) {
    auto x = s.generator_product(kMaxDegree, false, true);
    o.require(is_geometric(x, eng), to_string(x) + " has e in its normal form");
  }
  for (int k = 1; k <= kMaxDegree; ++k) o.require(!is_geometric(Presentation::e(k), eng), "e^k geometric");
  return o;
}

// 6. quotient_reduce(e^k G(1,n)) = (X_n + rho(n)) x_{k-1}.
Outcome obstruction_module() {
  Outcome o;
  NormalFormEngine eng;
  for (int k = 1; k <= 4; ++k)
    for (int n = 1; n <= 6; ++n) {
      auto q = quotient_reduce(Presentation::e(k) * Presentation::g(1, n), eng);
      QuotientElem want;
      Presentation c = Presentation::x(n) + iota(rho(n));
      if (k >= 2 && !c.is_zero()) want[k - 1] = c;
      o.require(q == want, "e^" + std::to_string(k) + "*G(1," + std::to_string(n) + ") -> " + to_string(q));
    }
  return o;
}

// 7. delta*phi = 0, delta onto, rank ker delta = rank im phi, degrees <= 6.
Outcome conner_floyd_exactness() {
  Outcome o;
  for (int d = 0; d <= 6; ++d) {
    std::vector<gf2::GradedPoly> phis;
    for (const auto& b : geometric_basis(d)) {
      auto m = catalog_expr(b);
      auto f = phi(m);
      o.require(delta(f).empty(), "delta(phi(" + to_string(m) + ")) = " + to_string(delta(f)));
      phis.push_back(f);
    }
    auto mons = bundle_monomials(d);
    std::vector<FreeBZ2Elem> images;
    for (const auto& m : mons) images.push_back(delta(m));
    const std::size_t im_delta = free_rank(images);
    if (d >= 1) o.require(im_delta == free_basis(d - 1).size(), "delta not onto in degree " + std::to_string(d));
    o.require(mons.size() - im_delta == gf2::rank(phis), "rank ker delta != rank im phi in degree " + std::to_string(d));
  }
  return o;
}

// 8. dictionary*phi = localize*pt_class on 100 random catalog expressions.
Outcome comparison_square() {
  Outcome o;
  Sampler s(kSeed + 8);
  NormalFormEngine eng;
  for (int k = 0; k < 100; ++k) {
    auto m = s.manifold(kMaxDegree);
    o.require(dictionary(phi(m)) == localize(pt_class(m, eng)), to_string(m));
  }
  return o;
}

// 9. Characteristic-number oracle.
Outcome charnum_oracle() {
  Outcome o;
  for (const auto& [key, v] : sw_numbers(SpaceDesc::rp(3))) o.require(!v, "RP(3) " + key_to_string(key));
  auto rp2 = sw_numbers(SpaceDesc::rp(2));
  o.require(rp2.at({{1, 1}, 0}), "<w1^2, RP(2)> = 0");
  o.require(rp2.at({{2}, 0}), "<w2, RP(2)> = 0");
  for (int j = 0; j <= 6; ++j) {
    auto x = identify_in_NBO1(SpaceDesc::rp(j).with_reference("u"));
    o.require(x.size() == 1 && x.begin()->first == j && x.begin()->second.is_one(),
              "RP(" + std::to_string(j) + ") identifies as " + to_string(x));
  }
  return o;
}

// 10. The strict basis misses Gamma(X2) X2 in degree 5; the adopted one spans it.
Outcome strict_basis_discrepancy() {
  Outcome o;
  NormalFormEngine eng;
  auto witness = eng.gamma(Presentation::x(2)) * Presentation::x(2);
  auto target = localize(witness);
  const int t = target.max_inv_exponent();
  for (int extra = 0; extra <= 3; ++extra)
    o.require(!gf2::solve_gf2(images_of(basis_in_window(5, t + extra, true)), target),
              "strict span contains the witness");
  auto full = basis_in_window(5, t);
  o.require(gf2::solve_gf2(images_of(full), target).has_value(), "adopted span misses the witness");
  const auto& w = *witness.terms().begin();
  o.require(witness.size() == 1 && std::find(full.begin(), full.end(), w) != full.end(),
            "witness is not an adopted basis monomial");
  o.require(!is_strict_basis_monomial(w), "witness is a strict basis monomial");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"localization generation", localization_generation},
      {"Gysin exactness", gysin_exactness},
      {"presentation completeness", presentation_completeness},
      {"gamma geometric model", gamma_model},
      {"geometric subring", geometric_subring},
      {"obstruction module", obstruction_module},
      {"Conner-Floyd exactness", conner_floyd_exactness},
      {"comparison square", comparison_square},
      {"characteristic-number oracle", charnum_oracle},
      {"strict-basis discrepancy", strict_basis_discrepancy},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%-4s criterion %2zu  %-30s %8.1f ms  %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, ms,
                o.note.c_str());
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
