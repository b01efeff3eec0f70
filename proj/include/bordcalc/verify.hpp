#ifndef BORDCALC_VERIFY_HPP
#define BORDCALC_VERIFY_HPP

// Degree-by-degree verification suites. Each suite returns one Check per
// (property, degree); degrees run concurrently and results come back ordered.

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bordcalc/charnum.hpp"
#include "bordcalc/config.hpp"
#include "bordcalc/conner_floyd.hpp"
#include "bordcalc/localized.hpp"
#include "bordcalc/presentation.hpp"

namespace bordcalc {

struct Check {
  std::string suite;
  std::string name;
  int degree = 0;
  bool passed = true;
  std::string detail;
};

inline bool all_passed(const std::vector<Check>& v) {
  return std::all_of(v.begin(), v.end(), [](const Check& c) { return c.passed; });
}

// ---------------------------------------------------------------------------
// Random expressions.

class Sampler {
 public:
  explicit Sampler(unsigned long long seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  /// A random a-monomial of degree exactly d (1 when none exists).
  CoefElem coef_monomial(int d) {
    auto all = detail::full_coefficients().monomials_of_degree(std::max(d, 0));
    if (all.empty()) return poly_one();
    return all[static_cast<std::size_t>(uniform(0, static_cast<int>(all.size()) - 1))];
  }

  /// Product of generators a_d, X_n, G(i,n) (and e when allowed) of degree <= max_degree.
  Presentation generator_product(int max_degree, bool with_e, bool gamma_only = false) {
    Presentation p = Presentation::one();
    int budget = uniform(0, std::max(max_degree, 0));
    const int factors = uniform(1, 4);
    for (int f = 0; f < factors && budget >= 2; ++f) {
      const int kind = uniform(0, gamma_only ? 1 : 2);
      if (kind == 0) {
        const int n = uniform(2, budget);
        p = p * Presentation::x(n);
        budget -= n;
      } else if (kind == 1 && budget >= 3) {
        const int n = uniform(2, budget - 1);
        const int i = uniform(1, budget - n);
        p = p * Presentation::g(i, n);
        budget -= n + i;
      } else {
        const int d = uniform(2, budget);
        if (!is_generator_degree(d)) continue;
        p = p * iota(poly_var(a_var(d)));
        budget -= d;
      }
    }
    if (with_e) p = p * Presentation::e(uniform(0, 2));
    return p;
  }

  Presentation presentation(int max_degree) {
    Presentation p;
    const int terms = uniform(1, 3);
    for (int t = 0; t < terms; ++t) p += generator_product(max_degree, coin(0.3));
    return p;
  }

  /// Catalog expression of dimension <= max_dim.
  ManifoldExpr manifold(int max_dim, int depth = 0) {
    const int kind = depth >= 3 ? uniform(0, 1) : uniform(0, 4);
    if (max_dim < 1) return ManifoldExpr::trivial(poly_one());
    switch (kind) {
      case 0: return ManifoldExpr::proj(uniform(1, max_dim));
      case 1: {
        const int d = uniform(0, max_dim);
        return ManifoldExpr::trivial(coef_monomial(is_generator_degree(d) || d == 0 ? d : 0));
      }
      case 2:
        if (max_dim >= 2) return ManifoldExpr::gamma_of(manifold(max_dim - 1, depth + 1));
        return ManifoldExpr::proj(1);
      case 3: {
        const int split = uniform(0, max_dim);
        return ManifoldExpr::product({manifold(split, depth + 1), manifold(max_dim - split, depth + 1)});
      }
      default: return coin(0.2) ? ManifoldExpr::sphere(uniform(0, max_dim)) : ManifoldExpr::proj(uniform(1, max_dim));
    }
  }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Helpers.

/// Monomials of L of the form mu * e^(s - d) with mu an (a, c)-monomial of degree s <= s_max.
inline std::vector<LaurentElem> laurent_monomials(int d, int s_max) {
  std::vector<LaurentElem> out;
  for (int s = 0; s <= s_max; ++s)
    for (int sa = 0; sa <= s; ++sa)
      for (const auto& a : detail::full_coefficients().monomials_of_degree(sa))
        detail::for_each_partition(s - sa, 1, [&](const std::vector<int>& parts) {
          LaurentElem m = a * euler_power(s - d);
          for (int j : parts) m *= stable_class(j);
          out.push_back(std::move(m));
        });
  return out;
}

/// Coordinates of FreeBZ2Elem values, for rank computations.
inline std::size_t free_rank(const std::vector<FreeBZ2Elem>& v) {
  std::map<std::pair<int, gf2::Monomial>, std::size_t> index;
  for (const auto& x : v)
    for (const auto& [j, c] : x)
      for (const auto& m : c.terms()) index.emplace(std::make_pair(j, m), index.size());
  gf2::Eliminator el(index.size());
  for (const auto& x : v) {
    gf2::Bits b(index.size());
    for (const auto& [j, c] : x)
      for (const auto& m : c.terms()) b.flip(index.at({j, m}));
    el.insert(std::move(b));
  }
  return el.rank();
}

namespace detail {

/// Accumulates one pass/fail verdict with the first failure as detail.
struct Verdict {
  bool ok = true;
  std::string first;
  std::size_t cases = 0;

  void expect(bool cond, const std::function<std::string()>& why) {
    ++cases;
    if (!cond && ok) {
      ok = false;
      first = why();
    }
  }

  Check to_check(std::string suite, std::string name, int degree) const {
    return {std::move(suite), std::move(name), degree, ok,
            ok ? std::to_string(cases) + " cases" : first};
  }
};

/// Run fn(d) for d in [lo, hi] concurrently; concatenate results in degree order.
inline std::vector<Check> per_degree(int lo, int hi, const std::function<std::vector<Check>(int)>& fn) {
  std::vector<std::future<std::vector<Check>>> jobs;
  for (int d = lo; d <= hi; ++d) jobs.push_back(std::async(std::launch::async, fn, d));
  std::vector<Check> out;
  for (auto& j : jobs) {
    auto part = j.get();
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suites.

/// Degree-0 sanity: alpha(1) = 1 and rank N_0 = 1.
inline std::vector<Check> verify_base(const Config&) {
  detail::Verdict v;
  v.expect(alpha(Presentation::one()) == poly_one(), [] { return "alpha(1) != 1"; });
  v.expect(detail::full_coefficients().rank(0) == 1, [] { return "rank N_0 != 1"; });
  return {v.to_check("base", "degree-0 identities", 0)};
}

/// Every L-monomial of the given degree (with (a,c)-weight <= max) clears and round-trips.
inline std::vector<Check> verify_loc(const Config& cfg) {
  const int m = cfg.max_degree;
  return detail::per_degree(-m, m, [m](int d) {
    detail::Verdict v;
    for (const auto& x : laurent_monomials(d, m)) {
      auto cf = clear_denominators(x);
      bool clean = cf.poly.is_zero() || cf.poly.min_inv_exponent() >= 0;
      for (const auto& t : cf.poly.terms())
        for (auto [var, e] : t.factors()) {
          char f = alphabet()->name(var)[0];
          if (f != 'a' && f != 'X' && var != e_var()) clean = false;
        }
      v.expect(clean, [&] { return "cleared form of " + gf2::to_string(x) + " is not a polynomial in a, X, e"; });
      v.expect(expand_cleared(cf) == x, [&] { return "round trip failed for " + gf2::to_string(x); });
    }
    return std::vector<Check>{v.to_check("loc", "clear_denominators round trip", d)};
  });
}

/// Lower end of the filtration-weight window used by the exactness checks.
inline constexpr int kExactWeightFloor = -2;

/// Lowest degree swept by the basis and exactness suites.
inline int lowest_degree(const Config& cfg) { return -std::min(2, cfg.max_degree); }

/// Exactness of 0 -> MO --e--> MO --alpha--> N_* -> 0 on weight windows.
inline std::vector<Check> verify_seq(const Config& cfg) {
  return detail::per_degree(lowest_degree(cfg), cfg.max_degree, [](int d) {
    NormalFormEngine eng;
    const auto B = basis_by_weight(d, kExactWeightFloor, std::max(d, 0) + 1);
    const auto Bp = basis_by_weight(d + 1, kExactWeightFloor + 1, std::max(d, 0) + 2);
    std::vector<CoefElem> alphas;
    for (const auto& b : B) alphas.push_back(alpha(b));
    const std::size_t ker_alpha = B.size() - gf2::rank(alphas);

    std::set<FormalMonomial> in_window(B.begin(), B.end());
    std::vector<Presentation> ey;
    std::vector<LaurentElem> loc_y, loc_ey;
    detail::Verdict contain, exact, inj;
    for (const auto& y : Bp) {
      auto nf = eng.normal_form(Presentation(y) * Presentation::e());
      for (const auto& t : nf.terms())
        contain.expect(in_window.count(t) > 0, [&] { return "e*" + to_string(y) + " leaves the window via " + to_string(t); });
      ey.push_back(std::move(nf));
      loc_y.push_back(localize(y));
      loc_ey.push_back(loc_y.back() * loc_euler());
    }
    const std::size_t rank_ey = presentation_rank(ey);
    exact.expect(rank_ey == ker_alpha, [&] {
      return "rank(e*MO) = " + std::to_string(rank_ey) + " but rank(ker alpha) = " + std::to_string(ker_alpha);
    });
    inj.expect(rank_ey == Bp.size(), [&] { return "multiplication by e is not injective on the window"; });
    inj.expect(gf2::rank(loc_ey) == gf2::rank(loc_y), [] { return "rank changed under e on localizations"; });
    return std::vector<Check>{contain.to_check("seq", "e*MO lies in the window", d),
                              exact.to_check("seq", "rank ker(alpha) = rank e*MO", d),
                              inj.to_check("seq", "e injective", d)};
  });
}

/// Independence of basis images, and normal-form properties on random inputs.
inline std::vector<Check> verify_basis(const Config& cfg) {
  auto out = detail::per_degree(lowest_degree(cfg), cfg.max_degree, [&cfg](int d) {
    detail::Verdict v;
    const int t_max = std::max(0, -d) + cfg.window;
    auto by_window = basis_in_window(d, t_max);
    std::vector<LaurentElem> img;
    for (const auto& b : by_window) img.push_back(localize(b));
    const auto r = gf2::rank(img);
    v.expect(r == by_window.size(), [&] {
      return "window basis rank " + std::to_string(r) + " < count " + std::to_string(by_window.size());
    });
    auto by_weight = basis_by_weight(d, kExactWeightFloor, std::max(d, 0) + 1);
    img.clear();
    for (const auto& b : by_weight) img.push_back(localize(b));
    const auto rw = gf2::rank(img);
    v.expect(rw == by_weight.size(), [&] {
      return "weight-window basis rank " + std::to_string(rw) + " < count " + std::to_string(by_weight.size());
    });
    return std::vector<Check>{v.to_check("basis", "basis localizations independent", d)};
  });

  detail::Verdict nf;
  NormalFormEngine eng(RewriteOptions{cfg.fuel, true});
  Sampler s(cfg.seed);
  for (int k = 0; k < cfg.samples; ++k) {
    auto x = s.presentation(cfg.max_degree);
    auto y = eng.normal_form(x);
    nf.expect(localize(y) == localize(x), [&] { return "normal form changes the localization of " + to_string(x); });
    nf.expect(eng.normal_form(y) == y, [&] { return "normal form not idempotent on " + to_string(x); });
    nf.expect(std::all_of(y.terms().begin(), y.terms().end(), is_basis_monomial),
              [&] { return "normal form of " + to_string(x) + " is not in basis shape"; });
  }
  out.push_back(nf.to_check("basis", "normal form preserves localization and is idempotent", cfg.max_degree));

  detail::Verdict measure;
  NormalFormEngine step_eng(RewriteOptions{cfg.fuel, false});
  for (int k = 0; k < cfg.samples; ++k) {
    auto x = s.generator_product(cfg.max_degree, s.coin());
    for (const auto& m : x.terms()) {
      auto next = step_eng.rewrite_step(m);
      if (!next) continue;
      for (const auto& t : next->terms())
        measure.expect(rewrite_measure(t) < rewrite_measure(m), [&] {
          return "measure does not drop from " + to_string(m) + " to " + to_string(t);
        });
    }
  }
  out.push_back(measure.to_check("basis", "rewrite measure decreases", cfg.max_degree));

  if (cfg.max_degree >= 5) {
    detail::Verdict strict;
    const auto target = localize(Presentation::g(1, 2) * Presentation::x(2));
    std::vector<LaurentElem> strict_img, full_img;
    const int t_max = 2;
    for (const auto& b : basis_in_window(5, t_max, true)) strict_img.push_back(localize(b));
    for (const auto& b : basis_in_window(5, t_max, false)) full_img.push_back(localize(b));
    strict.expect(!gf2::solve_gf2(strict_img, target), [] { return "G(1,2)*X2 lies in the strict span"; });
    strict.expect(gf2::solve_gf2(full_img, target).has_value(), [] { return "G(1,2)*X2 outside the adopted basis span"; });
    out.push_back(strict.to_check("basis", "strict ordering fails spanning at G(1,2)*X2", 5));
  }
  return out;
}

/// Gamma towers: geometric model against the presentation, and the defining identity.
inline std::vector<Check> verify_gamma(const Config& cfg) {
  auto out = detail::per_degree(1, cfg.max_degree, [](int total) {
    detail::Verdict v;
    NormalFormEngine eng;
    for (int n = 1; n <= total; ++n) {
      const int i = total - n;
      ManifoldExpr m = ManifoldExpr::proj(n);
      for (int k = 0; k < i; ++k) m = ManifoldExpr::gamma_of(m);
      const Presentation g = n == 1 ? Presentation{} : Presentation::g(i, n);
      v.expect(dictionary(phi(m)) == localize(g), [&] { return "dictionary(phi(" + to_string(m) + ")) != loc(G(" +
                                                               std::to_string(i) + "," + std::to_string(n) + "))"; });
      v.expect(pt_class(m, eng) == g, [&] { return "pt_class(" + to_string(m) + ") != G(i,n)"; });
    }
    return std::vector<Check>{v.to_check("gamma", "gamma towers match G(i,n)", total)};
  });
  detail::Verdict contract;
  NormalFormEngine eng(RewriteOptions{cfg.fuel, true});
  Sampler s(cfg.seed + 1);
  for (int k = 0; k < cfg.samples; ++k) {
    auto x = s.presentation(cfg.max_degree);
    auto g = eng.gamma(x);
    contract.expect(eng.normal_form(Presentation::e() * g + x + bar(x)).is_zero(),
                    [&] { return "e*Gamma(x) != x + xbar for x = " + to_string(x); });
  }
  out.push_back(contract.to_check("gamma", "e*Gamma(x) = x + xbar", cfg.max_degree));
  // the underlying class of gamma(M) is a mapping torus, read off from fixed points
  detail::Verdict torus;
  for (int k = 0; k < cfg.samples; ++k) {
    auto m = s.manifold(std::max(0, cfg.max_degree - 1));
    auto gm = ManifoldExpr::gamma_of(m);
    torus.expect(alpha(eng.gamma(pt_class(m, eng))) == underlying(gm),
                 [&] { return "alpha(Gamma[M]) != [underlying gamma(M)] for M = " + to_string(m); });
  }
  out.push_back(torus.to_check("gamma", "alpha(Gamma[M]) = underlying class of gamma(M)", cfg.max_degree));
  return out;
}

/// The geometric subring is the e-free part of the basis.
inline std::vector<Check> verify_geomcomp(const Config& cfg) {
  detail::Verdict closure, euler_not;
  NormalFormEngine eng(RewriteOptions{cfg.fuel, true});
  Sampler s(cfg.seed + 2);
  for (int k = 0; k < cfg.samples; ++k) {
    auto x = s.generator_product(cfg.max_degree, false, true);
    closure.expect(is_geometric(x, eng), [&] { return to_string(x) + " has e in its normal form"; });
  }
  for (int k = 1; k <= std::max(cfg.max_degree, 1); ++k)
    euler_not.expect(!is_geometric(Presentation::e(k), eng), [&] { return "e^" + std::to_string(k) + " reported geometric"; });
  return {closure.to_check("geomcomp", "products of G(i,n) are geometric", cfg.max_degree),
          euler_not.to_check("geomcomp", "e^k is not geometric", cfg.max_degree)};
}

/// Obstruction quotient relation on e^k * G(1,n).
inline std::vector<Check> verify_trobs(const Config& cfg) {
  detail::Verdict v;
  NormalFormEngine eng;
  for (int k = 1; k <= 4; ++k)
    for (int n = 1; n <= std::min(6, cfg.max_degree); ++n) {
      auto got = quotient_reduce(Presentation::e(k) * Presentation::g(1, n), eng);
      QuotientElem want;
      const Presentation coef = n == 1 ? Presentation{} : Presentation::x(n) + iota(rho(n));
      if (k - 1 >= 1 && !coef.is_zero()) want[k - 1] = coef;
      v.expect(got == want, [&] {
        return "quotient_reduce(e^" + std::to_string(k) + "*G(1," + std::to_string(n) + ")) = " + to_string(got);
      });
    }
  for (int k = 1; k <= 4; ++k) {
    QuotientElem want{{k, Presentation::one()}};
    v.expect(quotient_reduce(Presentation::e(k), eng) == want, [&] { return "e^k does not reduce to x_k"; });
  }
  return {v.to_check("trobs", "[gamma(M)] x_k = ([M] + [Mbar]) x_(k-1)", cfg.max_degree)};
}

/// Conner-Floyd sequence 0 -> N^{Z/2}_d -> fixed-set algebra -> N_{d-1}(BZ/2) -> 0.
inline std::vector<Check> verify_cf_exact(const Config& cfg) {
  return detail::per_degree(0, cfg.max_degree, [](int d) {
    detail::Verdict comp, surj, exact, inj;
    std::vector<BundleAlgElem> phis;
    std::size_t geometric = 0;
    for (const auto& b : basis_by_weight(d, 0, std::max(d, 0))) {
      if (b.epow() != 0) continue;
      ++geometric;
      auto m = catalog_expr(b);
      auto p = phi(m);
      comp.expect(delta(p).empty(), [&] { return "delta(phi(" + to_string(m) + ")) != 0"; });
      phis.push_back(std::move(p));
    }
    const std::size_t rank_phi = gf2::rank(phis);
    inj.expect(rank_phi == geometric, [&] { return "phi not injective on catalog classes"; });

    std::vector<FreeBZ2Elem> deltas;
    const auto mons = bundle_monomials(d);
    for (const auto& m : mons) deltas.push_back(delta(m));
    const std::size_t rank_delta = free_rank(deltas);
    const std::size_t target = d >= 1 ? free_basis(d - 1).size() : 0;
    surj.expect(rank_delta == target, [&] {
      return "rank delta = " + std::to_string(rank_delta) + ", N_" + std::to_string(d - 1) + "(BZ/2) has rank " +
             std::to_string(target);
    });
    exact.expect(mons.size() - rank_delta == rank_phi, [&] {
      return "rank ker delta = " + std::to_string(mons.size() - rank_delta) + " but rank im phi = " +
             std::to_string(rank_phi);
    });
    return std::vector<Check>{comp.to_check("cf-exact", "delta*phi = 0", d),
                              surj.to_check("cf-exact", "delta surjective", d),
                              exact.to_check("cf-exact", "rank ker delta = rank im phi", d),
                              inj.to_check("cf-exact", "phi injective on the catalog", d)};
  });
}

/// dictionary(phi(M)) = localize(pt_class(M)) on random catalog expressions.
inline std::vector<Check> verify_compare(const Config& cfg) {
  detail::Verdict v;
  NormalFormEngine eng(RewriteOptions{cfg.fuel, true});
  Sampler s(cfg.seed + 3);
  for (int k = 0; k < cfg.samples; ++k) {
    auto m = s.manifold(cfg.max_degree);
    v.expect(dictionary(phi(m)) == localize(pt_class(m, eng)),
             [&] { return "square does not commute on " + to_string(m); });
  }
  return {v.to_check("compare", "dictionary*phi = localize*pt_class", cfg.max_degree)};
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"loc", "seq", "basis", "gamma", "geomcomp",
                                              "trobs", "cf-exact", "compare", "all"};
  return names;
}

inline std::vector<Check> verify(const std::string& suite, const Config& cfg) {
  cfg.validate();
  if (cfg.max_degree > cfg.coef_max_degree)
    throw CapacityError("verify: degree " + std::to_string(cfg.max_degree) + " exceeds coef.max_degree");
  using Fn = std::vector<Check> (*)(const Config&);
  static const std::vector<std::pair<std::string, Fn>> table{
      {"loc", verify_loc},       {"seq", verify_seq},     {"basis", verify_basis},
      {"gamma", verify_gamma},   {"geomcomp", verify_geomcomp}, {"trobs", verify_trobs},
      {"cf-exact", verify_cf_exact}, {"compare", verify_compare}};
  if (suite == "all") {
    auto out = verify_base(cfg);
    for (const auto& [name, fn] : table) {
      auto part = fn(cfg);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  for (const auto& [name, fn] : table)
    if (name == suite) return fn(cfg);
  throw ContractViolation("unknown verification suite '" + suite + "'");
}

}  // namespace bordcalc

#endif  // BORDCALC_VERIFY_HPP
