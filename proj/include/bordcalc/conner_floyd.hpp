#ifndef BORDCALC_CONNER_FLOYD_HPP
#define BORDCALC_CONNER_FLOYD_HPP

// Geometric side: fixed-set data of catalog Z/2-manifolds, the maps
// eta, phi, delta between free bordism, fixed-set bordism and N^{Z/2}_*,
// and the comparison with localization.

#include <map>
#include <string>
#include <vector>

#include "bordcalc/charnum.hpp"
#include "bordcalc/coefficients.hpp"
#include "bordcalc/errors.hpp"
#include "bordcalc/localized.hpp"
#include "bordcalc/presentation.hpp"

namespace bordcalc {

/// Polynomial in beta_i (written b<i>, degree i) over N_*.
using BundleAlgElem = gf2::GradedPoly;

inline BundleAlgElem beta(int i) {
  if (i < 1) throw ContractViolation("beta_i needs i >= 1");
  return poly_var(b_var(i));
}

inline bool is_bundle_elem(const gf2::GradedPoly& p) {
  const auto& t = *alphabet();
  for (const auto& m : p.terms())
    for (auto [v, e] : m.factors()) {
      char f = t.name(v)[0];
      if ((f != 'a' && f != 'b') || e < 0) return false;
    }
  return true;
}

/// Rank of the fixed-set normal bundle of a beta-monomial.
inline int bundle_rank(const gf2::Monomial& m) {
  int r = 0;
  for (auto [v, e] : m.factors())
    if (alphabet()->name(v)[0] == 'b') r += e;
  return r;
}

struct ManifoldExpr {
  enum class Kind { Proj, GammaOf, Product, Trivial, Sphere };
  Kind kind = Kind::Trivial;
  int n = 0;                       // Proj: n; Sphere: j
  std::vector<ManifoldExpr> parts; // GammaOf: {M}; Product: factors
  CoefElem coef = poly_one();      // Trivial

  static ManifoldExpr proj(int n) {
    if (n < 1) throw ContractViolation("P(n) needs n >= 1");
    return {Kind::Proj, n, {}, poly_one()};
  }
  static ManifoldExpr gamma_of(ManifoldExpr m) { return {Kind::GammaOf, 0, {std::move(m)}, poly_one()}; }
  static ManifoldExpr product(std::vector<ManifoldExpr> f) {
    if (f.empty()) throw ContractViolation("product of no manifolds");
    return {Kind::Product, 0, std::move(f), poly_one()};
  }
  static ManifoldExpr trivial(CoefElem c) {
    if (!is_coefficient(c)) throw ContractViolation("triv: argument is not in N_*");
    return {Kind::Trivial, 0, {}, std::move(c)};
  }
  static ManifoldExpr sphere(int j) {
    if (j < 0) throw ContractViolation("S(j) needs j >= 0");
    return {Kind::Sphere, j, {}, poly_one()};
  }
};

inline int dimension(const ManifoldExpr& m) {
  using K = ManifoldExpr::Kind;
  switch (m.kind) {
    case K::Proj: return m.n;
    case K::Sphere: return m.n;
    case K::GammaOf: return 1 + dimension(m.parts.at(0));
    case K::Trivial:
      if (m.coef.is_zero()) return 0;
      return m.coef.degree();
    case K::Product: {
      int d = 0;
      for (const auto& p : m.parts) d += dimension(p);
      return d;
    }
  }
  return 0;
}

inline std::string to_string(const ManifoldExpr& m) {
  using K = ManifoldExpr::Kind;
  switch (m.kind) {
    case K::Proj: return "P(" + std::to_string(m.n) + ")";
    case K::Sphere: return "S(" + std::to_string(m.n) + ")";
    case K::GammaOf: return "gamma(" + to_string(m.parts.at(0)) + ")";
    case K::Trivial: return "triv(" + gf2::to_string(m.coef) + ")";
    case K::Product: {
      std::string s;
      for (const auto& p : m.parts) s += (s.empty() ? "" : "*") + to_string(p);
      return s;
    }
  }
  return {};
}

inline BundleAlgElem phi(const ManifoldExpr& m);

/// Bordism class of the underlying manifold, forgetting the involution.
inline CoefElem underlying(const ManifoldExpr& m) {
  using K = ManifoldExpr::Kind;
  switch (m.kind) {
    case K::Proj: return rho(m.n);
    case K::GammaOf: {
      // mapping torus of the involution; bordant to the union of P(nu + R) over
      // the fixed components of gamma(M)
      const auto& inner = m.parts.at(0);
      return fixed_point_underlying(beta(1) * (underlying(inner) + phi(inner)));
    }
    case K::Sphere: return poly_zero();
    case K::Trivial: return m.coef;
    case K::Product: {
      CoefElem c = poly_one();
      for (const auto& p : m.parts) c *= underlying(p);
      return c;
    }
  }
  return poly_zero();
}

/// Fixed-set class: each component F with normal bundle nu contributes [F, nu].
inline BundleAlgElem phi(const ManifoldExpr& m) {
  using K = ManifoldExpr::Kind;
  switch (m.kind) {
    case K::Proj: return beta(m.n) + beta(1).pow(m.n);
    case K::GammaOf: {
      const auto& inner = m.parts.at(0);
      return beta(1) * (underlying(inner) + phi(inner));
    }
    case K::Sphere: return poly_zero();
    case K::Trivial: return m.coef;
    case K::Product: {
      BundleAlgElem c = poly_one();
      for (const auto& p : m.parts) c *= phi(p);
      return c;
    }
  }
  return poly_zero();
}

/// Pontryagin-Thom class in the presentation.
inline Presentation pt_class(const ManifoldExpr& m, NormalFormEngine& engine) {
  using K = ManifoldExpr::Kind;
  switch (m.kind) {
    case K::Proj: return m.n == 1 ? Presentation{} : Presentation::x(m.n);
    case K::GammaOf: return engine.gamma(pt_class(m.parts.at(0), engine));
    case K::Sphere: return {};
    case K::Trivial: return iota(m.coef);
    case K::Product: {
      Presentation c = Presentation::one();
      for (const auto& p : m.parts) c = c * pt_class(p, engine);
      return c;
    }
  }
  return {};
}

inline Presentation pt_class(const ManifoldExpr& m) {
  NormalFormEngine engine;
  return pt_class(m, engine);
}

/// beta_i -> c_{i-1} e^-1, identity on N_*.
inline LaurentElem dictionary(const BundleAlgElem& x) {
  if (!is_bundle_elem(x)) throw ContractViolation("dictionary: not an element of the bundle algebra");
  const auto& t = *alphabet();
  return gf2::evaluate(x, alphabet(), [&](gf2::VarId v) {
    const auto& name = t.name(v);
    if (name[0] == 'b') return stable_class(std::stoi(name.substr(1)) - 1) * euler_power(-1);
    return poly_var(v);
  });
}

/// Free classes bound equivariantly, so eta vanishes identically.
inline Presentation eta(const FreeBZ2Elem&) { return {}; }

/// Projectivization of the sum of the lines of a beta-monomial, over the
/// product of the projective spaces carrying them.
inline SpaceDesc sphere_bundle_space(const gf2::Monomial& beta_part) {
  const auto& t = *alphabet();
  std::vector<int> idx;
  for (auto [v, e] : beta_part.factors()) {
    if (t.name(v)[0] != 'b') throw ContractViolation("sphere_bundle_space: non-beta factor");
    for (int k = 0; k < e; ++k) idx.push_back(std::stoi(t.name(v).substr(1)));
  }
  if (idx.empty()) throw ContractViolation("sphere_bundle_space: rank-0 bundle");
  std::vector<SpaceDesc> base;
  std::vector<std::string> lines;
  for (std::size_t s = 0; s < idx.size(); ++s) {
    base.push_back(SpaceDesc::rp(idx[s] - 1));
    lines.push_back(idx[s] == 1 ? "0" : "u_" + std::to_string(s + 1));
  }
  return SpaceDesc::proj_bundle(SpaceDesc::product(std::move(base)), std::move(lines)).with_reference("t");
}

/// Sphere-bundle boundary: N_*-linear, beta-monomial -> [S(E)/(+-1), tautological].
inline FreeBZ2Elem delta(const BundleAlgElem& x, int max_degree = 16) {
  if (!is_bundle_elem(x)) throw ContractViolation("delta: not an element of the bundle algebra");
  const auto& t = *alphabet();
  FreeBZ2Elem out;
  for (const auto& m : x.terms()) {
    if (m.degree(t) > max_degree)
      throw CapacityError("delta: degree " + std::to_string(m.degree(t)) + " exceeds max_degree " +
                          std::to_string(max_degree));
    std::vector<gf2::Monomial::Factor> coef, bundle;
    for (auto f : m.factors()) (t.name(f.first)[0] == 'b' ? bundle : coef).push_back(f);
    if (bundle.empty()) continue;
    const CoefElem c = gf2::GradedPoly::monomial(alphabet(), gf2::Monomial(std::move(coef)));
    FreeBZ2Elem part = identify_in_NBO1(sphere_bundle_space(gf2::Monomial(std::move(bundle))));
    for (auto& [j, f] : part) f *= c;
    add_to(out, part);
  }
  return out;
}

/// Catalog expression whose class is the given e-free basis monomial.
inline ManifoldExpr catalog_expr(const FormalMonomial& b) {
  if (b.epow() != 0) throw ContractViolation("catalog_expr: e-divisible monomials are not geometric generators");
  std::vector<ManifoldExpr> f;
  if (!b.coef().is_one()) f.push_back(ManifoldExpr::trivial(gf2::GradedPoly::monomial(alphabet(), b.coef())));
  for (const auto& g : b.gammas()) {
    ManifoldExpr m = ManifoldExpr::proj(g.n);
    for (int i = 0; i < g.i; ++i) m = ManifoldExpr::gamma_of(std::move(m));
    f.push_back(std::move(m));
  }
  if (f.empty()) return ManifoldExpr::trivial(poly_one());
  if (f.size() == 1) return f.front();
  return ManifoldExpr::product(std::move(f));
}

/// All monomials of degree d in the a_d and beta_i.
inline std::vector<BundleAlgElem> bundle_monomials(int d) {
  std::vector<BundleAlgElem> out;
  const CoefRing& ring = detail::full_coefficients();
  for (int s = 0; s <= d; ++s)
    for (const auto& c : ring.monomials_of_degree(d - s))
      detail::for_each_partition(s, 1, [&](const std::vector<int>& parts) {
        BundleAlgElem m = c;
        for (int i : parts) m *= beta(i);
        out.push_back(std::move(m));
      });
  return out;
}

/// Basis f * s_j of degree d in N_*(BZ/2).
inline std::vector<FreeBZ2Elem> free_basis(int d) {
  std::vector<FreeBZ2Elem> out;
  const CoefRing& ring = detail::full_coefficients();
  for (int j = 0; j <= d; ++j)
    for (const auto& c : ring.monomials_of_degree(d - j)) out.push_back({{j, c}});
  return out;
}

}  // namespace bordcalc

#endif  // BORDCALC_CONNER_FLOYD_HPP
