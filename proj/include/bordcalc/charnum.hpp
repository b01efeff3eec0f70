#ifndef BORDCALC_CHARNUM_HPP
#define BORDCALC_CHARNUM_HPP

// Mod-2 cohomology and Stiefel-Whitney numbers for a small catalog of closed
// manifolds, and identification of (manifold, line bundle) pairs in N_*(BO(1)).

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bordcalc/coefficients.hpp"
#include "bordcalc/errors.hpp"
#include "bordcalc/gf2poly.hpp"

namespace bordcalc {

struct SpaceDesc {
  enum class Kind { RP, Dold, Product, ProjBundle, Empty };
  Kind kind = Kind::Empty;
  int m = 0;  // RP: n; Dold: sphere dimension m; Empty: dimension
  int n = 0;  // Dold: complex projective dimension
  std::vector<SpaceDesc> parts;    // Product factors, or {base} for ProjBundle
  std::vector<std::string> lines;  // ProjBundle: degree-1 classes of the base, e.g. "u", "0", "u_1 + u_2"
  std::optional<std::string> reference;  // degree-1 class classifying a map to BO(1)

  static SpaceDesc rp(int n) { return {Kind::RP, n, 0, {}, {}, {}}; }
  static SpaceDesc dold(int m, int n) { return {Kind::Dold, m, n, {}, {}, {}}; }
  static SpaceDesc product(std::vector<SpaceDesc> f) { return {Kind::Product, 0, 0, std::move(f), {}, {}}; }
  static SpaceDesc proj_bundle(SpaceDesc base, std::vector<std::string> lines) {
    return {Kind::ProjBundle, 0, 0, {std::move(base)}, std::move(lines), {}};
  }
  static SpaceDesc empty(int dim) { return {Kind::Empty, dim, 0, {}, {}, {}}; }

  SpaceDesc with_reference(std::string r) const {
    SpaceDesc s = *this;
    s.reference = std::move(r);
    return s;
  }

  int dimension() const {
    switch (kind) {
      case Kind::RP: return m;
      case Kind::Dold: return m + 2 * n;
      case Kind::Empty: return m;
      case Kind::Product: {
        int d = 0;
        for (const auto& p : parts) d += p.dimension();
        return d;
      }
      case Kind::ProjBundle: return parts.at(0).dimension() + static_cast<int>(lines.size()) - 1;
    }
    return 0;
  }
};

inline std::string to_string(const SpaceDesc& s) {
  std::string out;
  switch (s.kind) {
    case SpaceDesc::Kind::RP: out = "RP(" + std::to_string(s.m) + ")"; break;
    case SpaceDesc::Kind::Dold: out = "Dold(" + std::to_string(s.m) + "," + std::to_string(s.n) + ")"; break;
    case SpaceDesc::Kind::Empty: out = "Empty(" + std::to_string(s.m) + ")"; break;
    case SpaceDesc::Kind::Product:
      for (std::size_t i = 0; i < s.parts.size(); ++i) {
        if (i) out += "*";
        SpaceDesc p = s.parts[i];
        p.reference.reset();
        out += to_string(p);
      }
      break;
    case SpaceDesc::Kind::ProjBundle: {
      SpaceDesc b = s.parts.at(0);
      b.reference.reset();
      out = "PB(" + to_string(b) + ";";
      for (std::size_t i = 0; i < s.lines.size(); ++i) out += (i ? ", " : " ") + s.lines[i];
      out += ")";
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Truncated polynomial cohomology rings.

using Exps = std::vector<int>;

/// GF(2)-set of monomials, each an exponent vector over the ring's generators.
class Cohom {
 public:
  Cohom() = default;
  explicit Cohom(Exps m) { terms_.insert(std::move(m)); }

  const std::set<Exps>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void toggle(const Exps& m) {
    auto [it, inserted] = terms_.insert(m);
    if (!inserted) terms_.erase(it);
  }

  Cohom& operator+=(const Cohom& o) {
    for (const auto& m : o.terms_) toggle(m);
    return *this;
  }
  friend Cohom operator+(Cohom a, const Cohom& b) { return a += b; }
  friend bool operator==(const Cohom&, const Cohom&) = default;

 private:
  std::set<Exps> terms_;
};

class CohomRing {
 public:
  struct Gen {
    std::string name;
    int degree = 1;
    int truncation = -1;        // x^{truncation+1} = 0; -1 for a bundle generator
    std::vector<Cohom> esym;    // bundle generator: t^r = sum_i esym[i-1] t^{r-i}
  };

  const std::vector<Gen>& gens() const { return gens_; }
  std::size_t size() const { return gens_.size(); }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].name == name) return i;
    return std::nullopt;
  }

  bool has_name(const std::string& name) const { return find(name).has_value(); }

  std::size_t add_gen(Gen g) {
    for (auto& e : g.esym) e = pad(e);
    gens_.push_back(std::move(g));
    return gens_.size() - 1;
  }

  /// Extend exponent vectors of `x` with zeros for generators added since.
  Cohom pad(const Cohom& x) const {
    Cohom out;
    for (auto m : x.terms()) {
      m.resize(gens_.size(), 0);
      out.toggle(m);
    }
    return out;
  }

  Cohom one() const { return Cohom(Exps(gens_.size(), 0)); }
  Cohom gen(std::size_t i) const {
    Exps m(gens_.size(), 0);
    m.at(i) = 1;
    return Cohom(std::move(m));
  }

  int degree(const Exps& m) const {
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * gens_[i].degree;
    return d;
  }

  Cohom mul(const Cohom& a, const Cohom& b) const {
    Cohom out;
    for (const auto& x : a.terms())
      for (const auto& y : b.terms()) {
        Exps m(gens_.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = at(x, i) + at(y, i);
        out.toggle(m);
      }
    return reduce(out);
  }

  Cohom pow(const Cohom& a, int k) const {
    Cohom r = one();
    for (int i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  /// Reduce by the projective-bundle relations (outermost generator first),
  /// dropping monomials past a truncation.
  Cohom reduce(const Cohom& x) const {
    Cohom out;
    std::deque<Exps> work(x.terms().begin(), x.terms().end());
    while (!work.empty()) {
      Exps m = std::move(work.front());
      work.pop_front();
      m.resize(gens_.size(), 0);
      std::optional<std::size_t> bad;
      for (std::size_t i = gens_.size(); i-- > 0;) {
        const auto& g = gens_[i];
        const int limit = g.truncation >= 0 ? g.truncation : static_cast<int>(g.esym.size()) - 1;
        if (m[i] > limit) {
          bad = i;
          break;
        }
      }
      if (!bad) {
        out.toggle(m);
        continue;
      }
      const auto& g = gens_[*bad];
      if (g.truncation >= 0) continue;
      const int r = static_cast<int>(g.esym.size());
      for (int i = 1; i <= r; ++i)
        for (const auto& c : g.esym[i - 1].terms()) {
          Exps next = m;
          next[*bad] -= i;
          for (std::size_t v = 0; v < c.size(); ++v) next[v] += c[v];
          work.push_back(std::move(next));
        }
    }
    return out;
  }

  /// GF(2)-dimension of the ring (product of the local ranks).
  std::size_t dimension() const {
    std::size_t d = 1;
    for (const auto& g : gens_) d *= g.truncation >= 0 ? static_cast<std::size_t>(g.truncation + 1) : g.esym.size();
    return d;
  }

 private:
  static int at(const Exps& m, std::size_t i) { return i < m.size() ? m[i] : 0; }

  std::vector<Gen> gens_;
};

/// A catalog space realized as a ring with its tangent Stiefel-Whitney class.
struct SpaceModel {
  CohomRing ring;
  Cohom w;      // total SW class of the tangent bundle
  Exps top;     // monomial dual to the fundamental class
  int dim = 0;
  bool empty = false;
};

namespace detail {

inline std::string fresh_name(const CohomRing& r, const std::string& base) {
  if (!r.has_name(base)) return base;
  for (int k = 2;; ++k)
    if (!r.has_name(base + std::to_string(k))) return base + std::to_string(k);
}

}  // namespace detail

/// Parse a degree-1 class written as "0" or a '+'-separated list of generator names.
inline Cohom parse_degree_one(const CohomRing& ring, const std::string& text) {
  Cohom out;
  std::size_t pos = 0;
  bool any = false;
  while (pos <= text.size()) {
    std::size_t next = text.find('+', pos);
    if (next == std::string::npos) next = text.size();
    std::string tok = text.substr(pos, next - pos);
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok.empty()) throw ParseError(pos, {"generator name", "0"}, "empty summand in degree-1 class '" + text + "'");
    if (tok != "0") {
      auto g = ring.find(tok);
      if (!g) throw ParseError(pos, {"generator name"}, "unknown cohomology generator '" + tok + "'");
      if (ring.gens()[*g].degree != 1)
        throw ContractViolation("class '" + tok + "' does not have cohomological degree 1");
      out += ring.gen(*g);
    }
    any = true;
    pos = next + 1;
  }
  if (!any) throw ParseError(0, {"generator name", "0"}, "empty degree-1 class");
  return ring.reduce(out);
}

inline SpaceModel build_model(const SpaceDesc& s) {
  SpaceModel out;
  out.dim = s.dimension();
  using K = SpaceDesc::Kind;
  switch (s.kind) {
    case K::Empty:
      if (s.m < 0) throw ContractViolation("Empty: negative dimension");
      out.empty = true;
      out.w = out.ring.one();
      out.top = {};
      return out;
    case K::RP: {
      if (s.m < 0) throw ContractViolation("RP(n) needs n >= 0");
      auto u = out.ring.add_gen({"u", 1, s.m, {}});
      out.w = out.ring.pow(out.ring.one() + out.ring.gen(u), s.m + 1);
      out.top = {s.m};
      return out;
    }
    case K::Dold: {
      if (s.m < 0 || s.n < 0) throw ContractViolation("Dold(m,n) needs m, n >= 0");
      auto c = out.ring.add_gen({"c", 1, s.m, {}});
      auto d = out.ring.add_gen({"d", 2, s.n, {}});
      const auto& R = out.ring;
      out.w = R.mul(R.pow(R.one() + R.gen(c), s.m), R.pow(R.one() + R.gen(c) + R.gen(d), s.n + 1));
      out.top = {s.m, s.n};
      return out;
    }
    case K::Product: {
      if (s.parts.empty()) throw ContractViolation("Product of no factors");
      std::vector<SpaceModel> f;
      for (const auto& p : s.parts) f.push_back(build_model(p));
      std::vector<std::size_t> offset;
      for (std::size_t k = 0; k < f.size(); ++k) {
        offset.push_back(out.ring.size());
        if (f[k].empty) out.empty = true;
        for (auto g : f[k].ring.gens()) {
          g.name += "_" + std::to_string(k + 1);
          std::vector<Cohom> shifted;
          for (const auto& e : g.esym) {
            Cohom c;
            for (const auto& m : e.terms()) {
              Exps x(offset[k], 0);
              x.insert(x.end(), m.begin(), m.end());
              c.toggle(x);
            }
            shifted.push_back(c);
          }
          g.esym = std::move(shifted);
          out.ring.add_gen(std::move(g));
        }
      }
      auto embed = [&](std::size_t k, const Cohom& x) {
        Cohom c;
        for (const auto& m : x.terms()) {
          Exps e(out.ring.size(), 0);
          std::copy(m.begin(), m.end(), e.begin() + static_cast<std::ptrdiff_t>(offset[k]));
          c.toggle(e);
        }
        return c;
      };
      out.w = out.ring.one();
      out.top.assign(out.ring.size(), 0);
      for (std::size_t k = 0; k < f.size(); ++k) {
        out.w = out.ring.mul(out.w, embed(k, f[k].w));
        std::copy(f[k].top.begin(), f[k].top.end(), out.top.begin() + static_cast<std::ptrdiff_t>(offset[k]));
      }
      return out;
    }
    case K::ProjBundle: {
      if (s.lines.empty()) throw ContractViolation("ProjBundle needs at least one line");
      SpaceModel base = build_model(s.parts.at(0));
      out.ring = base.ring;
      out.empty = base.empty;
      std::vector<Cohom> xs;
      for (const auto& l : s.lines) xs.push_back(parse_degree_one(base.ring, l));
      // elementary symmetric functions of the line classes
      std::vector<Cohom> esym(xs.size() + 1);
      esym[0] = base.ring.one();
      for (const auto& x : xs)
        for (std::size_t i = xs.size(); i >= 1; --i) esym[i] += base.ring.mul(esym[i - 1], x);
      CohomRing::Gen t{detail::fresh_name(out.ring, "t"), 1, -1, {}};
      t.esym.assign(esym.begin() + 1, esym.end());
      auto ti = out.ring.add_gen(std::move(t));
      const auto& R = out.ring;
      out.w = R.pad(base.w);
      for (const auto& x : xs) out.w = R.mul(out.w, R.one() + R.gen(ti) + R.pad(x));
      out.top = base.top;
      out.top.push_back(static_cast<int>(xs.size()) - 1);
      return out;
    }
  }
  throw ContractViolation("unknown space kind");
}

/// Evaluate a class of top degree on the fundamental class.
inline bool pair(const SpaceModel& model, const Cohom& x) {
  for (const auto& m : x.terms())
    if (model.ring.degree(m) != model.dim)
      throw ContractViolation("pair: class of degree " + std::to_string(model.ring.degree(m)) +
                              " on a manifold of dimension " + std::to_string(model.dim));
  if (model.empty) return false;
  return model.ring.reduce(x).terms().count(model.top) > 0;
}

inline bool pair(const Cohom& x, const SpaceDesc& s) { return pair(build_model(s), x); }

/// Degree-i part of a class.
inline Cohom graded_piece(const SpaceModel& model, const Cohom& x, int i) {
  Cohom out;
  for (const auto& m : x.terms())
    if (model.ring.degree(m) == i) out.toggle(m);
  return out;
}

/// Key of a characteristic number: partition omega (parts descending) and power k.
using SWKey = std::pair<std::vector<int>, int>;
using SWNumbers = std::map<SWKey, bool>;

/// All keys (omega, k) with |omega| + k = d; with_reference = false keeps k = 0.
inline std::vector<SWKey> sw_keys(int d, bool with_reference) {
  std::vector<SWKey> out;
  std::vector<int> parts;
  std::function<void(int, int, int)> rec = [&](int k, int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(parts, k);
      return;
    }
    for (int p = std::min(max_part, remaining); p >= 1; --p) {
      parts.push_back(p);
      rec(k, remaining - p, p);
      parts.pop_back();
    }
  };
  for (int k = 0; k <= (with_reference ? d : 0); ++k) rec(k, d - k, d - k);
  return out;
}

inline SWNumbers sw_numbers(const SpaceDesc& s) {
  SpaceModel model = build_model(s);
  std::optional<Cohom> ref;
  if (s.reference) ref = parse_degree_one(model.ring, *s.reference);
  SWNumbers out;
  std::vector<Cohom> w(static_cast<std::size_t>(model.dim) + 1);
  for (int i = 0; i <= model.dim; ++i) w[static_cast<std::size_t>(i)] = graded_piece(model, model.w, i);
  std::vector<Cohom> tpow{model.ring.one()};
  for (const auto& key : sw_keys(model.dim, ref.has_value())) {
    const auto& [omega, k] = key;
    if (model.empty) {
      out[key] = false;
      continue;
    }
    while (static_cast<int>(tpow.size()) <= k) tpow.push_back(model.ring.mul(tpow.back(), *ref));
    Cohom c = tpow[static_cast<std::size_t>(k)];
    for (int part : omega) c = model.ring.mul(c, w[static_cast<std::size_t>(part)]);
    out[key] = pair(model, c);
  }
  return out;
}

inline std::string key_to_string(const SWKey& key) {
  std::string s;
  for (int p : key.first) s += (s.empty() ? "w" : "*w") + std::to_string(p);
  if (key.second > 0) s += (s.empty() ? "t^" : "*t^") + std::to_string(key.second);
  return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------------------
// N_*(BO(1)) = free N_*-module on the classes s_j = [RP^j, tautological line].

/// Finitely supported j -> coefficient in N_*, meaning sum f_j s_j.
using FreeBZ2Elem = std::map<int, CoefElem>;

inline void add_to(FreeBZ2Elem& acc, const FreeBZ2Elem& x) {
  for (const auto& [j, c] : x) {
    auto [it, fresh] = acc.try_emplace(j, poly_zero());
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

inline std::string to_string(const FreeBZ2Elem& x) {
  if (x.empty()) return "0";
  std::string s;
  for (const auto& [j, c] : x) {
    if (!s.empty()) s += " + ";
    std::string coef = gf2::to_string(c);
    if (c.size() > 1) coef = "(" + coef + ")";
    s += (c.is_one() ? "" : coef + "*") + "s" + std::to_string(j);
  }
  return s;
}

/// Catalog representative of a monomial in the a_d.
inline std::vector<SpaceDesc> representative_factors(const gf2::Monomial& coef) {
  std::vector<SpaceDesc> out;
  const auto& t = *alphabet();
  for (auto [v, e] : coef.factors()) {
    auto r = representative(t.degree(v));
    for (int k = 0; k < e; ++k)
      out.push_back(r.kind == GeneratorRepresentative::Kind::RealProjective ? SpaceDesc::rp(r.m)
                                                                             : SpaceDesc::dold(r.m, r.n));
  }
  return out;
}

/// mu * s_j as a space with reference: product of representatives times RP(j).
inline SpaceDesc basis_space(const gf2::Monomial& coef, int j) {
  auto f = representative_factors(coef);
  f.push_back(SpaceDesc::rp(j));
  const std::size_t k = f.size();
  return SpaceDesc::product(std::move(f)).with_reference("u_" + std::to_string(k));
}

namespace detail {

struct NBO1Table {
  std::vector<SWKey> keys;
  std::vector<std::pair<int, gf2::Monomial>> basis;  // (j, mu)
  std::vector<gf2::Bits> rows;
};

inline gf2::Bits number_bits(const SWNumbers& nums, const std::vector<SWKey>& keys) {
  gf2::Bits b(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto it = nums.find(keys[i]);
    if (it != nums.end() && it->second) b.set(i);
  }
  return b;
}

inline const NBO1Table& nbo1_table(int d) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const NBO1Table>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(d); it != cache.end()) return *it->second;
  }
  auto t = std::make_shared<NBO1Table>();
  t->keys = sw_keys(d, true);
  const CoefRing& ring = [] () -> const CoefRing& {
    static const CoefRing r(kAlphabetCap);
    return r;
  }();
  for (int j = 0; j <= d; ++j)
    for (const auto& mu_poly : ring.monomials_of_degree(d - j)) {
      const auto& m = mu_poly.terms().front();
      t->basis.emplace_back(j, m);
      t->rows.push_back(number_bits(sw_numbers(basis_space(m, j)), t->keys));
    }
  gf2::Eliminator check(t->keys.size());
  for (const auto& r : t->rows)
    if (!check.insert(r))
      throw IntegrityError("characteristic numbers of the degree-" + std::to_string(d) +
                           " basis of N_*(BO(1)) are dependent");
  std::lock_guard lock(mu);
  auto [it, fresh] = cache.emplace(d, std::move(t));
  return *it->second;
}

}  // namespace detail

/// Expansion of [M, L] in the basis mu * s_j, found from characteristic numbers.
inline FreeBZ2Elem identify_in_NBO1(const SpaceDesc& s) {
  const int d = s.dimension();
  if (d < 0) throw ContractViolation("identify_in_NBO1: negative dimension");
  if (d > kAlphabetCap) throw CapacityError("identify_in_NBO1: dimension beyond the alphabet cap");
  if (s.kind != SpaceDesc::Kind::Empty && !s.reference)
    throw ContractViolation("identify_in_NBO1: a reference class is required");
  const auto& table = detail::nbo1_table(d);
  SWNumbers nums = sw_numbers(s);
  gf2::Bits target = detail::number_bits(nums, table.keys);
  gf2::Eliminator el(table.keys.size());
  for (const auto& r : table.rows) el.insert(r);
  auto combo = el.express(target);
  if (!combo) throw IntegrityError("characteristic numbers of " + to_string(s) + " match no class in N_*(BO(1))");
  FreeBZ2Elem out;
  for (std::size_t i = 0; i < table.basis.size(); ++i)
    if ((*combo)[i]) add_to(out, {{table.basis[i].first, gf2::GradedPoly::monomial(alphabet(), table.basis[i].second)}});
  return out;
}

/// [M] in N_*, read off from the characteristic numbers of M alone.
inline CoefElem identify_in_N(const SpaceDesc& s) {
  FreeBZ2Elem x = identify_in_NBO1(s.kind == SpaceDesc::Kind::Empty ? s : s.with_reference("0"));
  if (x.size() > 1 || (x.size() == 1 && x.begin()->first != 0))
    throw IntegrityError("a trivial line bundle identified as " + to_string(x));
  return x.empty() ? poly_zero() : x.begin()->second;
}

/// Underlying manifold of a Z/2-manifold from its fixed-set data: a fixed
/// component F with normal bundle nu contributes [P(nu + R)]. Argument is a
/// polynomial in the b_i (lines over RP^{i-1}) and the a_d.
inline CoefElem fixed_point_underlying(const gf2::GradedPoly& fixed) {
  const auto& t = *alphabet();
  CoefElem out = poly_zero();
  for (const auto& m : fixed.terms()) {
    std::vector<gf2::Monomial::Factor> coef;
    std::vector<int> idx;
    for (auto [v, e] : m.factors()) {
      const auto& name = t.name(v);
      if (name[0] == 'b') {
        for (int k = 0; k < e; ++k) idx.push_back(std::stoi(name.substr(1)));
      } else if (name[0] == 'a' && e > 0) {
        coef.emplace_back(v, e);
      } else {
        throw ContractViolation("fixed_point_underlying: unexpected variable " + name);
      }
    }
    CoefElem c = gf2::GradedPoly::monomial(alphabet(), gf2::Monomial(std::move(coef)));
    if (idx.empty()) {
      out += c;
      continue;
    }
    std::vector<SpaceDesc> base;
    std::vector<std::string> lines;
    for (std::size_t s = 0; s < idx.size(); ++s) {
      base.push_back(SpaceDesc::rp(idx[s] - 1));
      lines.push_back(idx[s] == 1 ? "0" : "u_" + std::to_string(s + 1));
    }
    lines.push_back("0");
    out += c * identify_in_N(SpaceDesc::proj_bundle(SpaceDesc::product(std::move(base)), std::move(lines)));
  }
  return out;
}

}  // namespace bordcalc

#endif  // BORDCALC_CHARNUM_HPP
