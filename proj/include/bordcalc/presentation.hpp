#ifndef BORDCALC_PRESENTATION_HPP
#define BORDCALC_PRESENTATION_HPP

// Finite presentation of the homotopical Z/2 bordism ring: GF(2)-combinations
// of formal monomials  a-monomial * prod G(i,n) * e^k  over N_*, where
// G(0,n) = X_n = [P(n tau + sigma)] and G(i,n) = Gamma^i(X_n).

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "bordcalc/charnum.hpp"
#include "bordcalc/coefficients.hpp"
#include "bordcalc/errors.hpp"
#include "bordcalc/gf2poly.hpp"
#include "bordcalc/localized.hpp"

namespace bordcalc {

struct GammaFactor {
  int i = 0;  // number of Gamma applications
  int n = 0;  // index of the projective space

  bool is_x() const { return i == 0; }
  int degree() const { return n + i; }
  friend bool operator==(const GammaFactor&, const GammaFactor&) = default;
};

/// Storage order of factors: Gamma-type (largest i first), then by n.
inline bool factor_before(const GammaFactor& a, const GammaFactor& b) {
  return std::tie(b.i, a.n) < std::tie(a.i, b.n);
}

class FormalMonomial {
 public:
  FormalMonomial() = default;
  FormalMonomial(gf2::Monomial coef, std::vector<GammaFactor> gammas, int epow)
      : coef_(std::move(coef)), gammas_(std::move(gammas)), epow_(epow) {
    if (epow_ < 0) throw ContractViolation("FormalMonomial: negative power of e");
    if (!is_coefficient_monomial(coef_)) throw ContractViolation("FormalMonomial: coefficient is not in N_*");
    for (const auto& g : gammas_)
      if (g.i < 0 || g.n < 1) throw ContractViolation("FormalMonomial: bad factor G(" +
                                                      std::to_string(g.i) + "," + std::to_string(g.n) + ")");
    std::sort(gammas_.begin(), gammas_.end(), factor_before);
  }

  static FormalMonomial x(int n) { return {{}, {{0, n}}, 0}; }
  static FormalMonomial g(int i, int n) { return {{}, {{i, n}}, 0}; }
  static FormalMonomial e(int k) { return {{}, {}, k}; }

  const gf2::Monomial& coef() const { return coef_; }
  const std::vector<GammaFactor>& gammas() const { return gammas_; }
  int epow() const { return epow_; }

  /// X_1 = 0, hence every Gamma^i(X_1) vanishes too.
  bool is_zero() const {
    return std::any_of(gammas_.begin(), gammas_.end(), [](const GammaFactor& g) { return g.n == 1; });
  }

  int degree() const {
    int d = coef_.degree(*alphabet()) - epow_;
    for (const auto& g : gammas_) d += g.degree();
    return d;
  }

  int gamma_type_count() const {
    return static_cast<int>(std::count_if(gammas_.begin(), gammas_.end(),
                                          [](const GammaFactor& g) { return !g.is_x(); }));
  }

  int gamma_weight() const {
    int w = 0;
    for (const auto& g : gammas_) w += g.i;
    return w;
  }

  FormalMonomial with_coef(gf2::Monomial c) const { return {std::move(c), gammas_, epow_}; }
  FormalMonomial with_epow(int k) const { return {coef_, gammas_, k}; }

  /// Copy with the factor at `index` removed.
  FormalMonomial without(std::size_t index) const {
    auto g = gammas_;
    g.erase(g.begin() + static_cast<std::ptrdiff_t>(index));
    return {coef_, std::move(g), epow_};
  }

  FormalMonomial operator*(const FormalMonomial& o) const {
    auto g = gammas_;
    g.insert(g.end(), o.gammas_.begin(), o.gammas_.end());
    return {coef_ * o.coef_, std::move(g), epow_ + o.epow_};
  }

  friend bool operator==(const FormalMonomial&, const FormalMonomial&) = default;
  friend bool operator<(const FormalMonomial& a, const FormalMonomial& b) {
    if (a.epow_ != b.epow_) return a.epow_ > b.epow_;
    if (a.gammas_ != b.gammas_)
      return std::lexicographical_compare(
          a.gammas_.begin(), a.gammas_.end(), b.gammas_.begin(), b.gammas_.end(),
          [](const GammaFactor& x, const GammaFactor& y) { return factor_before(x, y); });
    return a.coef_ < b.coef_;
  }

 private:
  gf2::Monomial coef_;
  std::vector<GammaFactor> gammas_;
  int epow_ = 0;
};

inline std::string to_string(const FormalMonomial& m) {
  std::string s;
  auto add = [&](const std::string& f) {
    if (!s.empty()) s += "*";
    s += f;
  };
  if (!m.coef().is_one()) add(gf2::to_string(*alphabet(), m.coef()));
  const auto& g = m.gammas();
  for (std::size_t a = 0; a < g.size();) {
    std::size_t b = a;
    while (b < g.size() && g[b] == g[a]) ++b;
    std::string f = g[a].is_x() ? "X" + std::to_string(g[a].n)
                                : "G(" + std::to_string(g[a].i) + "," + std::to_string(g[a].n) + ")";
    if (b - a > 1) f += "^" + std::to_string(b - a);
    add(f);
    a = b;
  }
  if (m.epow() == 1) add("e");
  else if (m.epow() > 1) add("e^" + std::to_string(m.epow()));
  return s.empty() ? "1" : s;
}

/// Element of MO^{Z/2}_*, as a GF(2)-set of formal monomials.
class Presentation {
 public:
  Presentation() = default;
  Presentation(FormalMonomial m) { toggle(std::move(m)); }  // NOLINT: implicit by design of the algebra

  static Presentation zero() { return {}; }
  static Presentation one() { return FormalMonomial{}; }
  static Presentation x(int n) { return FormalMonomial::x(n); }
  static Presentation g(int i, int n) { return FormalMonomial::g(i, n); }
  static Presentation e(int k = 1) { return FormalMonomial::e(k); }

  /// Coefficient-only presentation; this is iota on N_*.
  static Presentation coef(const CoefElem& c) {
    if (!is_coefficient(c)) throw ContractViolation("iota: argument is not in N_*");
    Presentation p;
    for (const auto& m : c.terms()) p.toggle(FormalMonomial(m, {}, 0));
    return p;
  }

  const std::set<FormalMonomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void toggle(FormalMonomial m) {
    if (m.is_zero()) return;
    auto [it, inserted] = terms_.insert(std::move(m));
    if (!inserted) terms_.erase(it);
  }

  bool homogeneous() const {
    if (terms_.empty()) return true;
    int d = terms_.begin()->degree();
    return std::all_of(terms_.begin(), terms_.end(), [&](const FormalMonomial& m) { return m.degree() == d; });
  }

  int degree() const {
    if (terms_.empty()) throw ContractViolation("degree of the zero presentation");
    if (!homogeneous()) throw ContractViolation("degree of an inhomogeneous presentation");
    return terms_.begin()->degree();
  }

  Presentation& operator+=(const Presentation& o) {
    for (const auto& m : o.terms_) toggle(m);
    return *this;
  }
  friend Presentation operator+(Presentation a, const Presentation& b) { return a += b; }

  friend Presentation operator*(const Presentation& a, const Presentation& b) {
    Presentation r;
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) r.toggle(x * y);
    return r;
  }

  Presentation times(const CoefElem& c) const { return *this * coef(c); }

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::set<FormalMonomial> terms_;
};

inline std::string to_string(const Presentation& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& m : p.terms()) {
    if (!s.empty()) s += " + ";
    s += to_string(m);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Ring maps.

/// Fixed-set data of Gamma^i(P(n tau + sigma)) as a polynomial in the b_i,
/// together with the class of its underlying manifold.
struct TowerStage {
  gf2::GradedPoly fixed;
  CoefElem underlying;
};

/// Stages 0..i of the Gamma tower over P(n tau + sigma). A fixed component of
/// gamma(M) is either a copy of M's underlying manifold with trivial normal
/// line, or a fixed component of M with one more trivial normal line; the
/// underlying class of gamma(M) follows from [M] = sum over F of [P(nu_F + R)].
inline std::vector<TowerStage> gamma_tower(int i, int n) {
  if (i < 0 || n < 1) throw ContractViolation("gamma_tower: needs i >= 0 and n >= 1");
  static std::mutex mu;
  static std::map<int, std::vector<TowerStage>> cache;
  std::vector<TowerStage> stages;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) stages = it->second;
  }
  if (stages.empty()) {
    const auto b1 = poly_var(b_var(1));
    stages.push_back({poly_var(b_var(n)) + b1.pow(n), rho(n)});
  }
  const std::size_t known = stages.size();
  while (static_cast<int>(stages.size()) <= i) {
    const auto& prev = stages.back();
    auto fixed = poly_var(b_var(1)) * (prev.underlying + prev.fixed);
    auto under = fixed_point_underlying(fixed);
    stages.push_back({std::move(fixed), std::move(under)});
  }
  if (stages.size() > known) {
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (slot.size() < stages.size()) slot = stages;
  }
  stages.resize(static_cast<std::size_t>(i) + 1);
  return stages;
}

/// alpha(G(i,n)): the underlying class of the i-fold Gamma tower over P(n tau + sigma).
inline CoefElem alpha(const GammaFactor& g) {
  if (g.n == 1) return poly_zero();
  if (g.i == 0) return rho(g.n);
  return gamma_tower(g.i, g.n).back().underlying;
}

/// Augmentation: identity on N_*, e -> 0, X_n -> rho(n), G(i,n) -> its underlying class.
inline CoefElem alpha(const FormalMonomial& m) {
  if (m.epow() > 0) return poly_zero();
  CoefElem out = gf2::GradedPoly::monomial(alphabet(), m.coef());
  for (const auto& g : m.gammas()) {
    out *= alpha(g);
    if (out.is_zero()) break;
  }
  return out;
}

inline CoefElem alpha(const Presentation& x) {
  CoefElem out = poly_zero();
  for (const auto& m : x.terms()) out += alpha(m);
  return out;
}

inline Presentation iota(const CoefElem& c) { return Presentation::coef(c); }

/// x-bar = iota(alpha(x)).
inline Presentation bar(const Presentation& x) { return iota(alpha(x)); }

/// Image of G(i,n) = e^-1 (G(i-1,n) + alpha(G(i-1,n))), starting from loc_P(n):
/// e^-i loc_P(n) + sum over t < i of alpha(G(t,n)) e^(t-i).
inline LaurentElem localize(const GammaFactor& g) {
  LaurentElem out = loc_P(g.n) * euler_power(-g.i);
  for (int t = 0; t < g.i; ++t) out += alpha(GammaFactor{t, g.n}) * euler_power(t - g.i);
  return out;
}

inline LaurentElem localize(const FormalMonomial& m) {
  LaurentElem out = gf2::GradedPoly::monomial(alphabet(), m.coef().with_exponent(e_var(), m.epow()));
  for (const auto& g : m.gammas()) {
    out *= localize(g);
    if (out.is_zero()) break;
  }
  return out;
}

inline LaurentElem localize(const Presentation& x) {
  LaurentElem out = poly_zero();
  for (const auto& m : x.terms()) out += localize(m);
  return out;
}

/// Euler class of m tau + k sigma.
inline Presentation euler(int m, int k) {
  if (m < 0 || k < 0) throw ContractViolation("euler: multiplicities must be nonnegative");
  if (m >= 1) return {};
  return Presentation::e(k);
}

// ---------------------------------------------------------------------------
// Basis shapes and rewriting statistics.

enum class BasisType { A, B, None };

/// Type A: no Gamma-type factor. Type B: one G(i,j) with i >= 1, no e, every
/// X_m with m >= j.
inline BasisType basis_type(const FormalMonomial& m) {
  if (m.is_zero()) return BasisType::None;
  const int k = m.gamma_type_count();
  if (k == 0) return BasisType::A;
  if (k > 1 || m.epow() > 0) return BasisType::None;
  const GammaFactor& g = m.gammas().front();  // Gamma-type factors sort first
  for (const auto& f : m.gammas())
    if (f.is_x() && f.n < g.n) return BasisType::None;
  return BasisType::B;
}

inline bool is_basis_monomial(const FormalMonomial& m) { return basis_type(m) != BasisType::None; }

/// The strict reading of the basis ordering: X_m with m > j in type B.
inline bool is_strict_basis_monomial(const FormalMonomial& m) {
  auto t = basis_type(m);
  if (t != BasisType::B) return t == BasisType::A;
  const GammaFactor& g = m.gammas().front();
  for (const auto& f : m.gammas())
    if (f.is_x() && f.n <= g.n) return false;
  return true;
}

/// Well-founded rewriting measure, compared lexicographically:
/// (Gamma-type factor count, total Gamma weight, ordering violations).
struct RewriteMeasure {
  int gamma_factors = 0;
  int gamma_weight = 0;
  int violations = 0;
  auto operator<=>(const RewriteMeasure&) const = default;
};

inline RewriteMeasure rewrite_measure(const FormalMonomial& m) {
  RewriteMeasure r{m.gamma_type_count(), m.gamma_weight(), 0};
  for (const auto& g : m.gammas())
    if (!g.is_x())
      for (const auto& f : m.gammas())
        if (f.is_x() && f.n < g.n) ++r.violations;
  return r;
}

/// Diagnostic only: the e/Gamma occurrence count when both appear, plus the
/// Gamma weight carried by factors whose index is not minimal.
inline int complication(const FormalMonomial& m) {
  int c = 0;
  if (m.epow() > 0 && m.gamma_weight() > 0) c += m.epow() + m.gamma_weight();
  if (m.gammas().empty()) return c;
  int min_n = m.gammas().front().n;
  for (const auto& g : m.gammas()) min_n = std::min(min_n, g.n);
  for (const auto& g : m.gammas())
    if (g.n != min_n) c += g.i;
  return c;
}

// ---------------------------------------------------------------------------
// Normal forms.

struct RewriteOptions {
  std::size_t fuel = 1'000'000;  // rewrite steps per top-level call
  bool memoize = true;
};

/// Rewrites presentations to the additive basis. Holds a memo table, so an
/// engine must not be shared between threads; give each worker its own.
class NormalFormEngine {
 public:
  explicit NormalFormEngine(RewriteOptions options = {}) : options_(options) {}

  const RewriteOptions& options() const { return options_; }
  std::size_t steps_used() const { return steps_; }

  Presentation normal_form(const Presentation& x) {
    Scope scope(*this);
    Presentation out;
    for (const auto& m : x.terms()) out += normal_form_of(m);
    return out;
  }

  /// Gamma(x), the unique class with e * Gamma(x) = x + x-bar.
  Presentation gamma(const Presentation& x) {
    Scope scope(*this);
    Presentation nf;
    for (const auto& m : x.terms()) nf += normal_form_of(m);
    return gamma_of_normal(nf);
  }

  /// One application of W1, W2 or W3 to `m`; nullopt when `m` is already a
  /// basis monomial. Inner products in W2/W3 are normalized recursively.
  std::optional<Presentation> rewrite_step(const FormalMonomial& m) {
    Scope scope(*this);
    return step(m);
  }

 private:
  struct Scope {
    explicit Scope(NormalFormEngine& e) : eng(e) {
      if (eng.depth_++ == 0) eng.steps_ = 0;
    }
    ~Scope() { --eng.depth_; }
    NormalFormEngine& eng;
  };

  static Presentation with_coef(const Presentation& p, const gf2::Monomial& c) {
    if (c.is_one()) return p;
    Presentation out;
    for (const auto& m : p.terms()) out.toggle(m.with_coef(m.coef() * c));
    return out;
  }

  Presentation normal_form_of(const FormalMonomial& m) {
    if (m.is_zero()) return {};
    if (!m.coef().is_one()) return with_coef(normal_form_of(m.with_coef({})), m.coef());
    if (options_.memoize) {
      auto it = memo_.find(m);
      if (it != memo_.end()) return it->second;
    }
    Presentation out;
    if (auto next = step(m)) {
      for (const auto& t : next->terms()) out += normal_form_of(t);
    } else {
      out = m;
    }
    if (options_.memoize) memo_.emplace(m, out);
    return out;
  }

  std::optional<Presentation> step(const FormalMonomial& m) {
    if (m.is_zero()) return Presentation{};
    const auto& g = m.gammas();
    const int gamma_count = m.gamma_type_count();
    if (gamma_count == 0) return std::nullopt;  // type A

    if (m.epow() > 0) {
      // W1: e * G(i,n) -> G(i-1,n) + alpha-bar(G(i-1,n))
      spend(m);
      const GammaFactor f = g.front();
      const FormalMonomial rest = m.without(0).with_epow(m.epow() - 1);
      Presentation out = rest * FormalMonomial::g(f.i - 1, f.n);
      out += Presentation(rest).times(alpha(GammaFactor{f.i - 1, f.n}));
      return out;
    }

    if (gamma_count >= 2) {
      // W2: G(i,m) G(j,n) -> Gamma(G(i-1,m) G(j,n)) + alpha-bar(G(i-1,m)) G(j+1,n),
      // decrementing the factor of smallest weight.
      spend(m);
      std::size_t lo = 0;
      for (std::size_t k = 0; k < static_cast<std::size_t>(gamma_count); ++k)
        if (std::tie(g[k].i, g[k].n) < std::tie(g[lo].i, g[lo].n)) lo = k;
      std::size_t other = lo == 0 ? 1 : 0;
      for (std::size_t k = 0; k < static_cast<std::size_t>(gamma_count); ++k)
        if (k != lo && std::tie(g[k].i, g[k].n) < std::tie(g[other].i, g[other].n)) other = k;
      const GammaFactor x = g[lo], y = g[other];
      FormalMonomial rest = m.without(std::max(lo, other)).without(std::min(lo, other));
      Presentation inner = normal_form_of(FormalMonomial({}, {{x.i - 1, x.n}, y}, 0));
      Presentation out = Presentation(rest) * gamma_of_normal(inner);
      out += (Presentation(rest) * FormalMonomial::g(y.i + 1, y.n)).times(alpha(GammaFactor{x.i - 1, x.n}));
      return out;
    }

    // exactly one Gamma-type factor, e-free
    const GammaFactor f = g.front();
    std::optional<std::size_t> low;
    for (std::size_t k = 1; k < g.size(); ++k)
      if (g[k].n < f.n && (!low || g[k].n < g[*low].n)) low = k;
    if (!low) return std::nullopt;  // type B

    // W3: G(j,n) X_m with m < n -> Gamma(G(j-1,n) X_m) + alpha-bar(G(j-1,n)) G(1,m),
    // descending in j down to Gamma(X_m X_n) split smallest-index-first.
    spend(m);
    const int mi = g[*low].n;
    FormalMonomial rest = m.without(*low).without(0);
    Presentation term;
    if (f.i == 1) term = gamma_of_basis(FormalMonomial({}, {{0, mi}, {0, f.n}}, 0));
    else term = gamma_of_normal(normal_form_of(FormalMonomial({}, {{f.i - 1, f.n}, {0, mi}}, 0)));
    term += Presentation::g(1, mi).times(alpha(GammaFactor{f.i - 1, f.n}));
    return Presentation(rest) * term;
  }

  Presentation gamma_of_normal(const Presentation& nf) {
    Presentation out;
    for (const auto& b : nf.terms()) out += gamma_of_basis(b);
    return out;
  }

  /// Gamma on one basis monomial via the canonical split: the Gamma-type factor
  /// when present, otherwise the X-factor of smallest index.
  Presentation gamma_of_basis(const FormalMonomial& b) {
    if (b.epow() > 0) return b.with_epow(b.epow() - 1);  // alpha(e^k f) = 0
    const auto& g = b.gammas();
    if (b.gamma_type_count() == 1) {
      // Gamma(G f) = G(i+1,j) f + alpha-bar(G) Gamma(f)
      auto raised = g;
      raised.front().i += 1;
      Presentation out = FormalMonomial(b.coef(), std::move(raised), 0);
      const CoefElem a = alpha(g.front());
      if (!a.is_zero()) out += gamma_of_basis(FormalMonomial(b.coef(), b.without(0).gammas(), 0)).times(a);
      return out;
    }
    if (g.empty()) return {};  // Gamma vanishes on N_*
    const GammaFactor smallest = g.front();  // all X, sorted by n
    const FormalMonomial rest = b.without(0);
    Presentation out = Presentation(rest) * FormalMonomial::g(1, smallest.n);
    if (!rho(smallest.n).is_zero()) out += gamma_of_basis(rest).times(rho(smallest.n));
    return out;
  }

  void spend(const FormalMonomial& m) {
    if (++steps_ > options_.fuel) throw FuelExhausted(to_string(m), options_.fuel);
  }

  RewriteOptions options_;
  std::size_t steps_ = 0;
  int depth_ = 0;
  std::map<FormalMonomial, Presentation> memo_;
};

inline Presentation normal_form(const Presentation& x, RewriteOptions opt = {}) {
  return NormalFormEngine(opt).normal_form(x);
}

inline Presentation gamma(const Presentation& x, RewriteOptions opt = {}) {
  return NormalFormEngine(opt).gamma(x);
}

class NotDivisible : public std::runtime_error {
 public:
  explicit NotDivisible(CoefElem a)
      : std::runtime_error("not divisible by e: alpha = " + gf2::to_string(a)), alpha(std::move(a)) {}
  CoefElem alpha;
};

/// The unique y with e*y = x; requires alpha(x) = 0.
inline Presentation divide_e(const Presentation& x, NormalFormEngine& engine) {
  CoefElem a = alpha(x);
  if (!a.is_zero()) throw NotDivisible(a);
  return engine.gamma(x);
}

inline Presentation divide_e(const Presentation& x) {
  NormalFormEngine engine;
  return divide_e(x, engine);
}

inline bool is_geometric(const Presentation& x, NormalFormEngine& engine) {
  auto nf = engine.normal_form(x);
  return std::all_of(nf.terms().begin(), nf.terms().end(),
                     [](const FormalMonomial& m) { return m.epow() == 0; });
}

inline bool is_geometric(const Presentation& x) {
  NormalFormEngine engine;
  return is_geometric(x, engine);
}

/// Image in the obstruction quotient: k -> coefficient of x_k, in N_*[X_n].
using QuotientElem = std::map<int, Presentation>;

inline QuotientElem quotient_reduce(const Presentation& x, NormalFormEngine& engine) {
  QuotientElem out;
  const Presentation nf = engine.normal_form(x);
  for (const auto& m : nf.terms()) {
    if (m.epow() == 0) continue;
    out[m.epow()].toggle(m.with_epow(0));
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

inline QuotientElem quotient_reduce(const Presentation& x) {
  NormalFormEngine engine;
  return quotient_reduce(x, engine);
}

inline std::string to_string(const QuotientElem& q) {
  if (q.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : q) {
    if (!s.empty()) s += " + ";
    std::string coef = to_string(c);
    if (c.size() > 1) coef = "(" + coef + ")";
    s += coef + "*x" + std::to_string(k);
  }
  return s;
}

/// GF(2) rank of a family of presentations, by their formal-monomial coordinates.
inline std::size_t presentation_rank(const std::vector<Presentation>& v) {
  std::map<FormalMonomial, std::size_t> index;
  for (const auto& p : v)
    for (const auto& m : p.terms()) index.emplace(m, index.size());
  gf2::Eliminator el(index.size());
  for (const auto& p : v) {
    gf2::Bits b(index.size());
    for (const auto& m : p.terms()) b.set(index.at(m));
    el.insert(std::move(b));
  }
  return el.rank();
}

// ---------------------------------------------------------------------------
// Basis enumeration.

namespace detail {

/// Multisets of integers >= min_part summing to exactly `sum`, parts ascending.
inline void for_each_partition(int sum, int min_part, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int remaining, int lo) {
    if (remaining == 0) {
      f(parts);
      return;
    }
    for (int p = lo; p <= remaining; ++p) {
      parts.push_back(p);
      rec(remaining - p, p);
      parts.pop_back();
    }
  };
  if (sum >= 0) rec(sum, std::max(min_part, 1));
}

inline const CoefRing& full_coefficients() {
  static const CoefRing ring(kAlphabetCap);
  return ring;
}

inline std::vector<GammaFactor> xs(const std::vector<int>& ns) {
  std::vector<GammaFactor> out;
  for (int n : ns) out.push_back({0, n});
  return out;
}

/// Type A monomials e^k * a * prod X with the given k and total degree d.
inline void type_a(const CoefRing& ring, int d, int k, const std::function<void(FormalMonomial)>& emit) {
  const int weight = d + k;  // degree of a * prod X
  if (weight < 0) return;
  for (int s = 0; s <= weight; ++s)
    for (const auto& coef : ring.monomials_of_degree(weight - s))
      for_each_partition(s, 2, [&](const std::vector<int>& ns) {
        emit(FormalMonomial(coef.terms().front(), xs(ns), k));
      });
}

/// Type B monomials a * G(i,j) * prod X_{m >= j} of degree d with fixed i.
inline void type_b(const CoefRing& ring, int d, int i, const std::function<void(FormalMonomial)>& emit) {
  for (int j = 2; i + j <= d; ++j)
    for (int s = 0; i + j + s <= d; ++s)
      for (const auto& coef : ring.monomials_of_degree(d - i - j - s))
        for_each_partition(s, j, [&](const std::vector<int>& ns) {
          auto f = xs(ns);
          f.push_back({i, j});
          emit(FormalMonomial(coef.terms().front(), std::move(f), 0));
        });
}

/// Largest e-exponent in the localization of any type B monomial of degree d;
/// INT_MIN when there are none.
inline int type_b_ceiling(int d) {
  static std::mutex mu;
  static std::map<int, int> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(d); it != cache.end()) return it->second;
  }
  int top = std::numeric_limits<int>::min();
  // the coefficient never touches the e-exponent, so a = 1 suffices
  for (int i = 1; i <= d; ++i)
    for (int j = 2; i + j <= d; ++j)
      for (int s = 0; i + j + s <= d; ++s)
        for_each_partition(s, j, [&](const std::vector<int>& ns) {
          auto f = xs(ns);
          f.push_back({i, j});
          auto img = localize(FormalMonomial(gf2::Monomial{}, std::move(f), 0));
          if (!img.is_zero()) top = std::max(top, img.max_inv_exponent());
        });
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(d, top);
  return top;
}

}  // namespace detail

/// Filtration weight of a basis monomial: -k for e^k f, i for G(i,j) f.
inline int filtration_weight(const FormalMonomial& b) {
  return b.gamma_type_count() == 0 ? -b.epow() : b.gammas().front().i;
}

/// Basis monomials of degree d with filtration weight in [w_min, w_max].
inline std::vector<FormalMonomial> basis_by_weight(int d, int w_min, int w_max,
                                                   const CoefRing& ring = detail::full_coefficients()) {
  std::vector<FormalMonomial> out;
  auto emit = [&](FormalMonomial m) { out.push_back(std::move(m)); };
  for (int k = std::max(0, -w_max); k <= -w_min; ++k) detail::type_a(ring, d, k, emit);
  for (int i = std::max(1, w_min); i <= w_max && i <= d; ++i) detail::type_b(ring, d, i, emit);
  return out;
}

/// Basis monomials of degree d whose localization has every e-exponent <= t_max
/// (all exponents are >= -d automatically).
inline std::vector<FormalMonomial> basis_in_window(int d, int t_max, bool strict = false,
                                                   const CoefRing& ring = detail::full_coefficients()) {
  std::vector<FormalMonomial> out;
  auto keep = [&](FormalMonomial m) {
    if (strict && !is_strict_basis_monomial(m)) return;
    auto img = localize(m);
    if (!img.is_zero() && img.max_inv_exponent() <= t_max) out.push_back(std::move(m));
  };
  // type A: leading exponent is k - #X, and #X <= d + t_max
  if (d + t_max >= 0) {
    const int k_max = 2 * t_max + d;  // k <= t_max + p with p <= d + t_max
    for (int k = 0; k <= k_max; ++k) detail::type_a(ring, d, k, keep);
  }
  // type B: leading exponent is at least -d, and weights are bounded by d
  for (int i = 1; i <= d; ++i) detail::type_b(ring, d, i, keep);
  return out;
}

// ---------------------------------------------------------------------------
// Membership of Laurent elements.

struct MemberResult {
  enum class Status { Member, NotMember, Undecided };
  Status status = Status::Undecided;
  std::optional<Presentation> expansion;
  int slack = 0;  // last slack examined
  std::size_t candidates = 0;

  bool is_member() const { return status == Status::Member; }
};

/// Is the Laurent element the localization of a class? Searches windows
/// [-d, t_max + s] for s = 0..slack_cap. A solution is final. Absence is final
/// once the window reaches the type B ceiling: above it only type A monomials
/// remain, whose leading forms a * prod c_{n-1} * e^T are distinct monomials
/// that no type B leading form contains, so nothing cancels at the top.
inline MemberResult member(const LaurentElem& l, int slack_cap = 4) {
  if (slack_cap < 0) throw ContractViolation("member: negative slack cap");
  if (!is_laurent_elem(l)) throw ContractViolation("member: not an element of L");
  MemberResult r;
  if (l.is_zero()) {
    r.status = MemberResult::Status::Member;
    r.expansion = Presentation{};
    return r;
  }
  if (!l.homogeneous()) throw ContractViolation("member: input must be homogeneous");
  const int d = l.degree();
  const int t0 = l.max_inv_exponent();
  const int decisive = std::max(t0, detail::type_b_ceiling(d));
  for (int s = 0; s <= slack_cap; ++s) {
    const int t_max = t0 + s;
    auto basis = basis_in_window(d, t_max);
    std::vector<LaurentElem> images;
    images.reserve(basis.size());
    for (const auto& b : basis) images.push_back(localize(b));
    auto wb = window_basis(Window::for_degree(d, t_max), std::move(images));
    r.slack = s;
    r.candidates = basis.size();
    if (auto sel = wb.expand(l)) {
      Presentation p;
      for (std::size_t i = 0; i < basis.size(); ++i)
        if ((*sel)[i]) p.toggle(basis[i]);
      r.status = MemberResult::Status::Member;
      r.expansion = std::move(p);
      return r;
    }
    if (t_max >= decisive) {
      r.status = MemberResult::Status::NotMember;
      return r;
    }
  }
  r.status = MemberResult::Status::Undecided;
  return r;
}

}  // namespace bordcalc

#endif  // BORDCALC_PRESENTATION_HPP
