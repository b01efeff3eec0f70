#ifndef BORDCALC_COEFFICIENTS_HPP
#define BORDCALC_COEFFICIENTS_HPP

// The unoriented bordism ring N_* as a free graded GF(2) polynomial ring with
// one generator a_d in every degree d >= 2 other than 2^k - 1.

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "bordcalc/errors.hpp"
#include "bordcalc/gf2poly.hpp"

namespace bordcalc {

/// Largest index of any family in the shared alphabet.
inline constexpr int kAlphabetCap = 64;

/// True for d >= 2 with d + 1 not a power of two.
constexpr bool is_generator_degree(int d) { return d >= 2 && ((d + 1) & d) != 0; }

/// The session-wide variable table: a_d, b_i (bundle generators), c_j, X_n, then e.
/// Built once; every module shares it.
inline const gf2::TablePtr& alphabet() {
  static const gf2::TablePtr table = [] {
    std::vector<gf2::VarTable::Entry> v;
    for (int d = 2; d <= kAlphabetCap; ++d)
      if (is_generator_degree(d)) v.push_back({"a" + std::to_string(d), d});
    for (int i = 1; i <= kAlphabetCap; ++i) v.push_back({"b" + std::to_string(i), i});
    for (int j = 1; j <= kAlphabetCap; ++j) v.push_back({"c" + std::to_string(j), j});
    for (int n = 2; n <= kAlphabetCap; ++n) v.push_back({"X" + std::to_string(n), n});
    v.push_back({"e", -1});
    auto inv = static_cast<gf2::VarId>(v.size() - 1);
    return std::make_shared<const gf2::VarTable>(std::move(v), inv);
  }();
  return table;
}

inline gf2::VarId var_id(const std::string& name) { return alphabet()->at(name); }

inline void check_alphabet_index(int index, const char* family) {
  if (index > kAlphabetCap)
    throw CapacityError(std::string("index ") + std::to_string(index) + " of " + family +
                        " exceeds the alphabet cap " + std::to_string(kAlphabetCap));
}

inline gf2::VarId a_var(int d) {
  if (!is_generator_degree(d)) throw ContractViolation("no generator of N_* in degree " + std::to_string(d));
  check_alphabet_index(d, "a");
  return var_id("a" + std::to_string(d));
}
inline gf2::VarId b_var(int i) { check_alphabet_index(i, "b"); return var_id("b" + std::to_string(i)); }
inline gf2::VarId c_var(int j) { check_alphabet_index(j, "c"); return var_id("c" + std::to_string(j)); }
inline gf2::VarId x_var(int n) { check_alphabet_index(n, "X"); return var_id("X" + std::to_string(n)); }
inline gf2::VarId e_var() { return alphabet()->invertible(); }

inline gf2::GradedPoly poly_zero() { return gf2::GradedPoly(alphabet()); }
inline gf2::GradedPoly poly_one() { return gf2::GradedPoly::one(alphabet()); }
inline gf2::GradedPoly poly_var(gf2::VarId v, int exp = 1) {
  return gf2::GradedPoly::monomial(alphabet(), gf2::Monomial::var(v, exp));
}

/// Element of N_*: a polynomial in the a_d only.
using CoefElem = gf2::GradedPoly;

inline bool is_coefficient_monomial(const gf2::Monomial& m) {
  const auto& t = *alphabet();
  return std::all_of(m.factors().begin(), m.factors().end(), [&](const auto& f) {
    return t.name(f.first)[0] == 'a' && f.second > 0;
  });
}

inline bool is_coefficient(const gf2::GradedPoly& p) {
  return std::all_of(p.terms().begin(), p.terms().end(), is_coefficient_monomial);
}

/// Closed manifold representing a generator of N_*.
struct GeneratorRepresentative {
  enum class Kind { RealProjective, Dold };
  Kind kind;
  int m = 0;  // RP^m, or the sphere dimension of P(m, n)
  int n = 0;  // complex projective dimension of P(m, n)

  int dimension() const { return kind == Kind::RealProjective ? m : m + 2 * n; }
};

/// RP^d for even d; the Dold manifold P(2^r - 1, s*2^r) for d = 2^r(2s+1) - 1.
inline GeneratorRepresentative representative(int d) {
  if (!is_generator_degree(d)) throw ContractViolation("no generator of N_* in degree " + std::to_string(d));
  if (d % 2 == 0) return {GeneratorRepresentative::Kind::RealProjective, d, 0};
  int q = d + 1, two_r = 1;
  while (q % 2 == 0) q /= 2, two_r *= 2;
  const int s = (q - 1) / 2;
  return {GeneratorRepresentative::Kind::Dold, two_r - 1, s * two_r};
}

/// [RP^n] in N_*: a_n for even n, 0 for odd n.
inline CoefElem rho(int n) {
  if (n <= 0) throw ContractViolation("rho(n) requires n >= 1, got " + std::to_string(n));
  if (n % 2 == 1) return poly_zero();
  return poly_var(a_var(n));
}

class CoefRing {
 public:
  explicit CoefRing(int max_degree = 16) : CoefRing(max_degree, {}) {}

  /// Restrict the generators to `degrees` (each must be a generator degree).
  CoefRing(int max_degree, std::vector<int> degrees) : max_degree_(max_degree) {
    if (max_degree < 0) throw ContractViolation("CoefRing: negative degree cap");
    if (max_degree > kAlphabetCap) throw CapacityError("CoefRing: degree cap beyond the alphabet");
    if (degrees.empty()) {
      for (int d = 2; d <= max_degree; ++d)
        if (is_generator_degree(d)) degrees.push_back(d);
    }
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
    for (int d : degrees)
      if (!is_generator_degree(d)) throw ContractViolation("not a generator degree: " + std::to_string(d));
    generator_degrees_ = std::move(degrees);
  }

  int max_degree() const { return max_degree_; }
  const std::vector<int>& generator_degrees() const { return generator_degrees_; }

  /// All monomials in the generators of total degree d, larger parts first.
  std::vector<CoefElem> monomials_of_degree(int d) const {
    check(d);
    std::vector<CoefElem> out;
    std::vector<int> parts;
    std::vector<int> desc(generator_degrees_.rbegin(), generator_degrees_.rend());
    std::function<void(int, std::size_t)> rec = [&](int remaining, std::size_t from) {
      if (remaining == 0) {
        std::vector<gf2::Monomial::Factor> f;
        for (int p : parts) f.emplace_back(a_var(p), 1);
        out.push_back(gf2::GradedPoly::monomial(alphabet(), gf2::Monomial(std::move(f))));
        return;
      }
      for (std::size_t i = from; i < desc.size(); ++i) {
        if (desc[i] > remaining) continue;
        parts.push_back(desc[i]);
        rec(remaining - desc[i], i);
        parts.pop_back();
      }
    };
    if (d >= 0) rec(d, 0);
    return out;
  }

  std::size_t rank(int d) const { return monomials_of_degree(d).size(); }

 private:
  void check(int d) const {
    if (d > max_degree_)
      throw CapacityError("degree " + std::to_string(d) + " exceeds coef.max_degree " +
                          std::to_string(max_degree_));
  }

  int max_degree_;
  std::vector<int> generator_degrees_;
};

}  // namespace bordcalc

#endif  // BORDCALC_COEFFICIENTS_HPP
