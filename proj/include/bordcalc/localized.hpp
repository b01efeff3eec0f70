#ifndef BORDCALC_LOCALIZED_HPP
#define BORDCALC_LOCALIZED_HPP

// Laurent model L = N_*[c_1, c_2, ...][e, e^-1] of the bordism ring with the
// Euler class inverted. deg e = -1, deg c_j = j, c_0 = 1.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bordcalc/coefficients.hpp"
#include "bordcalc/errors.hpp"
#include "bordcalc/gf2poly.hpp"

namespace bordcalc {

using LaurentElem = gf2::GradedPoly;

/// c_j with the convention c_0 = 1.
inline LaurentElem stable_class(int j) {
  if (j < 0) throw ContractViolation("c_j needs j >= 0");
  return j == 0 ? poly_one() : poly_var(c_var(j));
}

/// e^k for any integer k.
inline LaurentElem euler_power(int k) { return k == 0 ? poly_one() : poly_var(e_var(), k); }

/// Image of [P(n tau + sigma)]: c_{n-1} e^-1 + e^-n. The hyperplane y_n = 0
/// contributes RP^{n-1} with its tautological normal line; the isolated fixed
/// point contributes n copies of sigma.
inline LaurentElem loc_P(int n) {
  if (n < 1) throw ContractViolation("loc_P(n) requires n >= 1");
  return stable_class(n - 1) * euler_power(-1) + euler_power(-n);
}

inline LaurentElem loc_euler() { return euler_power(1); }

inline bool is_laurent_elem(const gf2::GradedPoly& p) {
  const auto& t = *alphabet();
  for (const auto& m : p.terms())
    for (auto [v, e] : m.factors()) {
      char f = t.name(v)[0];
      if (v == t.invertible()) continue;
      if ((f != 'a' && f != 'c') || e < 0) return false;
    }
  return true;
}

/// e^N x = p(e, X_n, a_d), where p is a polynomial with no negative powers of e.
struct ClearedForm {
  int shift = 0;          // N
  gf2::GradedPoly poly;   // p, over a_d, X_n, e
};

/// Replace each c_j by e X_{j+1} + e^-j (largest j first), then multiply by the
/// smallest e^N clearing the negative e-powers of both x and the substituted form.
inline ClearedForm clear_denominators(const LaurentElem& x) {
  if (!is_laurent_elem(x)) throw ContractViolation("clear_denominators: not an element of L");
  if (!x.homogeneous()) throw ContractViolation("clear_denominators: input must be homogeneous");
  ClearedForm out{0, poly_zero()};
  if (x.is_zero()) return out;

  int max_j = 0;
  for (const auto& m : x.terms())
    for (auto [v, e] : m.factors()) {
      const auto& name = alphabet()->name(v);
      if (name[0] == 'c') max_j = std::max(max_j, std::stoi(name.substr(1)));
    }
  gf2::GradedPoly cur = x;
  for (int j = max_j; j >= 1; --j) {
    const gf2::VarId cj = c_var(j);
    const auto replacement = poly_var(e_var()) * poly_var(x_var(j + 1)) + euler_power(-j);
    cur = gf2::evaluate(cur, alphabet(), [&](gf2::VarId v) {
      return v == cj ? replacement : poly_var(v);
    });
  }
  int shift = std::max(0, -x.min_inv_exponent());
  if (!cur.is_zero()) shift = std::max(shift, -cur.min_inv_exponent());
  out.shift = shift;
  out.poly = cur * euler_power(shift);
  return out;
}

/// Inverse of clear_denominators: evaluate p at X_n -> loc_P(n) and divide by e^N.
inline LaurentElem expand_cleared(const ClearedForm& f) {
  const auto& t = *alphabet();
  auto image = gf2::evaluate(f.poly, alphabet(), [&](gf2::VarId v) {
    const auto& name = t.name(v);
    if (name[0] == 'X') return loc_P(std::stoi(name.substr(1)));
    return poly_var(v);
  });
  return image * euler_power(-f.shift);
}

/// Finite slice of L in one degree: e-exponents in [t_min, t_max].
struct Window {
  int degree = 0;
  int t_min = 0;
  int t_max = 0;

  static Window for_degree(int d, int t_max) { return Window{d, -d, t_max}; }

  void validate() const {
    if (t_min > t_max) throw ContractViolation("Window: t_min > t_max");
    if (t_min < -degree) throw ContractViolation("Window: t_min below -degree");
  }

  bool fits(const LaurentElem& x) const {
    if (x.is_zero()) return true;
    return x.homogeneous() && x.degree() == degree && x.min_inv_exponent() >= t_min &&
           x.max_inv_exponent() <= t_max;
  }
};

/// Rank data for a family of homogeneous images inside a window, with the
/// ability to expand targets in their span.
class WindowBasis {
 public:
  WindowBasis(Window w, std::vector<LaurentElem> images) : window_(w), images_(std::move(images)) {
    window_.validate();
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (!window_.fits(images_[i]))
        throw ContractViolation("window_basis: image " + std::to_string(i) + " lies outside the window");
    rank_ = gf2::rank(images_);
  }

  const Window& window() const { return window_; }
  const std::vector<LaurentElem>& images() const { return images_; }
  std::size_t count() const { return images_.size(); }
  std::size_t rank() const { return rank_; }
  bool independent() const { return rank_ == images_.size(); }

  /// Selection flags over images() summing to target; nullopt outside the span.
  std::optional<std::vector<bool>> expand(const LaurentElem& target) const {
    if (!window_.fits(target)) throw ContractViolation("window_basis: target lies outside the window");
    return gf2::solve_gf2(images_, target);
  }

 private:
  Window window_;
  std::vector<LaurentElem> images_;
  std::size_t rank_ = 0;
};

inline WindowBasis window_basis(const Window& w, std::vector<LaurentElem> images) {
  return WindowBasis(w, std::move(images));
}

}  // namespace bordcalc

#endif  // BORDCALC_LOCALIZED_HPP
