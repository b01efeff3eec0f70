#ifndef BORDCALC_PARSER_HPP
#define BORDCALC_PARSER_HPP

// Recursive-descent parsers for the expression languages of the calculator:
// presentations, Laurent elements, bundle-algebra elements, manifold
// expressions and catalog spaces. Errors carry a position and the set of
// tokens that would have been accepted there.

#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "bordcalc/charnum.hpp"
#include "bordcalc/conner_floyd.hpp"
#include "bordcalc/errors.hpp"
#include "bordcalc/presentation.hpp"

namespace bordcalc {

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip();
    return pos_ == text_.size();
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  /// Character at the cursor without skipping whitespace.
  char peek_raw() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void advance() { ++pos_; }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  bool accept_word(std::string_view w) {
    skip();
    if (text_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail({std::string(1, c)});
  }

  bool peek_digit() {
    char c = peek();
    return c >= '0' && c <= '9';
  }

  /// Unsigned decimal integer, immediately at the cursor (no sign).
  int number() {
    skip();
    const std::size_t start = pos_;
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1'000'000) throw ParseError(start, {"integer"}, "integer too large");
      ++pos_;
    }
    if (pos_ == start) fail({"integer"});
    return static_cast<int>(v);
  }

  /// Index glued to a letter, as in a12 or X3.
  int glued_index(const std::string& what) {
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError(start, {what + " index"}, "");
    return number();
  }

  [[noreturn]] void fail(std::set<std::string> expected, const std::string& detail = "") {
    skip();
    std::string d = detail;
    if (d.empty()) d = pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'" : "unexpected end of input";
    throw ParseError(pos_, std::move(expected), d);
  }

  void finish(std::set<std::string> expected) {
    if (!at_end()) fail(std::move(expected));
  }

  void check_nonempty(std::set<std::string> expected) {
    if (at_end()) throw ParseError(pos_, std::move(expected), "empty input");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

/// Polynomials over selected variable families of the shared alphabet.
class PolyParser {
 public:
  PolyParser(std::string_view text, std::string families, bool laurent_e)
      : cur_(text), families_(std::move(families)), laurent_e_(laurent_e) {}

  gf2::GradedPoly parse() {
    cur_.check_nonempty(atom_tokens());
    auto p = sum();
    cur_.finish({"+", "*", "^"});
    return p;
  }

  Cursor& cursor() { return cur_; }

  gf2::GradedPoly sum() {
    auto p = product();
    while (cur_.accept('+')) p += product();
    return p;
  }

 private:
  std::set<std::string> atom_tokens() const {
    std::set<std::string> s{"integer", "("};
    for (char f : families_) s.insert(f == 'e' ? "e" : std::string(1, f) + "<index>");
    return s;
  }

  gf2::GradedPoly product() {
    auto p = power();
    while (cur_.accept('*')) p *= power();
    return p;
  }

  gf2::GradedPoly power() {
    const std::size_t start = cur_.pos();
    bool is_e = false;
    auto base = atom(is_e);
    if (!cur_.accept('^')) return base;
    if (cur_.accept('-')) {
      if (!is_e) throw ParseError(start, {"e"}, "negative exponents are only allowed on e");
      return base.pow(-cur_.number());
    }
    return base.pow(cur_.number());
  }

  gf2::GradedPoly atom(bool& is_e) {
    is_e = false;
    if (cur_.accept('(')) {
      auto p = sum();
      cur_.expect(')');
      return p;
    }
    if (cur_.peek_digit()) return cur_.number() % 2 ? poly_one() : poly_zero();
    const char c = cur_.peek();
    if (c != '\0' && families_.find(c) != std::string::npos) {
      const std::size_t start = cur_.pos();
      cur_.accept(c);
      if (c == 'e') {
        if (laurent_e_) is_e = true;
        return poly_var(e_var());
      }
      const int k = cur_.glued_index(std::string(1, c));
      try {
        switch (c) {
          case 'a': return poly_var(a_var(k));
          case 'b': return beta(k);
          case 'c': return k == 0 ? poly_one() : poly_var(c_var(k));
          default: break;
        }
      } catch (const ContractViolation& ex) {
        throw ParseError(start, {}, ex.what());
      } catch (const CapacityError& ex) {
        throw ParseError(start, {}, ex.what());
      }
    }
    cur_.fail(atom_tokens());
  }

  Cursor cur_;
  std::string families_;
  bool laurent_e_;
};

}  // namespace detail

/// Element of L: a<d>, c<j>, e with integer (possibly negative) exponents.
inline LaurentElem parse_laurent(std::string_view text) {
  return detail::PolyParser(text, "ace", true).parse();
}

/// Element of N_*: a<d> only.
inline CoefElem parse_coefficient(std::string_view text) {
  return detail::PolyParser(text, "a", false).parse();
}

/// Element of the bundle algebra: b<i> and a<d>.
inline BundleAlgElem parse_bundle(std::string_view text) {
  return detail::PolyParser(text, "ab", false).parse();
}

// ---------------------------------------------------------------------------
// Presentations:  a<d>  X<n>  G(i,n)  e  Gamma(expr)  iota(expr)  * + ^ ( ) integers

namespace detail {

class PresentationParser {
 public:
  PresentationParser(std::string_view text, NormalFormEngine& engine) : cur_(text), engine_(engine) {}

  Presentation parse() {
    cur_.check_nonempty(atom_tokens());
    auto p = sum();
    cur_.finish({"+", "*", "^"});
    return p;
  }

 private:
  static std::set<std::string> atom_tokens() {
    return {"a<d>", "X<n>", "G(", "e", "Gamma(", "iota(", "integer", "("};
  }

  Presentation sum() {
    auto p = product();
    while (cur_.accept('+')) p += product();
    return p;
  }

  Presentation product() {
    auto p = power();
    while (cur_.accept('*')) p = p * power();
    return p;
  }

  Presentation power() {
    auto base = atom();
    if (!cur_.accept('^')) return base;
    if (cur_.peek() == '-') cur_.fail({"nonnegative integer"}, "negative exponents are not allowed in a presentation");
    const int k = cur_.number();
    Presentation r = Presentation::one();
    for (int i = 0; i < k; ++i) r = r * base;
    return r;
  }

  Presentation atom() {
    if (cur_.accept('(')) {
      auto p = sum();
      cur_.expect(')');
      return p;
    }
    if (cur_.peek_digit()) return cur_.number() % 2 ? Presentation::one() : Presentation{};
    const std::size_t start = cur_.pos();
    if (cur_.accept_word("Gamma")) {
      cur_.expect('(');
      auto p = sum();
      cur_.expect(')');
      return engine_.gamma(p);
    }
    if (cur_.accept_word("iota")) {
      cur_.expect('(');
      auto p = sum();
      cur_.expect(')');
      if (!is_coefficient_only(p)) throw ParseError(start, {}, "iota expects an element of N_*");
      return p;
    }
    if (cur_.accept('G')) {
      cur_.expect('(');
      const int i = cur_.number();
      cur_.expect(',');
      const int n = cur_.number();
      cur_.expect(')');
      if (n < 1) throw ParseError(start, {}, "G(i,n) needs n >= 1");
      return Presentation::g(i, n);
    }
    if (cur_.accept('X')) {
      const int n = cur_.glued_index("X");
      if (n < 1) throw ParseError(start, {}, "X<n> needs n >= 1");
      check_cap(start, n);
      return Presentation::x(n);
    }
    if (cur_.accept('a')) {
      const int d = cur_.glued_index("a");
      try {
        return Presentation::coef(poly_var(a_var(d)));
      } catch (const std::exception& ex) {
        throw ParseError(start, {}, ex.what());
      }
    }
    if (cur_.accept('e')) return Presentation::e(1);
    cur_.fail(atom_tokens());
  }

  static bool is_coefficient_only(const Presentation& p) {
    for (const auto& m : p.terms())
      if (m.epow() != 0 || !m.gammas().empty()) return false;
    return true;
  }

  static void check_cap(std::size_t pos, int n) {
    if (n > kAlphabetCap) throw ParseError(pos, {}, "index beyond the alphabet cap");
  }

  Cursor cur_;
  NormalFormEngine& engine_;
};

class ManifoldParser {
 public:
  explicit ManifoldParser(std::string_view text) : cur_(text) {}

  ManifoldExpr parse() {
    cur_.check_nonempty(atom_tokens());
    auto m = product();
    cur_.finish({"*"});
    return m;
  }

 private:
  static std::set<std::string> atom_tokens() { return {"P(", "gamma(", "triv(", "S(", "("}; }

  ManifoldExpr product() {
    std::vector<ManifoldExpr> f{atom()};
    while (cur_.accept('*')) f.push_back(atom());
    if (f.size() == 1) return std::move(f.front());
    return ManifoldExpr::product(std::move(f));
  }

  ManifoldExpr atom() {
    if (cur_.accept('(')) {
      auto m = product();
      cur_.expect(')');
      return m;
    }
    const std::size_t start = cur_.pos();
    if (cur_.accept_word("gamma")) {
      cur_.expect('(');
      auto m = product();
      cur_.expect(')');
      return ManifoldExpr::gamma_of(std::move(m));
    }
    if (cur_.accept_word("triv")) {
      cur_.expect('(');
      auto c = coefficient();
      cur_.expect(')');
      return ManifoldExpr::trivial(std::move(c));
    }
    if (cur_.accept('P')) {
      cur_.expect('(');
      const int n = cur_.number();
      cur_.expect(')');
      if (n < 1) throw ParseError(start, {}, "P(n) needs n >= 1");
      return ManifoldExpr::proj(n);
    }
    if (cur_.accept('S')) {
      cur_.expect('(');
      const int j = cur_.number();
      cur_.expect(')');
      return ManifoldExpr::sphere(j);
    }
    cur_.fail(atom_tokens());
  }

  // coefficient grammar inside triv(...): a<d>, integers, + * ^ ( )
  CoefElem coefficient() {
    auto p = coef_product();
    while (cur_.accept('+')) p += coef_product();
    return p;
  }
  CoefElem coef_product() {
    auto p = coef_power();
    while (cur_.accept('*')) p *= coef_power();
    return p;
  }
  CoefElem coef_power() {
    auto b = coef_atom();
    if (!cur_.accept('^')) return b;
    return b.pow(cur_.number());
  }
  CoefElem coef_atom() {
    if (cur_.accept('(')) {
      auto p = coefficient();
      cur_.expect(')');
      return p;
    }
    if (cur_.peek_digit()) return cur_.number() % 2 ? poly_one() : poly_zero();
    const std::size_t start = cur_.pos();
    if (cur_.accept('a')) {
      const int d = cur_.glued_index("a");
      try {
        return poly_var(a_var(d));
      } catch (const std::exception& ex) {
        throw ParseError(start, {}, ex.what());
      }
    }
    cur_.fail({"a<d>", "integer", "("});
  }

  Cursor cur_;
};

class SpaceParser {
 public:
  explicit SpaceParser(std::string_view text) : cur_(text) {}

  SpaceDesc parse() {
    cur_.check_nonempty(atom_tokens());
    auto s = product();
    cur_.finish({"*"});
    return s;
  }

 private:
  static std::set<std::string> atom_tokens() { return {"RP(", "Dold(", "PB(", "("}; }

  SpaceDesc product() {
    std::vector<SpaceDesc> f{atom()};
    while (cur_.accept('*')) f.push_back(atom());
    if (f.size() == 1) return std::move(f.front());
    return SpaceDesc::product(std::move(f));
  }

  SpaceDesc atom() {
    if (cur_.accept('(')) {
      auto s = product();
      cur_.expect(')');
      return s;
    }
    if (cur_.accept_word("RP")) {
      cur_.expect('(');
      const int n = cur_.number();
      cur_.expect(')');
      return SpaceDesc::rp(n);
    }
    if (cur_.accept_word("Dold")) {
      cur_.expect('(');
      const int m = cur_.number();
      cur_.expect(',');
      const int n = cur_.number();
      cur_.expect(')');
      return SpaceDesc::dold(m, n);
    }
    if (cur_.accept_word("PB")) {
      cur_.expect('(');
      auto base = product();
      cur_.expect(';');
      std::vector<std::string> lines{line()};
      while (cur_.accept(',')) lines.push_back(line());
      cur_.expect(')');
      return SpaceDesc::proj_bundle(std::move(base), std::move(lines));
    }
    cur_.fail(atom_tokens());
  }

  // degree-1 class: 0 | name (+ name)*
  std::string line() {
    std::string out = name();
    while (cur_.accept('+')) out += " + " + name();
    return out;
  }

  std::string name() {
    if (cur_.peek() == '0') {
      cur_.number();
      return "0";
    }
    cur_.skip();
    std::string s;
    while (true) {
      const char c = cur_.peek_raw();
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_') || c == '\0') break;
      if (s.empty() && std::isdigit(static_cast<unsigned char>(c))) break;
      s += c;
      cur_.advance();
    }
    if (s.empty()) cur_.fail({"generator name", "0"});
    return s;
  }

  Cursor cur_;
};

}  // namespace detail

inline Presentation parse_presentation(std::string_view text, NormalFormEngine& engine) {
  return detail::PresentationParser(text, engine).parse();
}

inline Presentation parse_presentation(std::string_view text) {
  NormalFormEngine engine;
  return parse_presentation(text, engine);
}

inline ManifoldExpr parse_manifold(std::string_view text) { return detail::ManifoldParser(text).parse(); }

inline SpaceDesc parse_space(std::string_view text) { return detail::SpaceParser(text).parse(); }

}  // namespace bordcalc

#endif  // BORDCALC_PARSER_HPP
