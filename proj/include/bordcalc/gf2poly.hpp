#ifndef BORDCALC_GF2POLY_HPP
#define BORDCALC_GF2POLY_HPP

// Sparse polynomials over GF(2) whose variables carry integer degrees. One
// variable of each table is invertible, so polynomials are Laurent in it.
// Coefficients are implicit: a term is either present or absent.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "bordcalc/errors.hpp"

namespace bordcalc::gf2 {

using VarId = std::uint32_t;

/// Ordered alphabet of graded variables. Exactly one entry is invertible.
class VarTable {
 public:
  struct Entry {
    std::string name;
    int degree = 0;
  };

  VarTable(std::vector<Entry> entries, VarId invertible)
      : entries_(std::move(entries)), invertible_(invertible) {
    if (invertible_ >= entries_.size())
      throw ContractViolation("VarTable: invertible variable index out of range");
    for (VarId i = 0; i < entries_.size(); ++i) {
      const auto& e = entries_[i];
      if (e.degree == 0) throw ContractViolation("VarTable: variable '" + e.name + "' has degree 0");
      if (!index_.emplace(e.name, i).second)
        throw ContractViolation("VarTable: duplicate variable '" + e.name + "'");
    }
  }

  std::size_t size() const { return entries_.size(); }
  VarId invertible() const { return invertible_; }
  const Entry& entry(VarId v) const { return entries_.at(v); }
  const std::string& name(VarId v) const { return entries_.at(v).name; }
  int degree(VarId v) const { return entries_.at(v).degree; }

  std::optional<VarId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  VarId at(std::string_view name) const {
    auto v = find(name);
    if (!v) throw ContractViolation("unknown variable '" + std::string(name) + "'");
    return *v;
  }

  /// New table with `extra` appended; existing identifiers keep their ids.
  std::shared_ptr<const VarTable> extended(const std::vector<Entry>& extra) const {
    auto all = entries_;
    all.insert(all.end(), extra.begin(), extra.end());
    return std::make_shared<const VarTable>(std::move(all), invertible_);
  }

  /// True when every entry of *this appears, in order, at the front of `other`.
  bool is_prefix_of(const VarTable& other) const {
    if (other.size() < size() || other.invertible_ != invertible_) return false;
    for (VarId i = 0; i < size(); ++i)
      if (entries_[i].name != other.entries_[i].name ||
          entries_[i].degree != other.entries_[i].degree)
        return false;
    return true;
  }

  friend bool operator==(const VarTable& a, const VarTable& b) {
    return a.size() == b.size() && a.is_prefix_of(b);
  }

 private:
  std::vector<Entry> entries_;
  VarId invertible_;
  std::unordered_map<std::string, VarId> index_;
};

using TablePtr = std::shared_ptr<const VarTable>;

/// Sparse exponent vector, sorted by variable id, zero exponents never stored.
class Monomial {
 public:
  using Factor = std::pair<VarId, int>;

  Monomial() = default;
  explicit Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) { canonicalize(); }

  static Monomial var(VarId v, int exp = 1) { return Monomial({{v, exp}}); }

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  int exponent(VarId v) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                               [](const Factor& f, VarId x) { return f.first < x; });
    return (it != factors_.end() && it->first == v) ? it->second : 0;
  }

  int degree(const VarTable& t) const {
    int d = 0;
    for (auto [v, e] : factors_) d += e * t.degree(v);
    return d;
  }

  Monomial operator*(const Monomial& o) const {
    std::vector<Factor> out;
    out.reserve(factors_.size() + o.factors_.size());
    auto a = factors_.begin(), b = o.factors_.begin();
    while (a != factors_.end() || b != o.factors_.end()) {
      if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
        out.push_back(*a++);
      } else if (a == factors_.end() || b->first < a->first) {
        out.push_back(*b++);
      } else {
        int e = a->second + b->second;
        if (e != 0) out.emplace_back(a->first, e);
        ++a, ++b;
      }
    }
    Monomial m;
    m.factors_ = std::move(out);
    return m;
  }

  /// Copy with the exponent of `v` replaced.
  Monomial with_exponent(VarId v, int exp) const {
    std::vector<Factor> out;
    for (auto f : factors_)
      if (f.first != v) out.push_back(f);
    if (exp != 0) out.emplace_back(v, exp);
    return Monomial(std::move(out));
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Structural order, only for use as a container key.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.factors_ < b.factors_; }

 private:
  void canonicalize() {
    std::sort(factors_.begin(), factors_.end());
    std::vector<Factor> merged;
    for (auto f : factors_) {
      if (!merged.empty() && merged.back().first == f.first)
        merged.back().second += f.second;
      else
        merged.push_back(f);
    }
    std::erase_if(merged, [](const Factor& f) { return f.second == 0; });
    factors_ = std::move(merged);
  }

  std::vector<Factor> factors_;
};

/// Term order: invertible exponent descending, then lex (larger exponent of the
/// earliest differing variable first) on the remaining variables in table order.
/// Returns true when `a` comes before `b`.
inline bool term_before(const VarTable& t, const Monomial& a, const Monomial& b) {
  const VarId inv = t.invertible();
  const int ea = a.exponent(inv), eb = b.exponent(inv);
  if (ea != eb) return ea > eb;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto ia = fa.begin(), ib = fb.begin();
  while (true) {
    while (ia != fa.end() && ia->first == inv) ++ia;
    while (ib != fb.end() && ib->first == inv) ++ib;
    if (ia == fa.end() && ib == fb.end()) return false;
    if (ia == fa.end()) return false;  // b has a variable a lacks: b larger
    if (ib == fb.end()) return true;
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second > ib->second;
    ++ia, ++ib;
  }
}

/// Strict weak order on monomials used for storage in GradedPoly.
struct TermLess {
  const VarTable* table;
  bool operator()(const Monomial& a, const Monomial& b) const { return term_before(*table, a, b); }
};

class GradedPoly {
 public:
  GradedPoly() = default;
  explicit GradedPoly(TablePtr table) : table_(std::move(table)) {}
  GradedPoly(TablePtr table, std::vector<Monomial> terms) : table_(std::move(table)) {
    terms_ = std::move(terms);
    normalize();
  }

  static GradedPoly one(TablePtr t) { return GradedPoly(std::move(t), {Monomial{}}); }
  static GradedPoly monomial(TablePtr t, Monomial m) { return GradedPoly(std::move(t), {std::move(m)}); }
  static GradedPoly var(TablePtr t, std::string_view name, int exp = 1) {
    VarId v = t->at(name);
    return monomial(std::move(t), Monomial::var(v, exp));
  }

  const TablePtr& table() const { return table_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].is_one(); }

  bool homogeneous() const {
    if (terms_.empty()) return true;
    int d = terms_[0].degree(*table_);
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const Monomial& m) { return m.degree(*table_) == d; });
  }

  /// Degree of a homogeneous nonzero polynomial.
  int degree() const {
    if (terms_.empty()) throw ContractViolation("degree of the zero polynomial");
    if (!homogeneous()) throw ContractViolation("degree of an inhomogeneous polynomial");
    return terms_[0].degree(*table_);
  }

  /// Largest and smallest exponent of the invertible variable.
  int max_inv_exponent() const {
    if (terms_.empty()) throw ContractViolation("exponent range of the zero polynomial");
    return terms_.front().exponent(table_->invertible());  // leading term has the max
  }
  int min_inv_exponent() const {
    if (terms_.empty()) throw ContractViolation("exponent range of the zero polynomial");
    return terms_.back().exponent(table_->invertible());
  }

  bool contains(const Monomial& m) const {
    return std::binary_search(terms_.begin(), terms_.end(), m, before());
  }

  GradedPoly& operator+=(const GradedPoly& o) {
    adopt(o);
    std::vector<Monomial> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto cmp = before();
    std::set_symmetric_difference(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
                                  std::back_inserter(out), cmp);
    terms_ = std::move(out);
    return *this;
  }
  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }

  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    GradedPoly r(a.table_ ? a.table_ : b.table_);
    r.check_compatible(b);
    if (a.is_zero() || b.is_zero()) return r;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) r.terms_.push_back(x * y);
    r.normalize();
    return r;
  }
  GradedPoly& operator*=(const GradedPoly& o) { return *this = *this * o; }

  GradedPoly times(const Monomial& m) const {
    GradedPoly r(table_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back(t * m);
    // multiplying by a monomial preserves the relative order except through
    // exponent cancellation, which cannot merge distinct terms
    std::sort(r.terms_.begin(), r.terms_.end(), before());
    return r;
  }

  /// Power with nonnegative exponent; negative exponents only for a pure
  /// monomial in the invertible variable.
  GradedPoly pow(int k) const {
    if (k < 0) {
      if (terms_.size() != 1) throw ContractViolation("negative power of a non-monomial");
      const auto& m = terms_[0];
      for (auto [v, e] : m.factors())
        if (v != table_->invertible())
          throw ContractViolation("negative power of a non-invertible variable");
      return monomial(table_, Monomial::var(table_->invertible(), m.exponent(table_->invertible()) * k));
    }
    GradedPoly result = one(table_), base = *this;
    while (k > 0) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return result;
  }

  friend bool operator==(const GradedPoly& a, const GradedPoly& b) {
    return a.terms_ == b.terms_ && (a.terms_.empty() || !a.table_ || !b.table_ ||
                                    a.table_ == b.table_ || *a.table_ == *b.table_);
  }

  /// Homogeneous components keyed by degree.
  std::map<int, GradedPoly> degree_decompose() const {
    std::map<int, GradedPoly> out;
    for (const auto& m : terms_) {
      auto [it, fresh] = out.try_emplace(m.degree(*table_), table_);
      it->second.terms_.push_back(m);  // stays in term order
    }
    return out;
  }

  /// Rebase onto a table that extends this one's.
  GradedPoly rebased(TablePtr bigger) const {
    if (table_ && !table_->is_prefix_of(*bigger))
      throw ContractViolation("rebase onto a table that does not extend the current one");
    return GradedPoly(std::move(bigger), terms_);
  }

 private:
  TermLess before() const { return TermLess{table_.get()}; }

  void check_compatible(const GradedPoly& o) const {
    if (!table_ || !o.table_ || table_ == o.table_) return;
    if (!(*table_ == *o.table_)) throw ContractViolation("GradedPoly operands use different VarTables");
  }

  void adopt(const GradedPoly& o) {
    check_compatible(o);
    if (!table_) table_ = o.table_;
  }

  void normalize() {
    if (terms_.empty()) return;
    if (!table_) throw ContractViolation("nonzero GradedPoly without a VarTable");
    auto cmp = before();
    std::sort(terms_.begin(), terms_.end(), cmp);
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size();) {
      std::size_t j = i;
      while (j < terms_.size() && terms_[j] == terms_[i]) ++j;
      if ((j - i) % 2 == 1) out.push_back(std::move(terms_[i]));
      i = j;
    }
    terms_ = std::move(out);
  }

  TablePtr table_;
  std::vector<Monomial> terms_;
};

/// Substitute a polynomial for each variable. `image(v)` must be valid for every
/// variable occurring in `p`; negative exponents require invertible images.
template <class ImageFn>
GradedPoly evaluate(const GradedPoly& p, const TablePtr& target, ImageFn&& image) {
  GradedPoly out(target);
  if (p.is_zero()) return out;
  std::map<std::pair<VarId, int>, GradedPoly> powers;
  auto power_of = [&](VarId v, int e) -> const GradedPoly& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, GradedPoly(image(v)).pow(e)).first;
    return it->second;
  };
  for (const auto& m : p.terms()) {
    GradedPoly t = GradedPoly::one(target);
    for (auto [v, e] : m.factors()) {
      t *= power_of(v, e);
      if (t.is_zero()) break;
    }
    out += t;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical text form: `c1*e^-1 + e^-2`, invertible variable printed last.

inline std::string to_string(const VarTable& t, const Monomial& m) {
  std::string s;
  auto emit = [&](VarId v, int e) {
    if (!s.empty()) s += "*";
    s += t.name(v);
    if (e != 1) s += "^" + std::to_string(e);
  };
  for (auto [v, e] : m.factors())
    if (v != t.invertible()) emit(v, e);
  if (int e = m.exponent(t.invertible())) emit(t.invertible(), e);
  return s.empty() ? "1" : s;
}

inline std::string to_string(const GradedPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& m : p.terms()) {
    if (!s.empty()) s += " + ";
    s += to_string(*p.table(), m);
  }
  return s;
}

/// Parse the canonical text form. Accepts `0`, `1`, and `var` / `var^int` factors.
inline GradedPoly parse(std::string_view text, const TablePtr& table) {
  std::vector<Monomial> terms;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&]() -> int {
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (digits == pos) throw ParseError(start, {"integer"}, "");
    return std::stoi(std::string(text.substr(start, pos - start)));
  };
  auto read_factor = [&]() -> std::optional<Monomial> {  // nullopt means the factor 0
    skip();
    std::size_t start = pos;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      int c = read_int();
      if (c % 2 == 0) return std::nullopt;
      return Monomial{};
    }
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos) throw ParseError(start, {"variable", "integer"}, "");
    std::string name(text.substr(start, pos - start));
    auto v = table->find(name);
    if (!v) throw ParseError(start, {"variable"}, "unknown variable '" + name + "'");
    int exp = 1;
    skip();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      skip();
      exp = read_int();
    }
    if (exp < 0 && *v != table->invertible())
      throw ParseError(start, {}, "negative exponent on non-invertible variable '" + name + "'");
    return Monomial::var(*v, exp);
  };
  skip();
  if (pos == text.size()) throw ParseError(0, {"term"}, "empty input");
  while (true) {
    std::optional<Monomial> term = Monomial{};
    while (true) {
      auto f = read_factor();
      if (term && f) term = *term * *f;
      else term.reset();
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (term) terms.push_back(*term);
    if (pos < text.size() && text[pos] == '+') {
      ++pos;
      continue;
    }
    if (pos != text.size()) throw ParseError(pos, {"+", "*", "end of input"}, "");
    break;
  }
  return GradedPoly(table, std::move(terms));
}

// ---------------------------------------------------------------------------
// Linear algebra over GF(2).

using Bits = boost::dynamic_bitset<>;

/// Incremental Gaussian elimination. Rows are inserted in order; a pivot is the
/// lowest set column of a reduced row, so column order fixes pivot order.
class Eliminator {
 public:
  explicit Eliminator(std::size_t columns) : columns_(columns) {}

  std::size_t columns() const { return columns_; }
  std::size_t rank() const { return pivots_.size(); }
  std::size_t inserted() const { return inserted_; }

  /// Returns true when the row is independent of the rows inserted so far.
  bool insert(Bits row) {
    Bits combo(inserted_ + 1);
    combo.set(inserted_);
    ++inserted_;
    reduce(row, combo);
    auto col = row.find_first();
    if (col == Bits::npos) return false;
    pivots_.emplace(col, Pivot{std::move(row), std::move(combo)});
    return true;
  }

  /// Combination of inserted rows summing to `target`, if one exists.
  std::optional<Bits> express(Bits target) const {
    Bits combo(inserted_);
    reduce(target, combo);
    if (target.any()) return std::nullopt;
    return combo;
  }

 private:
  struct Pivot {
    Bits row;
    Bits combo;
  };

  void reduce(Bits& row, Bits& combo) const {
    for (auto col = row.find_first(); col != Bits::npos; col = row.find_next(col)) {
      auto it = pivots_.find(col);
      if (it == pivots_.end()) continue;
      row ^= it->second.row;
      Bits c = it->second.combo;
      if (c.size() < combo.size()) c.resize(combo.size());
      if (combo.size() < c.size()) combo.resize(c.size());
      combo ^= c;
    }
    if (combo.size() < inserted_) combo.resize(inserted_);
  }

  std::size_t columns_;
  std::size_t inserted_ = 0;
  std::map<std::size_t, Pivot> pivots_;
};

/// Column index over the union support of a family of polynomials, columns in
/// term order.
class SupportIndex {
 public:
  SupportIndex(const TablePtr& table, std::span<const GradedPoly> polys) : table_(table) {
    std::vector<Monomial> all;
    for (const auto& p : polys)
      all.insert(all.end(), p.terms().begin(), p.terms().end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::sort(all.begin(), all.end(),
              [&](const Monomial& a, const Monomial& b) { return term_before(*table_, a, b); });
    for (std::size_t i = 0; i < all.size(); ++i) index_.emplace(all[i], i);
  }

  std::size_t size() const { return index_.size(); }

  /// Bit vector of `p`; nullopt when `p` has a term outside the support.
  std::optional<Bits> bits(const GradedPoly& p) const {
    Bits b(index_.size());
    for (const auto& m : p.terms()) {
      auto it = index_.find(m);
      if (it == index_.end()) return std::nullopt;
      b.set(it->second);
    }
    return b;
  }

 private:
  TablePtr table_;
  std::map<Monomial, std::size_t> index_;
};

inline TablePtr common_table(std::span<const GradedPoly> polys) {
  TablePtr t;
  for (const auto& p : polys) {
    if (!p.table()) continue;
    if (!t) t = p.table();
    else if (t != p.table() && !(*t == *p.table()))
      throw ContractViolation("polynomials use different VarTables");
  }
  return t;
}

/// A subset of `vectors` summing to `target`, or nullopt when target is outside
/// their span. Selection flags are indexed like `vectors`.
inline std::optional<std::vector<bool>> solve_gf2(std::span<const GradedPoly> vectors,
                                                  const GradedPoly& target) {
  std::vector<GradedPoly> all(vectors.begin(), vectors.end());
  all.push_back(target);
  TablePtr t = common_table(all);
  if (!t) return std::vector<bool>(vectors.size(), false);  // everything is zero
  SupportIndex idx(t, all);
  Eliminator elim(idx.size());
  for (const auto& v : vectors) elim.insert(*idx.bits(v));
  auto combo = elim.express(*idx.bits(target));
  if (!combo) return std::nullopt;
  std::vector<bool> out(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) out[i] = combo->test(i);
  return out;
}

inline std::size_t rank(std::span<const GradedPoly> vectors) {
  TablePtr t = common_table(vectors);
  if (!t) return 0;
  SupportIndex idx(t, vectors);
  Eliminator elim(idx.size());
  for (const auto& v : vectors) elim.insert(*idx.bits(v));
  return elim.rank();
}

}  // namespace bordcalc::gf2

#endif  // BORDCALC_GF2POLY_HPP
