#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rbu3/rational.hpp"

namespace rbu3 {

/// Ordered list of distinct variable names. Variable identity is the index.
class VarTable {
 public:
  VarTable() = default;
  explicit VarTable(std::vector<std::string> names);

  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] const std::string& name(std::size_t i) const { return names_.at(i); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;
  /// Throws Error for unknown names.
  [[nodiscard]] std::size_t index(std::string_view name) const;

  friend bool operator==(const VarTable& a, const VarTable& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using TablePtr = std::shared_ptr<const VarTable>;

TablePtr make_table(std::vector<std::string> names);
/// Same pointer or same name list. Null tables (constants) are compatible with anything.
bool tables_compatible(const TablePtr& a, const TablePtr& b);

inline constexpr std::size_t kMaxVars = 64;

/// Dense exponent vector. Unused slots beyond the table size stay zero, so
/// monomials over compatible tables compare directly.
class Monomial {
 public:
  Monomial() { exps_.fill(0); }

  [[nodiscard]] unsigned operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, unsigned e);
  [[nodiscard]] unsigned degree() const { return degree_; }
  /// Bit i set iff variable i occurs.
  [[nodiscard]] std::uint64_t support() const { return support_; }
  [[nodiscard]] bool is_one() const { return degree_ == 0; }

  [[nodiscard]] bool divides(const Monomial& m) const;
  /// Requires divides(m).
  [[nodiscard]] Monomial quotient_of(const Monomial& m) const;
  [[nodiscard]] Monomial lcm(const Monomial& o) const;
  [[nodiscard]] bool coprime(const Monomial& o) const { return (support_ & o.support_) == 0; }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }
  /// Pure lexicographic comparison with variable 0 greatest.
  [[nodiscard]] int lex_compare(const Monomial& o) const;
  [[nodiscard]] std::size_t hash() const;
  [[nodiscard]] const std::uint8_t* data() const { return exps_.data(); }

 private:
  std::array<std::uint8_t, kMaxVars> exps_;
  std::uint16_t degree_ = 0;
  std::uint64_t support_ = 0;
};

/// lex, grevlex, or elimination(k): the first k variables compared by grevlex,
/// ties broken by grevlex on the remaining ones.
class MonomialOrder {
 public:
  enum class Kind { Lex, Grevlex, Elimination };

  static MonomialOrder lex(std::size_t nvars) { return {Kind::Lex, nvars, 0}; }
  static MonomialOrder grevlex(std::size_t nvars) { return {Kind::Grevlex, nvars, 0}; }
  static MonomialOrder elimination(std::size_t k, std::size_t nvars) { return {Kind::Elimination, nvars, k}; }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] std::size_t nvars() const { return nvars_; }
  [[nodiscard]] std::size_t block() const { return block_; }
  [[nodiscard]] std::string describe() const;

  /// <0, 0, >0 like strcmp.
  [[nodiscard]] int compare(const Monomial& a, const Monomial& b) const;
  [[nodiscard]] bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind kind, std::size_t nvars, std::size_t block) : kind_(kind), nvars_(nvars), block_(block) {}
  Kind kind_;
  std::size_t nvars_;
  std::size_t block_;
};

struct Term {
  Monomial mono;
  Rational coef;
};

/// Polynomial over Rational. Terms are kept sorted in descending lex order with
/// no zero coefficients, so equal polynomials have identical term lists. A null
/// table marks a constant that combines with any table.
class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(int c) : MultiPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  MultiPoly(const Rational& c);                  // NOLINT(google-explicit-constructor)
  MultiPoly(const Rational& c, TablePtr table);

  static MultiPoly variable(const TablePtr& table, std::size_t index);
  static MultiPoly variable(const TablePtr& table, std::string_view name);
  static MultiPoly monomial(const TablePtr& table, const Monomial& m, const Rational& c);
  /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
  static MultiPoly from_terms(TablePtr table, std::vector<Term> terms);

  [[nodiscard]] const TablePtr& table() const { return table_; }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_zero_identically() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const;
  /// Value of the constant term.
  [[nodiscard]] Rational constant_term() const;
  [[nodiscard]] unsigned total_degree() const;
  [[nodiscard]] std::uint64_t support() const;
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  /// Maximal term under ord; throws Error("no leading term") on zero.
  [[nodiscard]] Term leading_term(const MonomialOrder& ord) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(MultiPoly a);
  [[nodiscard]] MultiPoly scaled(const Rational& c) const;
  [[nodiscard]] MultiPoly times_monomial(const Monomial& m, const Rational& c) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  /// Returns a copy carrying `table`, which must be compatible.
  [[nodiscard]] MultiPoly with_table(TablePtr table) const;

  /// Maps variables by name onto `target`; throws if a used variable is missing there.
  [[nodiscard]] MultiPoly retarget(const TablePtr& target) const;

  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] std::size_t hash() const;

 private:
  void adopt_table(const TablePtr& other);
  TablePtr table_;
  std::vector<Term> terms_;
};

MultiPoly pow(const MultiPoly& p, unsigned e);

/// Ring homomorphism sending each bound variable (by name) to its image. Unbound
/// variables map to themselves retargeted onto `target` (or p's table if null).
/// Throws Error for bindings naming variables not in p's table.
MultiPoly substitute(const MultiPoly& p, const std::map<std::string, MultiPoly>& bindings,
                     const TablePtr& target = nullptr);

/// Evaluates with every variable bound to a rational. Throws on missing bindings.
Rational evaluate(const MultiPoly& p, const std::map<std::string, Rational>& values);

/// Parses the polynomial grammar against `table`. Unknown identifiers are errors.
MultiPoly parse_poly(std::string_view text, const TablePtr& table);

/// Identifiers in order of first appearance; throws ParseError on lexical errors.
std::vector<std::string> scan_identifiers(std::string_view text);

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

}  // namespace rbu3
