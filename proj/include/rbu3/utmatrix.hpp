#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rbu3/errors.hpp"
#include "rbu3/poly.hpp"
#include "rbu3/rational.hpp"

namespace rbu3 {

/// Matrix unit e_{row,col} with row <= col. Ordered lexicographically, which for
/// n = 3 gives e11 < e12 < e13 < e22 < e23 < e33.
struct BasisIndex {
  int row = 1;
  int col = 1;
  friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
  [[nodiscard]] std::string name() const { return "e" + std::to_string(row) + std::to_string(col); }
};

inline std::size_t basis_dimension(int n) { return static_cast<std::size_t>(n * (n + 1) / 2); }

/// Canonical ordered basis of U_n.
std::vector<BasisIndex> basis_of(int n);
/// Position of idx in basis_of(n).
std::size_t basis_position(int n, BasisIndex idx);
/// Parses "e12" style names; nullopt if `name` is not a basis element of U_n.
std::optional<BasisIndex> parse_basis_name(std::string_view name, int n);

inline bool ring_is_zero(const Rational& x) { return x.is_zero(); }
inline bool ring_is_zero(const MultiPoly& x) { return x.is_zero(); }

/// Element of U_n with entries in R (Rational or MultiPoly). Absent entries are zero.
template <class R>
class UTMatrix {
 public:
  explicit UTMatrix(int n = 3) : n_(n) {
    if (n < 1 || n > 9) throw Error("matrix size out of range");
  }

  static UTMatrix zero(int n = 3) { return UTMatrix(n); }
  static UTMatrix unit(int n = 3) {
    UTMatrix u(n);
    for (int i = 1; i <= n; ++i) u.set({i, i}, R(1));
    return u;
  }
  static UTMatrix basis(int n, BasisIndex idx) {
    UTMatrix m(n);
    m.set(idx, R(1));
    return m;
  }
  static UTMatrix from_coords(int n, const std::vector<R>& coords) {
    UTMatrix m(n);
    const auto basis = basis_of(n);
    if (coords.size() != basis.size()) throw IncompatibleOperands("coordinate vector length");
    for (std::size_t k = 0; k < basis.size(); ++k) m.set(basis[k], coords[k]);
    return m;
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] const std::map<BasisIndex, R>& entries() const { return entries_; }

  [[nodiscard]] R get(BasisIndex idx) const {
    check(idx);
    auto it = entries_.find(idx);
    return it == entries_.end() ? R(0) : it->second;
  }
  void set(BasisIndex idx, R value) {
    check(idx);
    if (ring_is_zero(value)) entries_.erase(idx);
    else entries_[idx] = std::move(value);
  }

  [[nodiscard]] std::vector<R> coords() const {
    std::vector<R> out;
    for (const auto& b : basis_of(n_)) out.push_back(get(b));
    return out;
  }

  [[nodiscard]] bool is_zero() const { return entries_.empty(); }
  [[nodiscard]] bool is_strictly_upper() const {
    for (const auto& [idx, v] : entries_) {
      if (idx.row == idx.col) return false;
    }
    return true;
  }
  [[nodiscard]] R trace() const {
    R t(0);
    for (int i = 1; i <= n_; ++i) t = t + get({i, i});
    return t;
  }

  UTMatrix& operator+=(const UTMatrix& o) {
    same_size(o);
    for (const auto& [idx, v] : o.entries_) set(idx, get(idx) + v);
    return *this;
  }
  UTMatrix& operator-=(const UTMatrix& o) {
    same_size(o);
    for (const auto& [idx, v] : o.entries_) set(idx, get(idx) - v);
    return *this;
  }
  friend UTMatrix operator+(UTMatrix a, const UTMatrix& b) { return a += b; }
  friend UTMatrix operator-(UTMatrix a, const UTMatrix& b) { return a -= b; }
  friend UTMatrix operator-(const UTMatrix& a) { return UTMatrix(a.n_) - a; }
  friend UTMatrix operator*(const R& c, const UTMatrix& a) {
    UTMatrix out(a.n_);
    for (const auto& [idx, v] : a.entries_) out.set(idx, c * v);
    return out;
  }
  /// Product via e_ij e_kl = delta_jk e_il.
  friend UTMatrix operator*(const UTMatrix& a, const UTMatrix& b) {
    a.same_size(b);
    std::map<BasisIndex, R> acc;
    for (const auto& [ia, va] : a.entries_) {
      for (const auto& [ib, vb] : b.entries_) {
        if (ia.col != ib.row) continue;
        const BasisIndex t{ia.row, ib.col};
        auto it = acc.find(t);
        if (it == acc.end()) acc.emplace(t, va * vb);
        else it->second = it->second + va * vb;
      }
    }
    UTMatrix out(a.n_);
    for (auto& [idx, v] : acc) out.set(idx, std::move(v));
    return out;
  }
  friend bool operator==(const UTMatrix& a, const UTMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

  template <class F>
  [[nodiscard]] UTMatrix map(F f) const {
    UTMatrix out(n_);
    for (const auto& [idx, v] : entries_) out.set(idx, f(v));
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    if (entries_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, v] : entries_) {
      std::string c = v.to_string();
      const bool simple = c.find_first_of("+- ", 1) == std::string::npos;
      bool negative = simple && c[0] == '-';
      if (negative) c = c.substr(1);
      if (first) os << (negative ? "-" : "");
      else os << (negative ? " - " : " + ");
      first = false;
      if (c == "1") os << idx.name();
      else if (simple) os << c << '*' << idx.name();
      else os << '(' << c << ")*" << idx.name();
    }
    return os.str();
  }

 private:
  void check(BasisIndex idx) const {
    if (idx.row < 1 || idx.col > n_ || idx.row > idx.col) {
      throw Error("index " + idx.name() + " is not upper-triangular in U" + std::to_string(n_));
    }
  }
  void same_size(const UTMatrix& o) const {
    if (n_ != o.n_) throw IncompatibleOperands("matrix sizes differ");
  }

  int n_;
  std::map<BasisIndex, R> entries_;
};

using QMatrix = UTMatrix<Rational>;
using PMatrix = UTMatrix<MultiPoly>;

template <class R>
UTMatrix<R> multiply(const UTMatrix<R>& a, const UTMatrix<R>& b) {
  return a * b;
}

template <class R>
UTMatrix<R> unit(int n) {
  return UTMatrix<R>::unit(n);
}

template <class R>
UTMatrix<R> matrix_power(const UTMatrix<R>& a, unsigned k) {
  UTMatrix<R> out = UTMatrix<R>::unit(a.n());
  for (unsigned i = 0; i < k; ++i) out = out * a;
  return out;
}

/// Least k >= 1 with a^k = 0, or nullopt if a^n != 0. For polynomial entries a
/// power counts as zero only if it vanishes identically.
template <class R>
std::optional<int> nilpotency_degree(const UTMatrix<R>& a) {
  UTMatrix<R> p = a;
  for (int k = 1; k <= a.n(); ++k) {
    if (p.is_zero()) return k;
    p = p * a;
  }
  return std::nullopt;
}

template <class R>
bool is_idempotent(const UTMatrix<R>& a) {
  return a * a == a;
}

/// Rank as an n x n matrix, by exact Gaussian elimination.
int rank(const QMatrix& a);

PMatrix to_poly(const QMatrix& a);
/// Throws if some entry is not constant.
QMatrix to_rational(const PMatrix& a);
QMatrix specialize(const PMatrix& a, const std::map<std::string, Rational>& values);

/// Parses sums like "e12 + 2*e23 - 1/3*e13"; coefficients may use variables of
/// `table`. Each term must contain exactly one basis element to the first power.
PMatrix parse_matrix(std::string_view text, const TablePtr& table, int n = 3);
QMatrix parse_rational_matrix(std::string_view text, int n = 3);

}  // namespace rbu3
