#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rbu3/groebner.hpp"
#include "rbu3/linalg.hpp"
#include "rbu3/utmatrix.hpp"

namespace rbu3 {

/// Linear endomorphism of U_n stored as a d x d coefficient array (d = dim U_n).
/// Column j holds the image of the j-th basis element.
template <class R>
class Operator {
 public:
  explicit Operator(int n = 3, Rational weight = Rational(0))
      : n_(n), d_(basis_dimension(n)), weight_(std::move(weight)), c_(d_ * d_, R(0)) {}

  static Operator identity(int n = 3) {
    Operator op(n);
    for (std::size_t i = 0; i < op.d_; ++i) op.set(i, i, R(1));
    return op;
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] std::size_t dim() const { return d_; }
  [[nodiscard]] const Rational& weight() const { return weight_; }
  void set_weight(Rational w) { weight_ = std::move(w); }

  [[nodiscard]] const R& at(std::size_t row, std::size_t col) const { return c_[row * d_ + col]; }
  void set(std::size_t row, std::size_t col, R v) { c_[row * d_ + col] = std::move(v); }

  [[nodiscard]] UTMatrix<R> image(std::size_t j) const {
    std::vector<R> col;
    col.reserve(d_);
    for (std::size_t i = 0; i < d_; ++i) col.push_back(at(i, j));
    return UTMatrix<R>::from_coords(n_, col);
  }
  [[nodiscard]] UTMatrix<R> image(BasisIndex b) const { return image(basis_position(n_, b)); }
  void set_image(std::size_t j, const UTMatrix<R>& m) {
    if (m.n() != n_) throw IncompatibleOperands("matrix size differs from operator size");
    const auto coords = m.coords();
    for (std::size_t i = 0; i < d_; ++i) set(i, j, coords[i]);
  }
  void set_image(BasisIndex b, const UTMatrix<R>& m) { set_image(basis_position(n_, b), m); }

  [[nodiscard]] UTMatrix<R> apply(const UTMatrix<R>& x) const {
    if (x.n() != n_) throw IncompatibleOperands("matrix size differs from operator size");
    std::vector<R> out(d_, R(0));
    const auto xs = x.coords();
    for (std::size_t j = 0; j < d_; ++j) {
      if (ring_is_zero(xs[j])) continue;
      for (std::size_t i = 0; i < d_; ++i) {
        if (!ring_is_zero(at(i, j))) out[i] = out[i] + at(i, j) * xs[j];
      }
    }
    return UTMatrix<R>::from_coords(n_, out);
  }

  /// Matrix of this ∘ o. The weight of `this` is kept.
  [[nodiscard]] Operator compose(const Operator& o) const {
    if (o.n_ != n_) throw IncompatibleOperands("operator sizes differ");
    Operator out(n_, weight_);
    for (std::size_t i = 0; i < d_; ++i) {
      for (std::size_t k = 0; k < d_; ++k) {
        if (ring_is_zero(at(i, k))) continue;
        for (std::size_t j = 0; j < d_; ++j) {
          if (!ring_is_zero(o.at(k, j))) out.c_[i * d_ + j] = out.c_[i * d_ + j] + at(i, k) * o.at(k, j);
        }
      }
    }
    return out;
  }

  [[nodiscard]] Operator power(unsigned k) const {
    Operator out = identity(n_);
    out.weight_ = weight_;
    for (unsigned i = 0; i < k; ++i) out = out.compose(*this);
    return out;
  }

  [[nodiscard]] Operator scaled(const R& c) const {
    Operator out = *this;
    for (auto& x : out.c_) x = x * c;
    return out;
  }

  [[nodiscard]] bool is_zero() const {
    for (const auto& x : c_) {
      if (!ring_is_zero(x)) return false;
    }
    return true;
  }

  friend bool operator==(const Operator& a, const Operator& b) {
    return a.n_ == b.n_ && a.weight_ == b.weight_ && a.c_ == b.c_;
  }

  template <class F>
  [[nodiscard]] auto map(F f) const {
    using S = decltype(f(std::declval<const R&>()));
    Operator<S> out(n_, weight_);
    for (std::size_t i = 0; i < d_; ++i) {
      for (std::size_t j = 0; j < d_; ++j) out.set(i, j, f(at(i, j)));
    }
    return out;
  }

 private:
  int n_;
  std::size_t d_;
  Rational weight_;
  std::vector<R> c_;
};

using QOperator = Operator<Rational>;
using POperator = Operator<MultiPoly>;

POperator to_poly(const QOperator& op);
/// Throws if some coefficient is not constant.
QOperator to_rational(const POperator& op);
QOperator specialize(const POperator& op, const std::map<std::string, Rational>& values);
QDense to_dense(const QOperator& op);
QOperator from_dense(const QDense& m, int n = 3, Rational weight = Rational(0));

template <class R>
UTMatrix<R> apply(const Operator<R>& op, const UTMatrix<R>& x) {
  return op.apply(x);
}

/// R(x)R(y) - R(R(x)y + xR(y) + weight*xy).
template <class R>
UTMatrix<R> residual_at(const Operator<R>& op, const UTMatrix<R>& x, const UTMatrix<R>& y) {
  const UTMatrix<R> rx = op.apply(x), ry = op.apply(y);
  UTMatrix<R> inner = rx * y + x * ry;
  if (!op.weight().is_zero()) inner += R(op.weight()) * (x * y);
  return rx * ry - op.apply(inner);
}

template <class R>
struct ResidualEntry {
  BasisIndex u, v;
  UTMatrix<R> value;
};

/// Residuals over all ordered basis pairs, in canonical pair order.
template <class R>
struct RBResidual {
  std::vector<ResidualEntry<R>> entries;

  [[nodiscard]] bool is_rb() const {
    for (const auto& e : entries) {
      if (!e.value.is_zero()) return false;
    }
    return true;
  }
  [[nodiscard]] std::optional<ResidualEntry<R>> first_failure() const {
    for (const auto& e : entries) {
      if (!e.value.is_zero()) return e;
    }
    return std::nullopt;
  }
  [[nodiscard]] std::size_t failures() const {
    std::size_t k = 0;
    for (const auto& e : entries) k += e.value.is_zero() ? 0 : 1;
    return k;
  }
};

template <class R>
RBResidual<R> rb_residual(const Operator<R>& op) {
  const auto basis = basis_of(op.n());
  std::vector<UTMatrix<R>> e, img;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    e.push_back(UTMatrix<R>::basis(op.n(), basis[k]));
    img.push_back(op.image(k));
  }
  RBResidual<R> res;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      UTMatrix<R> inner = img[a] * e[b] + e[a] * img[b];
      if (!op.weight().is_zero()) inner += R(op.weight()) * (e[a] * e[b]);
      res.entries.push_back({basis[a], basis[b], img[a] * img[b] - op.apply(inner)});
    }
  }
  return res;
}

template <class R>
bool is_rota_baxter(const Operator<R>& op) {
  return rb_residual(op).is_rb();
}

/// k^{-1} R. The weight is divided by k as well, which keeps the RB property.
template <class R>
Operator<R> scale_operator(const Operator<R>& op, const Rational& k) {
  if (k.is_zero()) throw Error("scale_operator: k must be nonzero");
  Operator<R> out = op.scaled(R(k.inverse()));
  out.set_weight(op.weight() / k);
  return out;
}

/// R(1) = sum of the diagonal images.
template <class R>
UTMatrix<R> image_of_unit(const Operator<R>& op) {
  return op.apply(UTMatrix<R>::unit(op.n()));
}

/// Least k >= 1 with R^k = 0, or nullopt if R is not nilpotent.
template <class R>
std::optional<int> operator_nilpotency(const Operator<R>& op) {
  Operator<R> p = op;
  for (int k = 1; k <= static_cast<int>(op.dim()); ++k) {
    if (p.is_zero()) return k;
    p = p.compose(op);
  }
  return std::nullopt;
}

// ------------------------------------------------------------------ systems

/// Name of the coefficient of e_kl in R(e_ij).
std::string coefficient_name(BasisIndex image_of, BasisIndex slot);
/// All coefficient names for U_n, image-major in basis order.
TablePtr coefficient_table(int n = 3);

/// Linear restrictions on the coefficients b_ij_kl of a generic operator.
struct Ansatz {
  int n = 3;
  Rational weight = Rational(0);
  /// Each polynomial, over coefficient_table(n), must be linear and is set to 0.
  std::vector<MultiPoly> constraints;

  /// R(e_u) = m.
  void fix_image(BasisIndex u, const QMatrix& m);
  /// sum_u w_u R(e_u) = m.
  void fix_combination(const std::map<BasisIndex, Rational>& w, const QMatrix& m);
  void fix_unit_image(const QMatrix& m);
  void zero_slot(BasisIndex u, BasisIndex slot);
  /// R(e_u) has no component on `slot` for every u.
  void zero_slot_everywhere(BasisIndex slot);
  /// Adds a constraint written in coefficient names, e.g. "b_12_13 - b_23_12".
  void add(std::string_view text);
};

struct GeneratedSystem {
  PolySystem system;                          ///< over the free coefficients, grevlex
  std::map<std::string, MultiPoly> solved;    ///< eliminated coefficient -> value in free ones
  POperator generic;                          ///< operator over the free coefficients
  TablePtr full_table;                        ///< all coefficient names
};

/// Solves the linear part (pivot = earliest coefficient in table order), then
/// collects every component of the symbolic residual. Throws ContradictoryAnsatz.
GeneratedSystem generate_system(const Ansatz& ansatz);

/// Residual components of an operator with polynomial entries, deduplicated up
/// to a scalar, as generators over `table`.
std::vector<MultiPoly> residual_equations(const POperator& op, const TablePtr& table);

// --------------------------------------------------------- split construction

struct SplitHypothesisError : Error {
  explicit SplitHypothesisError(std::string condition)
      : Error("split construction hypothesis failed: " + condition), condition(std::move(condition)) {}
  std::string condition;
};

/// R|_B = images, R|_C = 0. Checks that B ∪ C is a basis, C·C = 0, B·C and C·B
/// lie in span(C), and every image lies in span(C). B need not be a subalgebra.
POperator split_construction(const std::vector<QMatrix>& b_basis, const std::vector<QMatrix>& c_basis,
                             const std::vector<PMatrix>& images);

// --------------------------------------------------------------- lemma checks

struct Lemma3Report {
  bool unit_not_in_image = false;   ///< (a), with a constant separating functional
  bool r1_zero = false;             ///< R(1) = 0 identically
  bool r1_zero_implies = true;      ///< (b): Im R ⊆ ker R and R^2 = 0 when R(1) = 0
  bool power_identity = false;      ///< (c) for n = 1, 2, 3
  bool r1_cubed_zero = false;       ///< R(1)^3 = 0
  [[nodiscard]] bool ok() const { return unit_not_in_image && r1_zero_implies && power_identity && r1_cubed_zero; }
};

Lemma3Report check_lemma3(const POperator& op);
Lemma3Report check_lemma3(const QOperator& op);

/// A y in Q^d with y·R(x) = 0 for all x (identically in the parameters) and
/// y·1 = 1, proving 1 is not in Im(R). nullopt if no constant functional exists.
std::optional<std::vector<Rational>> unit_separating_functional(const POperator& op);

/// Rank over the rational function field of the parameters: a random
/// specialization gives a lower bound, symbolic minors certify the upper bound.
int generic_rank(const POperator& op, unsigned seed = 1);

}  // namespace rbu3
