#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rbu3/groebner.hpp"
#include "rbu3/rb.hpp"

namespace rbu3 {

/// Parameters of the automorphism ψ of U_3; alpha and delta must be nonzero.
struct AutoParams {
  Rational alpha{1}, beta{0}, gamma{0}, delta{1}, epsilon{0};
  friend bool operator==(const AutoParams&, const AutoParams&) = default;
};

/// Invertible (anti)multiplicative linear map of U_3 over Q. Construction
/// verifies invertibility and (anti)multiplicativity on all basis pairs.
class AlgebraMap {
 public:
  enum class Kind { Automorphism, Antiautomorphism };

  AlgebraMap(Kind kind, QOperator matrix);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const QOperator& matrix() const { return m_; }
  [[nodiscard]] const QOperator& inverse_matrix() const { return inv_; }
  [[nodiscard]] const std::optional<AutoParams>& params() const { return params_; }
  [[nodiscard]] bool is_theta() const { return theta_; }

  [[nodiscard]] QMatrix apply(const QMatrix& x) const { return m_.apply(x); }
  [[nodiscard]] QMatrix apply_inverse(const QMatrix& x) const { return inv_.apply(x); }
  [[nodiscard]] AlgebraMap inverse() const;
  /// this ∘ other.
  [[nodiscard]] AlgebraMap then_after(const AlgebraMap& other) const;

  [[nodiscard]] std::string describe() const;

 private:
  friend AlgebraMap build_psi(const AutoParams& p);
  friend AlgebraMap theta13();

  Kind kind_;
  QOperator m_;
  QOperator inv_;
  std::optional<AutoParams> params_;
  bool theta_ = false;
};

AlgebraMap build_psi(const AutoParams& p);
/// X -> Z X^T Z: e11 <-> e33, e12 <-> e23, e13 and e22 fixed.
AlgebraMap theta13();

/// φ^{-1} ∘ R ∘ φ, for either kind of map.
template <class R>
Operator<R> conjugate_operator(const Operator<R>& op, const AlgebraMap& phi) {
  const auto conv = [](const Rational& x) { return R(x); };
  const Operator<R> m = phi.matrix().map(conv);
  const Operator<R> inv = phi.inverse_matrix().map(conv);
  Operator<R> out = inv.compose(op).compose(m);
  out.set_weight(op.weight());
  return out;
}

/// Chain of maps applied left to right, then division by `scalar`.
struct Witness {
  std::vector<AlgebraMap> maps;
  Rational scalar{1};

  /// Element action x -> φ^{-1}(x), applied left to right.
  [[nodiscard]] QMatrix act(const QMatrix& x) const;
  /// scalar^{-1} · (conjugation chain of R).
  template <class R>
  [[nodiscard]] Operator<R> replay(const Operator<R>& op) const {
    Operator<R> out = op;
    for (const auto& m : maps) out = conjugate_operator(out, m);
    if (!scalar.is_one()) out = scale_operator(out, scalar);
    return out;
  }
  [[nodiscard]] std::string describe() const;
};

struct NilpotentForm {
  std::string form;  ///< "zero", "e12", "e13" or "e12+e23"
  QMatrix canonical;
  Witness witness;
};

/// Reduces a strictly upper-triangular N to one of the four canonical forms.
/// The returned witness satisfies witness.act(N) == canonical.
NilpotentForm canonicalize_nilpotent(const QMatrix& n);

struct IdempotentForm {
  std::string form;  ///< "e11", "e22", "e11+e22" or "e11+e33"
  QMatrix canonical;
  Witness witness;
};

IdempotentForm canonicalize_idempotent(const QMatrix& a);

struct ConjugationOptions {
  bool allow_theta = true;
  bool allow_scaling = true;
  GbLimits limits;
  std::size_t max_search_nodes = 20000;
};

struct ConjugationResult {
  std::optional<Witness> witness;
  /// For each searched variant (ψ alone, then Θ then ψ): the lex basis was {1}.
  std::vector<bool> inconsistent;
  std::vector<std::string> notes;
  [[nodiscard]] bool found() const { return witness.has_value(); }
  /// Every searched variant has an inconsistent system.
  [[nodiscard]] bool disjoint_certificate() const;
};

/// Searches for ψ (optionally after Θ) and k with k^{-1} ψ^{-1} R ψ = S.
ConjugationResult find_conjugation(const QOperator& r, const QOperator& s, const ConjugationOptions& options = {});

/// The polynomial system for one variant: unknowns u, k, alpha, delta, beta,
/// gamma, epsilon (lex, u greatest) with R·Ψ' - k·Ψ'·S = 0 and u·α·δ·k = 1,
/// where Ψ' = δ·ψ clears the 1/δ denominators.
PolySystem conjugation_system(const QOperator& r, const QOperator& s, bool allow_scaling);

/// δ·ψ as an operator with polynomial entries over `table`, which must contain
/// alpha, beta, gamma, delta and epsilon.
POperator psi_cleared(const TablePtr& table);

}  // namespace rbu3
