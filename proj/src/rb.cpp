#include "rbu3/rb.hpp"

#include <random>
#include <unordered_set>

namespace rbu3 {

POperator to_poly(const QOperator& op) {
  return op.map([](const Rational& x) { return MultiPoly(x); });
}

QOperator to_rational(const POperator& op) {
  return op.map([](const MultiPoly& x) {
    if (!x.is_constant()) throw Error("operator coefficient is not constant: " + x.to_string());
    return x.constant_term();
  });
}

QOperator specialize(const POperator& op, const std::map<std::string, Rational>& values) {
  return op.map([&](const MultiPoly& x) { return evaluate(x, values); });
}

QDense to_dense(const QOperator& op) {
  QDense m(op.dim(), op.dim());
  for (std::size_t i = 0; i < op.dim(); ++i) {
    for (std::size_t j = 0; j < op.dim(); ++j) m(i, j) = op.at(i, j);
  }
  return m;
}

QOperator from_dense(const QDense& m, int n, Rational weight) {
  QOperator op(n, std::move(weight));
  if (m.rows() != op.dim() || m.cols() != op.dim()) throw IncompatibleOperands("matrix shape does not match U_n");
  for (std::size_t i = 0; i < op.dim(); ++i) {
    for (std::size_t j = 0; j < op.dim(); ++j) op.set(i, j, m(i, j));
  }
  return op;
}

// ------------------------------------------------------------------ systems

std::string coefficient_name(BasisIndex image_of, BasisIndex slot) {
  return "b_" + std::to_string(image_of.row) + std::to_string(image_of.col) + "_" + std::to_string(slot.row) +
         std::to_string(slot.col);
}

TablePtr coefficient_table(int n) {
  std::vector<std::string> names;
  const auto basis = basis_of(n);
  for (const auto& u : basis) {
    for (const auto& v : basis) names.push_back(coefficient_name(u, v));
  }
  return make_table(names);
}

namespace {

MultiPoly coef_var(const TablePtr& t, BasisIndex u, BasisIndex v) { return MultiPoly::variable(t, coefficient_name(u, v)); }

}  // namespace

void Ansatz::fix_image(BasisIndex u, const QMatrix& m) { fix_combination({{u, Rational(1)}}, m); }

void Ansatz::fix_combination(const std::map<BasisIndex, Rational>& w, const QMatrix& m) {
  const TablePtr t = coefficient_table(n);
  for (const auto& v : basis_of(n)) {
    MultiPoly c(-m.get(v), t);
    for (const auto& [u, wu] : w) c += coef_var(t, u, v).scaled(wu);
    constraints.push_back(c);
  }
}

void Ansatz::fix_unit_image(const QMatrix& m) {
  std::map<BasisIndex, Rational> w;
  for (int i = 1; i <= n; ++i) w[{i, i}] = Rational(1);
  fix_combination(w, m);
}

void Ansatz::zero_slot(BasisIndex u, BasisIndex slot) { constraints.push_back(coef_var(coefficient_table(n), u, slot)); }

void Ansatz::zero_slot_everywhere(BasisIndex slot) {
  for (const auto& u : basis_of(n)) zero_slot(u, slot);
}

void Ansatz::add(std::string_view text) { constraints.push_back(parse_poly(text, coefficient_table(n))); }

std::vector<MultiPoly> residual_equations(const POperator& op, const TablePtr& table) {
  std::vector<MultiPoly> out;
  std::unordered_set<std::string> seen;
  for (const auto& entry : rb_residual(op).entries) {
    for (const auto& [idx, v] : entry.value.entries()) {
      MultiPoly p = v.with_table(table);
      p = p.scaled(p.terms().front().coef.inverse());
      if (seen.insert(p.to_string()).second) out.push_back(std::move(p));
    }
  }
  return out;
}

GeneratedSystem generate_system(const Ansatz& ansatz) {
  const TablePtr full = coefficient_table(ansatz.n);
  const std::size_t nv = full->size();
  QDense a(ansatz.constraints.size(), nv + 1);
  for (std::size_t r = 0; r < ansatz.constraints.size(); ++r) {
    const MultiPoly c = ansatz.constraints[r].retarget(full);
    if (c.total_degree() > 1) throw Error("ansatz constraint is not linear: " + c.to_string());
    for (const auto& t : c.terms()) {
      if (t.mono.is_one()) {
        a(r, nv) = -t.coef;
        continue;
      }
      a(r, static_cast<std::size_t>(__builtin_ctzll(t.mono.support()))) = t.coef;
    }
  }
  const auto pivots = rref(a);
  if (!pivots.empty() && pivots.back() == nv) throw ContradictoryAnsatz();

  std::vector<bool> is_pivot(nv, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::string> free_names;
  for (std::size_t i = 0; i < nv; ++i) {
    if (!is_pivot[i]) free_names.push_back(full->name(i));
  }
  const TablePtr free = make_table(free_names);

  std::vector<MultiPoly> value(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (!is_pivot[i]) value[i] = MultiPoly::variable(free, full->name(i));
  }
  GeneratedSystem g;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    MultiPoly v(a(r, nv), free);
    for (std::size_t j = 0; j < nv; ++j) {
      if (j != pivots[r] && !a(r, j).is_zero()) v -= MultiPoly::variable(free, full->name(j)).scaled(a(r, j));
    }
    value[pivots[r]] = v;
    g.solved[full->name(pivots[r])] = v;
  }

  POperator op(ansatz.n, ansatz.weight);
  const std::size_t d = op.dim();
  for (std::size_t u = 0; u < d; ++u) {
    for (std::size_t v = 0; v < d; ++v) op.set(v, u, value[u * d + v]);
  }
  g.generic = op;
  g.full_table = full;
  g.system = PolySystem::make(free, residual_equations(op, free), MonomialOrder::grevlex(free->size()));
  return g;
}

// --------------------------------------------------------- split construction

namespace {

QDense columns_of(const std::vector<QMatrix>& ms, int n) {
  QDense m(basis_dimension(n), ms.size());
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const auto c = ms[k].coords();
    for (std::size_t i = 0; i < c.size(); ++i) m(i, k) = c[i];
  }
  return m;
}

bool in_span(const QMatrix& x, const std::vector<QMatrix>& span, int n) {
  if (x.is_zero()) return true;
  if (span.empty()) return false;
  return solve(columns_of(span, n), x.coords()).has_value();
}

}  // namespace

POperator split_construction(const std::vector<QMatrix>& b_basis, const std::vector<QMatrix>& c_basis,
                             const std::vector<PMatrix>& images) {
  const int n = !b_basis.empty() ? b_basis[0].n() : (!c_basis.empty() ? c_basis[0].n() : 3);
  const std::size_t d = basis_dimension(n);
  if (images.size() != b_basis.size()) throw Error("split construction: one image per element of B is required");

  std::vector<QMatrix> all = b_basis;
  all.insert(all.end(), c_basis.begin(), c_basis.end());
  const QDense p = columns_of(all, n);
  if (all.size() != d || rank(p) != d) throw SplitHypothesisError("B ∪ C is a basis");
  for (const auto& x : c_basis) {
    for (const auto& y : c_basis) {
      if (!(x * y).is_zero()) throw SplitHypothesisError("C·C = 0");
    }
  }
  for (const auto& b : b_basis) {
    for (const auto& c : c_basis) {
      if (!in_span(b * c, c_basis, n)) throw SplitHypothesisError("B·C ⊆ C");
      if (!in_span(c * b, c_basis, n)) throw SplitHypothesisError("C·B ⊆ C");
    }
  }
  // Images must lie in span(C) identically in the parameters: every coefficient
  // matrix of a monomial must be in the span.
  for (const auto& img : images) {
    std::map<std::string, QMatrix> parts;
    for (const auto& [idx, v] : img.entries()) {
      for (const auto& t : v.terms()) {
        const std::string key = MultiPoly::monomial(v.table(), t.mono, Rational(1)).to_string();
        auto it = parts.try_emplace(key, QMatrix(n)).first;
        it->second.set(idx, it->second.get(idx) + t.coef);
      }
    }
    for (const auto& [key, m] : parts) {
      if (!in_span(m, c_basis, n)) throw SplitHypothesisError("R(B) ⊆ C");
    }
  }

  const QDense pinv = *inverse(p);
  POperator op(n);
  for (std::size_t j = 0; j < d; ++j) {
    PMatrix col(n);
    for (std::size_t k = 0; k < b_basis.size(); ++k) {
      if (pinv(k, j).is_zero()) continue;
      col += MultiPoly(pinv(k, j)) * images[k];
    }
    op.set_image(j, col);
  }
  return op;
}

// --------------------------------------------------------------- lemma checks

std::optional<std::vector<Rational>> unit_separating_functional(const POperator& op) {
  const std::size_t d = op.dim();
  std::map<std::string, QDense> parts;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const MultiPoly& v = op.at(i, j);
      for (const auto& t : v.terms()) {
        const std::string key = MultiPoly::monomial(v.table(), t.mono, Rational(1)).to_string();
        auto it = parts.try_emplace(key, QDense(d, d)).first;
        it->second(i, j) += t.coef;
      }
    }
  }
  // Unknown y: y^T M_m = 0 for each monomial m, and y·1 = 1.
  QDense a(parts.size() * d + 1, d);
  std::vector<Rational> rhs(a.rows());
  std::size_t r = 0;
  for (const auto& [key, m] : parts) {
    for (std::size_t j = 0; j < d; ++j, ++r) {
      for (std::size_t i = 0; i < d; ++i) a(r, i) = m(i, j);
    }
  }
  const auto unit = QMatrix::unit(op.n()).coords();
  for (std::size_t i = 0; i < d; ++i) a(r, i) = unit[i];
  rhs[r] = 1;
  return solve(a, rhs);
}

Lemma3Report check_lemma3(const POperator& op) {
  Lemma3Report rep;
  rep.unit_not_in_image = unit_separating_functional(op).has_value();
  const PMatrix r1 = image_of_unit(op);
  rep.r1_zero = r1.is_zero();
  if (rep.r1_zero) rep.r1_zero_implies = op.compose(op).is_zero();
  rep.power_identity = true;
  PMatrix lhs = r1;
  PMatrix rn = r1;
  Rational fact(1);
  for (unsigned k = 1; k <= 3; ++k) {
    if (k > 1) {
      lhs = lhs * r1;
      rn = op.apply(rn);
    }
    fact *= Rational(static_cast<long>(k));
    if (!(lhs == MultiPoly(fact) * rn)) rep.power_identity = false;
  }
  rep.r1_cubed_zero = (r1 * r1 * r1).is_zero();
  return rep;
}

Lemma3Report check_lemma3(const QOperator& op) { return check_lemma3(to_poly(op)); }

namespace {

MultiPoly symbolic_det(const POperator& op, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  if (rows.size() == 1) return op.at(rows[0], cols[0]);
  MultiPoly det(0);
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const MultiPoly& a = op.at(rows[0], cols[k]);
    if (a.is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    for (std::size_t m = 0; m < cols.size(); ++m) {
      if (m != k) sub_cols.push_back(cols[m]);
    }
    const MultiPoly minor = a * symbolic_det(op, sub_rows, sub_cols);
    if (k % 2 == 0) det += minor;
    else det -= minor;
  }
  return det;
}

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

int generic_rank(const POperator& op, unsigned seed) {
  const std::size_t d = op.dim();
  std::map<std::string, Rational> values;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(-97, 97);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const auto& t = op.at(i, j).table();
      if (!t) continue;
      for (const auto& name : t->names()) {
        if (!values.count(name)) values[name] = Rational(dist(rng), 1 + std::abs(dist(rng)) % 7);
      }
    }
  }
  std::size_t r = rank(to_dense(specialize(op, values)));
  while (r < d) {
    std::vector<std::vector<std::size_t>> sets;
    subsets(d, r + 1, sets);
    bool all_zero = true;
    for (const auto& rows : sets) {
      for (const auto& cols : sets) {
        if (!symbolic_det(op, rows, cols).is_zero()) {
          all_zero = false;
          break;
        }
      }
      if (!all_zero) break;
    }
    if (all_zero) break;
    ++r;
  }
  return static_cast<int>(r);
}

}  // namespace rbu3
