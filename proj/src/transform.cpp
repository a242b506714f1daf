#include "rbu3/transform.hpp"

#include <functional>
#include <sstream>

namespace rbu3 {

namespace {

constexpr BasisIndex E11{1, 1}, E12{1, 2}, E13{1, 3}, E22{2, 2}, E23{2, 3}, E33{3, 3};

QMatrix q_basis(BasisIndex b) { return QMatrix::basis(3, b); }

void verify_map(AlgebraMap::Kind kind, const QOperator& m) {
  const auto basis = basis_of(m.n());
  for (const auto& x : basis) {
    for (const auto& y : basis) {
      const QMatrix ex = q_basis(x), ey = q_basis(y);
      const QMatrix lhs = m.apply(ex * ey);
      const QMatrix rhs = kind == AlgebraMap::Kind::Automorphism ? m.apply(ex) * m.apply(ey) : m.apply(ey) * m.apply(ex);
      if (!(lhs == rhs)) {
        throw Error("map is not " + std::string(kind == AlgebraMap::Kind::Automorphism ? "multiplicative" : "antimultiplicative") +
                    " on (" + x.name() + ", " + y.name() + ")");
      }
    }
  }
}

}  // namespace

AlgebraMap::AlgebraMap(Kind kind, QOperator matrix) : kind_(kind), m_(std::move(matrix)) {
  if (m_.n() != 3) throw Error("algebra maps are implemented for U_3");
  auto inv = rbu3::inverse(to_dense(m_));
  if (!inv) throw Error("algebra map is not invertible");
  inv_ = from_dense(*inv, 3);
  verify_map(kind_, m_);
}

AlgebraMap AlgebraMap::inverse() const {
  AlgebraMap out = *this;
  std::swap(out.m_, out.inv_);
  out.params_.reset();
  return out;
}

AlgebraMap AlgebraMap::then_after(const AlgebraMap& other) const {
  const Kind k = kind_ == other.kind_ ? Kind::Automorphism : Kind::Antiautomorphism;
  return AlgebraMap(k, m_.compose(other.m_));
}

std::string AlgebraMap::describe() const {
  if (theta_) return "theta13";
  if (params_) {
    std::ostringstream os;
    os << "psi(alpha=" << params_->alpha << ", beta=" << params_->beta << ", gamma=" << params_->gamma
       << ", delta=" << params_->delta << ", epsilon=" << params_->epsilon << ")";
    return os.str();
  }
  return kind_ == Kind::Automorphism ? "automorphism" : "antiautomorphism";
}

AlgebraMap build_psi(const AutoParams& p) {
  if (p.alpha.is_zero() || p.delta.is_zero()) throw Error("psi requires alpha and delta nonzero");
  const Rational& a = p.alpha;
  const Rational& b = p.beta;
  const Rational& g = p.gamma;
  const Rational& d = p.delta;
  const Rational& e = p.epsilon;
  QOperator m(3);
  auto col = [&](BasisIndex src, std::initializer_list<std::pair<BasisIndex, Rational>> img) {
    QMatrix x(3);
    for (const auto& [idx, v] : img) x.set(idx, x.get(idx) + v);
    m.set_image(src, x);
  };
  col(E11, {{E11, 1}, {E12, b}, {E13, g}});
  col(E12, {{E12, d}, {E13, e}});
  col(E13, {{E13, a}});
  col(E22, {{E12, -b}, {E13, -(b * e / d)}, {E22, 1}, {E23, e / d}});
  col(E23, {{E23, a / d}, {E13, -(a * b / d)}});
  col(E33, {{E13, b * e / d - g}, {E23, -(e / d)}, {E33, 1}});
  AlgebraMap map(AlgebraMap::Kind::Automorphism, m);
  map.params_ = p;
  return map;
}

AlgebraMap theta13() {
  QOperator m(3);
  const std::pair<BasisIndex, BasisIndex> images[] = {{E11, E33}, {E12, E23}, {E13, E13},
                                                      {E22, E22}, {E23, E12}, {E33, E11}};
  for (const auto& [src, dst] : images) m.set_image(src, q_basis(dst));
  AlgebraMap map(AlgebraMap::Kind::Antiautomorphism, m);
  map.theta_ = true;
  return map;
}

QMatrix Witness::act(const QMatrix& x) const {
  QMatrix y = x;
  for (const auto& m : maps) y = m.apply_inverse(y);
  return y;
}

std::string Witness::describe() const {
  std::ostringstream os;
  if (maps.empty()) os << "identity";
  for (std::size_t i = 0; i < maps.size(); ++i) os << (i ? ", " : "") << maps[i].describe();
  if (!scalar.is_one()) os << "; scalar " << scalar;
  return os.str();
}

// ------------------------------------------------------------- canonical forms

namespace {

void drop_identity_maps(Witness& w) {
  std::erase_if(w.maps, [](const AlgebraMap& m) { return m.params() && *m.params() == AutoParams{}; });
}

}  // namespace

NilpotentForm canonicalize_nilpotent(const QMatrix& n) {
  if (n.n() != 3 || !n.is_strictly_upper()) throw Error("canonicalize_nilpotent: input is not strictly upper-triangular");
  const Rational a = n.get(E12), b = n.get(E13), c = n.get(E23);
  NilpotentForm out;
  if (a.is_zero() && b.is_zero() && c.is_zero()) {
    out.form = "zero";
    out.canonical = QMatrix(3);
  } else if (!a.is_zero() && c.is_zero()) {
    out.form = "e12";
    out.canonical = q_basis(E12);
    out.witness.maps.push_back(build_psi({1, 0, 0, a, b}));
  } else if (a.is_zero() && !c.is_zero()) {
    out.form = "e12";
    out.canonical = q_basis(E12);
    out.witness.maps.push_back(theta13());
    out.witness.maps.push_back(build_psi({1, 0, 0, c, b}));
  } else if (a.is_zero() && c.is_zero()) {
    out.form = "e13";
    out.canonical = q_basis(E13);
    out.witness.maps.push_back(build_psi({b, 0, 0, 1, 0}));
  } else {
    out.form = "e12+e23";
    out.canonical = q_basis(E12) + q_basis(E23);
    out.witness.maps.push_back(build_psi({a * c, 0, 0, a, b}));
  }
  drop_identity_maps(out.witness);
  if (!(out.witness.act(n) == out.canonical)) throw Error("canonicalize_nilpotent: witness replay failed");
  return out;
}

IdempotentForm canonicalize_idempotent(const QMatrix& a) {
  if (a.n() != 3 || !is_idempotent(a)) throw Error("canonicalize_idempotent: input is not idempotent");
  const int r = rank(a);
  if (r != 1 && r != 2) throw Error("canonicalize_idempotent: rank must be 1 or 2");
  const bool d1 = a.get(E11).is_one(), d2 = a.get(E22).is_one(), d3 = a.get(E33).is_one();
  IdempotentForm out;
  auto& maps = out.witness.maps;
  if (r == 1) {
    out.form = "e11";
    out.canonical = q_basis(E11);
    if (d1) {
      maps.push_back(build_psi({1, a.get(E12), a.get(E13), 1, 0}));
    } else if (d2) {
      out.form = "e22";
      out.canonical = q_basis(E22);
      maps.push_back(build_psi({1, -a.get(E12), 0, 1, a.get(E23)}));
    } else {
      maps.push_back(theta13());
      maps.push_back(build_psi({1, a.get(E23), a.get(E13), 1, 0}));
    }
  } else if (d1 && d2) {
    out.form = "e11+e22";
    out.canonical = q_basis(E11) + q_basis(E22);
    maps.push_back(build_psi({1, a.get(E12), a.get(E13), 1, a.get(E23)}));
  } else if (d1 && d3) {
    out.form = "e11+e33";
    out.canonical = q_basis(E11) + q_basis(E33);
    maps.push_back(build_psi({1, a.get(E12), 0, 1, -a.get(E23)}));
  } else {
    out.form = "e11+e22";
    out.canonical = q_basis(E11) + q_basis(E22);
    maps.push_back(theta13());
    maps.push_back(build_psi({1, 0, a.get(E13), 1, a.get(E12)}));
  }
  drop_identity_maps(out.witness);
  if (!(out.witness.act(a) == out.canonical)) throw Error("canonicalize_idempotent: witness replay failed");
  return out;
}

// ------------------------------------------------------------ conjugation search

namespace {

const std::vector<std::string> kUnknowns = {"u", "k", "alpha", "delta", "beta", "gamma", "epsilon"};

/// Dense univariate polynomial, coefficient i of x^i.
using Uni = std::vector<Rational>;

void trim(Uni& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Uni uni_mod(Uni a, const Uni& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

Uni uni_gcd(Uni a, Uni b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Uni r = uni_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Rational uni_eval(const Uni& p, const Rational& x) {
  Rational acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

std::vector<mpz_class> positive_divisors(mpz_class n) {
  std::vector<mpz_class> out;
  if (n < 0) n = -n;
  if (n == 0 || n > mpz_class("1000000000000")) return out;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

/// Rational roots by the rational root theorem, ascending.
std::vector<Rational> rational_roots(Uni p) {
  trim(p);
  std::vector<Rational> roots;
  if (p.size() <= 1) return roots;
  std::size_t low = 0;
  while (p[low].is_zero()) ++low;
  if (low > 0) roots.push_back(Rational(0));
  Uni q(p.begin() + static_cast<std::ptrdiff_t>(low), p.end());
  if (q.size() <= 1) return roots;
  mpz_class lcm_den = 1;
  for (const auto& c : q) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.denominator().get_mpz_t());
  const mpz_class a0 = (q.front() * Rational(mpq_class(lcm_den))).numerator();
  const mpz_class an = (q.back() * Rational(mpq_class(lcm_den))).numerator();
  for (const auto& num : positive_divisors(a0)) {
    for (const auto& den : positive_divisors(an)) {
      for (int sgn : {1, -1}) {
        const Rational x(mpq_class(num * sgn, den));
        if (uni_eval(q, x).is_zero() && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Substitutes the assigned variables and returns p as a univariate polynomial
/// in variable `var`; nullopt if another unassigned variable remains.
std::optional<Uni> partial_univariate(const MultiPoly& p, const std::vector<std::optional<Rational>>& value, std::size_t var) {
  Uni out;
  for (const auto& t : p.terms()) {
    Rational c = t.coef;
    for (std::uint64_t s = t.mono.support(); s; s &= s - 1) {
      const auto i = static_cast<std::size_t>(__builtin_ctzll(s));
      if (i == var) continue;
      if (!value[i]) return std::nullopt;
      c *= pow(*value[i], t.mono[i]);
    }
    const unsigned e = t.mono[var];
    if (out.size() <= e) out.resize(e + 1);
    out[e] += c;
  }
  trim(out);
  return out;
}

class BackSubstitution {
 public:
  BackSubstitution(std::vector<MultiPoly> basis, std::size_t nvars,
                   std::function<bool(const std::vector<std::optional<Rational>>&)> accept, std::size_t max_nodes)
      : basis_(std::move(basis)), value_(nvars), accept_(std::move(accept)), max_nodes_(max_nodes) {}

  // Variables are assigned from the last table index (least in lex) upward,
  // stopping before index `first`.
  std::optional<std::vector<std::optional<Rational>>> run(std::size_t first) {
    first_ = first;
    if (dfs(value_.size())) return value_;
    return std::nullopt;
  }
  [[nodiscard]] bool exhausted() const { return nodes_ >= max_nodes_; }

 private:
  bool dfs(std::size_t level) {
    if (++nodes_ > max_nodes_) return false;
    if (level == first_) return accept_(value_);
    const std::size_t var = level - 1;
    Uni g;
    bool constrained = false;
    for (const auto& p : basis_) {
      auto u = partial_univariate(p, value_, var);
      if (!u) continue;
      if (u->empty()) continue;
      constrained = true;
      g = g.empty() ? *u : uni_gcd(g, *u);
      if (g.size() == 1) return false;
    }
    std::vector<Rational> candidates;
    if (constrained) {
      candidates = rational_roots(g);
    } else {
      candidates = {0, 1, -1, 2, -2, Rational(1, 2), Rational(-1, 2), 3, -3};
    }
    for (const auto& c : candidates) {
      value_[var] = c;
      if (dfs(level - 1)) return true;
      if (nodes_ > max_nodes_) break;
    }
    value_[var].reset();
    return false;
  }

  std::vector<MultiPoly> basis_;
  std::vector<std::optional<Rational>> value_;
  std::function<bool(const std::vector<std::optional<Rational>>&)> accept_;
  std::size_t max_nodes_;
  std::size_t first_ = 0;
  std::size_t nodes_ = 0;
};

}  // namespace

POperator psi_cleared(const TablePtr& t) {
  const MultiPoly a = MultiPoly::variable(t, "alpha"), b = MultiPoly::variable(t, "beta"),
                  g = MultiPoly::variable(t, "gamma"), d = MultiPoly::variable(t, "delta"),
                  e = MultiPoly::variable(t, "epsilon");
  const MultiPoly one(Rational(1), t);
  POperator m(3);
  auto col = [&](BasisIndex src, std::initializer_list<std::pair<BasisIndex, MultiPoly>> img) {
    PMatrix x(3);
    for (const auto& [idx, v] : img) x.set(idx, x.get(idx) + v);
    m.set_image(src, x);
  };
  col(E11, {{E11, d}, {E12, b * d}, {E13, g * d}});
  col(E12, {{E12, d * d}, {E13, e * d}});
  col(E13, {{E13, a * d}});
  col(E22, {{E12, -(b * d)}, {E13, -(b * e)}, {E22, d}, {E23, e}});
  col(E23, {{E23, a}, {E13, -(a * b)}});
  col(E33, {{E13, b * e - g * d}, {E23, -e}, {E33, d}});
  return m;
}

PolySystem conjugation_system(const QOperator& r, const QOperator& s, bool allow_scaling) {
  const TablePtr t = make_table(kUnknowns);
  const POperator psi = psi_cleared(t);
  const MultiPoly k = MultiPoly::variable(t, "k");
  const POperator lhs = to_poly(r).compose(psi);
  const POperator rhs = psi.compose(to_poly(s)).scaled(k);
  std::vector<MultiPoly> gens;
  for (std::size_t i = 0; i < lhs.dim(); ++i) {
    for (std::size_t j = 0; j < lhs.dim(); ++j) {
      MultiPoly e = (lhs.at(i, j) - rhs.at(i, j)).with_table(t);
      if (!e.is_zero()) gens.push_back(e);
    }
  }
  gens.push_back(MultiPoly::variable(t, "u") * MultiPoly::variable(t, "alpha") * MultiPoly::variable(t, "delta") * k -
                 MultiPoly(Rational(1), t));
  if (!allow_scaling) gens.push_back(k - MultiPoly(Rational(1), t));
  return PolySystem::make(t, gens, MonomialOrder::lex(t->size()));
}

bool ConjugationResult::disjoint_certificate() const {
  if (inconsistent.empty()) return false;
  for (bool b : inconsistent) {
    if (!b) return false;
  }
  return true;
}

ConjugationResult find_conjugation(const QOperator& r, const QOperator& s, const ConjugationOptions& options) {
  ConjugationResult result;
  std::vector<bool> variants = {false};
  if (options.allow_theta) variants.push_back(true);
  for (bool with_theta : variants) {
    const QOperator source = with_theta ? conjugate_operator(r, theta13()) : r;
    const PolySystem sys = conjugation_system(source, s, options.allow_scaling);
    const GroebnerBasis gb = buchberger(sys, options.limits);
    result.inconsistent.push_back(gb.is_unit());
    if (gb.is_unit()) {
      result.notes.push_back(std::string(with_theta ? "theta13 then psi" : "psi") + ": basis is {1}, no conjugation exists");
      continue;
    }
    // Lex with u first: the elements free of u generate the elimination ideal.
    std::vector<MultiPoly> elim;
    for (const auto& g : gb.basis) {
      if (g.terms().front().mono[0] == 0 && (g.support() & 1u) == 0) elim.push_back(g);
    }
    const TablePtr t = sys.table;
    auto accept = [&](const std::vector<std::optional<Rational>>& v) {
      const Rational& k = *v[1];
      const Rational& alpha = *v[2];
      const Rational& delta = *v[3];
      if (k.is_zero() || alpha.is_zero() || delta.is_zero()) return false;
      Witness w;
      if (with_theta) w.maps.push_back(theta13());
      w.maps.push_back(build_psi({alpha, *v[4], *v[5], delta, *v[6]}));
      w.scalar = k;
      if (!(w.replay(r) == s)) return false;
      result.witness = std::move(w);
      return true;
    };
    BackSubstitution bs(elim, t->size(), accept, options.max_search_nodes);
    if (bs.run(1)) return result;
    result.notes.push_back(std::string(with_theta ? "theta13 then psi" : "psi") +
                           (bs.exhausted() ? ": search budget exhausted" : ": no rational witness found"));
  }
  return result;
}

}  // namespace rbu3
