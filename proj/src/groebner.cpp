#include "rbu3/groebner.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <tuple>

namespace rbu3 {

using Clock = std::chrono::steady_clock;

PolySystem PolySystem::make(TablePtr table, std::vector<MultiPoly> gens, MonomialOrder order) {
  if (!table) table = make_table({});
  if (order.nvars() != table->size()) throw Error("monomial order size does not match the variable table");
  PolySystem sys{table, {}, order};
  for (auto& g : gens) {
    if (!tables_compatible(g.table(), table)) throw IncompatibleOperands("generator over a different table");
    if (!g.is_zero()) sys.generators.push_back(g.with_table(table));
  }
  return sys;
}

GbLimits GbLimits::seconds(double s) {
  GbLimits l;
  l.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(s));
  return l;
}

namespace {

using Terms = std::vector<Term>;

Terms sorted_terms(const MultiPoly& p, const MonomialOrder& ord) {
  Terms t = p.terms();
  if (ord.kind() != MonomialOrder::Kind::Lex) {
    std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return ord.greater(a.mono, b.mono); });
  }
  return t;
}

MultiPoly to_poly(const TablePtr& table, Terms terms) { return MultiPoly::from_terms(table, std::move(terms)); }

void make_monic(Terms& t) {
  if (t.empty() || t[0].coef.is_one()) return;
  const Rational inv = t[0].coef.inverse();
  for (auto& x : t) x.coef *= inv;
}

// Returns a[from..] - c * q * b[1..], both inputs sorted descending.
Terms merge_sub(const Terms& a, std::size_t from, const Terms& b, const Monomial& q, const Rational& c,
                const MonomialOrder& ord) {
  Terms out;
  out.reserve(a.size() - from + b.size());
  std::size_t i = from, j = 1;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    Monomial m = b[j].mono * q;
    int cmp = i == a.size() ? -1 : ord.compare(a[i].mono, m);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({m, -(c * b[j].coef)});
      ++j;
    } else {
      Rational s = a[i].coef - c * b[j].coef;
      if (!s.is_zero()) out.push_back({m, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

class Reducer {
 public:
  Reducer(const MonomialOrder& ord, GbStats* stats, const GbLimits* limits) : ord_(ord), stats_(stats), limits_(limits) {}

  // `basis` entries must be nonzero and sorted by descending leading monomial.
  Terms reduce(Terms p, const std::vector<const Terms*>& basis) {
    Terms result;
    std::size_t pos = 0;
    while (pos < p.size()) {
      const Term& t = p[pos];
      const Terms* r = nullptr;
      for (const Terms* g : basis) {
        if ((*g)[0].mono.divides(t.mono)) {
          r = g;
          break;
        }
      }
      if (!r) {
        result.push_back(std::move(p[pos]));
        ++pos;
        continue;
      }
      const Monomial q = (*r)[0].mono.quotient_of(t.mono);
      const Rational c = (*r)[0].coef.is_one() ? t.coef : t.coef / (*r)[0].coef;
      p = merge_sub(p, pos + 1, *r, q, c, ord_);
      pos = 0;
      tick();
    }
    return result;
  }

  void set_on_limit(std::function<void()> f) { on_limit_ = std::move(f); }

 private:
  void tick() {
    if (!stats_) return;
    ++stats_->reduction_steps;
    if (limits_ && limits_->deadline && (stats_->reduction_steps & 255u) == 0 && Clock::now() > *limits_->deadline) {
      if (on_limit_) on_limit_();
    }
  }

  const MonomialOrder& ord_;
  GbStats* stats_;
  const GbLimits* limits_;
  std::function<void()> on_limit_;
};

struct Pair {
  std::size_t i, j;  // i < j, indices into the store
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(const PolySystem& sys, const GbLimits& limits)
      : sys_(sys), ord_(sys.order), limits_(limits), reducer_(ord_, &stats_, &limits_) {
    reducer_.set_on_limit([this] { fail("deadline"); });
  }

  GroebnerBasis run() {
    const auto start = Clock::now();
    GroebnerBasis gb;
    gb.system = sys_;
    bool unit = false;
    for (const auto& g : sys_.generators) {
      Terms t = sorted_terms(g, ord_);
      if (t.empty()) continue;
      make_monic(t);
      if (t[0].mono.is_one()) {
        unit = true;
        break;
      }
      update(std::move(t));
    }
    while (!unit && !pairs_.empty()) {
      check_limits();
      const std::size_t k = select();
      const Pair pr = pairs_[k];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(k));
      ++stats_.pairs_processed;
      Terms h = reducer_.reduce(spoly(pr), reducers());
      if (h.empty()) {
        ++stats_.zero_reductions;
        continue;
      }
      make_monic(h);
      if (h[0].mono.is_one()) {
        unit = true;
        break;
      }
      update(std::move(h));
    }
    if (unit) {
      gb.basis = {MultiPoly(Rational(1), sys_.table)};
    } else {
      gb.basis = interreduce();
    }
    gb.reduced = true;
    stats_.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    gb.stats = stats_;
    return gb;
  }

 private:
  [[noreturn]] void fail(const std::string& which) {
    std::vector<MultiPoly> partial;
    for (std::size_t i = 0; i < store_.size(); ++i) {
      if (active_[i]) partial.push_back(to_poly(sys_.table, store_[i]));
    }
    throw ResourceLimitError(which, std::move(partial), stats_);
  }

  void check_limits() {
    if (limits_.max_pairs && stats_.pairs_processed >= limits_.max_pairs) fail("max_pairs");
    if (limits_.deadline && Clock::now() > *limits_.deadline) fail("deadline");
  }

  const Monomial& lm(std::size_t i) const { return store_[i][0].mono; }

  // Normal strategy: least lcm degree, then smallest (i, j).
  std::size_t select() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const Pair& a = pairs_[k];
      const Pair& b = pairs_[best];
      if (a.lcm.degree() != b.lcm.degree()) {
        if (a.lcm.degree() < b.lcm.degree()) best = k;
      } else if (std::tie(a.i, a.j) < std::tie(b.i, b.j)) {
        best = k;
      }
    }
    return best;
  }

  Terms spoly(const Pair& p) const {
    const Terms& f = store_[p.i];
    const Terms& g = store_[p.j];
    const Monomial qf = f[0].mono.quotient_of(p.lcm);
    const Monomial qg = g[0].mono.quotient_of(p.lcm);
    Terms ft;
    ft.reserve(f.size());
    for (std::size_t k = 1; k < f.size(); ++k) ft.push_back({f[k].mono * qf, f[k].coef});
    // ft - qg*g[1..]: both monic, leading terms cancel.
    Terms shifted;
    shifted.reserve(ft.size() + 1);
    shifted.push_back({p.lcm, Rational(1)});
    shifted.insert(shifted.end(), ft.begin(), ft.end());
    return merge_sub(shifted, 1, g, qg, Rational(1), ord_);
  }

  std::vector<const Terms*> reducers() const {
    std::vector<const Terms*> out;
    out.reserve(order_.size());
    for (std::size_t i : order_) out.push_back(&store_[i]);
    return out;
  }

  // Gebauer–Möller installation of a new element.
  void update(Terms h) {
    const std::size_t hi = store_.size();
    store_.push_back(std::move(h));
    active_.push_back(true);
    const Monomial& lh = lm(hi);

    std::vector<Pair> c;
    for (std::size_t g = 0; g < hi; ++g) {
      if (active_[g]) c.push_back({g, hi, lm(g).lcm(lh)});
    }
    std::vector<Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Pair& p = c[k];
      bool keep = lm(p.i).coprime(lh);
      if (!keep) {
        keep = true;
        for (std::size_t m = k + 1; m < c.size() && keep; ++m) {
          if (c[m].lcm.divides(p.lcm)) keep = false;
        }
        for (std::size_t m = 0; m < d.size() && keep; ++m) {
          if (d[m].lcm.divides(p.lcm)) keep = false;
        }
      }
      if (keep) d.push_back(p);
      else ++stats_.pairs_chain_criterion;
    }
    std::vector<Pair> e;
    for (auto& p : d) {
      if (lm(p.i).coprime(lh)) ++stats_.pairs_product_criterion;
      else e.push_back(p);
    }
    std::vector<Pair> kept;
    kept.reserve(pairs_.size() + e.size());
    for (auto& p : pairs_) {
      const bool drop = lh.divides(p.lcm) && !(lm(p.i).lcm(lh) == p.lcm) && !(lm(p.j).lcm(lh) == p.lcm);
      if (drop) ++stats_.pairs_chain_criterion;
      else kept.push_back(std::move(p));
    }
    for (auto& p : e) kept.push_back(std::move(p));
    pairs_ = std::move(kept);

    for (std::size_t g = 0; g < hi; ++g) {
      if (active_[g] && lh.divides(lm(g))) active_[g] = false;
    }
    order_.clear();
    for (std::size_t g = 0; g <= hi; ++g) {
      if (active_[g]) order_.push_back(g);
    }
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return ord_.greater(lm(a), lm(b)); });
    stats_.peak_basis_size = std::max(stats_.peak_basis_size, order_.size());
    if (limits_.max_basis_size && order_.size() > limits_.max_basis_size) fail("max_basis_size");
  }

  std::vector<MultiPoly> interreduce() {
    // Input generators enter unreduced, so an active element can still have a
    // leading monomial divisible by another's. Minimalize first.
    std::vector<std::size_t> keep;
    for (std::size_t a : order_) {
      bool redundant = false;
      for (std::size_t b : order_) {
        if (a != b && lm(b).divides(lm(a)) && (!(lm(a) == lm(b)) || b < a)) redundant = true;
      }
      if (!redundant) keep.push_back(a);
    }
    std::vector<MultiPoly> out;
    for (std::size_t k = 0; k < keep.size(); ++k) {
      std::vector<const Terms*> others;
      for (std::size_t m = 0; m < keep.size(); ++m) {
        if (m != k) others.push_back(&store_[keep[m]]);
      }
      const Terms& g = store_[keep[k]];
      Terms tail(g.begin() + 1, g.end());
      Terms red = reducer_.reduce(std::move(tail), others);
      red.insert(red.begin(), g[0]);
      out.push_back(to_poly(sys_.table, std::move(red)));
    }
    return out;
  }

  const PolySystem& sys_;
  const MonomialOrder ord_;
  GbLimits limits_;
  GbStats stats_;
  Reducer reducer_;
  std::vector<Terms> store_;
  std::vector<bool> active_;
  std::vector<std::size_t> order_;  // active indices, descending leading monomial
  std::vector<Pair> pairs_;
};

TablePtr checked_table(const MultiPoly& p, const TablePtr& table) {
  if (!tables_compatible(p.table(), table)) throw IncompatibleOperands("polynomial over a different table");
  return table;
}

}  // namespace

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g, const MonomialOrder& ord) {
  if (f.is_zero() || g.is_zero()) throw Error("s_polynomial of zero");
  const Term lf = f.leading_term(ord), lg = g.leading_term(ord);
  const Monomial l = lf.mono.lcm(lg.mono);
  return f.times_monomial(lf.mono.quotient_of(l), lf.coef.inverse()) -
         g.times_monomial(lg.mono.quotient_of(l), lg.coef.inverse());
}

MultiPoly normal_form(const MultiPoly& p, const std::vector<MultiPoly>& basis, const MonomialOrder& ord) {
  std::vector<Terms> sorted;
  TablePtr table = p.table();
  for (const auto& b : basis) {
    if (b.is_zero()) throw Error("normal_form: zero basis element");
    if (!table) table = b.table();
    checked_table(b, table);
    sorted.push_back(sorted_terms(b, ord));
  }
  std::vector<std::size_t> idx(sorted.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return ord.greater(sorted[a][0].mono, sorted[b][0].mono); });
  std::vector<const Terms*> reducers;
  for (std::size_t i : idx) reducers.push_back(&sorted[i]);
  Reducer r(ord, nullptr, nullptr);
  return to_poly(table, r.reduce(sorted_terms(p, ord), reducers));
}

GroebnerBasis buchberger(const PolySystem& sys, const GbLimits& limits) { return Buchberger(sys, limits).run(); }

bool ideal_member(const MultiPoly& p, const GroebnerBasis& gb) {
  const MultiPoly q = p.retarget(gb.system.table);
  return normal_form(q, gb.basis, gb.system.order).is_zero();
}

std::optional<unsigned> power_member(const MultiPoly& p, const GroebnerBasis& gb, unsigned max_k) {
  const MultiPoly base = p.retarget(gb.system.table);
  MultiPoly acc(Rational(1), gb.system.table);
  for (unsigned k = 1; k <= max_k; ++k) {
    acc = normal_form(acc * base, gb.basis, gb.system.order);
    if (acc.is_zero()) return k;
  }
  return std::nullopt;
}

bool radical_member(const MultiPoly& p, const PolySystem& sys, const GbLimits& limits) {
  std::vector<std::string> names = sys.table->names();
  std::string u = "u_rad";
  while (sys.table->find(u)) u += "_";
  names.insert(names.begin(), u);
  const TablePtr ext = make_table(names);
  std::vector<MultiPoly> gens;
  for (const auto& g : sys.generators) gens.push_back(g.retarget(ext));
  gens.push_back(MultiPoly(Rational(1), ext) - MultiPoly::variable(ext, 0) * p.retarget(ext));
  const auto gb = buchberger(PolySystem::make(ext, gens, MonomialOrder::grevlex(ext->size())), limits);
  return gb.is_unit();
}

std::string MembershipResult::describe() const {
  switch (tier) {
    case Tier::Ideal: return "ideal";
    case Tier::Power: return "power " + std::to_string(power);
    case Tier::Radical: return "radical";
    case Tier::None: return "not a member";
    case Tier::Unknown: return "unknown" + (detail.empty() ? std::string() : " (" + detail + ")");
  }
  return "?";
}

MembershipResult tiered_membership(const MultiPoly& p, const GroebnerBasis& gb, unsigned max_power,
                                   const GbLimits& radical_limits) {
  MembershipResult r;
  if (ideal_member(p, gb)) {
    r.tier = MembershipResult::Tier::Ideal;
    r.power = 1;
    return r;
  }
  if (max_power >= 2) {
    if (auto k = power_member(p, gb, max_power)) {
      r.tier = MembershipResult::Tier::Power;
      r.power = *k;
      return r;
    }
  }
  try {
    // The reduced basis generates the same ideal and is cheaper to restart from.
    PolySystem sys = PolySystem::make(gb.system.table, gb.basis, gb.system.order);
    r.tier = radical_member(p, sys, radical_limits) ? MembershipResult::Tier::Radical : MembershipResult::Tier::None;
  } catch (const ResourceLimitError& e) {
    r.tier = MembershipResult::Tier::Unknown;
    r.detail = e.what();
  }
  return r;
}

PolySystem eliminate(const PolySystem& sys, const std::vector<std::string>& keep, const GbLimits& limits) {
  std::vector<std::string> drop, kept;
  for (const auto& name : sys.table->names()) {
    if (std::find(keep.begin(), keep.end(), name) != keep.end()) kept.push_back(name);
    else drop.push_back(name);
  }
  for (const auto& k : keep) {
    if (!sys.table->find(k)) throw Error("unknown variable in keep set: " + k);
  }
  const TablePtr keep_table = make_table(kept);
  const bool lex = sys.order.kind() == MonomialOrder::Kind::Lex;
  const MonomialOrder keep_order = lex ? MonomialOrder::lex(kept.size()) : MonomialOrder::grevlex(kept.size());

  bool drop_first = true;
  for (std::size_t i = 0; i < drop.size(); ++i) drop_first = drop_first && sys.table->name(i) == drop[i];

  GroebnerBasis gb;
  if (lex && drop_first) {
    gb = buchberger(sys, limits);
  } else {
    std::vector<std::string> names = drop;
    names.insert(names.end(), kept.begin(), kept.end());
    const TablePtr t = make_table(names);
    std::vector<MultiPoly> gens;
    for (const auto& g : sys.generators) gens.push_back(g.retarget(t));
    const MonomialOrder ord = lex ? MonomialOrder::lex(names.size()) : MonomialOrder::elimination(drop.size(), names.size());
    gb = buchberger(PolySystem::make(t, gens, ord), limits);
  }
  std::uint64_t drop_mask = 0;
  for (const auto& name : drop) drop_mask |= std::uint64_t{1} << gb.system.table->index(name);
  std::vector<MultiPoly> out;
  for (const auto& g : gb.basis) {
    if ((g.support() & drop_mask) == 0) out.push_back(g.retarget(keep_table));
  }
  return PolySystem::make(keep_table, out, keep_order);
}

GbCheck verify_groebner(const GroebnerBasis& gb) {
  GbCheck c;
  const auto& ord = gb.system.order;
  for (const auto& g : gb.system.generators) {
    if (!normal_form(g, gb.basis, ord).is_zero()) c.generators_reduce = false;
  }
  for (std::size_t i = 0; i < gb.basis.size(); ++i) {
    for (std::size_t j = i + 1; j < gb.basis.size(); ++j) {
      const auto li = gb.basis[i].leading_term(ord).mono, lj = gb.basis[j].leading_term(ord).mono;
      if (li.coprime(lj)) continue;
      if (!normal_form(s_polynomial(gb.basis[i], gb.basis[j], ord), gb.basis, ord).is_zero()) c.spairs_reduce = false;
    }
  }
  if (gb.reduced) {
    for (std::size_t i = 0; i < gb.basis.size(); ++i) {
      const auto lt = gb.basis[i].leading_term(ord);
      if (!lt.coef.is_one()) c.reduced_form = false;
      for (std::size_t j = 0; j < gb.basis.size(); ++j) {
        if (i == j) continue;
        const auto lj = gb.basis[j].leading_term(ord).mono;
        for (const auto& t : gb.basis[i].terms()) {
          if (lj.divides(t.mono)) c.reduced_form = false;
        }
      }
    }
  }
  return c;
}

}  // namespace rbu3
