#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rbu3/errors.hpp"
#include "rbu3/poly.hpp"

namespace rbu3 {

/// Generators of an ideal over a shared table, with the order used for GB work.
struct PolySystem {
  TablePtr table;
  std::vector<MultiPoly> generators;
  MonomialOrder order = MonomialOrder::grevlex(0);

  static PolySystem make(TablePtr table, std::vector<MultiPoly> gens, MonomialOrder order);
};

struct GbLimits {
  std::size_t max_pairs = 0;       ///< 0 = unlimited
  std::size_t max_basis_size = 0;  ///< 0 = unlimited
  std::optional<std::chrono::steady_clock::time_point> deadline;

  static GbLimits seconds(double s);
};

struct GbStats {
  std::size_t pairs_processed = 0;
  std::size_t pairs_product_criterion = 0;
  std::size_t pairs_chain_criterion = 0;
  std::size_t zero_reductions = 0;
  std::size_t reduction_steps = 0;
  std::size_t peak_basis_size = 0;
  double seconds = 0;
};

struct GroebnerBasis {
  PolySystem system;
  std::vector<MultiPoly> basis;  ///< monic, sorted by descending leading monomial
  bool reduced = false;
  GbStats stats;

  [[nodiscard]] bool is_unit() const { return basis.size() == 1 && basis[0].is_constant(); }
};

/// Thrown when a GbLimits bound is hit. Carries the basis built so far, which is
/// a generating set of the ideal but not necessarily a Gröbner basis.
struct ResourceLimitError : Error {
  ResourceLimitError(std::string limit, std::vector<MultiPoly> partial, GbStats stats)
      : Error("resource limit: " + limit), limit(std::move(limit)), partial_basis(std::move(partial)),
        stats(stats) {}
  std::string limit;
  std::vector<MultiPoly> partial_basis;
  GbStats stats;
};

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g, const MonomialOrder& ord);

/// Full remainder of multivariate division. Reducer: first basis element, in
/// descending leading-monomial order, whose leading monomial divides the term.
MultiPoly normal_form(const MultiPoly& p, const std::vector<MultiPoly>& basis, const MonomialOrder& ord);

GroebnerBasis buchberger(const PolySystem& sys, const GbLimits& limits = {});

bool ideal_member(const MultiPoly& p, const GroebnerBasis& gb);

/// Least k in 1..max_k with p^k in the ideal.
std::optional<unsigned> power_member(const MultiPoly& p, const GroebnerBasis& gb, unsigned max_k);

/// p in the radical, via 1 in I + <1 - u*p> for a fresh variable u.
bool radical_member(const MultiPoly& p, const PolySystem& sys, const GbLimits& limits = {});

/// Membership tier of p: 0 = ideal, k = power p^k (k <= max_power), radical, or none.
struct MembershipResult {
  enum class Tier { Ideal, Power, Radical, None, Unknown } tier = Tier::Unknown;
  unsigned power = 0;
  std::string detail;
  [[nodiscard]] bool member() const { return tier == Tier::Ideal || tier == Tier::Power || tier == Tier::Radical; }
  [[nodiscard]] std::string describe() const;
};

MembershipResult tiered_membership(const MultiPoly& p, const GroebnerBasis& gb, unsigned max_power,
                                   const GbLimits& radical_limits);

/// Generators of I ∩ Q[keep]: a Gröbner basis of the elimination ideal over a
/// table holding only `keep` (in sys.table order).
PolySystem eliminate(const PolySystem& sys, const std::vector<std::string>& keep, const GbLimits& limits = {});

/// Certificate checks: generators reduce to 0, S-pairs reduce to 0, and (when
/// `reduced`) monic with no term divisible by another leading monomial.
struct GbCheck {
  bool generators_reduce = true;
  bool spairs_reduce = true;
  bool reduced_form = true;
  [[nodiscard]] bool ok() const { return generators_reduce && spairs_reduce && reduced_form; }
};
GbCheck verify_groebner(const GroebnerBasis& gb);

}  // namespace rbu3
