#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rbu3/rb.hpp"

namespace rbu3 {

/// One family of the weight-zero classification on U_3. Parameters are free
/// indeterminates; side conditions only single out representatives and are
/// never assumed when checking the RB identity.
struct CatalogEntry {
  std::string id;
  std::vector<std::string> params;
  std::vector<std::string> side_conditions;
  std::string provenance;
  POperator op;
};

/// The 40 families exactly as displayed, without any certification.
std::vector<CatalogEntry> catalog_entries();

/// Builds the operator of an entry from per-image strings over `params`.
POperator make_operator(const std::vector<std::string>& params, const std::map<std::string, std::string>& images,
                        int n = 3, const Rational& weight = Rational(0));

struct UncertifiedEntries : Error {
  explicit UncertifiedEntries(std::vector<std::string> ids);
  std::vector<std::string> ids;
};

/// Catalog with every residual certified identically zero. Throws
/// UncertifiedEntries naming each family whose residual does not vanish.
std::vector<CatalogEntry> build_catalog();

std::optional<CatalogEntry> find_entry(const std::vector<CatalogEntry>& entries, const std::string& id);

struct RbIndexReport {
  int index = 0;                                   ///< max degree; -1 if some entry is not nilpotent
  std::vector<std::pair<std::string, int>> degrees;
  std::vector<std::string> square_nonzero;         ///< entries with R^2 != 0, catalog order
};

RbIndexReport rb_index(const std::vector<CatalogEntry>& entries);

/// Rank over the rational function field of the parameters.
int image_dimension(const CatalogEntry& entry);
int image_dimension(const CatalogEntry& entry, const std::map<std::string, Rational>& at);

struct ResidualFailure {
  std::string u, v, position;
  std::string value;
};

struct ClosureStats {
  int trials = 0;
  int scaling_failures = 0;
  int psi_failures = 0;
  int theta_failures = 0;
  [[nodiscard]] bool ok() const { return scaling_failures + psi_failures + theta_failures == 0; }
};

struct EntryReport {
  std::string id;
  std::string provenance;
  std::vector<std::string> params;
  bool residual_zero = false;
  std::size_t failing_pairs = 0;
  std::optional<ResidualFailure> first_failure;
  /// Random specializations of the parameters with a zero rational residual.
  int samples = 0;
  int samples_zero = 0;
  int nilpotency = -1;
  bool square_zero = false;
  int image_dim = 0;
  bool unit_image_consistent = false;  ///< R(1) equals the sum of the diagonal images
  Lemma3Report lemma3;
  ClosureStats closure;
  [[nodiscard]] bool ok() const;
};

struct VerifyOptions {
  int samples = 100;
  unsigned seed = 1;
  unsigned jobs = 1;
  std::vector<std::string> families;  ///< empty = all
};

struct VerifyReport {
  std::vector<EntryReport> entries;
  RbIndexReport rb;
  [[nodiscard]] std::size_t passed() const;
  [[nodiscard]] bool ok() const { return passed() == entries.size(); }
  [[nodiscard]] std::string text() const;
};

/// Residual certification, lemma checks, nilpotency, image dimension and the
/// randomized scaling/conjugation closure trials for each requested family.
/// Throws Error on an unknown family id.
VerifyReport verify_all(const VerifyOptions& options = {});
EntryReport verify_entry(const CatalogEntry& entry, int samples, unsigned seed);

/// A deliberate corruption: `delta` is added to R(image).
struct Mutation {
  std::string entry;
  std::string image;
  std::string delta;
};

std::vector<Mutation> standard_mutations();
CatalogEntry apply_mutation(const CatalogEntry& entry, const Mutation& m);

/// First nonzero residual of an operator, if any.
std::optional<ResidualFailure> first_residual_failure(const POperator& op, std::size_t* count = nullptr);

}  // namespace rbu3
