#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rbu3/groebner.hpp"
#include "rbu3/rb.hpp"

namespace rbu3 {

/// A claimed solution family, written in the case's own frame.
struct CaseSolution {
  std::string label;
  std::string entry;  ///< catalog family it represents
  std::vector<std::string> params;
  std::map<std::string, std::string> images;
};

/// One case of the classification, replayed from its hypotheses.
///
/// `ansatz` lines take three forms: "R(<combination>) = <matrix>",
/// "R(*) in span(e12, e13)" (every image avoids the other slots), or a linear
/// polynomial in the coefficients b_ij_kl set to zero.
///
/// `display` is the case's simplified operator written in `letters`. Each
/// letter aliases the coefficient of a slot where it appears alone; every
/// other display slot is a reduction certified against the full system.
/// `branch` polynomials (in letters) are set to zero and `nonzero` ones are
/// inverted by an auxiliary variable. `relations` are certified in the display
/// system, `full_relations` (in b_ij_kl) in the full system.
struct CaseSpec {
  std::string name;
  std::string title;
  std::vector<std::string> ansatz;
  std::vector<std::string> letters;
  std::map<std::string, std::string> display;
  std::vector<std::string> branch;
  std::vector<std::string> nonzero;
  std::vector<std::string> relations;
  std::vector<std::string> full_relations;
  std::vector<CaseSolution> solutions;
};

/// Applies one ansatz line to `a`. Throws ParseError on malformed input.
void add_ansatz_line(Ansatz& a, const std::string& line);
Ansatz build_ansatz(const std::vector<std::string>& lines, int n = 3, const Rational& weight = Rational(0));

std::vector<CaseSpec> case_presets();
/// Throws Error for an unknown preset.
CaseSpec find_preset(const std::string& name);

struct CaseOptions {
  double budget_seconds = 600;
  unsigned max_power = 4;
};

struct CaseItem {
  enum class Kind { Reduction, Relation, FullRelation, Solution };
  Kind kind = Kind::Relation;
  std::string text;
  bool pass = false;
  std::string detail;  ///< membership tier or the reason for failure
};

struct CaseReport {
  std::string name;
  std::string title;
  std::size_t full_vars = 0, full_generators = 0, full_basis = 0;
  double full_seconds = 0;
  bool full_completed = false;
  std::size_t display_vars = 0, display_generators = 0, display_basis = 0;
  double display_seconds = 0;
  std::map<std::string, std::string> aliases;  ///< letter -> coefficient expression
  std::vector<CaseItem> items;

  [[nodiscard]] bool ok() const;
  [[nodiscard]] std::string text() const;
};

/// Generates the full system, computes its Gröbner basis within the budget,
/// certifies reductions, relations and solutions. A budget overrun leaves the
/// items that need the full basis failed with detail "unknown: resource limit";
/// display-system items still complete.
CaseReport run_case(const CaseSpec& spec, const CaseOptions& options = {});

}  // namespace rbu3
