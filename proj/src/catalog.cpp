#include "rbu3/catalog.hpp"

#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "rbu3/transform.hpp"

namespace rbu3 {

namespace {

struct RawEntry {
  const char* id;
  std::vector<std::string> params;
  std::vector<std::string> side;
  const char* provenance;
  std::map<std::string, std::string> images;
};

const char* const kNilpotent = "R(1)=0, Im R nilpotent";
const char* const kE11 = "R(1)=0, semisimple part of Im R is L(e11)";
const char* const kE22 = "R(1)=0, semisimple part of Im R is L(e22)";
const char* const kE11E22 = "R(1)=0, semisimple part of Im R is L(e11+e22)";
const char* const kE11E33 = "R(1)=0, semisimple part of Im R is L(e11+e33)";
const char* const kE11andE22 = "R(1)=0, semisimple part of Im R is L(e11,e22)";
const char* const kE11andE33 = "R(1)=0, semisimple part of Im R is L(e11,e33)";
const char* const kUnitE12 = "R(1)=e12";
const char* const kUnitE13 = "R(1)=e13";
const char* const kUnitE12E23 = "R(1)=e12+e23";

const std::vector<std::string> kKappa = {"kappa"};
const std::vector<std::string> kKappaSide = {"kappa != -1"};

std::vector<RawEntry> raw_entries() {
  return {
      {"R1",
       {"s_11_12", "s_11_13", "s_22_12", "s_22_13", "s_33_12", "s_33_13", "s_23_12", "s_23_13"},
       {},
       kNilpotent,
       {{"e11", "s_11_12*e12 + s_11_13*e13"},
        {"e22", "s_22_12*e12 + s_22_13*e13"},
        {"e33", "s_33_12*e12 + s_33_13*e13"},
        {"e23", "s_23_12*e12 + s_23_13*e13"}}},
      {"R2",
       {"s_11_13", "s_12_13", "s_22_13", "s_23_13", "s_33_13"},
       {},
       kNilpotent,
       {{"e11", "s_11_13*e13"}, {"e12", "s_12_13*e13"}, {"e22", "s_22_13*e13"}, {"e23", "s_23_13*e13"},
        {"e33", "s_33_13*e13"}}},
      {"R3", {}, {}, kE11, {{"e12", "-e11"}, {"e13", "e23"}}},
      {"R4", {}, {}, kE11, {{"e12", "e11"}, {"e22", "-e23"}, {"e33", "e23"}}},
      {"R5", {}, {}, kE11, {{"e12", "e11"}}},
      {"R6", {}, {}, kE11, {{"e13", "e11"}}},
      {"R7", {}, {}, kE22, {{"e13", "e12"}, {"e23", "e22"}}},
      {"R8", {}, {}, kE22, {{"e23", "e22"}}},
      {"R9", {}, {}, kE22, {{"e11", "-e13"}, {"e33", "e13"}, {"e23", "e22"}}},
      {"R10", {}, {}, kE11E22, {{"e13", "e11 + e22"}}},
      {"R11", {}, {}, kE11E22, {{"e23", "e11 + e22"}}},
      {"R12", {}, {}, kE11E22, {{"e23", "e11 + e22"}, {"e11", "e12"}, {"e22", "-e12"}}},
      {"R13", {}, {}, kE11E22, {{"e13", "e12"}, {"e23", "e11 + e22"}, {"e11", "e13"}, {"e22", "-e13"}}},
      {"R14", {}, {}, kE11E22, {{"e13", "e12"}, {"e23", "e11 + e22"}}},
      {"R15", {}, {}, kE11E33, {{"e13", "-e23"}, {"e12", "e11 + e33"}}},
      {"R16", {}, {}, kE11E33, {{"e13", "-e23"}, {"e12", "e11 + e33"}, {"e11", "-e23"}, {"e33", "e23"}}},
      {"R17", {}, {}, kE11E33, {{"e12", "e11 + e33"}}},
      {"R18", {}, {}, kE11E33, {{"e12", "e11 + e33"}, {"e11", "-e13"}, {"e33", "e13"}}},
      {"R19", {}, {}, kE11andE22, {{"e12", "e22"}, {"e13", "e11 + e22"}}},
      {"R20", {}, {}, kE11andE22, {{"e12", "e11"}, {"e23", "e11 + e22"}}},
      {"R21", {}, {}, kE11andE22, {{"e13", "e11"}, {"e23", "e22"}}},
      {"R22", {}, {}, kE11andE33, {{"e12", "e11 + e33"}, {"e13", "e33"}}},
      {"R23", {}, {}, kE11andE33, {{"e12", "e11"}, {"e23", "e33"}}},
      {"R24", {}, {}, kE11andE33, {{"e13", "e11"}, {"e23", "e11 + e33"}}},
      {"R25", {}, {}, kUnitE12, {{"e11", "e12"}, {"e23", "e11 + e22"}}},
      {"R26", kKappa, kKappaSide, kUnitE12, {{"e11", "kappa*e12"}, {"e22", "e12"}, {"e23", "e11 + e22"}}},
      {"R27", {}, {}, kUnitE12, {{"e11", "e12"}, {"e23", "e33"}}},
      {"R28", kKappa, kKappaSide, kUnitE12, {{"e11", "kappa*e12"}, {"e22", "e12"}, {"e23", "e33"}}},
      {"R29", {}, {}, kUnitE12, {{"e33", "e12"}, {"e13", "-e12"}, {"e23", "e11 + e33"}}},
      {"R30", {}, {}, kUnitE12, {{"e11", "e12"}, {"e33", "e12"}, {"e13", "e12"}, {"e23", "e22"}}},
      {"R31", kKappa, kKappaSide, kUnitE13, {{"e11", "e13"}, {"e33", "kappa*e13"}, {"e23", "e11 + e33"}}},
      {"R32", kKappa, kKappaSide, kUnitE13, {{"e11", "kappa*e13"}, {"e33", "e13"}, {"e23", "e11 + e33"}}},
      {"R33", {}, {}, kUnitE13, {{"e11", "e13"}, {"e23", "e22"}}},
      {"R34", kKappa, kKappaSide, kUnitE13, {{"e11", "kappa*e13"}, {"e23", "e22"}, {"e33", "e13"}}},
      {"R35", kKappa, kKappaSide, kUnitE13, {{"e11", "kappa*e13"}, {"e33", "e13"}, {"e23", "e22"}}},
      {"R36", kKappa, kKappaSide, kUnitE13, {{"e11", "e13"}, {"e33", "kappa*e13"}, {"e12", "e22"}}},
      {"R37", kKappa, kKappaSide, kUnitE13, {{"e11", "kappa*e13"}, {"e33", "e13"}, {"e12", "e22"}}},
      {"R38", kKappa, kKappaSide, kUnitE13, {{"e11", "e13"}, {"e33", "kappa*e13"}, {"e12", "e11 + e33"}}},
      {"R39", kKappa, kKappaSide, kUnitE13, {{"e11", "kappa*e13"}, {"e33", "e13"}, {"e12", "e11 + e33"}}},
      {"R40",
       {"b", "f"},
       {},
       kUnitE12E23,
       {{"e12", "e13"}, {"e11", "e12 + b*e13 + e23"}, {"e22", "f*e13 + e23"}, {"e33", "-b*e13 - f*e13"}}},
  };
}

Rational random_rational(std::mt19937& rng, bool nonzero) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  int p = num(rng);
  while (nonzero && p == 0) p = num(rng);
  return Rational(p, den(rng));
}

}  // namespace

POperator make_operator(const std::vector<std::string>& params, const std::map<std::string, std::string>& images,
                        int n, const Rational& weight) {
  const TablePtr table = make_table(params);
  POperator op(n, weight);
  for (const auto& [name, text] : images) {
    const auto idx = parse_basis_name(name, n);
    if (!idx) throw Error("unknown basis element '" + name + "'");
    op.set_image(*idx, parse_matrix(text, table, n));
  }
  // Give every coefficient the shared parameter table.
  return op.map([&](const MultiPoly& p) { return p.with_table(table); });
}

std::vector<CatalogEntry> catalog_entries() {
  std::vector<CatalogEntry> out;
  for (auto& r : raw_entries()) {
    out.push_back({r.id, r.params, r.side, r.provenance, make_operator(r.params, r.images)});
  }
  return out;
}

UncertifiedEntries::UncertifiedEntries(std::vector<std::string> ids_)
    : Error([&] {
        std::string s = "catalog entries with nonzero residual:";
        for (const auto& id : ids_) s += " " + id;
        return s;
      }()),
      ids(std::move(ids_)) {}

std::vector<CatalogEntry> build_catalog() {
  auto entries = catalog_entries();
  std::vector<std::string> bad;
  for (const auto& e : entries) {
    if (!is_rota_baxter(e.op)) bad.push_back(e.id);
  }
  if (!bad.empty()) throw UncertifiedEntries(bad);
  return entries;
}

std::optional<CatalogEntry> find_entry(const std::vector<CatalogEntry>& entries, const std::string& id) {
  for (const auto& e : entries) {
    if (e.id == id) return e;
  }
  return std::nullopt;
}

RbIndexReport rb_index(const std::vector<CatalogEntry>& entries) {
  RbIndexReport rep;
  for (const auto& e : entries) {
    const auto deg = operator_nilpotency(e.op);
    const int d = deg ? *deg : -1;
    rep.degrees.emplace_back(e.id, d);
    if (!e.op.compose(e.op).is_zero()) rep.square_nonzero.push_back(e.id);
    if (d < 0) rep.index = -1;
    else if (rep.index >= 0) rep.index = std::max(rep.index, d);
  }
  return rep;
}

int image_dimension(const CatalogEntry& entry) { return generic_rank(entry.op); }

int image_dimension(const CatalogEntry& entry, const std::map<std::string, Rational>& at) {
  return static_cast<int>(rank(to_dense(specialize(entry.op, at))));
}

std::optional<ResidualFailure> first_residual_failure(const POperator& op, std::size_t* count) {
  const auto res = rb_residual(op);
  if (count) *count = res.failures();
  const auto f = res.first_failure();
  if (!f) return std::nullopt;
  const auto& [idx, v] = *f->value.entries().begin();
  return ResidualFailure{f->u.name(), f->v.name(), idx.name(), f->value.to_string()};
}

bool EntryReport::ok() const {
  return residual_zero && samples_zero == samples && nilpotency > 0 && unit_image_consistent && lemma3.ok() &&
         closure.ok();
}

EntryReport verify_entry(const CatalogEntry& entry, int samples, unsigned seed) {
  EntryReport r;
  r.id = entry.id;
  r.provenance = entry.provenance;
  r.params = entry.params;
  r.first_failure = first_residual_failure(entry.op, &r.failing_pairs);
  r.residual_zero = !r.first_failure.has_value();

  const auto deg = operator_nilpotency(entry.op);
  r.nilpotency = deg ? *deg : -1;
  r.square_zero = entry.op.compose(entry.op).is_zero();
  r.image_dim = image_dimension(entry);
  r.lemma3 = check_lemma3(entry.op);

  PMatrix diag(entry.op.n());
  for (int i = 1; i <= entry.op.n(); ++i) diag += entry.op.image(BasisIndex{i, i});
  r.unit_image_consistent = diag == image_of_unit(entry.op);

  std::mt19937 rng(seed);
  for (int s = 0; s < samples; ++s) {
    std::map<std::string, Rational> at;
    for (const auto& p : entry.params) at[p] = random_rational(rng, false);
    ++r.samples;
    if (is_rota_baxter(specialize(entry.op, at))) ++r.samples_zero;
  }

  // Closure: every transform is invertible, so the residual must vanish after
  // the transform exactly when it vanished before.
  const AlgebraMap theta = theta13();
  for (int t = 0; t < samples; ++t) {
    ++r.closure.trials;
    const Rational k = random_rational(rng, true);
    if (is_rota_baxter(scale_operator(entry.op, k)) != r.residual_zero) ++r.closure.scaling_failures;
    AutoParams p;
    p.alpha = random_rational(rng, true);
    p.delta = random_rational(rng, true);
    p.beta = random_rational(rng, false);
    p.gamma = random_rational(rng, false);
    p.epsilon = random_rational(rng, false);
    const AlgebraMap psi = build_psi(p);
    if (is_rota_baxter(conjugate_operator(entry.op, psi)) != r.residual_zero) ++r.closure.psi_failures;
    const POperator th = conjugate_operator(conjugate_operator(entry.op, theta), psi);
    if (is_rota_baxter(th) != r.residual_zero) ++r.closure.theta_failures;
  }
  return r;
}

VerifyReport verify_all(const VerifyOptions& options) {
  const auto all = catalog_entries();
  std::vector<CatalogEntry> chosen;
  if (options.families.empty()) {
    chosen = all;
  } else {
    for (const auto& id : options.families) {
      auto e = find_entry(all, id);
      if (!e) throw Error("unknown family '" + id + "'");
      chosen.push_back(*e);
    }
  }

  VerifyReport rep;
  rep.entries.resize(chosen.size());
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(chosen.size())));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < chosen.size(); i += jobs) {
      // Seed per entry position in the full catalog, so results do not depend on jobs.
      const auto pos = static_cast<unsigned>(
          std::find_if(all.begin(), all.end(), [&](const CatalogEntry& e) { return e.id == chosen[i].id; }) -
          all.begin());
      rep.entries[i] = verify_entry(chosen[i], options.samples, options.seed * 1000003u + pos);
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  rep.rb = rb_index(chosen);
  return rep;
}

std::size_t VerifyReport::passed() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.ok(); }));
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  os << std::left << std::setw(5) << "id" << std::setw(10) << "residual" << std::setw(8) << "R^k=0" << std::setw(7)
     << "dimIm" << std::setw(8) << "lemma3" << std::setw(9) << "closure" << "provenance\n";
  for (const auto& e : entries) {
    os << std::setw(5) << e.id << std::setw(10) << (e.residual_zero ? "zero" : "NONZERO") << std::setw(8)
       << (e.nilpotency > 0 ? std::to_string(e.nilpotency) : "-") << std::setw(7) << e.image_dim << std::setw(8)
       << (e.lemma3.ok() ? "ok" : "FAIL") << std::setw(9)
       << (e.closure.ok() ? "ok" : "FAIL") << e.provenance << "\n";
    if (e.first_failure) {
      const auto& f = *e.first_failure;
      os << "     residual(" << f.u << ", " << f.v << ") = " << f.value << "  [first nonzero at " << f.position
         << ", " << e.failing_pairs << " failing pairs]\n";
    }
  }
  os << passed() << "/" << entries.size() << (ok() ? " OK" : " passed") << ", rb-index " << rb.index;
  if (!rb.square_nonzero.empty()) {
    os << ", R^2 != 0 for";
    for (const auto& id : rb.square_nonzero) os << " " << id;
  }
  os << "\n";
  return os.str();
}

std::vector<Mutation> standard_mutations() {
  return {
      {"R7", "e23", "e13"},  {"R3", "e12", "e12"},  {"R4", "e11", "e11"},  {"R5", "e13", "e22"},
      {"R6", "e12", "e33"},  {"R8", "e22", "e11"},  {"R9", "e13", "e13"},  {"R10", "e11", "e23"},
      {"R11", "e23", "e12"}, {"R14", "e12", "e22"}, {"R17", "e33", "e33"}, {"R19", "e23", "e11"},
      {"R21", "e22", "e22"}, {"R25", "e12", "e11"}, {"R27", "e13", "e33"}, {"R30", "e22", "e23"},
      {"R33", "e33", "e11"}, {"R36", "e23", "e13"}, {"R40", "e13", "e12"}, {"R1", "e12", "e12"},
  };
}

CatalogEntry apply_mutation(const CatalogEntry& entry, const Mutation& m) {
  CatalogEntry out = entry;
  const auto idx = parse_basis_name(m.image, entry.op.n());
  if (!idx) throw Error("unknown basis element '" + m.image + "'");
  const TablePtr table = make_table(entry.params);
  PMatrix img = entry.op.image(*idx) + parse_matrix(m.delta, table, entry.op.n());
  out.op.set_image(*idx, img.map([&](const MultiPoly& p) { return p.with_table(table); }));
  out.id = entry.id + "+mut";
  return out;
}

}  // namespace rbu3
