// Command-line front end. Exit codes: 0 pass, 1 check failure, 2 usage or
// parse error, 3 resource limit.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "rbu3/cases.hpp"
#include "rbu3/catalog.hpp"
#include "rbu3/io.hpp"
#include "rbu3/transform.hpp"

using namespace rbu3;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2, kLimit = 3;

/// "-" writes to stdout; empty writes nothing.
void emit_json(const std::string& path, const Json& j) {
  if (path.empty()) return;
  if (path == "-") std::cout << dump(j);
  else write_json_file(path, j);
}

bool to_stdout(const std::string& json_path) { return json_path != "-"; }

MonomialOrder parse_order(const std::string& s, std::size_t nvars) {
  if (s == "lex") return MonomialOrder::lex(nvars);
  if (s == "grevlex") return MonomialOrder::grevlex(nvars);
  if (s.rfind("elim:", 0) == 0) return order_from_json(Json{{"elim", std::stoul(s.substr(5))}}, nvars);
  throw Error("unknown order '" + s + "' (lex, grevlex or elim:K)");
}

GbLimits make_limits(std::size_t max_pairs, double timeout) {
  GbLimits l = timeout > 0 ? GbLimits::seconds(timeout) : GbLimits{};
  l.max_pairs = max_pairs;
  return l;
}

// ------------------------------------------------------------------ commands

struct VerifyArgs {
  std::vector<std::string> families;
  int samples = 100;
  unsigned jobs = 0;
  unsigned seed = 1;
  std::string json;
};

int cmd_verify_catalog(const VerifyArgs& a) {
  const auto all = catalog_entries();
  for (const auto& id : a.families) {
    if (!find_entry(all, id)) {
      std::cerr << "error: unknown family '" << id << "'\n";
      return kUsage;
    }
  }
  VerifyOptions o;
  o.families = a.families;
  o.samples = a.samples;
  o.seed = a.seed;
  o.jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  const VerifyReport r = verify_all(o);
  if (to_stdout(a.json)) std::cout << r.text();
  emit_json(a.json, verify_report_to_json(r));
  return r.ok() ? kPass : kFail;
}

int cmd_check(const std::string& file, const std::string& weight, const std::string& json) {
  OperatorFile f = operator_from_json(read_json_file(file));
  if (!weight.empty()) f.op.set_weight(Rational::parse(weight));
  std::size_t count = 0;
  const auto fail = first_residual_failure(f.op, &count);
  if (to_stdout(json)) {
    std::cout << "RB weight " << f.op.weight() << ": " << (fail ? "NO" : "YES") << "\n";
    if (fail) {
      std::cout << "residual(" << fail->u << ", " << fail->v << ") = " << fail->value << "  [" << count
                << " failing pairs]\n";
    }
  }
  Json j = {{"schema", kSchemaVersion}, {"weight", f.op.weight().to_string()}, {"rota_baxter", !fail},
            {"failing_pairs", count}};
  if (fail) j["first_failure"] = {{"u", fail->u}, {"v", fail->v}, {"position", fail->position}, {"value", fail->value}};
  emit_json(json, j);
  return fail ? kFail : kPass;
}

int cmd_system(const std::string& preset, const std::string& ansatz_file, const std::string& out) {
  Ansatz a;
  if (!preset.empty()) {
    a = build_ansatz(find_preset(preset).ansatz);
  } else {
    const Json j = read_json_file(ansatz_file);
    const auto lines = j.at("ansatz").get<std::vector<std::string>>();
    a = build_ansatz(lines, j.value("n", 3), Rational::parse(j.value("weight", std::string("0"))));
  }
  const GeneratedSystem g = generate_system(a);
  emit_json(out.empty() ? "-" : out, system_to_json(g.system));
  return kPass;
}

int cmd_gb(const std::string& file, const std::string& order, std::size_t max_pairs, double timeout,
           const std::string& json) {
  PolySystem sys = system_from_json(read_json_file(file));
  if (!order.empty()) sys.order = parse_order(order, sys.table ? sys.table->size() : 0);
  const GroebnerBasis gb = buchberger(sys, make_limits(max_pairs, timeout));
  if (to_stdout(json)) {
    std::cout << "order " << sys.order.describe() << ", " << sys.generators.size() << " generators, basis "
              << gb.basis.size() << " elements, " << gb.stats.pairs_processed << " pairs\n";
    for (const auto& g : gb.basis) std::cout << "  " << g << "\n";
  }
  emit_json(json, gb_to_json(gb));
  return kPass;
}

int cmd_member(const std::string& file, const std::string& poly, unsigned max_power, double timeout,
               const std::string& json) {
  const PolySystem sys = system_from_json(read_json_file(file));
  const MultiPoly p = parse_poly(poly, sys.table);
  const GbLimits limits = make_limits(0, timeout);
  const GroebnerBasis gb = buchberger(sys, limits);
  const MembershipResult m = tiered_membership(p, gb, max_power, limits);
  if (to_stdout(json)) std::cout << p << ": " << m.describe() << "\n";
  emit_json(json, {{"schema", kSchemaVersion}, {"poly", p.to_string()}, {"member", m.member()}, {"tier", m.describe()}});
  if (m.tier == MembershipResult::Tier::Unknown) return kLimit;
  return m.member() ? kPass : kFail;
}

int cmd_canonicalize(const std::string& text, const std::string& json) {
  const QMatrix x = parse_rational_matrix(text);
  std::string form;
  QMatrix canonical;
  Witness w;
  if (x.is_strictly_upper()) {
    const NilpotentForm f = canonicalize_nilpotent(x);
    form = f.form, canonical = f.canonical, w = f.witness;
  } else if (is_idempotent(x)) {
    const IdempotentForm f = canonicalize_idempotent(x);
    form = f.form, canonical = f.canonical, w = f.witness;
  } else {
    throw Error("matrix is neither nilpotent nor idempotent");
  }
  const bool replay = w.act(x) == canonical;
  if (to_stdout(json)) {
    std::cout << "form " << form << "\nwitness " << w.describe() << "\nreplay " << (replay ? "ok" : "FAILED") << "\n";
  }
  Json j = witness_to_json(w);
  j["form"] = form;
  j["canonical"] = canonical.to_string();
  j["replay"] = replay;
  emit_json(json, j);
  return replay ? kPass : kFail;
}

struct ConjArgs {
  std::string file;
  std::optional<std::string> alpha, beta, gamma, delta, epsilon;
  bool theta = false;
  std::string scale;
  std::string out;
};

int cmd_conjugate(const ConjArgs& a) {
  const OperatorFile f = operator_from_json(read_json_file(a.file));
  Witness w;
  if (a.theta) w.maps.push_back(theta13());
  if (a.alpha || a.beta || a.gamma || a.delta || a.epsilon) {
    AutoParams p;
    auto set = [](const std::optional<std::string>& s, Rational& r) {
      if (s) r = Rational::parse(*s);
    };
    set(a.alpha, p.alpha);
    set(a.beta, p.beta);
    set(a.gamma, p.gamma);
    set(a.delta, p.delta);
    set(a.epsilon, p.epsilon);
    w.maps.push_back(build_psi(p));
  }
  if (!a.scale.empty()) w.scalar = Rational::parse(a.scale);
  const POperator r = w.replay(f.op);
  Json j = operator_to_json(r, f.params);
  emit_json(a.out.empty() ? "-" : a.out, j);
  return kPass;
}

int cmd_find_conj(const std::string& f1, const std::string& f2, bool allow_theta, bool no_scaling,
                  const std::string& json) {
  const QOperator r = to_rational(operator_from_json(read_json_file(f1)).op);
  const QOperator s = to_rational(operator_from_json(read_json_file(f2)).op);
  ConjugationOptions o;
  o.allow_theta = allow_theta;
  o.allow_scaling = !no_scaling;
  const ConjugationResult res = find_conjugation(r, s, o);
  if (to_stdout(json)) {
    if (res.found()) {
      std::cout << "witness " << res.witness->describe() << "\nreplay "
                << (res.witness->replay(r) == s ? "ok" : "FAILED") << "\n";
    } else {
      std::cout << "no witness found; disjointness certificate: " << (res.disjoint_certificate() ? "yes" : "no")
                << "\n";
    }
    for (const auto& n : res.notes) std::cout << "note: " << n << "\n";
  }
  Json j = res.found() ? witness_to_json(*res.witness) : Json{{"schema", kSchemaVersion}};
  j["found"] = res.found();
  j["disjoint_certificate"] = res.disjoint_certificate();
  emit_json(json, j);
  return res.found() ? kPass : kFail;
}

int cmd_rb_index(const std::string& file, const std::string& json) {
  if (!file.empty()) {
    const OperatorFile f = operator_from_json(read_json_file(file));
    const auto deg = operator_nilpotency(f.op);
    if (to_stdout(json)) {
      if (deg) std::cout << "R^" << *deg << " = 0, R^" << (*deg - 1) << " != 0\n";
      else std::cout << "R is not nilpotent\n";
    }
    emit_json(json, {{"schema", kSchemaVersion}, {"nilpotency", deg ? *deg : -1}});
    return kPass;
  }
  const RbIndexReport r = rb_index(catalog_entries());
  if (to_stdout(json)) {
    std::cout << "rb-index " << r.index << "\nR^2 != 0 for";
    for (const auto& id : r.square_nonzero) std::cout << " " << id;
    std::cout << "\n";
  }
  Json degrees = Json::object();
  for (const auto& [id, d] : r.degrees) degrees[id] = d;
  emit_json(json, {{"schema", kSchemaVersion}, {"rb_index", r.index}, {"degrees", degrees},
                   {"square_nonzero", r.square_nonzero}});
  return kPass;
}

int cmd_case(const std::string& preset, const std::string& file, double timeout, unsigned max_power, bool list,
             const std::string& json) {
  if (list) {
    for (const auto& c : case_presets()) std::cout << c.name << "  " << c.title << "\n";
    return kPass;
  }
  const CaseSpec spec = !preset.empty() ? find_preset(preset) : case_spec_from_json(read_json_file(file));
  CaseOptions o;
  o.budget_seconds = timeout;
  o.max_power = max_power;
  const CaseReport r = run_case(spec, o);
  if (to_stdout(json)) std::cout << r.text();
  emit_json(json, case_report_to_json(r));
  if (r.ok()) return kPass;
  const bool limited = std::any_of(r.items.begin(), r.items.end(),
                                   [](const CaseItem& i) { return !i.pass && i.detail.rfind("unknown", 0) == 0; });
  return limited ? kLimit : kFail;
}

int cmd_export(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(dir) / "cases");
  write_json_file((fs::path(dir) / "catalog.json").string(), catalog_to_json(catalog_entries()));
  for (const auto& c : case_presets()) {
    write_json_file((fs::path(dir) / "cases" / (c.name + ".json")).string(), case_spec_to_json(c));
  }
  std::cout << "wrote " << dir << "/catalog.json and " << case_presets().size() << " case files\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rota-Baxter operators on upper-triangular 3x3 matrices"};
  app.require_subcommand(1);
  std::function<int()> run;

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify-catalog", "Certify the catalog families");
  verify->add_option("--family", va.families, "Family id such as R40 (repeatable)");
  verify->add_option("--samples", va.samples, "Random trials per family")->check(CLI::NonNegativeNumber);
  verify->add_option("--jobs", va.jobs, "Worker threads (0 = all cores)");
  verify->add_option("--seed", va.seed, "Random seed");
  verify->add_option("--json", va.json, "Write the JSON report here ('-' for stdout)");
  verify->callback([&] { run = [&] { return cmd_verify_catalog(va); }; });

  std::string file, file2, weight, json, preset, ansatz, order, poly, matrix;
  std::size_t max_pairs = 0;
  double timeout = 0;
  unsigned max_power = 4;

  auto* check = app.add_subcommand("check", "Check the RB identity of an operator file");
  check->add_option("file", file, "Operator JSON")->required();
  check->add_option("--weight", weight, "Override the weight");
  check->add_option("--json", json, "Write the JSON result here ('-' for stdout)");
  check->callback([&] { run = [&] { return cmd_check(file, weight, json); }; });

  auto* system = app.add_subcommand("system", "Generate the polynomial system of an ansatz");
  auto* sp = system->add_option("--preset", preset, "Case preset name");
  system->add_option("--ansatz", ansatz, "JSON file with an \"ansatz\" list")->excludes(sp);
  system->add_option("-o,--output", json, "Output path (default stdout)");
  system->callback([&] {
    if (preset.empty() && ansatz.empty()) throw CLI::ValidationError("system", "need --preset or --ansatz");
    run = [&] { return cmd_system(preset, ansatz, json); };
  });

  auto* gb = app.add_subcommand("gb", "Reduced Groebner basis of a system file");
  gb->add_option("file", file, "System JSON")->required();
  gb->add_option("--order", order, "lex, grevlex or elim:K (default: the file's order)");
  gb->add_option("--max-pairs", max_pairs, "Stop after this many S-pairs");
  gb->add_option("--timeout", timeout, "Seconds before giving up");
  gb->add_option("--json", json, "Write the GB report here ('-' for stdout)");
  gb->callback([&] { run = [&] { return cmd_gb(file, order, max_pairs, timeout, json); }; });

  auto* member = app.add_subcommand("member", "Ideal, power or radical membership of a polynomial");
  member->add_option("file", file, "System JSON")->required();
  member->add_option("poly", poly, "Polynomial over the system's variables")->required();
  member->add_option("--max-power", max_power, "Largest power tried before the radical test");
  member->add_option("--timeout", timeout, "Seconds before giving up");
  member->add_option("--json", json, "Write the JSON result here ('-' for stdout)");
  member->callback([&] { run = [&] { return cmd_member(file, poly, max_power, timeout, json); }; });

  auto* canon = app.add_subcommand("canonicalize", "Canonical form of a nilpotent or idempotent element");
  canon->add_option("matrix", matrix, "Matrix such as \"e12 + 2*e23\"")->required();
  canon->add_option("--json", json, "Write the witness here ('-' for stdout)");
  canon->callback([&] { run = [&] { return cmd_canonicalize(matrix, json); }; });

  ConjArgs ca;
  auto* conj = app.add_subcommand("conjugate", "Conjugate an operator by theta13 and/or psi, then scale");
  conj->add_option("file", ca.file, "Operator JSON")->required();
  conj->add_option("--alpha", ca.alpha);
  conj->add_option("--beta", ca.beta);
  conj->add_option("--gamma", ca.gamma);
  conj->add_option("--delta", ca.delta);
  conj->add_option("--epsilon", ca.epsilon);
  conj->add_flag("--theta", ca.theta, "Apply theta13 first");
  conj->add_option("--scale", ca.scale, "Divide the result by this scalar");
  conj->add_option("-o,--output", ca.out, "Output path (default stdout)");
  conj->callback([&] { run = [&] { return cmd_conjugate(ca); }; });

  bool allow_theta = false, no_scaling = false;
  auto* fc = app.add_subcommand("find-conj", "Search psi (and theta13) and k with k^-1 psi^-1 R psi = S");
  fc->add_option("first", file, "Operator JSON for R")->required();
  fc->add_option("second", file2, "Operator JSON for S")->required();
  fc->add_flag("--allow-theta", allow_theta, "Also try theta13 before psi");
  fc->add_flag("--no-scaling", no_scaling, "Require k = 1");
  fc->add_option("--json", json, "Write the witness here ('-' for stdout)");
  fc->callback([&] { run = [&] { return cmd_find_conj(file, file2, allow_theta, no_scaling, json); }; });

  auto* rbi = app.add_subcommand("rb-index", "Nilpotency degree of an operator, or the catalog's RB index");
  rbi->add_option("file", file, "Operator JSON (default: the whole catalog)");
  rbi->add_option("--json", json, "Write the JSON result here ('-' for stdout)");
  rbi->callback([&] { run = [&] { return cmd_rb_index(file, json); }; });

  bool list = false;
  double case_timeout = 600;
  auto* cs = app.add_subcommand("case", "Replay a case: GB, reductions, relations and solutions");
  cs->add_option("--preset", preset, "Preset name (see --list)");
  cs->add_option("--file", file, "Case spec JSON");
  cs->add_flag("--list", list, "List the presets");
  cs->add_option("--timeout", case_timeout, "Budget in seconds");
  cs->add_option("--max-power", max_power, "Largest power tried before the radical test");
  cs->add_option("--json", json, "Write the JSON report here ('-' for stdout)");
  cs->callback([&] {
    if (!list && preset.empty() && file.empty()) throw CLI::ValidationError("case", "need --preset, --file or --list");
    run = [&] { return cmd_case(preset, file, case_timeout, max_power, list, json); };
  });

  std::string dir;
  auto* ex = app.add_subcommand("export", "Write catalog.json and cases/*.json");
  ex->add_option("dir", dir, "Target directory")->required();
  ex->callback([&] { run = [&] { return cmd_export(dir); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  try {
    return run();
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kLimit;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
