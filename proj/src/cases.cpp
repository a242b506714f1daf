#include "rbu3/cases.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

#include "rbu3/catalog.hpp"

namespace rbu3 {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

/// substitute() restricted to the bindings that `p` actually has in its table.
MultiPoly bind_vars(const MultiPoly& p, const std::map<std::string, MultiPoly>& bindings, const TablePtr& target) {
  if (!p.table()) return p.with_table(target);
  std::map<std::string, MultiPoly> used;
  for (const auto& name : p.table()->names()) {
    auto it = bindings.find(name);
    if (it != bindings.end()) used.emplace(name, it->second);
  }
  return substitute(p, used, target);
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void add_ansatz_line(Ansatz& a, const std::string& line_in) {
  const std::string line = trim(line_in);
  if (line.rfind("R(*)", 0) == 0) {
    const std::string rest = trim(std::string_view(line).substr(4));
    if (rest.rfind("in span(", 0) != 0 || rest.back() != ')') throw ParseError("expected 'in span(...)'", 5);
    std::vector<BasisIndex> keep;
    std::stringstream ss(rest.substr(8, rest.size() - 9));
    for (std::string tok; std::getline(ss, tok, ',');) {
      const auto idx = parse_basis_name(trim(tok), a.n);
      if (!idx) throw ParseError("'" + trim(tok) + "' is not a basis element", line.find(trim(tok)));
      keep.push_back(*idx);
    }
    for (const auto& b : basis_of(a.n)) {
      if (std::find(keep.begin(), keep.end(), b) == keep.end()) a.zero_slot_everywhere(b);
    }
    return;
  }
  const auto eq = line.find('=');
  if (line.rfind("R(", 0) == 0) {
    const auto close = line.find(')');
    if (close == std::string::npos || eq == std::string::npos || eq < close) {
      throw ParseError("expected 'R(<combination>) = <matrix>'", 0);
    }
    const QMatrix w = parse_rational_matrix(line.substr(2, close - 2), a.n);
    std::map<BasisIndex, Rational> weights(w.entries().begin(), w.entries().end());
    a.fix_combination(weights, parse_rational_matrix(line.substr(eq + 1), a.n));
    return;
  }
  const TablePtr t = coefficient_table(a.n);
  MultiPoly c = parse_poly(line.substr(0, eq), t);
  if (eq != std::string::npos) c -= parse_poly(line.substr(eq + 1), t);
  a.constraints.push_back(c);
}

Ansatz build_ansatz(const std::vector<std::string>& lines, int n, const Rational& weight) {
  Ansatz a;
  a.n = n;
  a.weight = weight;
  for (const auto& l : lines) add_ansatz_line(a, l);
  return a;
}

std::vector<CaseSpec> case_presets() {
  std::vector<CaseSpec> out;

  {
    CaseSpec c;
    c.name = "im-nilpotent";
    c.title = "R(1)=0 with Im R nilpotent";
    c.ansatz = {"R(e11 + e22 + e33) = 0", "R(*) in span(e12, e13, e23)"};
    c.letters = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"};
    c.display = {{"e11", "-e*e12 - h*e12 - f*e13 - i*e13 - g*e23 - j*e23"},
                 {"e12", "a*e13 + b*e23"},
                 {"e13", "0"},
                 {"e22", "e*e12 + f*e13 + g*e23"},
                 {"e23", "c*e12 + d*e13"},
                 {"e33", "h*e12 + i*e13 + j*e23"}};
    for (const char* x : {"c", "e", "h"}) c.relations.push_back(std::string(x) + "*a");
    for (const char* x : {"c", "d", "e", "h"}) {
      for (const char* y : {"b", "g", "j"}) c.relations.push_back(std::string(x) + "*" + y);
    }
    c.solutions = {
        {"span(e12,e13) images, R(e12)=R(e13)=R(1)=0",
         "R1",
         {"p1", "p2", "p3", "p4", "p5", "p6"},
         {{"e22", "p1*e12 + p2*e13"},
          {"e23", "p3*e12 + p4*e13"},
          {"e33", "p5*e12 + p6*e13"},
          {"e11", "-p1*e12 - p5*e12 - p2*e13 - p6*e13"}}},
        {"span(e13) images, R(e13)=R(1)=0",
         "R2",
         {"q1", "q2", "q3", "q4"},
         {{"e12", "q1*e13"}, {"e22", "q2*e13"}, {"e23", "q3*e13"}, {"e33", "q4*e13"}, {"e11", "-q2*e13 - q4*e13"}}},
        {"span(e13,e23) images, R(e13)=R(e23)=R(1)=0",
         "R1",
         {"p1", "p2", "p3", "p4", "p5", "p6"},
         {{"e12", "p1*e13 + p2*e23"},
          {"e22", "p3*e13 + p4*e23"},
          {"e33", "p5*e13 + p6*e23"},
          {"e11", "-p3*e13 - p5*e13 - p4*e23 - p6*e23"}}},
    };
    out.push_back(c);
  }

  const std::map<std::string, std::string> unit_e12_display = {
      {"e11", "e12 - a*e12 - c*e12 - b*e13 - d*e13"},
      {"e12", "0"},
      {"e13", "i*e12 - f*e12"},
      {"e22", "a*e12 + b*e13"},
      {"e23", "f*e11 + g*e12 + h*e13 + i*e22 + j*e33"},
      {"e33", "c*e12 + d*e13"}};
  const std::vector<std::string> unit_e12_letters = {"a", "b", "c", "d", "f", "g", "h", "i", "j"};
  const CaseSolution r30_half = {"R30 scaled by 1/2",
                                 "R30",
                                 {},
                                 {{"e11", "1/2*e12"}, {"e33", "1/2*e12"}, {"e13", "1/2*e12"}, {"e23", "1/2*e22"}}};

  {
    CaseSpec c;
    c.name = "unit-e12";
    c.title = "R(1)=e12";
    c.ansatz = {"R(e11 + e22 + e33) = e12", "R(e12) = 0"};
    c.letters = unit_e12_letters;
    c.display = unit_e12_display;
    for (const char* x : {"f", "j"}) {
      for (const char* y : {"b", "d", "g"}) c.relations.push_back(std::string(x) + "*" + y);
    }
    // Families with R(1) = (1+kappa) e12 are scaled by y = 1/(1+kappa).
    c.solutions = {
        {"R25", "R25", {}, {{"e11", "e12"}, {"e23", "e11 + e22"}}},
        {"R26 scaled by y=1/(1+kappa)",
         "R26",
         {"y"},
         {{"e11", "e12 - y*e12"}, {"e22", "y*e12"}, {"e23", "y*e11 + y*e22"}}},
        {"R27", "R27", {}, {{"e11", "e12"}, {"e23", "e33"}}},
        {"R28 scaled by y=1/(1+kappa)", "R28", {"y"}, {{"e11", "e12 - y*e12"}, {"e22", "y*e12"}, {"e23", "y*e33"}}},
        {"R29", "R29", {}, {{"e33", "e12"}, {"e13", "-e12"}, {"e23", "e11 + e33"}}},
        r30_half,
    };
    out.push_back(c);
  }

  {
    CaseSpec c;
    c.name = "unit-e12-i-nonzero";
    c.title = "R(1)=e12 with f=j=0 and i invertible";
    c.ansatz = {"R(e11 + e22 + e33) = e12", "R(e12) = 0"};
    c.letters = unit_e12_letters;
    c.display = unit_e12_display;
    c.branch = {"f", "j"};
    c.nonzero = {"i"};
    c.relations = {"a", "b", "d", "g", "h"};
    c.solutions = {r30_half};
    out.push_back(c);
  }

  {
    CaseSpec c;
    c.name = "unit-e13";
    c.title = "R(1)=e13";
    c.ansatz = {"R(e11 + e22 + e33) = e13", "R(e13) = 0"};
    c.letters = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "p", "r", "s", "t"};
    c.display = {
        {"e11",
         "-a*e11 - f*e11 - b*e12 - g*e12 + e13 - c*e13 - h*e13 - d*e22 - i*e22 - e*e23 - j*e23 - a*e33 - f*e33"},
        {"e12", "p*e11 + a*e12 - d*e12 + f*e12 - i*e12 + r*e13 + s*e22 + t*e23 + p*e33"},
        {"e13", "0"},
        {"e22", "a*e11 + b*e12 + c*e13 + d*e22 + e*e23 + a*e33"},
        {"e23", "k*e11 + l*e12 + m*e13 + n*e22 + i*e23 - f*e23 + k*e33"},
        {"e33", "f*e11 + g*e12 + h*e13 + i*e22 + j*e23 + f*e33"}};
    for (const char* x : {"f", "i", "g", "k", "l", "n"}) {
      for (const char* y : {"a + f", "d + i", "e + j", "p", "r", "s", "t"}) {
        const std::string factor(y);
        const bool sum = factor.find(' ') != std::string::npos;
        c.relations.push_back(std::string(x) + (sum ? "*(" + factor + ")" : "*" + factor));
      }
    }
    c.solutions = {
        {"R31 scaled by y=1/(1+kappa)",
         "R31",
         {"y"},
         {{"e11", "y*e13"}, {"e33", "e13 - y*e13"}, {"e23", "y*e11 + y*e33"}}},
        {"R32 scaled by y=1/(1+kappa)",
         "R32",
         {"y"},
         {{"e11", "e13 - y*e13"}, {"e33", "y*e13"}, {"e23", "y*e11 + y*e33"}}},
        {"R33", "R33", {}, {{"e11", "e13"}, {"e23", "e22"}}},
        {"R34 scaled by y=1/(1+kappa)", "R34", {"y"}, {{"e11", "e13 - y*e13"}, {"e33", "y*e13"}, {"e23", "y*e22"}}},
        {"R36 scaled by y=1/(1+kappa)", "R36", {"y"}, {{"e11", "y*e13"}, {"e33", "e13 - y*e13"}, {"e12", "y*e22"}}},
        {"R37 scaled by y=1/(1+kappa)", "R37", {"y"}, {{"e11", "e13 - y*e13"}, {"e33", "y*e13"}, {"e12", "y*e22"}}},
        {"R38 scaled by y=1/(1+kappa)",
         "R38",
         {"y"},
         {{"e11", "y*e13"}, {"e33", "e13 - y*e13"}, {"e12", "y*e11 + y*e33"}}},
        {"R39 scaled by y=1/(1+kappa)",
         "R39",
         {"y"},
         {{"e11", "e13 - y*e13"}, {"e33", "y*e13"}, {"e12", "y*e11 + y*e33"}}},
    };
    out.push_back(c);
  }

  {
    CaseSpec c;
    c.name = "unit-e12+e23";
    c.title = "R(1)=e12+e23";
    c.ansatz = {"R(e11 + e22 + e33) = e12 + e23", "R(e12 + e23) = 1/2*e13"};
    c.full_relations = {"b_33_23^2 - b_33_23", "b_11_12 - b_33_23 + 1", "b_11_12 + b_33_23 - 1"};
    c.solutions = {
        {"preimage of R40 with r_33_23 = 0",
         "R40",
         {"b", "f"},
         {{"e11", "e12 + b*e13 + 1/2*e23"}, {"e12", "1/2*e13"}, {"e22", "f*e13 + 1/2*e23"}, {"e33", "-b*e13 - f*e13"}}},
    };
    out.push_back(c);
  }
  return out;
}

CaseSpec find_preset(const std::string& name) {
  for (auto& c : case_presets()) {
    if (c.name == name) return c;
  }
  throw Error("unknown case preset '" + name + "'");
}

bool CaseReport::ok() const {
  for (const auto& i : items) {
    if (!i.pass) return false;
  }
  return true;
}

std::string CaseReport::text() const {
  std::ostringstream os;
  os << "case " << name << ": " << title << "\n";
  os << "full system: " << full_vars << " vars, " << full_generators << " generators, ";
  if (full_completed) os << "GB " << full_basis << " elements in " << std::fixed << std::setprecision(2) << full_seconds << "s\n";
  else os << "GB not completed (resource limit)\n";
  if (display_vars > 0) {
    os << "display system: " << display_vars << " vars, " << display_generators << " generators, GB " << display_basis
       << " elements\n";
  }
  static const char* kinds[] = {"reduction", "relation", "full-relation", "solution"};
  for (const auto& i : items) {
    os << (i.pass ? "PASS " : "FAIL ") << std::left << std::setw(14) << kinds[static_cast<int>(i.kind)] << i.text;
    if (!i.detail.empty()) os << "  [" << i.detail << "]";
    os << "\n";
  }
  std::size_t pass = 0;
  for (const auto& i : items) pass += i.pass ? 1 : 0;
  os << pass << "/" << items.size() << " items pass\n";
  return os.str();
}

CaseReport run_case(const CaseSpec& spec, const CaseOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                    std::chrono::duration<double>(options.budget_seconds));
  GbLimits limits;
  limits.deadline = deadline;

  CaseReport rep;
  rep.name = spec.name;
  rep.title = spec.title;

  const Ansatz ansatz = build_ansatz(spec.ansatz);
  const GeneratedSystem gen = generate_system(ansatz);
  const TablePtr free = gen.system.table;
  const TablePtr full = gen.full_table;

  // Every coefficient b_ij_kl as a polynomial in the free coefficients.
  std::map<std::string, MultiPoly> bval;
  for (const auto& name : full->names()) {
    auto it = gen.solved.find(name);
    bval[name] = it != gen.solved.end() ? it->second.retarget(free) : MultiPoly::variable(free, name);
  }

  // Display operator over the letters, plus one inverse variable per nonzero item.
  std::vector<std::string> lnames = spec.letters;
  for (std::size_t k = 0; k < spec.nonzero.size(); ++k) lnames.push_back("u_nz" + std::to_string(k));
  const TablePtr ltable = make_table(lnames);
  const bool has_display = !spec.letters.empty();
  POperator display(ansatz.n);
  std::map<std::string, MultiPoly> alias;
  if (has_display) {
    display = make_operator(spec.letters, spec.display).map([&](const MultiPoly& p) { return p.retarget(ltable); });
    for (const auto& x : spec.letters) {
      const MultiPoly var = MultiPoly::variable(ltable, x);
      bool found = false;
      for (const auto& u : basis_of(ansatz.n)) {
        for (const auto& v : basis_of(ansatz.n)) {
          if (!found && display.image(u).get(v) == var) {
            alias[x] = bval.at(coefficient_name(u, v));
            found = true;
          }
        }
      }
      if (!found) throw Error("letter '" + x + "' never appears alone in the display");
      rep.aliases[x] = alias[x].to_string();
    }
  }

  // Full system with the branch hypotheses.
  std::vector<std::string> fnames = free->names();
  for (std::size_t k = 0; k < spec.nonzero.size(); ++k) fnames.push_back("u_nz" + std::to_string(k));
  const TablePtr ftable = make_table(fnames);
  std::map<std::string, MultiPoly> alias_f;
  for (const auto& [x, p] : alias) alias_f[x] = p.retarget(ftable);
  std::vector<MultiPoly> fgens;
  for (const auto& g : gen.system.generators) fgens.push_back(g.retarget(ftable));
  std::vector<MultiPoly> lgens = residual_equations(display, ltable);
  for (const auto& b : spec.branch) {
    const MultiPoly q = parse_poly(b, ltable);
    lgens.push_back(q);
    fgens.push_back(bind_vars(q, alias_f, ftable));
  }
  for (std::size_t k = 0; k < spec.nonzero.size(); ++k) {
    const std::string u = "u_nz" + std::to_string(k);
    const MultiPoly q = parse_poly(spec.nonzero[k], ltable);
    lgens.push_back(MultiPoly::variable(ltable, u) * q - MultiPoly(1));
    fgens.push_back(MultiPoly::variable(ftable, u) * bind_vars(q, alias_f, ftable) - MultiPoly(1));
  }
  const PolySystem fsys = PolySystem::make(ftable, fgens, MonomialOrder::grevlex(ftable->size()));
  rep.full_vars = ftable->size();
  rep.full_generators = fsys.generators.size();

  std::optional<GroebnerBasis> fgb;
  {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fgb = buchberger(fsys, limits);
      rep.full_completed = true;
      rep.full_basis = fgb->basis.size();
    } catch (const ResourceLimitError&) {
      rep.full_completed = false;
    }
    rep.full_seconds = since(t0);
  }

  auto certify = [&](const MultiPoly& p, const GroebnerBasis& gb, CaseItem& item) {
    const MembershipResult m = tiered_membership(p, gb, options.max_power, limits);
    item.pass = m.member();
    item.detail = m.describe();
  };

  // Reductions: display slots other than the aliases, checked in the full system.
  if (has_display) {
    for (const auto& u : basis_of(ansatz.n)) {
      for (const auto& v : basis_of(ansatz.n)) {
        const std::string b = coefficient_name(u, v);
        const MultiPoly shown = display.image(u).get(v);
        const MultiPoly diff = bval.at(b).retarget(ftable) - bind_vars(shown, alias_f, ftable);
        if (diff.is_zero()) continue;
        CaseItem item;
        item.kind = CaseItem::Kind::Reduction;
        item.text = b + " = " + shown.to_string();
        if (fgb) certify(diff, *fgb, item);
        else item.detail = "unknown: resource limit";
        rep.items.push_back(item);
      }
    }
  }

  // Quoted relations in the display system.
  if (!spec.relations.empty()) {
    if (!has_display) throw Error("case relations need a display");
    const PolySystem lsys = PolySystem::make(ltable, lgens, MonomialOrder::grevlex(ltable->size()));
    rep.display_vars = ltable->size();
    rep.display_generators = lsys.generators.size();
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<GroebnerBasis> lgb;
    try {
      lgb = buchberger(lsys, limits);
      rep.display_basis = lgb->basis.size();
    } catch (const ResourceLimitError&) {
    }
    rep.display_seconds = since(t0);
    for (const auto& r : spec.relations) {
      CaseItem item;
      item.kind = CaseItem::Kind::Relation;
      item.text = r;
      if (lgb) certify(parse_poly(r, ltable), *lgb, item);
      else item.detail = "unknown: resource limit";
      rep.items.push_back(item);
    }
  }

  for (const auto& r : spec.full_relations) {
    CaseItem item;
    item.kind = CaseItem::Kind::FullRelation;
    item.text = r;
    const MultiPoly p = bind_vars(parse_poly(r, full), bval, free).retarget(ftable);
    if (fgb) certify(p, *fgb, item);
    else item.detail = "unknown: resource limit";
    rep.items.push_back(item);
  }

  // Solutions: substitute into the ansatz and the unsimplified system.
  for (const auto& s : spec.solutions) {
    CaseItem item;
    item.kind = CaseItem::Kind::Solution;
    item.text = s.label;
    const POperator op = make_operator(s.params, s.images, ansatz.n, ansatz.weight);
    const TablePtr ptable = make_table(s.params);
    std::map<std::string, MultiPoly> val;
    for (const auto& u : basis_of(ansatz.n)) {
      for (const auto& v : basis_of(ansatz.n)) val[coefficient_name(u, v)] = op.image(u).get(v).retarget(ptable);
    }
    std::size_t bad_ansatz = 0, bad_gens = 0, bad_branch = 0, zero_nonzero = 0;
    for (const auto& c : ansatz.constraints) bad_ansatz += bind_vars(c.retarget(full), val, ptable).is_zero() ? 0 : 1;
    for (const auto& g : gen.system.generators) bad_gens += bind_vars(g, val, ptable).is_zero() ? 0 : 1;
    std::map<std::string, MultiPoly> letter_val;
    for (const auto& [x, p] : alias) letter_val[x] = bind_vars(p, val, ptable);
    for (const auto& b : spec.branch) bad_branch += bind_vars(parse_poly(b, ltable), letter_val, ptable).is_zero() ? 0 : 1;
    for (const auto& q : spec.nonzero) zero_nonzero += bind_vars(parse_poly(q, ltable), letter_val, ptable).is_zero() ? 1 : 0;
    const bool rb = is_rota_baxter(op);
    item.pass = bad_ansatz == 0 && bad_gens == 0 && bad_branch == 0 && zero_nonzero == 0 && rb;
    std::ostringstream d;
    d << "ansatz " << (bad_ansatz ? "violated" : "ok") << ", " << gen.system.generators.size() - bad_gens << "/"
      << gen.system.generators.size() << " generators vanish";
    if (!spec.branch.empty() || !spec.nonzero.empty()) d << ", branch " << (bad_branch + zero_nonzero ? "violated" : "ok");
    d << ", residual " << (rb ? "zero" : "NONZERO");
    item.detail = d.str();
    rep.items.push_back(item);
  }
  return rep;
}

}  // namespace rbu3
