#include "rbu3/utmatrix.hpp"

#include <algorithm>
#include <cctype>

namespace rbu3 {

std::vector<BasisIndex> basis_of(int n) {
  std::vector<BasisIndex> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) out.push_back({i, j});
  }
  return out;
}

std::size_t basis_position(int n, BasisIndex idx) {
  if (idx.row < 1 || idx.row > idx.col || idx.col > n) throw Error("index " + idx.name() + " outside U" + std::to_string(n));
  // Rows before idx.row contribute n, n-1, ... entries.
  std::size_t pos = 0;
  for (int r = 1; r < idx.row; ++r) pos += static_cast<std::size_t>(n - r + 1);
  return pos + static_cast<std::size_t>(idx.col - idx.row);
}

std::optional<BasisIndex> parse_basis_name(std::string_view name, int n) {
  if (name.size() != 3 || name[0] != 'e') return std::nullopt;
  const int i = name[1] - '0', j = name[2] - '0';
  if (i < 1 || j < i || j > n) return std::nullopt;
  return BasisIndex{i, j};
}

int rank(const QMatrix& a) {
  const int n = a.n();
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (const auto& [idx, v] : a.entries()) m[idx.row - 1][idx.col - 1] = v;
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int p = r;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) continue;
    std::swap(m[p], m[r]);
    for (int i = r + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      const Rational f = m[i][c] / m[r][c];
      for (int k = c; k < n; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

PMatrix to_poly(const QMatrix& a) {
  PMatrix out(a.n());
  for (const auto& [idx, v] : a.entries()) out.set(idx, MultiPoly(v));
  return out;
}

QMatrix to_rational(const PMatrix& a) {
  QMatrix out(a.n());
  for (const auto& [idx, v] : a.entries()) {
    if (!v.is_constant()) throw Error("entry " + idx.name() + " is not constant: " + v.to_string());
    out.set(idx, v.constant_term());
  }
  return out;
}

QMatrix specialize(const PMatrix& a, const std::map<std::string, Rational>& values) {
  QMatrix out(a.n());
  for (const auto& [idx, v] : a.entries()) out.set(idx, evaluate(v, values));
  return out;
}

PMatrix parse_matrix(std::string_view text, const TablePtr& table, int n) {
  std::vector<std::string> names = table ? table->names() : std::vector<std::string>{};
  const std::size_t ncoef = names.size();
  const auto basis = basis_of(n);
  for (const auto& b : basis) {
    if (std::find(names.begin(), names.end(), b.name()) != names.end()) {
      throw Error("variable name clashes with basis element " + b.name());
    }
    names.push_back(b.name());
  }
  // Reject stray identifiers that look like basis names of a larger algebra.
  for (const auto& id : scan_identifiers(text)) {
    if (id.size() == 3 && id[0] == 'e' && std::isdigit(static_cast<unsigned char>(id[1])) &&
        std::isdigit(static_cast<unsigned char>(id[2])) && !parse_basis_name(id, n) &&
        !(table && table->find(id))) {
      throw ParseError("'" + id + "' is not a basis element of U" + std::to_string(n),
                       text.find(id));
    }
  }
  const TablePtr ext = make_table(names);
  const MultiPoly p = parse_poly(text, ext);

  std::map<BasisIndex, std::vector<Term>> parts;
  for (const auto& t : p.terms()) {
    int which = -1;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const unsigned e = t.mono[ncoef + k];
      if (e == 0) continue;
      if (e > 1 || which >= 0) throw ParseError("term is not linear in the basis elements", 0);
      which = static_cast<int>(k);
    }
    if (which < 0) throw ParseError("term without a basis element", 0);
    Monomial m = t.mono;
    m.set(ncoef + static_cast<std::size_t>(which), 0);
    parts[basis[static_cast<std::size_t>(which)]].push_back({m, t.coef});
  }
  PMatrix out(n);
  for (auto& [idx, terms] : parts) {
    out.set(idx, MultiPoly::from_terms(ext, std::move(terms)).retarget(table));
  }
  return out;
}

QMatrix parse_rational_matrix(std::string_view text, int n) { return to_rational(parse_matrix(text, nullptr, n)); }

}  // namespace rbu3
