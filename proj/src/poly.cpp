#include "rbu3/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

#include "rbu3/errors.hpp"

namespace rbu3 {

// ---------------------------------------------------------------- VarTable

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVars) {
    throw Error("too many variables (" + std::to_string(names_.size()) + " > " + std::to_string(kMaxVars) + ")");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw Error("empty variable name");
    if (!index_.emplace(names_[i], i).second) throw Error("duplicate variable name: " + names_[i]);
  }
}

std::optional<std::size_t> VarTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t VarTable::index(std::string_view name) const {
  auto i = find(name);
  if (!i) throw Error("unknown variable: " + std::string(name));
  return *i;
}

TablePtr make_table(std::vector<std::string> names) {
  return std::make_shared<const VarTable>(std::move(names));
}

bool tables_compatible(const TablePtr& a, const TablePtr& b) {
  if (!a || !b || a == b) return true;
  return *a == *b;
}

// ---------------------------------------------------------------- Monomial

void Monomial::set(std::size_t i, unsigned e) {
  if (i >= kMaxVars) throw Error("variable index out of range");
  if (e > 255) throw Error("exponent overflow");
  degree_ = static_cast<std::uint16_t>(degree_ - exps_[i] + e);
  exps_[i] = static_cast<std::uint8_t>(e);
  if (e) {
    support_ |= (std::uint64_t{1} << i);
  } else {
    support_ &= ~(std::uint64_t{1} << i);
  }
}

bool Monomial::divides(const Monomial& m) const {
  if ((support_ & ~m.support_) != 0 || degree_ > m.degree_) return false;
  for (std::uint64_t s = support_; s; s &= s - 1) {
    const int i = __builtin_ctzll(s);
    if (exps_[i] > m.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& m) const {
  Monomial q = m;
  for (std::uint64_t s = support_; s; s &= s - 1) {
    const int i = __builtin_ctzll(s);
    q.exps_[i] = static_cast<std::uint8_t>(q.exps_[i] - exps_[i]);
    if (q.exps_[i] == 0) q.support_ &= ~(std::uint64_t{1} << i);
  }
  q.degree_ = static_cast<std::uint16_t>(m.degree_ - degree_);
  return q;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  r.support_ = support_ | o.support_;
  unsigned d = 0;
  for (std::uint64_t s = r.support_; s; s &= s - 1) {
    const int i = __builtin_ctzll(s);
    r.exps_[i] = std::max(exps_[i], o.exps_[i]);
    d += r.exps_[i];
  }
  r.degree_ = static_cast<std::uint16_t>(d);
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::uint64_t s = b.support_; s; s &= s - 1) {
    const int i = __builtin_ctzll(s);
    const unsigned e = unsigned(a.exps_[i]) + b.exps_[i];
    if (e > 255) throw Error("exponent overflow");
    r.exps_[i] = static_cast<std::uint8_t>(e);
  }
  r.support_ = a.support_ | b.support_;
  r.degree_ = static_cast<std::uint16_t>(a.degree_ + b.degree_);
  return r;
}

int Monomial::lex_compare(const Monomial& o) const {
  const int c = std::memcmp(exps_.data(), o.exps_.data(), kMaxVars);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (std::uint64_t s = support_; s; s &= s - 1) {
    const int i = __builtin_ctzll(s);
    h = (h ^ (std::size_t(i) << 8 | exps_[i])) * 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------- MonomialOrder

namespace {

// Reverse-lex tail of grevlex on variables [lo, hi): the last differing
// variable decides, smaller exponent wins.
int revlex_tail(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

unsigned block_degree(const Monomial& m, std::size_t lo, std::size_t hi) {
  unsigned d = 0;
  for (std::size_t i = lo; i < hi; ++i) d += m[i];
  return d;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::Lex:
      return a.lex_compare(b);
    case Kind::Grevlex:
      if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
      return revlex_tail(a, b, 0, nvars_);
    case Kind::Elimination: {
      const unsigned da = block_degree(a, 0, block_), db = block_degree(b, 0, block_);
      if (da != db) return da > db ? 1 : -1;
      if (int c = revlex_tail(a, b, 0, block_)) return c;
      const unsigned ra = a.degree() - da, rb = b.degree() - db;
      if (ra != rb) return ra > rb ? 1 : -1;
      return revlex_tail(a, b, block_, nvars_);
    }
  }
  return 0;
}

std::string MonomialOrder::describe() const {
  switch (kind_) {
    case Kind::Lex: return "lex";
    case Kind::Grevlex: return "grevlex";
    case Kind::Elimination: return "elim(" + std::to_string(block_) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------- MultiPoly

namespace {

bool lex_desc(const Term& a, const Term& b) { return a.mono.lex_compare(b.mono) > 0; }

std::vector<Term> merge_sum(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) c = -1;
    else if (j == b.size()) c = 1;
    else c = a[i].mono.lex_compare(b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(subtract ? Term{b[j].mono, -b[j].coef} : b[j]);
      ++j;
    } else {
      Rational s = subtract ? a[i].coef - b[j].coef : a[i].coef + b[j].coef;
      if (!s.is_zero()) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MultiPoly::MultiPoly(const Rational& c) {
  if (!c.is_zero()) terms_.push_back({Monomial{}, c});
}

MultiPoly::MultiPoly(const Rational& c, TablePtr table) : MultiPoly(c) { table_ = std::move(table); }

MultiPoly MultiPoly::variable(const TablePtr& table, std::size_t index) {
  if (!table || index >= table->size()) throw Error("variable index out of range");
  Monomial m;
  m.set(index, 1);
  return monomial(table, m, Rational(1));
}

MultiPoly MultiPoly::variable(const TablePtr& table, std::string_view name) {
  if (!table) throw Error("unknown variable: " + std::string(name));
  return variable(table, table->index(name));
}

MultiPoly MultiPoly::monomial(const TablePtr& table, const Monomial& m, const Rational& c) {
  MultiPoly p;
  p.table_ = table;
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

MultiPoly MultiPoly::from_terms(TablePtr table, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), lex_desc);
  MultiPoly p;
  p.table_ = std::move(table);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
  return p;
}

bool MultiPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

Rational MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
  return Rational(0);
}

unsigned MultiPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

std::uint64_t MultiPoly::support() const {
  std::uint64_t s = 0;
  for (const auto& t : terms_) s |= t.mono.support();
  return s;
}

Term MultiPoly::leading_term(const MonomialOrder& ord) const {
  if (terms_.empty()) throw Error("no leading term");
  if (ord.kind() == MonomialOrder::Kind::Lex) return terms_.front();
  const Term* best = &terms_.front();
  for (const auto& t : terms_) {
    if (ord.greater(t.mono, best->mono)) best = &t;
  }
  return *best;
}

void MultiPoly::adopt_table(const TablePtr& other) {
  if (!table_) {
    table_ = other;
  } else if (other && !tables_compatible(table_, other)) {
    throw IncompatibleOperands("variable tables differ");
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  adopt_table(o.table_);
  if (o.terms_.empty()) return *this;
  terms_ = merge_sum(terms_, o.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  adopt_table(o.table_);
  if (o.terms_.empty()) return *this;
  terms_ = merge_sum(terms_, o.terms_, true);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r;
  r.table_ = a.table_;
  r.adopt_table(b.table_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].mono, b.terms_[0].coef).with_table(r.table_);
  if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].mono, a.terms_[0].coef).with_table(r.table_);
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) prod.push_back({s.mono * t.mono, s.coef * t.coef});
  }
  return MultiPoly::from_terms(r.table_, std::move(prod));
}

MultiPoly operator-(MultiPoly a) {
  for (auto& t : a.terms_) t.coef = -t.coef;
  return a;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  MultiPoly r;
  r.table_ = table_;
  if (c.is_zero()) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

MultiPoly MultiPoly::times_monomial(const Monomial& m, const Rational& c) const {
  MultiPoly r;
  r.table_ = table_;
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves lex order.
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (!a.is_constant() && !tables_compatible(a.table_, b.table_)) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
  }
  return true;
}

MultiPoly MultiPoly::with_table(TablePtr table) const {
  if (!tables_compatible(table_, table)) throw IncompatibleOperands("variable tables differ");
  MultiPoly r = *this;
  if (table) r.table_ = std::move(table);
  return r;
}

MultiPoly MultiPoly::retarget(const TablePtr& target) const {
  if (table_ == target) return *this;
  std::vector<int> map(table_ ? table_->size() : 0, -1);
  const std::uint64_t used = support();
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (!(used >> i & 1)) continue;
    auto j = target ? target->find(table_->name(i)) : std::nullopt;
    if (!j) throw Error("variable " + table_->name(i) + " missing from target table");
    map[i] = static_cast<int>(*j);
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::uint64_t s = t.mono.support(); s; s &= s - 1) {
      const int i = __builtin_ctzll(s);
      m.set(static_cast<std::size_t>(map[i]), t.mono[i]);
    }
    out.push_back({m, t.coef});
  }
  return from_terms(target, std::move(out));
}

namespace {

void print_monomial(std::ostream& os, const Monomial& m, const VarTable* table) {
  bool first = true;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (!m[i]) continue;
    if (!first) os << '*';
    first = false;
    if (table && i < table->size()) os << table->name(i);
    else os << "x" << i;
    if (m[i] > 1) os << '^' << m[i];
  }
}

}  // namespace

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  // Print in descending grevlex: degree first reads naturally.
  std::vector<const Term*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  const auto grev = MonomialOrder::grevlex(table_ ? table_->size() : 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](const Term* a, const Term* b) { return grev.greater(a->mono, b->mono); });
  std::ostringstream os;
  bool first = true;
  for (const Term* t : order) {
    Rational c = t->coef;
    if (first) {
      if (c.sign() < 0) os << '-';
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    c = c.abs();
    if (t->mono.is_one()) {
      os << c;
    } else {
      if (!c.is_one()) os << c << '*';
      print_monomial(os, t->mono, table_.get());
    }
    first = false;
  }
  return os.str();
}

std::size_t MultiPoly::hash() const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const auto& t : terms_) {
    h = (h ^ t.mono.hash()) * 0x100000001b3ull;
    h = (h ^ t.coef.hash()) * 0x100000001b3ull;
  }
  return h;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

MultiPoly pow(const MultiPoly& p, unsigned e) {
  MultiPoly result(Rational(1), p.table());
  MultiPoly base = p;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

MultiPoly substitute(const MultiPoly& p, const std::map<std::string, MultiPoly>& bindings,
                     const TablePtr& target) {
  const TablePtr& src = p.table();
  std::vector<const MultiPoly*> image(src ? src->size() : 0, nullptr);
  for (const auto& [name, value] : bindings) {
    auto i = src ? src->find(name) : std::nullopt;
    if (!i) throw Error("unknown variable in bindings: " + name);
    image[*i] = &value;
  }
  const TablePtr out_table = target ? target : src;
  std::vector<MultiPoly> own(image.size());
  const std::uint64_t used = p.support();
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (image[i] || !(used >> i & 1)) continue;
    own[i] = MultiPoly::variable(out_table, src->name(i));
    image[i] = &own[i];
  }
  // Cache powers per variable.
  std::vector<std::vector<MultiPoly>> powers(image.size());
  auto power = [&](std::size_t i, unsigned e) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MultiPoly(Rational(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * *image[i]);
    return cache[e];
  };
  MultiPoly result(Rational(0), out_table);
  for (const auto& t : p.terms()) {
    MultiPoly term(t.coef, out_table);
    for (std::uint64_t s = t.mono.support(); s; s &= s - 1) {
      const int i = __builtin_ctzll(s);
      term = term * power(static_cast<std::size_t>(i), t.mono[i]);
    }
    result += term;
  }
  return result.with_table(out_table);
}

Rational evaluate(const MultiPoly& p, const std::map<std::string, Rational>& values) {
  const TablePtr& table = p.table();
  std::vector<const Rational*> value(table ? table->size() : 0, nullptr);
  for (const auto& [name, v] : values) {
    if (auto i = table ? table->find(name) : std::nullopt) value[*i] = &v;
  }
  Rational sum(0);
  for (const auto& t : p.terms()) {
    Rational prod = t.coef;
    for (std::uint64_t s = t.mono.support(); s; s &= s - 1) {
      const int i = __builtin_ctzll(s);
      if (!value[i]) throw Error("no value for variable " + table->name(i));
      prod *= pow(*value[i], t.mono[i]);
    }
    sum += prod;
  }
  return sum;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
  enum Kind { Number, Ident, Op, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Token::Number, std::string(s.substr(start, i - start)), start});
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Token::Ident, std::string(s.substr(start, i - start)), start});
    } else if (std::strchr("+-*/^()", c)) {
      out.push_back({Token::Op, std::string(1, c), i});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const TablePtr& table) : tokens_(tokenize(text)), table_(table) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    if (peek().kind != Token::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return p.with_table(table_);
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool accept(const char* op) {
    if (peek().kind == Token::Op && peek().text == op) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly acc(Rational(0), table_);
    bool negative = false;
    if (accept("-")) negative = true;
    else accept("+");
    MultiPoly t = term();
    acc = negative ? acc - t : acc + t;
    while (true) {
      if (accept("+")) acc += term();
      else if (accept("-")) acc -= term();
      else break;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = power();
    while (true) {
      if (accept("*")) {
        acc = acc * power();
      } else if (peek().kind == Token::Op && peek().text == "/") {
        const std::size_t at = peek().pos;
        ++pos_;
        MultiPoly d = power();
        if (!d.is_constant() || d.is_zero()) throw ParseError("division by a non-constant or zero", at);
        acc = acc.scaled(d.constant_term().inverse());
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (accept("^")) {
      const Token& t = peek();
      if (t.kind != Token::Number) throw ParseError("expected exponent", t.pos);
      if (t.text.size() > 3 || std::stoul(t.text) > 255) throw ParseError("exponent too large", t.pos);
      const unsigned e = static_cast<unsigned>(std::stoul(t.text));
      ++pos_;
      base = pow(base, e);
    }
    return base;
  }

  MultiPoly atom() {
    const Token t = peek();
    switch (t.kind) {
      case Token::Number:
        ++pos_;
        return MultiPoly(Rational(mpq_class(mpz_class(t.text))), table_);
      case Token::Ident: {
        ++pos_;
        auto i = table_ ? table_->find(t.text) : std::nullopt;
        if (!i) throw ParseError("unknown variable '" + t.text + "'", t.pos);
        return MultiPoly::variable(table_, *i);
      }
      case Token::Op:
        if (t.text == "(") {
          ++pos_;
          MultiPoly inner = expr();
          if (!accept(")")) throw ParseError("expected ')'", peek().pos);
          return inner;
        }
        throw ParseError("unexpected '" + t.text + "'", t.pos);
      case Token::End:
        throw ParseError("unexpected end of input", t.pos);
    }
    throw ParseError("unreachable", t.pos);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  TablePtr table_;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const TablePtr& table) { return Parser(text, table).parse(); }

std::vector<std::string> scan_identifiers(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(text)) {
    if (t.kind == Token::Ident && std::find(out.begin(), out.end(), t.text) == out.end()) out.push_back(t.text);
  }
  return out;
}

}  // namespace rbu3
