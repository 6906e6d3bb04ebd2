#include "pretrans/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace pretrans {

struct Formula::Node {
  Op op;
  std::string name;
  std::vector<Formula> kids;
  std::size_t hash = 0;
  std::size_t count = 1;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula::Formula() {
  static const auto bot_node = [] {
    auto n = std::make_shared<Node>();
    n->op = Op::Bot;
    n->hash = mix(0, static_cast<std::size_t>(Op::Bot));
    return n;
  }();
  node_ = bot_node;
}

Formula Formula::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->hash = mix(std::hash<std::string>{}(name), static_cast<std::size_t>(Op::Var));
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::bot() { return Formula(); }

Formula Formula::imp(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->op = Op::Imp;
  n->hash = mix(mix(static_cast<std::size_t>(Op::Imp), left.hash()), right.hash());
  n->count = 1 + left.node_count() + right.node_count();
  n->kids = {std::move(left), std::move(right)};
  return Formula(std::move(n));
}

Formula Formula::dia(Formula arg) {
  auto n = std::make_shared<Node>();
  n->op = Op::Dia;
  n->hash = mix(static_cast<std::size_t>(Op::Dia) * 31, arg.hash());
  n->count = 1 + arg.node_count();
  n->kids = {std::move(arg)};
  return Formula(std::move(n));
}

Formula Formula::neg(Formula f) { return imp(std::move(f), bot()); }
Formula Formula::top() { return neg(bot()); }
Formula Formula::conj(Formula a, Formula b) { return neg(imp(std::move(a), neg(std::move(b)))); }
Formula Formula::disj(Formula a, Formula b) { return imp(neg(std::move(a)), std::move(b)); }
Formula Formula::box(Formula f) { return neg(dia(neg(std::move(f)))); }

Formula Formula::dia_n(std::size_t k, Formula f) {
  for (std::size_t i = 0; i < k; ++i) f = dia(std::move(f));
  return f;
}

Formula Formula::box_n(std::size_t k, Formula f) {
  for (std::size_t i = 0; i < k; ++i) f = box(std::move(f));
  return f;
}

Formula Formula::dia_plus(std::size_t n, Formula f) {
  if (n == 0) throw std::invalid_argument("dia_plus needs n >= 1");
  Formula acc = dia(f);
  for (std::size_t k = 2; k <= n; ++k) acc = disj(acc, dia_n(k, f));
  return acc;
}

Formula Formula::box_plus(std::size_t n, Formula f) {
  if (n == 0) throw std::invalid_argument("box_plus needs n >= 1");
  Formula acc = box(f);
  for (std::size_t k = 2; k <= n; ++k) acc = conj(acc, box_n(k, f));
  return acc;
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::left() const { return node_->kids.at(0); }
const Formula& Formula::right() const { return node_->kids.at(1); }
const Formula& Formula::arg() const { return node_->kids.at(0); }
std::size_t Formula::node_count() const { return node_->count; }
std::size_t Formula::hash() const { return node_->hash; }

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (node_->hash != o.node_->hash || node_->count != o.node_->count || node_->op != o.node_->op)
    return false;
  if (node_->name != o.node_->name) return false;
  return node_->kids == o.node_->kids;
}

bool Formula::operator<(const Formula& o) const {
  if (node_ == o.node_) return false;
  if (node_->count != o.node_->count) return node_->count < o.node_->count;
  if (node_->op != o.node_->op) return node_->op < o.node_->op;
  if (node_->name != o.node_->name) return node_->name < o.node_->name;
  for (std::size_t i = 0; i < node_->kids.size(); ++i) {
    if (node_->kids[i] < o.node_->kids[i]) return true;
    if (o.node_->kids[i] < node_->kids[i]) return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Sugar recognition

bool is_top(const Formula& f) { return f.is_imp() && f.left().is_bot() && f.right().is_bot(); }

std::optional<Formula> match_neg(const Formula& f) {
  if (f.is_imp() && f.right().is_bot()) return f.left();
  return std::nullopt;
}

std::optional<std::pair<Formula, Formula>> match_conj(const Formula& f) {
  // ¬(a → ¬b)
  const auto inner = match_neg(f);
  if (!inner || !inner->is_imp()) return std::nullopt;
  const auto b = match_neg(inner->right());
  if (!b) return std::nullopt;
  return std::make_pair(inner->left(), *b);
}

std::optional<std::pair<Formula, Formula>> match_disj(const Formula& f) {
  // ¬a → b with b ≠ ⊥ (that is plain negation) and a ≠ ⊥ (that is ⊤ → b)
  if (!f.is_imp() || f.right().is_bot()) return std::nullopt;
  const auto a = match_neg(f.left());
  if (!a || a->is_bot()) return std::nullopt;
  return std::make_pair(*a, f.right());
}

std::optional<Formula> match_box(const Formula& f) {
  // ¬◊¬a
  const auto inner = match_neg(f);
  if (!inner || !inner->is_dia()) return std::nullopt;
  return match_neg(inner->arg());
}

// ---------------------------------------------------------------------------
// Parser

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : std::runtime_error("syntax error at byte " + std::to_string(offset) + ": found " + found +
                         ", expected one of: " + join(expected)),
      offset_(offset),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { Var, Bot, Top, Imp, And, Or, Not, Dia, Box, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

const std::vector<std::string> kPrimaryStart = {"variable", "bot", "top", "(", "~", "<>", "dia", "[]", "box"};

bool is_indexed_var(std::string_view w) {
  if (w.size() < 2 || w[0] != 'p') return false;
  return std::all_of(w.begin() + 1, w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto two = [&](std::string_view t) { return s.substr(i, 2) == t; };
    if (two("->")) {
      out.push_back({Tok::Imp, start, "->"});
      i += 2;
    } else if (two("<>")) {
      out.push_back({Tok::Dia, start, "<>"});
      i += 2;
    } else if (two("[]")) {
      out.push_back({Tok::Box, start, "[]"});
      i += 2;
    } else if (c == '&') {
      out.push_back({Tok::And, start, "&"});
      ++i;
    } else if (c == '|') {
      out.push_back({Tok::Or, start, "|"});
      ++i;
    } else if (c == '~') {
      out.push_back({Tok::Not, start, "~"});
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::LParen, start, "("});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, start, ")"});
      ++i;
    } else if (c == '"') {
      const auto close = s.find('"', i + 1);
      if (close == std::string_view::npos)
        throw ParseError(start, {"closing '\"'"}, "end of input");
      if (close == i + 1) throw ParseError(start + 1, {"variable name"}, "'\"'");
      out.push_back({Tok::Var, start, std::string(s.substr(i + 1, close - i - 1))});
      i = close + 1;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      const std::string word(s.substr(start, i - start));
      if (word == "bot") {
        out.push_back({Tok::Bot, start, word});
      } else if (word == "top") {
        out.push_back({Tok::Top, start, word});
      } else if (word == "dia") {
        out.push_back({Tok::Dia, start, word});
      } else if (word == "box") {
        out.push_back({Tok::Box, start, word});
      } else if (is_indexed_var(word)) {
        out.push_back({Tok::Var, start, word});
      } else {
        throw ParseError(start, kPrimaryStart, "identifier '" + word + "'");
      }
    } else {
      throw ParseError(start, kPrimaryStart, std::string("'") + c + "'");
    }
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail({"&", "|", "->", "end of input"});
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.offset, std::move(expected), t.kind == Tok::End ? "end of input" : "'" + t.text + "'");
  }

  Formula formula() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Imp) {
      next();
      return Formula::imp(std::move(lhs), formula());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (peek().kind == Tok::Or) {
      next();
      acc = Formula::disj(std::move(acc), conjunction());
    }
    return acc;
  }

  Formula conjunction() {
    Formula acc = unary();
    while (peek().kind == Tok::And) {
      next();
      acc = Formula::conj(std::move(acc), unary());
    }
    return acc;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Not:
        next();
        return Formula::neg(unary());
      case Tok::Dia:
        next();
        return Formula::dia(unary());
      case Tok::Box:
        next();
        return Formula::box(unary());
      default:
        return atom();
    }
  }

  Formula atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Var:
        next();
        return Formula::var(t.text);
      case Tok::Bot:
        next();
        return Formula::bot();
      case Tok::Top:
        next();
        return Formula::top();
      case Tok::LParen: {
        next();
        Formula f = formula();
        if (peek().kind != Tok::RParen) fail({")", "&", "|", "->"});
        next();
        return f;
      }
      default:
        fail(kPrimaryStart);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(lex(text)).parse_all(); }

// ---------------------------------------------------------------------------
// Printer

namespace {

enum Prec : int { kImp = 1, kOr = 2, kAnd = 3, kUnary = 4, kAtom = 5 };

struct Rendered {
  std::string text;
  int prec;
};

std::string var_text(const std::string& name) {
  return is_indexed_var(name) ? name : "\"" + name + "\"";
}

std::string wrap(const Rendered& r, int min_prec) {
  return r.prec >= min_prec ? r.text : "(" + r.text + ")";
}

Rendered render_core(const Formula& f) {
  switch (f.op()) {
    case Op::Var:
      return {var_text(f.name()), kAtom};
    case Op::Bot:
      return {"bot", kAtom};
    case Op::Dia:
      return {"<>" + wrap(render_core(f.arg()), kUnary), kUnary};
    case Op::Imp:
      return {wrap(render_core(f.left()), kImp + 1) + " -> " + wrap(render_core(f.right()), kImp), kImp};
  }
  return {"", kAtom};
}

Rendered render_sugar(const Formula& f) {
  switch (f.op()) {
    case Op::Var:
      return {var_text(f.name()), kAtom};
    case Op::Bot:
      return {"bot", kAtom};
    case Op::Dia:
      return {"<>" + wrap(render_sugar(f.arg()), kUnary), kUnary};
    case Op::Imp:
      break;
  }
  if (is_top(f)) return {"top", kAtom};
  if (auto c = match_conj(f))
    return {wrap(render_sugar(c->first), kAnd) + " & " + wrap(render_sugar(c->second), kAnd + 1), kAnd};
  if (auto b = match_box(f)) return {"[]" + wrap(render_sugar(*b), kUnary), kUnary};
  if (auto n = match_neg(f)) return {"~" + wrap(render_sugar(*n), kUnary), kUnary};
  if (auto d = match_disj(f))
    return {wrap(render_sugar(d->first), kOr) + " | " + wrap(render_sugar(d->second), kOr + 1), kOr};
  return {wrap(render_sugar(f.left()), kImp + 1) + " -> " + wrap(render_sugar(f.right()), kImp), kImp};
}

}  // namespace

std::string render(const Formula& f, RenderMode mode) {
  return mode == RenderMode::Core ? render_core(f).text : render_sugar(f).text;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const Formula& f) {
  switch (f.op()) {
    case Op::Var:
      return {{"op", "var"}, {"name", f.name()}};
    case Op::Bot:
      return {{"op", "bot"}};
    case Op::Imp:
      return {{"op", "imp"}, {"left", to_json(f.left())}, {"right", to_json(f.right())}};
    case Op::Dia:
      return {{"op", "dia"}, {"arg", to_json(f.arg())}};
  }
  return {};
}

Formula formula_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse(j.get<std::string>());
  const auto op = j.at("op").get<std::string>();
  if (op == "var") {
    auto name = j.at("name").get<std::string>();
    if (name.empty()) throw std::invalid_argument("formula JSON: empty variable name");
    return Formula::var(std::move(name));
  }
  if (op == "bot") return Formula::bot();
  if (op == "imp") return Formula::imp(formula_from_json(j.at("left")), formula_from_json(j.at("right")));
  if (op == "dia") return Formula::dia(formula_from_json(j.at("arg")));
  throw std::invalid_argument("formula JSON: unknown op '" + op + "'");
}

// ---------------------------------------------------------------------------
// Analysis

const std::set<std::size_t>& FormulaAnalysis::occ_depths_of(const std::string& p) const {
  static const std::set<std::size_t> empty;
  const auto it = occ_depths.find(p);
  return it == occ_depths.end() ? empty : it->second;
}

std::optional<std::size_t> FormulaAnalysis::min_depth_of(const std::string& p) const {
  const auto it = min_depth.find(p);
  if (it == min_depth.end()) return std::nullopt;
  return it->second;
}

namespace {

void collect(const Formula& f, std::size_t level, FormulaAnalysis& out, std::set<Formula>& subs,
             std::set<Formula>& psi) {
  subs.insert(f);
  switch (f.op()) {
    case Op::Var:
      out.vars.insert(f.name());
      out.occ_depths[f.name()].insert(level);
      break;
    case Op::Bot:
      break;
    case Op::Imp:
      collect(f.left(), level, out, subs, psi);
      collect(f.right(), level, out, subs, psi);
      break;
    case Op::Dia:
      psi.insert(f.arg());
      collect(f.arg(), level + 1, out, subs, psi);
      break;
  }
}

}  // namespace

std::size_t modal_depth(const Formula& f) {
  switch (f.op()) {
    case Op::Var:
    case Op::Bot:
      return 0;
    case Op::Imp:
      return std::max(modal_depth(f.left()), modal_depth(f.right()));
    case Op::Dia:
      return modal_depth(f.arg()) + 1;
  }
  return 0;
}

FormulaAnalysis analyze(const Formula& f) {
  FormulaAnalysis out;
  std::set<Formula> subs, psi;
  // occ_depths are collected top-down as the nesting level of each occurrence,
  // which equals the bottom-up definition D_p(◊φ) = {k+1 | k ∈ D_p(φ)}.
  collect(f, 0, out, subs, psi);
  out.depth = modal_depth(f);
  for (const auto& [p, ds] : out.occ_depths) out.min_depth[p] = *ds.begin();
  out.subformulas.assign(subs.begin(), subs.end());
  out.psi_set.assign(psi.begin(), psi.end());
  for (const auto& p : out.vars)
    if (as_positive(f, p)) out.strictly_positive_in.insert(p);
  out.positive_without_vars = out.vars.empty() && as_positive(f, std::string()).has_value();
  return out;
}

std::set<std::string> variables(const Formula& f) { return analyze(f).vars; }

std::vector<Formula> psi_set(const Formula& f) { return analyze(f).psi_set; }

Formula substitute(const Formula& a, const std::string& p, const Formula& g) {
  switch (a.op()) {
    case Op::Var:
      return a.name() == p ? g : a;
    case Op::Bot:
      return a;
    case Op::Imp:
      return Formula::imp(substitute(a.left(), p, g), substitute(a.right(), p, g));
    case Op::Dia:
      return Formula::dia(substitute(a.arg(), p, g));
  }
  return a;
}

std::optional<PositiveTerm> as_positive(const Formula& f, const std::string& p) {
  using K = PositiveTerm::Kind;
  if (is_top(f)) return PositiveTerm{K::Top, {}};
  if (f.is_var()) {
    if (!p.empty() && f.name() == p) return PositiveTerm{K::Atom, {}};
    return std::nullopt;
  }
  if (f.is_dia()) {
    auto a = as_positive(f.arg(), p);
    if (!a) return std::nullopt;
    return PositiveTerm{K::Dia, {std::move(*a)}};
  }
  if (auto c = match_conj(f)) {
    auto a = as_positive(c->first, p);
    if (!a) return std::nullopt;
    auto b = as_positive(c->second, p);
    if (!b) return std::nullopt;
    return PositiveTerm{K::And, {std::move(*a), std::move(*b)}};
  }
  // ¬¬φ folds to φ
  if (auto n = match_neg(f)) {
    if (auto nn = match_neg(*n)) return as_positive(*nn, p);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Schemes

namespace {

struct SchemeName {
  Scheme scheme;
  const char* name;
};

constexpr SchemeName kSchemeNames[] = {
    {Scheme::Trans, "Trans"},       {Scheme::wTrans, "wTrans"},         {Scheme::Sigma, "Sigma"},
    {Scheme::DiaPlus, "DiaPlus"},   {Scheme::BoxPlus, "BoxPlus"},       {Scheme::A4, "A4"},
    {Scheme::Aw4, "Aw4"},           {Scheme::ALob, "ALob"},             {Scheme::ALobPlus, "ALobPlus"},
    {Scheme::ATPlus, "AT_plus"},    {Scheme::ABPlus, "AB_plus"},        {Scheme::A3Plus, "A3_plus"},
    {Scheme::GLn, "GLn"},           {Scheme::GL2Variant, "GL2variant"}, {Scheme::L2, "L2"},
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool takes_formula(Scheme s) { return s == Scheme::A4 || s == Scheme::Aw4 || s == Scheme::ALob; }

bool takes_n(Scheme s) {
  switch (s) {
    case Scheme::Trans:
    case Scheme::wTrans:
    case Scheme::Sigma:
    case Scheme::DiaPlus:
    case Scheme::BoxPlus:
    case Scheme::ALobPlus:
    case Scheme::ATPlus:
    case Scheme::ABPlus:
    case Scheme::A3Plus:
    case Scheme::GLn:
      return true;
    default:
      return false;
  }
}

Formula sigma(std::size_t n) {
  const Formula p = Formula::var(kVarP);
  Formula acc = p;
  for (std::size_t k = 2; k <= n; ++k) acc = Formula::conj(p, Formula::dia(acc));
  return acc;
}

void check_positive_param(const Formula& f, std::size_t min_depth, const char* role) {
  const auto a = analyze(f);
  if (!a.strictly_positive_in.count(kVarP))
    throw std::invalid_argument(std::string(role) + " must be strictly positive in " + kVarP + ": " + render(f));
  const auto d = a.min_depth_of(kVarP);
  if (!d || *d < min_depth)
    throw std::invalid_argument(std::string(role) + " must contain " + kVarP + " only at modal depth >= " +
                                std::to_string(min_depth) + ": " + render(f));
}

}  // namespace

std::string scheme_name(Scheme s) {
  for (const auto& e : kSchemeNames)
    if (e.scheme == s) return e.name;
  return "?";
}

std::optional<Scheme> scheme_from_name(std::string_view name) {
  const auto key = lower(name);
  for (const auto& e : kSchemeNames)
    if (lower(e.name) == key) return e.scheme;
  return std::nullopt;
}

bool SchemeId::operator==(const SchemeId& o) const {
  if (scheme != o.scheme) return false;
  if (takes_n(scheme) && n != o.n) return false;
  if (takes_formula(scheme)) return param == o.param;
  return true;
}

void validate(const SchemeId& id) {
  if (takes_n(id.scheme)) {
    if (id.n == 0) throw std::invalid_argument(scheme_name(id.scheme) + " needs n >= 1");
    if (id.scheme == Scheme::GLn && id.n < 2) throw std::invalid_argument("GLn needs n >= 2");
  }
  if (takes_formula(id.scheme)) {
    if (!id.param) throw std::invalid_argument(scheme_name(id.scheme) + " needs a formula parameter");
    if (id.scheme == Scheme::ALob)
      check_positive_param(*id.param, 1, "beta");
    else
      check_positive_param(*id.param, 2, "gamma");
  }
}

Formula scheme(const SchemeId& id) {
  validate(id);
  const Formula p = Formula::var(kVarP);
  const Formula q = Formula::var(kVarQ);
  const Formula r = Formula::var(kVarR);
  const std::size_t n = id.n;
  using F = Formula;
  switch (id.scheme) {
    case Scheme::Trans:
      return F::imp(F::dia_n(n + 1, p), F::dia_plus(n, p));
    case Scheme::wTrans:
      return F::imp(F::dia_n(n + 1, p), F::disj(F::dia_plus(n, p), p));
    case Scheme::Sigma:
      return sigma(n);
    case Scheme::DiaPlus:
      return F::dia_plus(n, p);
    case Scheme::BoxPlus:
      return F::box_plus(n, p);
    case Scheme::A4:
      return F::imp(*id.param, F::dia(p));
    case Scheme::Aw4:
      return F::imp(*id.param, F::disj(F::dia(p), p));
    case Scheme::ALob:
      return F::imp(F::dia(p), F::dia(F::conj(p, F::neg(*id.param))));
    case Scheme::ALobPlus:
      return F::imp(F::dia_plus(n, p), F::dia_plus(n, F::conj(p, F::neg(F::dia_plus(n, p)))));
    case Scheme::ATPlus:
      return F::imp(p, F::dia_plus(n, p));
    case Scheme::ABPlus:
      return F::imp(p, F::box_plus(n, F::dia_plus(n, p)));
    case Scheme::A3Plus: {
      auto dp = [n](F f) { return F::dia_plus(n, std::move(f)); };
      return F::imp(F::conj(dp(p), dp(q)),
                    F::disj(F::disj(dp(F::conj(p, dp(q))), dp(F::conj(q, dp(p)))), dp(F::conj(p, q))));
    }
    case Scheme::GLn:
      return F::imp(F::dia(p), F::dia(F::conj(p, F::neg(F::dia_n(n - 1, p)))));
    case Scheme::GL2Variant:
      return F::imp(F::dia(p), F::dia(F::conj(p, F::neg(F::dia(F::conj(p, F::dia(p)))))));
    case Scheme::L2:
      return F::imp(F::dia(F::conj(p, F::dia(F::conj(q, F::dia(r))))),
                    F::disj(F::disj(F::dia(F::conj(p, F::dia(r))), F::dia(q)), F::dia(r)));
  }
  throw std::logic_error("unknown scheme");
}

std::string describe(const SchemeId& id) {
  std::string s = scheme_name(id.scheme);
  if (takes_n(id.scheme)) s += "[n=" + std::to_string(id.n) + "]";
  if (takes_formula(id.scheme) && id.param)
    s += std::string("[") + (id.scheme == Scheme::ALob ? "beta=" : "gamma=") + render(*id.param) + "]";
  return s;
}

nlohmann::json to_json(const SchemeId& id) {
  nlohmann::json j{{"scheme", scheme_name(id.scheme)}};
  if (takes_n(id.scheme)) j["n"] = id.n;
  if (takes_formula(id.scheme) && id.param) j[id.scheme == Scheme::ALob ? "beta" : "gamma"] = render(*id.param);
  return j;
}

SchemeId scheme_from_json(const nlohmann::json& j) {
  const auto name = j.at("scheme").get<std::string>();
  const auto s = scheme_from_name(name);
  if (!s) throw std::invalid_argument("unknown scheme '" + name + "'");
  SchemeId id;
  id.scheme = *s;
  if (j.contains("n")) id.n = j.at("n").get<std::size_t>();
  for (const char* key : {"gamma", "beta", "param"})
    if (j.contains(key)) id.param = formula_from_json(j.at(key));
  validate(id);
  return id;
}

}  // namespace pretrans
