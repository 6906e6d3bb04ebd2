#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace pretrans {

/// Core connectives. Everything else (¬, ⊤, ∧, ∨, □, ◊ᵏ, ◊⁺ⁿ, □⁺ⁿ) is sugar
/// expanded at construction time.
enum class Op : std::uint8_t { Var, Bot, Imp, Dia };

/// Immutable modal formula over ⊥, →, ◊. Equality is structural.
class Formula {
 public:
  /// ⊥.
  Formula();

  static Formula var(std::string name);
  static Formula bot();
  static Formula imp(Formula left, Formula right);
  static Formula dia(Formula arg);

  // Sugar.
  static Formula neg(Formula f);                    // f → ⊥
  static Formula top();                             // ¬⊥
  static Formula conj(Formula a, Formula b);        // ¬(a → ¬b)
  static Formula disj(Formula a, Formula b);        // ¬a → b
  static Formula box(Formula f);                    // ¬◊¬f
  static Formula dia_n(std::size_t k, Formula f);   // ◊ᵏf, ◊⁰f = f
  static Formula box_n(std::size_t k, Formula f);   // □ᵏf
  static Formula dia_plus(std::size_t n, Formula f);  // ◊f ∨ … ∨ ◊ⁿf
  static Formula box_plus(std::size_t n, Formula f);  // □f ∧ … ∧ □ⁿf

  Op op() const;
  /// Variable name; empty for non-variables.
  const std::string& name() const;
  /// Antecedent of an implication.
  const Formula& left() const;
  /// Consequent of an implication.
  const Formula& right() const;
  /// Argument of a diamond.
  const Formula& arg() const;

  bool is_var() const { return op() == Op::Var; }
  bool is_bot() const { return op() == Op::Bot; }
  bool is_imp() const { return op() == Op::Imp; }
  bool is_dia() const { return op() == Op::Dia; }

  /// Number of tree nodes.
  std::size_t node_count() const;
  std::size_t hash() const;

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

  /// Deterministic total order: node count, then connective, then name, then children.
  bool operator<(const Formula& o) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// ---- Sugar recognition (used by the printer and the positivity check). ----

bool is_top(const Formula& f);
std::optional<Formula> match_neg(const Formula& f);
std::optional<std::pair<Formula, Formula>> match_conj(const Formula& f);
std::optional<std::pair<Formula, Formula>> match_disj(const Formula& f);
std::optional<Formula> match_box(const Formula& f);

// ---- Text syntax. ----

/// Raised on malformed input; carries the byte offset and the tokens that would
/// have been accepted there.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found);
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Grammar (highest precedence first):
///   unary   := ("~" | "<>" | "dia" | "[]" | "box") unary | atom
///   atom    := p[0-9]+ | "\"" name "\"" | "bot" | "top" | "(" formula ")"
///   conj    := unary ("&" unary)*          left-associative
///   disj    := conj ("|" conj)*            left-associative
///   formula := disj ("->" formula)?        right-associative
Formula parse(std::string_view text);

enum class RenderMode { Sugar, Core };

/// Minimal-parenthesis rendering; parse(render(f)) == f in both modes.
std::string render(const Formula& f, RenderMode mode = RenderMode::Sugar);

// ---- JSON tree serialization: {"op":"var","name":..} | {"op":"bot"} |
//      {"op":"imp","left":..,"right":..} | {"op":"dia","arg":..}

nlohmann::json to_json(const Formula& f);
Formula formula_from_json(const nlohmann::json& j);

// ---- Analysis. ----

struct FormulaAnalysis {
  std::size_t depth = 0;
  std::map<std::string, std::set<std::size_t>> occ_depths;
  /// Only variables that occur; absent variables have minimal depth ∞.
  std::map<std::string, std::size_t> min_depth;
  std::set<std::string> vars;
  /// Sorted by Formula::operator<, duplicates removed.
  std::vector<Formula> subformulas;
  /// { ψ : ◊ψ is a subformula }, same order.
  std::vector<Formula> psi_set;
  /// Variables p for which the formula lies in the strictly positive fragment Fm⁺(p).
  std::set<std::string> strictly_positive_in;
  /// Built from ⊤, ∧, ◊ alone (positive in every variable).
  bool positive_without_vars = false;

  /// Minimal occurrence depth, nullopt meaning ∞.
  std::optional<std::size_t> min_depth_of(const std::string& p) const;
  const std::set<std::size_t>& occ_depths_of(const std::string& p) const;
};

FormulaAnalysis analyze(const Formula& f);

std::size_t modal_depth(const Formula& f);
std::set<std::string> variables(const Formula& f);
std::vector<Formula> psi_set(const Formula& f);

/// Simultaneous replacement of every occurrence of variable p by g.
Formula substitute(const Formula& a, const std::string& p, const Formula& g);

/// Strictly positive term over one variable, after folding ⊤, ∧ and ¬¬ sugar.
struct PositiveTerm {
  enum class Kind { Top, Atom, And, Dia };
  Kind kind = Kind::Top;
  std::vector<PositiveTerm> args;
};

/// nullopt unless f ∈ Fm⁺(p).
std::optional<PositiveTerm> as_positive(const Formula& f, const std::string& p);

// ---- Axiom schemes. ----

/// Scheme variables: p is "p0", q is "p1", r is "p2".
inline const std::string kVarP = "p0";
inline const std::string kVarQ = "p1";
inline const std::string kVarR = "p2";

enum class Scheme {
  Trans,       // ◊ⁿ⁺¹p → ◊p ∨ … ∨ ◊ⁿp
  wTrans,      // ◊ⁿ⁺¹p → ◊p ∨ … ∨ ◊ⁿp ∨ p
  Sigma,       // σ₁ = p, σₙ = p ∧ ◊σₙ₋₁
  DiaPlus,     // ◊⁺ⁿp
  BoxPlus,     // □⁺ⁿp
  A4,          // γ → ◊p
  Aw4,         // γ → ◊p ∨ p
  ALob,        // ◊p → ◊(p ∧ ¬β)
  ALobPlus,    // ◊⁺ⁿp → ◊⁺ⁿ(p ∧ ¬◊⁺ⁿp)
  ATPlus,      // p → ◊⁺ⁿp
  ABPlus,      // p → □⁺ⁿ◊⁺ⁿp
  A3Plus,      // ◊⁺ⁿp ∧ ◊⁺ⁿq → ◊⁺ⁿ(p ∧ ◊⁺ⁿq) ∨ ◊⁺ⁿ(q ∧ ◊⁺ⁿp) ∨ ◊⁺ⁿ(p ∧ q)
  GLn,         // ◊p → ◊(p ∧ ¬◊ⁿ⁻¹p), n ≥ 2
  GL2Variant,  // ◊p → ◊(p ∧ ¬◊(p ∧ ◊p))
  L2,          // ◊(p ∧ ◊(q ∧ ◊r)) → ◊(p ∧ ◊r) ∨ ◊q ∨ ◊r
};

std::string scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(std::string_view name);

/// A scheme together with its parameters: n for the numbered schemes, the
/// formula γ (A4, Aw4) or β (ALob) in `param`.
struct SchemeId {
  Scheme scheme = Scheme::Trans;
  std::size_t n = 1;
  std::optional<Formula> param;

  static SchemeId numbered(Scheme s, std::size_t n) { return {s, n, std::nullopt}; }
  static SchemeId with_formula(Scheme s, Formula f) { return {s, 1, std::move(f)}; }

  bool operator==(const SchemeId& o) const;
};

/// Throws std::invalid_argument when the side conditions fail: γ strictly
/// positive in p, containing p, minimal p-depth ≥ 2; β the same with depth ≥ 1.
void validate(const SchemeId& id);

/// Instance of the scheme over p0 (and p1, p2).
Formula scheme(const SchemeId& id);

std::string describe(const SchemeId& id);
nlohmann::json to_json(const SchemeId& id);
SchemeId scheme_from_json(const nlohmann::json& j);

}  // namespace pretrans
