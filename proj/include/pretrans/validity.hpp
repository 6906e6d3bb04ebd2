#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pretrans/formula.hpp"
#include "pretrans/kripke.hpp"

namespace pretrans {

/// A search or sweep would exceed its configured size.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default cap on size × |vars| for exhaustive valuation sweeps.
inline constexpr std::size_t kDefaultBruteforceCap = 24;
/// Default cap on the number of sets built by min_p_sets.
inline constexpr std::size_t kDefaultMinSetBudget = 1'000'000;

/// True iff phi holds at every world under every valuation of its variables.
/// Throws BudgetExceeded when size × |vars| > limit (or > 62).
bool valid_bruteforce(const Frame& f, const Formula& phi, std::size_t limit = kDefaultBruteforceCap);

struct Refutation {
  Model model;
  World world;
};

/// First refuting valuation in counter order (variable i, world w is bit
/// i·size + w; variables sorted by name) and the lowest refuting world.
std::optional<Refutation> find_refutation(const Frame& f, const Formula& phi,
                                          std::size_t limit = kDefaultBruteforceCap);

namespace serial {
/// Reference sweep: one Model and one recursive eval per valuation.
bool valid_bruteforce(const Frame& f, const Formula& phi, std::size_t limit = kDefaultBruteforceCap);
}  // namespace serial

/// ⊆-minimal valuations of p that make gamma true at a world.
struct MinSets {
  std::vector<WorldSet> antichain;
};

/// Throws std::invalid_argument unless gamma is strictly positive in p;
/// BudgetExceeded when more than `node_budget` sets are built.
MinSets min_p_sets(const Frame& f, World w, const Formula& gamma, std::size_t node_budget = kDefaultMinSetBudget,
                   const std::string& p = kVarP);

/// Scheme-aware validity. Agrees with valid_bruteforce on the scheme instance.
bool valid_axiom(const Frame& f, const SchemeId& id, std::size_t limit = kDefaultBruteforceCap);

struct LogicSpec {
  std::string name;
  std::vector<SchemeId> axioms;
  /// n such that the logic is n-transitive.
  std::size_t pretrans_degree = 1;
  bool requires_cwf = false;
};

/// Throws std::invalid_argument on an invalid axiom or a zero degree.
void validate(const LogicSpec& spec);

bool is_lambda_frame(const Frame& f, const LogicSpec& spec, std::size_t limit = kDefaultBruteforceCap);

namespace catalog {

LogicSpec k4();
LogicSpec wk4();
LogicSpec gl();
LogicSpec k4_gamma(const Formula& gamma);
LogicSpec wk4_gamma(const Formula& gamma);
LogicSpec gl_beta(const Formula& beta);
/// K4¹ₙ = K4_{◊ⁿp}, n ≥ 2.
LogicSpec k4_1(std::size_t n);
LogicSpec wk4_1(std::size_t n);
/// GLₙ = K + ◊p → ◊(p ∧ ¬◊ⁿ⁻¹p), n ≥ 2.
LogicSpec gl_n(std::size_t n);
/// K4_{◊²σₙ}.
LogicSpec k4_sigma(std::size_t n);
LogicSpec wk4_sigma(std::size_t n);
/// GL_{◊²σₙ} = K + ALöb with β = ◊σₙ.
LogicSpec gl_sigma(std::size_t n);
LogicSpec s4_gamma(const Formula& gamma);
LogicSpec s5_gamma(const Formula& gamma);
LogicSpec k43_gamma(const Formula& gamma);
LogicSpec s43_gamma(const Formula& gamma);
LogicSpec trans_n(std::size_t n);
LogicSpec wtrans_n(std::size_t n);
LogicSpec l2();
LogicSpec gl2_variant();

/// Resolves a catalog name. Fixed names: K4, wK4, GL, L2, GL2var. Numbered:
/// K4_1_<n>, wK4_1_<n>, GL_<n>, K4_sigma_<n>, wK4_sigma_<n>, GL_sigma_<n>,
/// Trans_<n>, wTrans_<n>. Parametric: K4[γ], wK4[γ], GL[β], S4[γ], S5[γ],
/// K4.3[γ], S4.3[γ]. Throws std::invalid_argument for unknown names.
LogicSpec resolve(std::string_view name);

/// Name patterns accepted by resolve(), with one-line descriptions.
std::vector<std::pair<std::string, std::string>> entries();

}  // namespace catalog

nlohmann::json to_json(const LogicSpec& spec);
/// Accepts the object form or a catalog name string.
LogicSpec logic_from_json(const nlohmann::json& j);

}  // namespace pretrans
