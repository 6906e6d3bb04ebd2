#include "pretrans/evaluator.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace pretrans {

Evaluator::Evaluator(const Frame& frame, const Formula& f, std::vector<std::string> vars)
    : vars_(std::move(vars)), n_(frame.size()) {
  if (n_ > kMaxWorlds) throw std::invalid_argument("Evaluator supports at most 64 worlds");
  full_ = n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
  succ_.resize(n_);
  for (World w = 0; w < n_; ++w) succ_[w] = frame.rel().row_words(w)[0];

  std::unordered_map<Formula, std::uint32_t, FormulaHash> index;
  // Iterative post-order so deep formulas cannot exhaust the stack.
  std::vector<std::pair<Formula, bool>> stack{{f, false}};
  while (!stack.empty()) {
    auto [g, expanded] = stack.back();
    stack.pop_back();
    if (index.count(g)) continue;
    if (!expanded) {
      stack.push_back({g, true});
      if (g.is_imp()) {
        stack.push_back({g.right(), false});
        stack.push_back({g.left(), false});
      } else if (g.is_dia()) {
        stack.push_back({g.arg(), false});
      }
      continue;
    }
    Instr in{Code::None};
    switch (g.op()) {
      case Op::Var: {
        const auto it = std::find(vars_.begin(), vars_.end(), g.name());
        if (it == vars_.end()) {
          in.code = Code::Bot;
        } else {
          in.code = Code::Var;
          in.a = static_cast<std::uint32_t>(it - vars_.begin());
        }
        break;
      }
      case Op::Bot:
        in.code = Code::Bot;
        break;
      case Op::Imp:
        in = {Code::Imp, index.at(g.left()), index.at(g.right())};
        break;
      case Op::Dia:
        in = {Code::Dia, index.at(g.arg()), 0};
        break;
    }
    index.emplace(g, static_cast<std::uint32_t>(program_.size()));
    program_.push_back(in);
  }
}

std::uint64_t Evaluator::run(std::span<const std::uint64_t> var_masks, std::span<std::uint64_t> reg) const {
  for (std::size_t i = 0; i < program_.size(); ++i) {
    const Instr& in = program_[i];
    switch (in.code) {
      case Code::Var:
        reg[i] = var_masks[in.a] & full_;
        break;
      case Code::Bot:
      case Code::None:
        reg[i] = 0;
        break;
      case Code::Imp:
        reg[i] = (~reg[in.a] | reg[in.b]) & full_;
        break;
      case Code::Dia: {
        const std::uint64_t a = reg[in.a];
        std::uint64_t out = 0;
        for (std::size_t w = 0; w < n_; ++w)
          if (succ_[w] & a) out |= std::uint64_t{1} << w;
        reg[i] = out;
        break;
      }
    }
  }
  return reg[program_.size() - 1];
}

}  // namespace pretrans
