#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pretrans/formula.hpp"
#include "pretrans/kripke.hpp"

namespace pretrans {

/// A formula compiled against one frame of at most 64 worlds. Shared
/// subformulas become one instruction each; world sets are single words.
/// Used for sweeps over many valuations of the same frame.
class Evaluator {
 public:
  static constexpr std::size_t kMaxWorlds = 64;

  /// `vars` fixes the order of the masks passed to run(). Variables of the
  /// formula missing from `vars` evaluate to the empty set.
  Evaluator(const Frame& frame, const Formula& f, std::vector<std::string> vars);

  std::size_t register_count() const { return program_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  /// All worlds of the frame as a mask.
  std::uint64_t full() const { return full_; }

  /// Truth set of the formula; `scratch` must hold register_count() words.
  std::uint64_t run(std::span<const std::uint64_t> var_masks, std::span<std::uint64_t> scratch) const;

 private:
  enum class Code : std::uint8_t { Var, Bot, Imp, Dia, None };
  struct Instr {
    Code code;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
  };

  std::vector<Instr> program_;
  std::vector<std::uint64_t> succ_;
  std::vector<std::string> vars_;
  std::uint64_t full_ = 0;
  std::size_t n_ = 0;
};

}  // namespace pretrans
