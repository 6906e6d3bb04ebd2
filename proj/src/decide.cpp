#include "pretrans/decide.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <numeric>

#include "pretrans/parallel.hpp"

namespace pretrans {

void validate(const SearchBudget& b) {
  if (b.max_worlds == 0) throw std::invalid_argument("search budget: max_worlds must be >= 1");
  if (b.exhaustive_up_to > b.max_worlds)
    throw std::invalid_argument("search budget: exhaustive_up_to exceeds max_worlds");
  if (b.exhaustive_up_to > kMaxCodedSize)
    throw std::invalid_argument("search budget: exhaustive scans stop at size " + std::to_string(kMaxCodedSize));
}

Frame frame_from_code(std::size_t size, std::uint64_t code) {
  if (size == 0 || size > kMaxCodedSize) throw std::invalid_argument("frame codes cover sizes 1..8");
  BitMatrix m(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      if ((code >> (i * size + j)) & 1U) m.set(i, j);
  return Frame(std::move(m));
}

std::uint64_t frame_code(const Frame& f) {
  const std::size_t n = f.size();
  if (n > kMaxCodedSize) throw std::invalid_argument("frame codes cover sizes 1..8");
  std::uint64_t code = 0;
  for (const auto& [i, j] : f.rel().edges()) code |= std::uint64_t{1} << (i * n + j);
  return code;
}

std::uint64_t canonical_code(const Frame& f) {
  const std::size_t n = f.size();
  if (n > kMaxCodedSize) throw std::invalid_argument("frame codes cover sizes 1..8");
  const auto edges = f.rel().edges();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t code = 0;
    for (const auto& [i, j] : edges) code |= std::uint64_t{1} << (perm[i] * n + perm[j]);
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace {

std::uint64_t code_count(std::size_t size) {
  const std::size_t bits = size * size;
  return bits >= 64 ? 0 : (std::uint64_t{1} << bits);
}

void check_enumeration_size(std::size_t size, const EnumerateOptions& opts) {
  if (size == 0) throw std::invalid_argument("frames need at least one world");
  if (size > kMaxCodedSize) throw std::invalid_argument("enumeration stops at size " + std::to_string(kMaxCodedSize));
  if (size > kDefaultEnumerationCap && !opts.allow_large)
    throw std::invalid_argument("enumerating size " + std::to_string(size) + " needs an explicit override");
}

}  // namespace

void for_each_frame(std::size_t size, const std::function<bool(const Frame&)>& fn, EnumerateOptions opts) {
  check_enumeration_size(size, opts);
  const std::uint64_t total = code_count(size);
  for (std::uint64_t code = 0; code < total; ++code) {
    const Frame f = frame_from_code(size, code);
    if (opts.iso_reduce && canonical_code(f) != code) continue;
    if (!fn(f)) return;
  }
}

std::vector<Frame> enumerate_frames(std::size_t size, EnumerateOptions opts) {
  std::vector<Frame> out;
  for_each_frame(size, [&](const Frame& f) {
    out.push_back(f);
    return true;
  }, opts);
  return out;
}

Frame random_frame(std::size_t size, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution edge(density);
  BitMatrix m(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      if (edge(rng)) m.set(i, j);
  return Frame(std::move(m));
}

namespace {

constexpr double kDensities[] = {0.2, 0.4, 0.6};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Random candidate t at one size; independent of scan order and thread count.
Frame random_candidate(std::uint64_t seed, std::size_t size, std::uint64_t t) {
  std::mt19937_64 rng(splitmix(seed ^ splitmix(size * 0x100000001b3ULL + t)));
  return random_frame(size, kDensities[t % 3], rng);
}

/// Rethrows the first exception raised inside a parallel scan.
class ErrorSlot {
 public:
  template <class Fn>
  bool guard(Fn&& fn) {
    try {
      return fn();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu_);
      if (!error_) error_ = std::current_exception();
      return false;
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr error_;
};

struct Hit {
  std::size_t size = 0;
  std::uint64_t index = 0;
  bool random = false;
};

/// First frame accepted by `accept` in the budget's scan order.
std::optional<Hit> scan_frames(const SearchBudget& budget, const std::function<bool(const Frame&)>& accept,
                               SearchStats& stats) {
  validate(budget);
  ErrorSlot errors;
  auto run = [&](std::uint64_t total, auto make) -> std::optional<std::uint64_t> {
    const auto hit = parallel_first(total, 16, [&](std::uint64_t b, std::uint64_t e) -> std::optional<std::uint64_t> {
      for (auto i = b; i < e; ++i)
        if (errors.guard([&] { return accept(make(i)); })) return i;
      return std::nullopt;
    });
    errors.rethrow();
    return hit;
  };

  for (std::size_t size = 1; size <= budget.exhaustive_up_to; ++size) {
    const std::uint64_t total = code_count(size);
    const auto hit = run(total, [size](std::uint64_t code) { return frame_from_code(size, code); });
    stats.largest_size = size;
    const std::uint64_t scanned = hit ? *hit + 1 : total;
    stats.exhaustive_frames += scanned;
    stats.frames_scanned += scanned;
    if (hit) return Hit{size, *hit, false};
  }

  const std::size_t first_random = budget.exhaustive_up_to + 1;
  if (budget.max_frames == 0 || first_random > budget.max_worlds) return std::nullopt;
  const std::size_t sizes = budget.max_worlds - first_random + 1;
  for (std::size_t s = 0; s < sizes; ++s) {
    const std::size_t size = first_random + s;
    const std::uint64_t per = budget.max_frames / sizes + (s < budget.max_frames % sizes ? 1 : 0);
    if (per == 0) continue;
    const auto hit = run(per, [&, size](std::uint64_t t) { return random_candidate(budget.seed, size, t); });
    stats.largest_size = size;
    const std::uint64_t scanned = hit ? *hit + 1 : per;
    stats.random_frames += scanned;
    stats.frames_scanned += scanned;
    if (hit) return Hit{size, *hit, true};
  }
  return std::nullopt;
}

Frame frame_at(const SearchBudget& budget, const Hit& h) {
  return h.random ? random_candidate(budget.seed, h.size, h.index) : frame_from_code(h.size, h.index);
}

}  // namespace

SearchResult countermodel_search(const LogicSpec& spec, const Formula& zeta, const SearchBudget& budget) {
  validate(spec);
  const std::size_t vars = variables(zeta).size();
  if (budget.max_worlds * vars > budget.bruteforce_cap)
    throw BudgetExceeded("countermodel search needs " + std::to_string(budget.max_worlds * vars) +
                         " valuation bits at the largest size, cap is " + std::to_string(budget.bruteforce_cap));
  SearchResult out;
  const auto hit = scan_frames(budget, [&](const Frame& f) {
    return is_lambda_frame(f, spec, budget.bruteforce_cap) && find_refutation(f, zeta, budget.bruteforce_cap);
  }, out.stats);
  if (!hit) return out;
  const Frame f = frame_at(budget, *hit);
  out.countermodel = find_refutation(f, zeta, budget.bruteforce_cap);
  out.frame_size = hit->size;
  out.frame_code = !hit->random ? hit->index : (hit->size <= kMaxCodedSize ? frame_code(f) : 0);
  out.random_phase = hit->random;
  return out;
}

InclusionVerdict inclusion_probe(const LogicSpec& weak, const LogicSpec& strong, const SearchBudget& budget) {
  validate(weak);
  validate(strong);
  auto refuted = [&](const Frame& f) -> std::optional<SchemeId> {
    for (const auto& a : weak.axioms)
      if (!valid_axiom(f, a, budget.bruteforce_cap)) return a;
    return std::nullopt;
  };
  InclusionVerdict out;
  const auto hit = scan_frames(budget, [&](const Frame& f) {
    return is_lambda_frame(f, strong, budget.bruteforce_cap) && refuted(f).has_value();
  }, out.stats);
  if (!hit) return out;
  out.counterexample = true;
  out.frame = frame_at(budget, *hit);
  out.refuted = refuted(*out.frame);
  return out;
}

nlohmann::json to_json(const SearchStats& s) {
  return {{"frames_scanned", s.frames_scanned},
          {"exhaustive_frames", s.exhaustive_frames},
          {"random_frames", s.random_frames},
          {"largest_size", s.largest_size}};
}

}  // namespace pretrans
