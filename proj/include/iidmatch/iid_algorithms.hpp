#pragma once

// Uniform front end over the five type-graph-aware policies: one preprocess
// per type graph, then one suggestion list per arrival.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "iidmatch/blue_red.hpp"
#include "iidmatch/brubach.hpp"
#include "iidmatch/manshadi.hpp"
#include "iidmatch/rla.hpp"

namespace iidmatch {

enum class Policy { feldman, bahmani, manshadi, jaillet_lu, brubach };

inline constexpr std::array<Policy, 5> kAllPolicies{Policy::feldman, Policy::bahmani, Policy::manshadi,
                                                    Policy::jaillet_lu, Policy::brubach};

inline const char* to_string(Policy p) {
  switch (p) {
    case Policy::feldman: return "feldman";
    case Policy::bahmani: return "bahmani";
    case Policy::manshadi: return "manshadi";
    case Policy::jaillet_lu: return "jaillet_lu";
    case Policy::brubach: return "brubach";
  }
  return "?";
}

inline std::optional<Policy> parse_policy(std::string_view s) {
  for (Policy p : kAllPolicies)
    if (s == to_string(p)) return p;
  return std::nullopt;
}

struct PolicyOptions {
  int opt_samples = kDefaultOptSamples;
  std::int64_t lp_row_limit = kDefaultLpRowLimit;
};

using PolicyState = std::variant<BlueRed, IntervalPartitions, ListDistribution>;

/// Throws LpGuardError for brubach on graphs above the row limit.
inline PolicyState preprocess(Policy p, const TypeGraph& tg, Rng& rng, const PolicyOptions& opt = {}) {
  switch (p) {
    case Policy::feldman: return feldman_preprocess(tg);
    case Policy::bahmani: return bahmani_preprocess(tg);
    case Policy::manshadi: return manshadi_preprocess(tg, rng, opt.opt_samples);
    case Policy::jaillet_lu: return jaillet_lu_preprocess(tg);
    case Policy::brubach: return brubach_preprocess(tg, rng, opt.lp_row_limit);
  }
  throw std::invalid_argument("preprocess: unknown policy");
}

/// `k` is the 1-based arrival count of `type` so far.
inline SuggestionList suggest(Policy p, const PolicyState& state, int type, int k, Rng& rng) {
  switch (p) {
    case Policy::feldman:
    case Policy::bahmani: return feldman_suggest(std::get<BlueRed>(state), type, k);
    case Policy::manshadi: return manshadi_suggest(std::get<IntervalPartitions>(state), type, rng);
    case Policy::jaillet_lu:
    case Policy::brubach: return rla_suggest(std::get<ListDistribution>(state), type, rng);
  }
  throw std::invalid_argument("suggest: unknown policy");
}

inline Matching run_policy(Policy p, const PolicyState& state, const InstanceStream& inst, ExecMode mode, Rng& rng) {
  return execute_policy(
      inst, [&](int type, int k, Rng& r) { return suggest(p, state, type, k, r); }, mode, rng);
}

}  // namespace iidmatch
