#pragma once

#include <string>
#include <vector>

#include "cssim/engine.hpp"
#include "cssim/rng.hpp"

namespace invariants {

/// Re-derives every per-step structural property of a run record from its
/// own fields and the config. Returns one message per violation.
std::vector<std::string> check_run(const cssim::RunRecord& record);

/// A random but valid configuration for fuzzing: node count, channels,
/// geometry, fading, policy and all engine switches vary.
cssim::SimConfig random_config(cssim::Rng& rng);

}  // namespace invariants
