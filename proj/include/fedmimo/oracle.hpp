#pragma once

#include "fedmimo/channel.hpp"
#include "fedmimo/config.hpp"
#include "fedmimo/rates.hpp"

namespace fedmimo {

/// Grid specification for the brute-force search. Power axes use log
/// spacing below 0.1 and linear spacing above (the objective is most
/// sensitive near zero power); refinement rounds shrink the box around the
/// incumbent and re-grid.
struct GridSpec {
    int steps = 15;   ///< grid points per free variable
    int rounds = 3;   ///< refinement rounds (>= 1)
};

struct OracleResult {
    Allocation allocation;
    double objective = 0.0;  ///< min effective rate (bit/s)
    bool feasible = false;   ///< false when no grid point was feasible
    long long evaluated = 0; ///< feasible points examined
};

/// Exhaustive search over the 2L+3K+1 free variables, restricted to
/// feasible points. Intended as ground truth for tiny instances only;
/// throws std::invalid_argument when 2L+3K+1 > 6 (i.e. anything beyond
/// L = K = 1).
OracleResult grid_search(const ChannelState& ch, const SystemConfig& cfg,
                         const GridSpec& grid = {});

}  // namespace fedmimo
