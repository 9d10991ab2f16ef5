#pragma once

// Shared helpers for the test binaries.

#include "fedmimo/config.hpp"
#include "fedmimo/rates.hpp"
#include "fedmimo/rng.hpp"

namespace testutil {

/// Random allocation satisfying the power budgets with margin; f uniform
/// over a mid-range band. QoS feasibility is the caller's concern.
inline fedmimo::Allocation random_allocation(fedmimo::Rng& rng, const fedmimo::SystemConfig& cfg) {
    fedmimo::Allocation a = fedmimo::Allocation::zeros(cfg.l, cfg.k);
    double s1 = 0.0;
    for (double& v : a.eta_d) s1 += (v = rng.uniform(0.01, 1.0));
    for (double& v : a.zeta_1) s1 += (v = rng.uniform(0.01, 1.0));
    const double scale1 = rng.uniform(0.3, 0.999) / s1;
    for (double& v : a.eta_d) v *= scale1;
    for (double& v : a.zeta_1) v *= scale1;

    double s2 = 0.0;
    for (double& v : a.zeta_2) s2 += (v = rng.uniform(0.01, 1.0));
    const double scale2 = rng.uniform(0.3, 0.999) / s2;
    for (double& v : a.zeta_2) v *= scale2;

    double s3 = 0.0;
    for (double& v : a.zeta_3) s3 += (v = rng.uniform(0.01, 1.0));
    const double scale3 = rng.uniform(0.3, 0.999) / s3;
    for (double& v : a.zeta_3) v *= scale3;

    for (double& v : a.eta_u) v = rng.uniform(0.05, 1.0);
    a.f = rng.uniform(0.05, 1.0) * cfg.f_max;
    return a;
}

}  // namespace testutil
