#include "fedmimo/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "fedmimo/rng.hpp"

namespace fedmimo {

double pathloss_beta(double distance_m, double shadow_db, double d_min_m) {
    if (distance_m < d_min_m)
        throw std::domain_error("pathloss_beta: distance below the model floor");
    const double db = -148.1 - 37.6 * std::log10(distance_m / 1000.0) + shadow_db;
    return std::pow(10.0, db / 10.0);
}

double mmse_variance(double rho_p, double tau, double beta) {
    if (rho_p < 0 || tau < 0 || beta < 0)
        throw std::domain_error("mmse_variance: negative input");
    const double snr = rho_p * tau * beta;
    return snr * beta / (snr + 1.0);
}

ChannelState sample_layout(const SystemConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    ChannelState ch;
    ch.seed = seed;

    const int n = cfg.l + cfg.k;
    ch.positions.reserve(n);
    std::vector<double> beta(n);
    const double half = cfg.d_side_m / 2.0;
    for (int i = 0; i < n; ++i) {
        double x = 0, y = 0, d = 0;
        do {
            x = rng.uniform(-half, half);
            y = rng.uniform(-half, half);
            d = std::hypot(x, y);
        } while (d < cfg.d_min_m);
        const double shadow = rng.normal(0.0, cfg.shadow_sigma_db);
        ch.positions.push_back({x, y});
        beta[i] = pathloss_beta(d, shadow, cfg.d_min_m);
    }

    ch.beta_fl.assign(beta.begin(), beta.begin() + cfg.l);
    ch.beta_nfl.assign(beta.begin() + cfg.l, beta.end());

    auto fill = [&cfg](const std::vector<double>& betas, int tau) {
        std::vector<double> out(betas.size());
        for (std::size_t i = 0; i < betas.size(); ++i)
            out[i] = mmse_variance(cfg.rho_p, tau, betas[i]);
        return out;
    };
    ch.sigma2_d = fill(ch.beta_fl, cfg.tau_dp);
    ch.sigma2_u = fill(ch.beta_fl, cfg.tau_up);
    ch.sigma2_1 = fill(ch.beta_nfl, cfg.tau_1p);
    ch.sigma2_2 = fill(ch.beta_nfl, cfg.tau_2p);
    ch.sigma2_3 = fill(ch.beta_nfl, cfg.tau_3p);
    return ch;
}

}  // namespace fedmimo
