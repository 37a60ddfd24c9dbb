#include "cvtelefid/analytics.hpp"

#include <cmath>
#include <sstream>

namespace cvtelefid {

double ECSSpec::mean_photon_exact() const {
    const double sep = std::norm(alpha - beta);
    const double n2 = 1.0 / (2.0 - 2.0 * std::exp(-sep));
    return n2 * (std::norm(alpha) + std::norm(beta) -
                 2.0 * std::real(std::conj(alpha) * beta) * std::exp(-sep));
}

double sigma_from_squeezing(double eta) {
    if (eta < 0.0 || eta >= 1.0) {
        throw Error("sigma_from_squeezing: eta must lie in [0, 1)");
    }
    return std::exp(-2.0 * std::atanh(eta));
}

double sigma_from_detector(double nu) {
    if (nu <= 0.0 || nu > 1.0) {
        throw Error("sigma_from_detector: nu must lie in (0, 1]");
    }
    return (1.0 - nu * nu) / (nu * nu);
}

double coherent_entanglement_fidelity(double sigma) {
    if (sigma < 0.0) throw Error("coherent_entanglement_fidelity: sigma must be >= 0");
    return 1.0 / (1.0 + sigma);
}

double ecs_entanglement_fidelity(const ECSSpec& spec, double sigma, double eps_sep) {
    if (std::abs(spec.alpha - spec.beta) < eps_sep) {
        throw DegenerateECS("ecs_entanglement_fidelity: degenerate amplitudes");
    }
    if (sigma < 0.0) throw Error("ecs_entanglement_fidelity: sigma must be >= 0");
    const double sigma_eff = sigma / (1.0 + sigma);
    return 0.5 / (1.0 + sigma) * (1.0 + std::exp(-spec.separation_sq() * sigma_eff));
}

double required_sigma_for_ecs_fidelity(const ECSSpec& spec, double target, double atol) {
    double lo = 1e-12;
    double hi = 4.0;
    const auto excess = [&](double s) { return ecs_entanglement_fidelity(spec, s) - target; };
    if (excess(lo) < 0.0 || excess(hi) > 0.0) {
        std::ostringstream msg;
        msg << "required_sigma_for_ecs_fidelity: no root for target " << target
            << " in sigma bracket [" << lo << ", " << hi << "]";
        throw NoRoot(msg.str());
    }
    // Fidelity is strictly decreasing in sigma, so plain bisection suffices.
    for (int it = 0; it < 200 && hi - lo > atol; ++it) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double squeezing_to_db(double sigma_eta) {
    if (sigma_eta <= 0.0 || sigma_eta > 1.0) {
        throw Error("squeezing_to_db: sigma_eta must lie in (0, 1]");
    }
    return -10.0 * std::log10(sigma_eta);
}

double db_to_squeezing_sigma(double db) {
    if (db < 0.0) throw Error("db_to_squeezing_sigma: dB must be >= 0");
    return std::pow(10.0, -db / 10.0);
}

double sigma_from_average_fidelity(double fbar) {
    if (fbar <= 0.0 || fbar > 1.0) {
        throw Error("sigma_from_average_fidelity: fbar must lie in (0, 1]");
    }
    return 1.0 / fbar - 1.0;
}

}  // namespace cvtelefid
