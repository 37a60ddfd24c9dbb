#pragma once

#include "cvtelefid/fock.hpp"

namespace cvtelefid {

// Additive error budget: total channel variance as the sum of the
// amplification, finite-squeezing, detector-efficiency, and residual terms.
struct NoiseBudget {
    double sigma_G = 0.0;      // amplification noise (opaque input)
    double sigma_eta = 0.0;    // finite squeezing
    double sigma_nu = 0.0;     // detector efficiency
    double sigma_other = 0.0;  // anything else

    double total() const { return sigma_G + sigma_eta + sigma_nu + sigma_other; }
};

// Antisymmetric entangled-coherent-state amplitudes.
struct ECSSpec {
    Complex alpha;
    Complex beta;

    double separation_sq() const { return std::norm(alpha - beta); }
    // The scaling variable used for the sigma ~ 1/nbar law (beta = -alpha family).
    double mean_photon_approx() const { return std::norm(alpha); }
    // Exact per-mode mean photon number of the reduced state.
    double mean_photon_exact() const;
};

// Finite-squeezing noise variance sigma_eta = exp(-2 atanh eta); eta in [0,1).
double sigma_from_squeezing(double eta);

// Detector-efficiency noise variance sigma_nu = (1 - nu^2) / nu^2; nu in (0,1].
double sigma_from_detector(double nu);

// Coherent-state entanglement fidelity under E_sigma: 1 / (1 + sigma),
// independent of the amplitude.
double coherent_entanglement_fidelity(double sigma);

// ECS entanglement fidelity under E_sigma on one mode:
//   1/2 * 1/(1+sigma) * (1 + exp(-|alpha-beta|^2 sigma/(1+sigma))).
double ecs_entanglement_fidelity(const ECSSpec& spec, double sigma,
                                 double eps_sep = kEpsSep);

// Inverse problem: the sigma at which the ECS entanglement fidelity reaches
// `target`, by bracketed bisection on [1e-12, 4]. Throws NoRoot when the
// target is unattainable in the bracket.
double required_sigma_for_ecs_fidelity(const ECSSpec& spec, double target,
                                       double atol = 1e-12);

// Squeezing strength conversions under the convention sigma_eta = e^{-2r},
// dB = 20 r / ln 10, i.e. dB = -10 log10(sigma_eta).
double squeezing_to_db(double sigma_eta);
double db_to_squeezing_sigma(double db);

// Invert the coherent fidelity 1/(1+sigma) at a measured average fidelity.
double sigma_from_average_fidelity(double fbar);

}  // namespace cvtelefid
