#pragma once

#include "cvtelefid/fock.hpp"
#include "cvtelefid/quadrature.hpp"

namespace cvtelefid {

// Random-displacement Gaussian noise channel of variance sigma:
//   E_sigma(rho) = integral d^2z/(pi sigma) exp(-|z|^2/sigma) D(z) rho D(z)^dag.
// sigma is a variance in squared-amplitude units; vacuum noise is sigma = 1/2.
// The grid holds unit-variance nodes; application rescales by sqrt(sigma).
struct GaussianNoiseChannel {
    double sigma = 0.0;
    QuadratureGrid grid;
};

GaussianNoiseChannel make_noise_channel(
    double sigma, int order = 20,
    QuadratureScheme scheme = QuadratureScheme::gauss_hermite_cartesian);

// Channel output, renormalized, with the pre-normalization trace deficit
// surfaced (truncation can shave trace).
struct NoisyState {
    DensityMatrix rho;
    double trace_deficit = 0.0;
};

// Apply E_sigma to a single-mode state. sigma = 0 short-circuits to a copy.
// Throws CutoffTooSmall if the trace deficit exceeds trace_tol.
NoisyState apply_noise(const GaussianNoiseChannel& channel, const DensityMatrix& rho,
                       double trace_tol = kTraceTol);

// Apply I (x) E_sigma to one mode of a two-mode state (target_mode 0 or 1),
// via the channel transfer matrix in reshuffled (superoperator) form.
NoisyState apply_noise_two_mode(const GaussianNoiseChannel& channel,
                                const DensityMatrix& rho, int target_mode,
                                double trace_tol = kTraceTol);

// Composition law for independent Gaussian displacement errors:
// E_{s1} after E_{s2} equals E_{s1+s2} (variances add).
double compose_noise(double sigma1, double sigma2);

// Continuous-variable teleportation with a two-mode squeezed resource of
// parameter eta, ideal EPR projective measurement (displaced maximally
// entangled projectors, outcome measure d^2alpha/pi fixed by completeness),
// and Bob's displacement correction at unit gain.
struct TeleportationSetup {
    double eta = 0.0;
    QuadratureGrid outcome_grid;
    FockSpace space;            // single-mode space shared by all three modes
    double prob_tol = kProbTol;
};

TeleportationSetup make_teleportation_setup(double eta, int cutoff, int order = 20,
                                            double prob_tol = kProbTol);

struct TeleportResult {
    DensityMatrix rho;
    double total_probability = 0.0;  // outcome-integrated probability (want ~ 1)
    double trace_deficit = 0.0;      // probability mass lost to Fock truncation
};

// Unconditional (outcome-averaged) teleportation output. The outcome grid is
// centered on Tr(rho a) and scaled to the outcome-distribution envelope,
// which widens as 1/sqrt(1-eta^2) toward the EPR limit.
// Throws GridTooCoarse if the outcome-integrated probability deviates from the
// input trace by more than prob_tol; CutoffTooSmall if the resource state
// cannot be represented at the requested cutoff.
TeleportResult simulate_teleportation_channel(const TeleportationSetup& setup,
                                              const DensityMatrix& rho_in);

// Diagnostic: Bob's normalized conditional output for one measurement outcome,
// plus the outcome probability density at that point.
struct ConditionalOutcome {
    DensityMatrix rho;
    double density = 0.0;
};

ConditionalOutcome teleport_conditional_state(const TeleportationSetup& setup,
                                              const DensityMatrix& rho_in,
                                              Complex outcome);

}  // namespace cvtelefid
