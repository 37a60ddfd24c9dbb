#pragma once

#include "cvtelefid/channels.hpp"
#include "cvtelefid/fock.hpp"

#include <vector>

namespace cvtelefid {

enum class AncillaKind {
    trivial,             // no real ancilla: pure system state (1-dim ancilla row)
    ecs_partner,         // mode a of the antisymmetric entangled coherent state
    orthogonal_qubit,    // two-level ancilla entangling |alpha> and |beta>
    custom_isometry,     // arbitrary ancilla built from a coefficient matrix
};

// Purification |Gamma> = sum_{a,n} gamma(a,n) |a>_ancilla |n>_system of a
// system state rho_b. Hybrid qubit (x) Fock states are two stacked Fock rows.
struct Purification {
    AncillaKind kind = AncillaKind::custom_isometry;
    Eigen::MatrixXcd gamma;   // rows: ancilla basis, cols: system Fock basis
    FockSpace system_space;
    int kept_mode = 1;        // which tensor factor of the source state is the system

    // Tr_ancilla |Gamma><Gamma|.
    DensityMatrix reduced_state() const;
    double mean_photon() const;
};

Purification purification_trivial(const FockVector& psi);
Purification purification_ecs_partner(Complex alpha, Complex beta, const FockSpace& space,
                                      double tail_tol = kTailTol,
                                      double eps_sep = kEpsSep);
Purification purification_orthogonal_qubit(Complex alpha, Complex beta,
                                           const FockSpace& space,
                                           double tail_tol = kTailTol);
Purification purification_custom(Eigen::MatrixXcd gamma, const FockSpace& space);
// Canonical purification from the eigendecomposition of rho_b.
Purification purification_from_density_matrix(const DensityMatrix& rho_b,
                                              double weight_floor = 1e-13);

enum class EntFidMethod {
    closed_form,
    overlap_quadrature,
    fock_brute_force,
};

struct EntFidResult {
    double value = 0.0;
    EntFidMethod method = EntFidMethod::closed_form;
    double est_error = 0.0;
};

// F_e = <Gamma| (I (x) E_sigma)(|Gamma><Gamma|) |Gamma>, evaluated in the
// truncated Fock space by summing the channel's Kraus terms on the
// purification. The quadrature order is auto-raised to resolve the overlap's
// phase oscillation; est_error combines an order-doubling estimate with the
// channel's truncation trace deficit on the reduced state.
EntFidResult entanglement_fidelity_brute(const Purification& gamma,
                                         const GaussianNoiseChannel& channel);

// Same integral with the integrand evaluated analytically (coherent-state
// overlap algebra, no Fock truncation, all exponentially small terms kept)
// for the antisymmetric ECS on amplitudes (alpha, beta).
EntFidResult entanglement_fidelity_overlap(Complex alpha, Complex beta, double sigma,
                                           const QuadratureGrid& grid,
                                           double eps_sep = kEpsSep);

// Closed-form value (see analytics) wrapped in the common result type.
EntFidResult entanglement_fidelity_closed(Complex alpha, Complex beta, double sigma);

struct IndependenceEntry {
    EntFidResult result;
    double reduced_deviation = 0.0;  // max-abs gap between reduced state and rho_b
    bool flagged = false;            // deviation above the strict tolerance
};

struct IndependenceReport {
    std::vector<IndependenceEntry> entries;
    double max_pairwise_gap = 0.0;
    bool consistent = false;
};

// Computes F_e for each purification and checks pairwise agreement. Each
// purification must trace to rho_b within mismatch_tol (PurificationMismatch
// otherwise); deviations above strict_tol are flagged as expected mismatches
// (purifications of slightly different states) and widen the agreement budget.
IndependenceReport purification_independence_check(
    const DensityMatrix& rho_b, const std::vector<Purification>& purifications,
    const GaussianNoiseChannel& channel, double mismatch_tol = 1e-8,
    double strict_tol = 1e-8);

}  // namespace cvtelefid
