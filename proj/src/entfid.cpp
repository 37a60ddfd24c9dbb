#include "cvtelefid/entfid.hpp"

#include "cvtelefid/analytics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace cvtelefid {

DensityMatrix Purification::reduced_state() const {
    // rho_b[n,m] = sum_a gamma(a,n) conj(gamma(a,m))
    Eigen::MatrixXcd rho = gamma.transpose() * gamma.conjugate();
    return {system_space, std::move(rho)};
}

double Purification::mean_photon() const {
    double nbar = 0.0;
    for (int n = 0; n < gamma.cols(); ++n) {
        nbar += n * gamma.col(n).squaredNorm();
    }
    return nbar;
}

Purification purification_trivial(const FockVector& psi) {
    if (psi.space.modes != 1) {
        throw SpaceMismatch("purification_trivial: expected a single-mode state");
    }
    Purification p;
    p.kind = AncillaKind::trivial;
    p.gamma = psi.coefficients.transpose();
    p.system_space = psi.space;
    return p;
}

Purification purification_ecs_partner(Complex alpha, Complex beta, const FockSpace& space,
                                      double tail_tol, double eps_sep) {
    if (space.modes != 1) {
        throw SpaceMismatch("purification_ecs_partner: expected a single-mode system space");
    }
    if (std::abs(alpha - beta) < eps_sep) {
        throw DegenerateECS("purification_ecs_partner: degenerate amplitudes");
    }
    const FockVector ca = coherent_state(alpha, space, tail_tol);
    const FockVector cb = coherent_state(beta, space, tail_tol);
    Eigen::MatrixXcd g = ca.coefficients * cb.coefficients.transpose() -
                         cb.coefficients * ca.coefficients.transpose();
    g /= g.norm();
    Purification p;
    p.kind = AncillaKind::ecs_partner;
    p.gamma = std::move(g);
    p.system_space = space;
    return p;
}

Purification purification_orthogonal_qubit(Complex alpha, Complex beta,
                                           const FockSpace& space, double tail_tol) {
    if (space.modes != 1) {
        throw SpaceMismatch("purification_orthogonal_qubit: expected a single-mode system space");
    }
    const FockVector ca = coherent_state(alpha, space, tail_tol);
    const FockVector cb = coherent_state(beta, space, tail_tol);
    Eigen::MatrixXcd g(2, space.levels());
    g.row(0) = ca.coefficients.transpose() / std::numbers::sqrt2;
    g.row(1) = cb.coefficients.transpose() / std::numbers::sqrt2;
    Purification p;
    p.kind = AncillaKind::orthogonal_qubit;
    p.gamma = std::move(g);
    p.system_space = space;
    return p;
}

Purification purification_custom(Eigen::MatrixXcd gamma, const FockSpace& space) {
    if (space.modes != 1 || gamma.cols() != space.levels()) {
        throw SpaceMismatch("purification_custom: gamma columns must match the system space");
    }
    const double n = gamma.norm();
    if (std::abs(n - 1.0) > 1e-8) gamma /= n;
    Purification p;
    p.kind = AncillaKind::custom_isometry;
    p.gamma = std::move(gamma);
    p.system_space = space;
    return p;
}

Purification purification_from_density_matrix(const DensityMatrix& rho_b,
                                              double weight_floor) {
    if (rho_b.space.modes != 1) {
        throw SpaceMismatch("purification_from_density_matrix: expected a single-mode state");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho_b.elements);
    if (eig.info() != Eigen::Success) {
        throw Error("purification_from_density_matrix: eigendecomposition failed");
    }
    const int d = rho_b.space.levels();
    std::vector<int> kept;
    for (int i = 0; i < d; ++i) {
        if (eig.eigenvalues()(i) > weight_floor) kept.push_back(i);
    }
    if (kept.empty()) {
        throw Error("purification_from_density_matrix: state has no weight");
    }
    Eigen::MatrixXcd g(static_cast<Eigen::Index>(kept.size()), d);
    for (size_t r = 0; r < kept.size(); ++r) {
        g.row(static_cast<Eigen::Index>(r)) =
            std::sqrt(eig.eigenvalues()(kept[r])) *
            eig.eigenvectors().col(kept[r]).transpose();
    }
    Purification p;
    p.kind = AncillaKind::custom_isometry;
    p.gamma = std::move(g);
    p.system_space = rho_b.space;
    return p;
}

namespace {

// The overlap integrand oscillates with phase frequency ~ 2 r sqrt(sigma)
// where r is the phase-space radius of the state; raise the order until the
// Gauss-Hermite rule resolves it. Rounded up to a multiple of 16 so repeated
// sweeps reuse the memoized rules.
int auto_order(int base, double radius_sq, double sigma) {
    const double omega_sq = 4.0 * radius_sq * sigma;
    const int needed = std::max(base, static_cast<int>(std::ceil(omega_sq / 4.0)) + 24);
    return (needed + 15) / 16 * 16;
}

// One Kraus pass of F_e = sum_k w_k |<Gamma| (I (x) D(z_k)) |Gamma>|^2 at a
// given order, tracking the worst per-node norm deficit of the displaced state.
double brute_pass(const Eigen::MatrixXcd& gamma, const FockSpace& space,
                  double sigma, int order, double* max_deficit) {
    const auto& [t, w] = gauss_hermite_nodes_cached(order);
    const double s = std::sqrt(sigma);
    const double inv_pi = 1.0 / std::numbers::pi;
    double F = 0.0;
    double deficit = 0.0;
    Eigen::MatrixXcd GD(gamma.rows(), gamma.cols());
    for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) {
            const Operator D = displacement_operator(s * Complex(t(i), t(j)), space);
            GD.noalias() = gamma * D.elements.transpose();
            const Complex overlap = (gamma.conjugate().cwiseProduct(GD)).sum();
            const double wk = w(i) * w(j) * inv_pi;
            F += wk * std::norm(overlap);
            deficit += wk * (1.0 - GD.squaredNorm());
        }
    }
    if (max_deficit) *max_deficit = std::max(*max_deficit, deficit);
    return F;
}

}  // namespace

EntFidResult entanglement_fidelity_brute(const Purification& gamma,
                                         const GaussianNoiseChannel& channel) {
    if (channel.sigma == 0.0) {
        return {1.0, EntFidMethod::fock_brute_force, 0.0};
    }
    // Phase-space radius estimate from the reduced state's photon number.
    const int order = auto_order(channel.grid.order, 4.0 * gamma.mean_photon(),
                                 channel.sigma);
    double deficit = 0.0;
    const double f1 = brute_pass(gamma.gamma, gamma.system_space, channel.sigma,
                                 order, &deficit);
    const double f2 = brute_pass(gamma.gamma, gamma.system_space, channel.sigma,
                                 2 * order, &deficit);
    const double est = 0.5 * std::abs(f1 - f2) + std::abs(deficit);
    if (f2 < -1e-9 || f2 > 1.0 + 1e-9) {
        throw Error("entanglement_fidelity_brute: value escaped [0, 1]");
    }
    return {f2, EntFidMethod::fock_brute_force, est};
}

namespace {

// Coherent-state overlap <d|g> and displaced overlap <d|D(z)|g>.
Complex coh_overlap(Complex d, Complex g) {
    return std::exp(-0.5 * std::norm(d) - 0.5 * std::norm(g) + std::conj(d) * g);
}

Complex coh_disp_element(Complex d, Complex z, Complex g) {
    return std::exp(0.5 * (z * std::conj(g) - std::conj(z) * g)) * coh_overlap(d, g + z);
}

// Exact |<Psi(alpha,beta)| I (x) D(z) |Psi(alpha,beta)>|^2, all four overlap
// terms retained (nothing dropped at large separation).
double ecs_overlap_integrand(Complex alpha, Complex beta, Complex z) {
    const double n2 = 1.0 / (2.0 - 2.0 * std::exp(-std::norm(alpha - beta)));
    const Complex T = coh_disp_element(beta, z, beta) + coh_disp_element(alpha, z, alpha) -
                      coh_overlap(alpha, beta) * coh_disp_element(beta, z, alpha) -
                      coh_overlap(beta, alpha) * coh_disp_element(alpha, z, beta);
    return std::norm(n2 * T);
}

double overlap_pass(Complex alpha, Complex beta, double sigma, int order) {
    const auto& [t, w] = gauss_hermite_nodes_cached(order);
    const double s = std::sqrt(sigma);
    const double inv_pi = 1.0 / std::numbers::pi;
    double F = 0.0;
    for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) {
            F += w(i) * w(j) * inv_pi *
                 ecs_overlap_integrand(alpha, beta, s * Complex(t(i), t(j)));
        }
    }
    return F;
}

}  // namespace

EntFidResult entanglement_fidelity_overlap(Complex alpha, Complex beta, double sigma,
                                           const QuadratureGrid& grid, double eps_sep) {
    if (std::abs(alpha - beta) < eps_sep) {
        throw DegenerateECS("entanglement_fidelity_overlap: degenerate amplitudes");
    }
    if (sigma < 0.0) throw Error("entanglement_fidelity_overlap: sigma must be >= 0");
    if (sigma == 0.0) {
        return {1.0, EntFidMethod::overlap_quadrature, 0.0};
    }
    const double r = std::abs(alpha) + std::abs(beta);
    const int order = auto_order(grid.order, r * r, sigma);
    const double f1 = overlap_pass(alpha, beta, sigma, order);
    const double f2 = overlap_pass(alpha, beta, sigma, 2 * order);
    return {f2, EntFidMethod::overlap_quadrature, 0.5 * std::abs(f1 - f2)};
}

EntFidResult entanglement_fidelity_closed(Complex alpha, Complex beta, double sigma) {
    const double v = ecs_entanglement_fidelity({alpha, beta}, sigma);
    return {v, EntFidMethod::closed_form, 0.0};
}

IndependenceReport purification_independence_check(
    const DensityMatrix& rho_b, const std::vector<Purification>& purifications,
    const GaussianNoiseChannel& channel, double mismatch_tol, double strict_tol) {
    IndependenceReport report;
    for (const auto& p : purifications) {
        if (!(p.system_space == rho_b.space)) {
            throw SpaceMismatch("purification_independence_check: space mismatch");
        }
        const DensityMatrix reduced = p.reduced_state();
        const double dev = (reduced.elements - rho_b.elements).cwiseAbs().maxCoeff();
        if (dev > mismatch_tol) {
            std::ostringstream msg;
            msg << "purification_independence_check: reduced state deviates from rho_b by "
                << dev << " (> " << mismatch_tol << ")";
            throw PurificationMismatch(msg.str());
        }
        report.entries.push_back({entanglement_fidelity_brute(p, channel), dev,
                                  dev > strict_tol});
    }
    // Agreement budget: quadrature estimates plus first-order sensitivity to
    // the (possibly deliberate) reduced-state deviations.
    report.consistent = true;
    for (size_t i = 0; i < report.entries.size(); ++i) {
        for (size_t j = i + 1; j < report.entries.size(); ++j) {
            const auto& a = report.entries[i];
            const auto& b = report.entries[j];
            const double gap = std::abs(a.result.value - b.result.value);
            report.max_pairwise_gap = std::max(report.max_pairwise_gap, gap);
            const double budget = std::max(strict_tol,
                                           a.result.est_error + b.result.est_error) +
                                  a.reduced_deviation + b.reduced_deviation;
            if (gap > budget) report.consistent = false;
        }
    }
    return report;
}

}  // namespace cvtelefid
