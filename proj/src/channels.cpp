#include "cvtelefid/channels.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace cvtelefid {

namespace {

void check_weights(const QuadratureGrid& grid) {
    double sum = 0.0;
    for (const auto& node : grid.nodes) {
        if (node.w < 0.0) throw Error("noise channel: negative Kraus weight");
        sum += node.w;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw Error("noise channel: Kraus weights do not sum to 1");
    }
}

// Reshuffle between operator and transfer-matrix index layouts:
// M[(a,c),(b,e)] = rho[(a,b),(c,e)]. The map is an involution.
Eigen::MatrixXcd reshuffle(const Eigen::MatrixXcd& rho, int d) {
    Eigen::MatrixXcd M(rho.rows(), rho.cols());
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e)
                    M(a * d + c, b * d + e) = rho(a * d + b, c * d + e);
    return M;
}

// Swap the two tensor factors of a two-mode density matrix.
Eigen::MatrixXcd swap_modes(const Eigen::MatrixXcd& rho, int d) {
    Eigen::MatrixXcd out(rho.rows(), rho.cols());
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e)
                    out(b * d + a, e * d + c) = rho(a * d + b, c * d + e);
    return out;
}

NoisyState finalize(DensityMatrix rho, double input_trace, double trace_tol,
                    const char* what) {
    const double out_trace = rho.trace();
    const double deficit = input_trace - out_trace;
    if (std::abs(deficit) > trace_tol) {
        std::ostringstream msg;
        msg << what << ": trace deficit " << deficit << " exceeds " << trace_tol
            << " at cutoff " << rho.space.cutoff;
        throw CutoffTooSmall(msg.str());
    }
    rho.elements *= input_trace / out_trace;
    return {std::move(rho), deficit};
}

}  // namespace

GaussianNoiseChannel make_noise_channel(double sigma, int order, QuadratureScheme scheme) {
    if (sigma < 0.0) throw Error("make_noise_channel: sigma must be >= 0");
    GaussianNoiseChannel channel{sigma, make_grid(scheme, order)};
    check_weights(channel.grid);
    return channel;
}

NoisyState apply_noise(const GaussianNoiseChannel& channel, const DensityMatrix& rho,
                       double trace_tol) {
    if (rho.space.modes != 1) {
        throw SpaceMismatch("apply_noise: expected a single-mode state");
    }
    if (channel.sigma == 0.0) {
        return {rho, 0.0};
    }
    const double s = std::sqrt(channel.sigma);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.elements.rows(), rho.elements.cols());
    Eigen::MatrixXcd tmp(rho.elements.rows(), rho.elements.cols());
    for (const auto& node : channel.grid.nodes) {
        const Operator D = displacement_operator(s * node.z, rho.space);
        tmp.noalias() = D.elements * rho.elements;
        out.noalias() += node.w * (tmp * D.elements.adjoint());
    }
    return finalize({rho.space, std::move(out)}, rho.trace(), trace_tol, "apply_noise");
}

NoisyState apply_noise_two_mode(const GaussianNoiseChannel& channel,
                                const DensityMatrix& rho, int target_mode,
                                double trace_tol) {
    if (rho.space.modes != 2) {
        throw SpaceMismatch("apply_noise_two_mode: expected a two-mode state");
    }
    if (target_mode != 0 && target_mode != 1) {
        throw SpaceMismatch("apply_noise_two_mode: target_mode must be 0 or 1");
    }
    if (channel.sigma == 0.0) {
        return {rho, 0.0};
    }
    const int d = rho.space.levels();
    const FockSpace mode = single_mode(rho.space.cutoff);
    const double s = std::sqrt(channel.sigma);

    // Transfer matrix Phi = sum_k w_k D_k (x) conj(D_k) for the noisy mode;
    // then reshuffled(rho') = reshuffled(rho) * Phi^T.
    Eigen::MatrixXcd Phi = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (const auto& node : channel.grid.nodes) {
        const Operator D = displacement_operator(s * node.z, mode);
        const Eigen::MatrixXcd Dc = D.elements.conjugate();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                Phi.block(i * d, j * d, d, d).noalias() += (node.w * D.elements(i, j)) * Dc;
    }

    Eigen::MatrixXcd work = (target_mode == 1) ? rho.elements : swap_modes(rho.elements, d);
    Eigen::MatrixXcd M = reshuffle(work, d);
    Eigen::MatrixXcd Mp = M * Phi.transpose();
    Eigen::MatrixXcd outel = reshuffle(Mp, d);
    if (target_mode == 0) outel = swap_modes(outel, d);

    return finalize({rho.space, std::move(outel)}, rho.trace(), trace_tol,
                    "apply_noise_two_mode");
}

double compose_noise(double sigma1, double sigma2) {
    if (sigma1 < 0.0 || sigma2 < 0.0) throw Error("compose_noise: sigmas must be >= 0");
    return sigma1 + sigma2;
}

TeleportationSetup make_teleportation_setup(double eta, int cutoff, int order,
                                            double prob_tol) {
    if (eta < 0.0 || eta >= 1.0) {
        throw Error("make_teleportation_setup: eta must lie in [0, 1)");
    }
    return {eta, gauss_hermite_grid(order), single_mode(cutoff), prob_tol};
}

namespace {

// Schmidt weights of the squeezed resource, renormalized after truncation.
// The truncation budget is the protocol's probability tolerance: a resource
// tail above it would invalidate the outcome-probability check anyway.
Eigen::VectorXd resource_schmidt(double eta, int d, double prob_tol) {
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(d);
    if (eta == 0.0) {
        lam(0) = 1.0;
        return lam;
    }
    const double tail = std::pow(eta, 2.0 * d);
    if (tail > prob_tol) {
        std::ostringstream msg;
        msg << "simulate_teleportation_channel: resource tail " << tail
            << " at cutoff " << d - 1 << " exceeds " << prob_tol << " for eta=" << eta;
        throw CutoffTooSmall(msg.str());
    }
    for (int n = 0; n < d; ++n) lam(n) = std::pow(eta, n);
    lam /= lam.norm();
    return lam;
}

struct InputMoments {
    Complex center;
    double nbar = 0.0;
};

InputMoments input_moments(const DensityMatrix& rho) {
    const int d = rho.space.levels();
    InputMoments m;
    for (int n = 0; n + 1 < d; ++n) {
        m.center += std::sqrt(n + 1.0) * rho.elements(n, n + 1);
    }
    for (int n = 0; n < d; ++n) {
        m.nbar += n * std::real(rho.elements(n, n));
    }
    return m;
}

// Per-quadrature envelope of the heterodyne-outcome distribution: EPR spread
// of the resource plus the input's spread around its centroid plus one unit
// of vacuum, with a small pad for safety.
double outcome_scale(double eta, const InputMoments& m) {
    const double resource = eta * eta / (1.0 - eta * eta);
    const double input = std::max(m.nbar - std::norm(m.center), 0.0);
    return std::sqrt((resource + input + 1.0) / 2.0 + 0.25);
}

}  // namespace

TeleportResult simulate_teleportation_channel(const TeleportationSetup& setup,
                                              const DensityMatrix& rho_in) {
    if (rho_in.space.modes != 1) {
        throw SpaceMismatch("simulate_teleportation_channel: expected a single-mode input");
    }
    if (!(rho_in.space == setup.space)) {
        throw SpaceMismatch("simulate_teleportation_channel: input space differs from setup space");
    }
    const int d = setup.space.levels();
    const Eigen::VectorXd lam = resource_schmidt(setup.eta, d, setup.prob_tol);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho_in.elements);
    if (eig.info() != Eigen::Success) {
        throw Error("simulate_teleportation_channel: input eigendecomposition failed");
    }

    const InputMoments moments = input_moments(rho_in);
    const double s = outcome_scale(setup.eta, moments);

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    double prob = 0.0;
    Eigen::VectorXcd u(d), phi(d), v(d);
    for (const auto& node : setup.outcome_grid.nodes) {
        const Complex alpha = moments.center + s * node.z;
        // Compensate the Gaussian folded into the grid weights: the outcome
        // measure is flat d^2alpha/pi over the rescaled grid.
        const double W = s * s * node.w * std::exp(std::norm(node.z));
        const Operator D = displacement_operator(alpha, setup.space);
        for (int i = 0; i < d; ++i) {
            const double wt = eig.eigenvalues()(i);
            if (wt <= 1e-13) continue;
            u.noalias() = D.elements.adjoint() * eig.eigenvectors().col(i);
            phi = lam.asDiagonal() * u;
            const double p = phi.squaredNorm();
            if (p < 1e-300) continue;
            v.noalias() = D.elements * phi;
            out.noalias() += (W * wt) * (v * v.adjoint());
            prob += W * wt * p;
        }
    }

    const double in_trace = rho_in.trace();
    if (std::abs(prob - in_trace) > setup.prob_tol) {
        std::ostringstream msg;
        msg << "simulate_teleportation_channel: outcome-integrated probability " << prob
            << " deviates from " << in_trace << " by more than " << setup.prob_tol;
        throw GridTooCoarse(msg.str());
    }
    const double out_trace = out.trace().real();
    out *= in_trace / out_trace;
    return {{setup.space, std::move(out)}, prob, prob - out_trace};
}

ConditionalOutcome teleport_conditional_state(const TeleportationSetup& setup,
                                              const DensityMatrix& rho_in,
                                              Complex outcome) {
    if (rho_in.space.modes != 1 || !(rho_in.space == setup.space)) {
        throw SpaceMismatch("teleport_conditional_state: input space mismatch");
    }
    const int d = setup.space.levels();
    const Eigen::VectorXd lam = resource_schmidt(setup.eta, d, setup.prob_tol);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho_in.elements);
    const Operator D = displacement_operator(outcome, setup.space);

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    double density = 0.0;
    for (int i = 0; i < d; ++i) {
        const double wt = eig.eigenvalues()(i);
        if (wt <= 1e-13) continue;
        const Eigen::VectorXcd u = D.elements.adjoint() * eig.eigenvectors().col(i);
        const Eigen::VectorXcd phi = lam.asDiagonal() * u;
        const Eigen::VectorXcd v = D.elements * phi;
        out.noalias() += wt * (v * v.adjoint());
        density += wt * phi.squaredNorm();
    }
    const double tr = out.trace().real();
    if (tr > 0.0) out /= tr;
    return {{setup.space, std::move(out)}, density};
}

}  // namespace cvtelefid
