#include "cvtelefid/fock.hpp"

#include <cmath>
#include <sstream>

namespace cvtelefid {

namespace {

void require_single_mode(const FockSpace& space, const char* what) {
    if (space.modes != 1) {
        throw SpaceMismatch(std::string(what) + ": expected a single-mode space");
    }
}

void require_two_mode(const FockSpace& space, const char* what) {
    if (space.modes != 2) {
        throw SpaceMismatch(std::string(what) + ": expected a two-mode space");
    }
}

}  // namespace

int default_cutoff(double alpha_max) {
    double a = std::abs(alpha_max);
    return static_cast<int>(std::ceil(a * a + 5.0 * a + 10.0));
}

FockVector coherent_state(Complex alpha, const FockSpace& space, double tail_tol) {
    require_single_mode(space, "coherent_state");
    const int d = space.levels();
    Eigen::VectorXcd c(d);

    const double a = std::abs(alpha);
    if (a == 0.0) {
        c.setZero();
        c(0) = 1.0;
        return {space, c, 0.0};
    }

    // log-domain magnitudes avoid overflow of a^n / sqrt(n!) factors
    const double log_a = std::log(a);
    const double theta = std::arg(alpha);
    for (int n = 0; n < d; ++n) {
        double log_mag = -0.5 * a * a + n * log_a - 0.5 * std::lgamma(n + 1.0);
        c(n) = std::polar(std::exp(log_mag), n * theta);
    }

    // Tail of the Poisson weight beyond the cutoff, summed directly with the
    // pmf recurrence (no 1 - sum cancellation).
    double tail = 0.0;
    double p = std::exp(-a * a + 2.0 * (d - 1) * log_a - std::lgamma(d + 0.0));
    for (int n = d; n < d + 100000; ++n) {
        p *= a * a / n;
        tail += p;
        if (p < tail * 1e-16 || p < 1e-320) break;
    }
    if (tail > tail_tol) {
        std::ostringstream msg;
        msg << "coherent_state: tail mass " << tail << " at cutoff " << space.cutoff
            << " exceeds " << tail_tol << " for |alpha|=" << a
            << " (need cutoff >= " << default_cutoff(a) << ")";
        throw CutoffTooSmall(msg.str());
    }
    c.normalize();
    return {space, c, tail};
}

Operator displacement_operator(Complex z, const FockSpace& space) {
    require_single_mode(space, "displacement_operator");
    const int d = space.levels();
    Eigen::MatrixXcd D(d, d);

    if (z == Complex(0.0, 0.0)) {
        D.setIdentity();
        return {space, D};
    }

    const double x = std::norm(z);
    const double log_az = std::log(std::abs(z));
    const double theta = std::arg(z);

    // Work diagonal-by-diagonal: E[k] = <n+k|D(z)|n> for the current n.
    // Carrying the prefactored element keeps every intermediate O(1)
    // (raw Laguerre values overflow near dim ~ 300).
    std::vector<double> E(d), Em1(d, 0.0), Enext(d);
    for (int k = 0; k < d; ++k) {
        E[k] = std::exp(-0.5 * x + k * log_az - 0.5 * std::lgamma(k + 1.0));
    }
    for (int n = 0; n < d; ++n) {
        for (int k = 0; k < d - n; ++k) {
            const Complex phase = std::polar(1.0, k * theta);
            const Complex lower = E[k] * phase;          // <n+k|D|n>
            D(n + k, n) = lower;
            D(n, n + k) = ((k % 2) ? -1.0 : 1.0) * E[k] * std::conj(phase);
        }
        if (n + 1 < d) {
            for (int k = 0; k < d; ++k) {
                const double rn = std::sqrt((n + 1.0) / (n + 1.0 + k));
                const double rm = (n > 0) ? std::sqrt(static_cast<double>(n) / (n + k)) : 0.0;
                Enext[k] = rn / (n + 1.0) * ((2.0 * n + 1.0 + k - x) * E[k] - (n + k) * rm * Em1[k]);
            }
            Em1.swap(E);
            E.swap(Enext);
        }
    }
    return {space, D};
}

FockVector two_mode_squeezed_state(double eta, const FockSpace& space, double tail_tol) {
    require_two_mode(space, "two_mode_squeezed_state");
    if (eta < 0.0 || eta >= 1.0) {
        throw Error("two_mode_squeezed_state: eta must lie in [0, 1)");
    }
    const int d = space.levels();
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(space.dim());

    // Geometric remainder of the Schmidt weights (1-eta^2) eta^{2n} beyond cutoff.
    const double tail = (eta > 0.0) ? std::pow(eta, 2.0 * d) : 0.0;
    if (tail > tail_tol) {
        std::ostringstream msg;
        msg << "two_mode_squeezed_state: tail mass " << tail << " at cutoff "
            << space.cutoff << " exceeds " << tail_tol << " for eta=" << eta;
        throw CutoffTooSmall(msg.str());
    }

    const double pref = std::sqrt(1.0 - eta * eta);
    for (int n = 0; n < d; ++n) {
        c(pair_index(space, n, n)) = pref * std::pow(eta, n);
    }
    c.normalize();
    return {space, c, tail};
}

FockVector ecs_state(Complex alpha, Complex beta, const FockSpace& space,
                     double tail_tol, double eps_sep) {
    require_two_mode(space, "ecs_state");
    if (std::abs(alpha - beta) < eps_sep) {
        throw DegenerateECS("ecs_state: |alpha - beta| below separation threshold");
    }
    const FockSpace mode = single_mode(space.cutoff);
    const FockVector ca = coherent_state(alpha, mode, tail_tol);
    const FockVector cb = coherent_state(beta, mode, tail_tol);

    const int d = space.levels();
    Eigen::VectorXcd u(space.dim());
    for (int na = 0; na < d; ++na) {
        for (int nb = 0; nb < d; ++nb) {
            u(pair_index(space, na, nb)) =
                ca.coefficients(na) * cb.coefficients(nb) -
                cb.coefficients(na) * ca.coefficients(nb);
        }
    }
    u.normalize();
    return {space, u, std::max(ca.tail_mass, cb.tail_mass)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, int keep_mode) {
    require_two_mode(rho.space, "partial_trace");
    if (keep_mode != 0 && keep_mode != 1) {
        throw SpaceMismatch("partial_trace: keep_mode must be 0 or 1");
    }
    const int d = rho.space.levels();
    const FockSpace out_space = single_mode(rho.space.cutoff);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);

    for (int n = 0; n < d; ++n) {
        for (int m = 0; m < d; ++m) {
            Complex s = 0.0;
            if (keep_mode == 1) {
                for (int k = 0; k < d; ++k) {
                    s += rho.elements(pair_index(rho.space, k, n),
                                      pair_index(rho.space, k, m));
                }
            } else {
                for (int k = 0; k < d; ++k) {
                    s += rho.elements(pair_index(rho.space, n, k),
                                      pair_index(rho.space, m, k));
                }
            }
            out(n, m) = s;
        }
    }
    return {out_space, out};
}

double fidelity_pure_mixed(const FockVector& psi, const DensityMatrix& rho) {
    if (!(psi.space == rho.space)) {
        throw SpaceMismatch("fidelity_pure_mixed: state and density matrix live in different spaces");
    }
    return std::real(psi.coefficients.dot(rho.elements * psi.coefficients));
}

DensityMatrix pure_density(const FockVector& psi) {
    return {psi.space, psi.coefficients * psi.coefficients.adjoint()};
}

FockVector tensor_product(const FockVector& a, const FockVector& b) {
    if (a.space.modes != 1 || b.space.modes != 1 || a.space.cutoff != b.space.cutoff) {
        throw SpaceMismatch("tensor_product: expects two single-mode vectors with equal cutoff");
    }
    const FockSpace space = two_mode(a.space.cutoff);
    const int d = space.levels();
    Eigen::VectorXcd u(space.dim());
    for (int na = 0; na < d; ++na) {
        for (int nb = 0; nb < d; ++nb) {
            u(pair_index(space, na, nb)) = a.coefficients(na) * b.coefficients(nb);
        }
    }
    return {space, u, std::max(a.tail_mass, b.tail_mass)};
}

}  // namespace cvtelefid
