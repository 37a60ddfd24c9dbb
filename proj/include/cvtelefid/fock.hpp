#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace cvtelefid {

using Complex = std::complex<double>;

// ---- error taxonomy -------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncation tail mass above tolerance: the requested amplitude does not fit
// in the chosen Fock cutoff.
struct CutoffTooSmall : Error {
    using Error::Error;
};

// Discretized outcome integration failed its total-probability check.
struct GridTooCoarse : Error {
    using Error::Error;
};

// Entangled-coherent-state amplitudes coincide (state undefined).
struct DegenerateECS : Error {
    using Error::Error;
};

struct SpaceMismatch : Error {
    using Error::Error;
};

struct PurificationMismatch : Error {
    using Error::Error;
};

struct NoRoot : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

// ---- default tolerances ----------------------------------------------------

inline constexpr double kTailTol = 1e-12;   // truncated tail mass budget
inline constexpr double kTraceTol = 1e-6;   // channel trace-deficit budget
inline constexpr double kProbTol = 1e-3;    // outcome-integration probability budget
inline constexpr double kHermTol = 1e-10;   // Hermiticity defect budget
inline constexpr double kEpsSep = 1e-8;     // minimum |alpha - beta| for an ECS

// ---- spaces and states -----------------------------------------------------

// Truncated Fock space: per-mode levels 0..cutoff, `modes` tensor factors.
struct FockSpace {
    int cutoff = 0;
    int modes = 1;

    int levels() const { return cutoff + 1; }
    Eigen::Index dim() const {
        Eigen::Index d = 1;
        for (int m = 0; m < modes; ++m) d *= levels();
        return d;
    }
    bool operator==(const FockSpace&) const = default;
};

inline FockSpace single_mode(int cutoff) { return {cutoff, 1}; }
inline FockSpace two_mode(int cutoff) { return {cutoff, 2}; }

// Row-major composite index for a two-mode space: (n_a, n_b) -> n_a*levels + n_b.
inline Eigen::Index pair_index(const FockSpace& space, int na, int nb) {
    return static_cast<Eigen::Index>(na) * space.levels() + nb;
}

// Normalized state vector; tail_mass records the pre-renormalization
// probability lost to truncation so callers can assert accuracy.
struct FockVector {
    FockSpace space;
    Eigen::VectorXcd coefficients;
    double tail_mass = 0.0;
};

struct DensityMatrix {
    FockSpace space;
    Eigen::MatrixXcd elements;

    double trace() const { return elements.trace().real(); }
    double hermiticity_defect() const {
        return (elements - elements.adjoint()).cwiseAbs().maxCoeff();
    }
};

struct Operator {
    FockSpace space;
    Eigen::MatrixXcd elements;
};

// ---- construction ----------------------------------------------------------

// Poisson-tail cutoff heuristic for the largest amplitude in play.
int default_cutoff(double alpha_max);

// Truncated, renormalized coherent state c_n = e^{-|a|^2/2} a^n / sqrt(n!).
// Throws CutoffTooSmall if the truncated tail mass exceeds tail_tol.
FockVector coherent_state(Complex alpha, const FockSpace& space,
                          double tail_tol = kTailTol);

// Displacement operator D(z) = exp(z a^dag - z* a) as exact truncated matrix
// elements <m|D(z)|n> via a prefactored associated-Laguerre recurrence
// (no matrix exponential; every element is the untruncated analytic value).
Operator displacement_operator(Complex z, const FockSpace& space);

// Two-mode squeezed state sqrt(1-eta^2) sum_n eta^n |n>|n>, truncated and
// renormalized; tail mass is the analytic remainder eta^{2(cutoff+1)}.
FockVector two_mode_squeezed_state(double eta, const FockSpace& space,
                                   double tail_tol = kTailTol);

// Antisymmetric entangled coherent state N(|a>|b> - |b>|a>).
FockVector ecs_state(Complex alpha, Complex beta, const FockSpace& space,
                     double tail_tol = kTailTol, double eps_sep = kEpsSep);

// Trace out all modes except keep_mode (0 = first, 1 = second) of a two-mode state.
DensityMatrix partial_trace(const DensityMatrix& rho, int keep_mode);

// F = <psi| rho |psi> for pure psi against (generally mixed) rho.
double fidelity_pure_mixed(const FockVector& psi, const DensityMatrix& rho);

// |psi><psi| convenience constructor.
DensityMatrix pure_density(const FockVector& psi);

// Tensor product of two single-mode vectors into one two-mode vector.
FockVector tensor_product(const FockVector& a, const FockVector& b);

}  // namespace cvtelefid
