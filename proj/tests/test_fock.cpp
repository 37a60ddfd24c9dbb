#include "cvtelefid/fock.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace cvtelefid;

namespace {

// Expected coefficients frozen from the log-domain Poisson formula
// c_n = exp(-|a|^2/2 + n log a - lgamma(n+1)/2), evaluated independently.
constexpr double kCoh15C0 = 0.32465246735834973;   // alpha = 1.5, n = 0
constexpr double kCoh15C3 = 0.44731849992948461;   // alpha = 1.5, n = 3

Complex ip(const FockVector& a, const FockVector& b) {
    return a.coefficients.dot(b.coefficients);  // Eigen dot conjugates the left arg
}

}  // namespace

TEST_CASE("default_cutoff follows the |a|^2 + 5|a| + 10 heuristic") {
    CHECK(default_cutoff(0.0) == 10);
    CHECK(default_cutoff(2.0) == 24);
    CHECK(default_cutoff(10.0) == 160);
    // Never shrinks with amplitude.
    int prev = 0;
    for (double a = 0.0; a <= 12.0; a += 0.25) {
        const int c = default_cutoff(a);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("coherent state: vacuum is exact") {
    const auto vac = coherent_state(0.0, single_mode(8));
    CHECK(vac.tail_mass == 0.0);
    CHECK(vac.coefficients(0) == Complex(1.0, 0.0));
    CHECK(vac.coefficients.tail(8).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coherent state: frozen coefficients at alpha = 1.5") {
    const auto psi = coherent_state(1.5, single_mode(30));
    CHECK(psi.coefficients(0).real() == doctest::Approx(kCoh15C0).epsilon(1e-14));
    CHECK(psi.coefficients(3).real() == doctest::Approx(kCoh15C3).epsilon(1e-14));
    CHECK(psi.coefficients(3).imag() == 0.0);
    CHECK(psi.coefficients.norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("coherent state: mean photon number is |alpha|^2") {
    const FockSpace space = single_mode(40);
    const auto psi = coherent_state(Complex(1.2, -1.6), space);  // |a|^2 = 4
    double nbar = 0.0;
    for (int n = 0; n <= space.cutoff; ++n) nbar += n * std::norm(psi.coefficients(n));
    CHECK(nbar == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("coherent overlap |<a|b>| = exp(-|a-b|^2/2)") {
    const FockSpace space = single_mode(60);
    // <2|-2> = e^{-8}, real and positive for real amplitudes.
    const auto p = coherent_state(2.0, space);
    const auto m = coherent_state(-2.0, space);
    CHECK(ip(p, m).real() == doctest::Approx(std::exp(-8.0)).epsilon(1e-8));
    CHECK(std::abs(ip(p, m).imag()) < 1e-15);

    const Complex pairs[][2] = {
        {Complex(0.5, 0.5), Complex(-0.3, 1.0)},
        {Complex(1.0, 0.0), Complex(0.0, 2.0)},
        {Complex(2.5, -1.0), Complex(1.5, -1.5)},
    };
    for (const auto& pr : pairs) {
        const auto a = coherent_state(pr[0], space);
        const auto b = coherent_state(pr[1], space);
        const double expect = std::exp(-0.5 * std::norm(pr[0] - pr[1]));
        CHECK(std::abs(ip(a, b)) == doctest::Approx(expect).epsilon(1e-8));
    }
}

TEST_CASE("coherent state: truncation tail is tracked and enforced") {
    // alpha = 2 at cutoff 20 leaves ~1.9e-9 in the tail: over the default
    // budget, fine under a relaxed one.
    CHECK_THROWS_AS(coherent_state(2.0, single_mode(20)), CutoffTooSmall);
    const auto psi = coherent_state(2.0, single_mode(20), /*tail_tol=*/1e-8);
    CHECK(psi.tail_mass == doctest::Approx(1.923058e-9).epsilon(1e-4));
    // With headroom the tail is comfortably inside the default budget.
    const auto wide = coherent_state(2.0, single_mode(40));
    CHECK(wide.tail_mass < 1e-12);
}

TEST_CASE("displacement operator: D(0) is the identity, exactly") {
    const auto d = displacement_operator(0.0, single_mode(12));
    CHECK((d.elements - Eigen::MatrixXcd::Identity(13, 13)).cwiseAbs().maxCoeff() ==
          0.0);
}

TEST_CASE("displacement operator: frozen matrix elements") {
    // Values frozen from a 200-term power-series evaluation of
    // <m|D(z)|n> = e^{-|z|^2/2} sum_k z^{k+m-n} (-z*)^k sqrt(m! n!) /
    //              (k! (k+m-n)! (n-k)!), independent of the recurrence.
    const FockSpace space = single_mode(44);

    const auto d1 = displacement_operator(Complex(0.7, 0.3), space);
    CHECK(std::abs(d1.elements(0, 0) - Complex(0.74826356757856522, 0.0)) < 1e-14);
    CHECK(std::abs(d1.elements(3, 1) -
                   Complex(0.29570204796736959, 0.31048715036573807)) < 1e-14);
    // <n|D|m> = (-1)^{m-n} conj(<m|D|n>); here m - n = 2 is even.
    CHECK(std::abs(d1.elements(1, 3) -
                   Complex(0.29570204796736959, -0.31048715036573807)) < 1e-14);
    CHECK(std::abs(d1.elements(7, 7) - Complex(-0.3831420833979327, 0.0)) < 1e-14);
    CHECK(std::abs(d1.elements(12, 5) -
                   Complex(-0.028633520996657888, 0.0090885150864802086)) < 1e-14);

    const auto d2 = displacement_operator(2.0, space);
    CHECK(std::abs(d2.elements(10, 4) - Complex(-0.13364920045745843, 0.0)) < 1e-14);

    const auto d3 = displacement_operator(Complex(0.0, -1.3), space);
    CHECK(std::abs(std::abs(d3.elements(2, 6)) - 0.40659244815903782) < 1e-14);

    const auto d4 = displacement_operator(Complex(-0.4, 1.1), space);
    CHECK(std::abs(d4.elements(5, 0) -
                   Complex(-0.099582480715961415, -0.017407745064805199)) < 1e-14);

    // <0|D(1)|0> = e^{-1/2}.
    const auto d5 = displacement_operator(1.0, space);
    CHECK(d5.elements(0, 0).real() ==
          doctest::Approx(0.60653065971263342).epsilon(1e-15));
}

TEST_CASE("displacement operator acts as D(z)|b> = e^{(z b* - z* b)/2} |b+z>") {
    const FockSpace space = single_mode(60);
    const Complex z(0.6, -0.4);
    const Complex b(0.9, 0.7);
    const auto d = displacement_operator(z, space);
    const auto psi = coherent_state(b, space);
    const Eigen::VectorXcd moved = d.elements * psi.coefficients;
    const Complex phase = std::exp((z * std::conj(b) - std::conj(z) * b) / 2.0);
    const auto target = coherent_state(b + z, space);
    CHECK((moved - phase * target.coefficients).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("displacement operator: truncated unitarity on the safe block") {
    // Rows well below the cutoff are unaffected by truncation: on the block
    // [0, cutoff - m(z)] with m(z) = ceil(2|z| sqrt(cutoff+1) + 4|z|^2 + 10),
    // (D^dag D - I) stays at 1e-8.
    for (int cutoff : {40, 60, 100}) {
        for (double az : {0.5, 1.0, 2.0}) {
            const int margin = static_cast<int>(
                std::ceil(2.0 * az * std::sqrt(cutoff + 1.0) + 4.0 * az * az + 10.0));
            const int block = cutoff - margin;
            if (block < 0) continue;  // no protected block at this size
            const auto d = displacement_operator(Complex(az / std::sqrt(2.0),
                                                         az / std::sqrt(2.0)),
                                                 single_mode(cutoff));
            const Eigen::MatrixXcd gram = d.elements.adjoint() * d.elements;
            const Eigen::MatrixXcd defect =
                gram.topLeftCorner(block + 1, block + 1) -
                Eigen::MatrixXcd::Identity(block + 1, block + 1);
            CHECK(defect.cwiseAbs().maxCoeff() < 1e-8);
        }
    }
}

TEST_CASE("displacement operator stays finite and accurate at dimension 401") {
    const FockSpace space = single_mode(400);
    const auto d = displacement_operator(Complex(1.0, 0.0), space);
    CHECK(d.elements.allFinite());
    const auto psi = coherent_state(3.0, space);
    const auto target = coherent_state(4.0, space);
    const Complex phase = std::exp(Complex(0.0, 0.0));  // real z, real b: no phase
    const Eigen::VectorXcd moved = d.elements * psi.coefficients;
    CHECK((moved - phase * target.coefficients).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("two-mode squeezed state: eta = 0 is the double vacuum") {
    const auto tmss = two_mode_squeezed_state(0.0, two_mode(6));
    CHECK(tmss.tail_mass == 0.0);
    CHECK(tmss.coefficients(pair_index(tmss.space, 0, 0)) == Complex(1.0, 0.0));
    CHECK(tmss.coefficients.cwiseAbs().sum() == 1.0);
}

TEST_CASE("two-mode squeezed state: Schmidt weights and thermal partial trace") {
    const double eta = 0.5;
    const auto tmss = two_mode_squeezed_state(eta, two_mode(30));
    // lambda_n = (1 - eta^2) eta^{2n}: 0.75, 0.1875, ...
    const auto c00 = tmss.coefficients(pair_index(tmss.space, 0, 0));
    const auto c11 = tmss.coefficients(pair_index(tmss.space, 1, 1));
    CHECK(std::norm(c00) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(std::norm(c11) == doctest::Approx(0.1875).epsilon(1e-12));
    // Off-diagonal (n_a != n_b) coefficients are exactly zero.
    CHECK(std::abs(tmss.coefficients(pair_index(tmss.space, 0, 1))) == 0.0);
    CHECK(std::abs(tmss.coefficients(pair_index(tmss.space, 3, 1))) == 0.0);

    // Reduced state is thermal with nbar = eta^2 / (1 - eta^2) = 1/3.
    const auto thermal = partial_trace(pure_density(tmss), 0);
    double nbar = 0.0;
    for (int n = 0; n <= thermal.space.cutoff; ++n)
        nbar += n * thermal.elements(n, n).real();
    CHECK(nbar == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("two-mode squeezed state: tail budget and domain") {
    // Remainder eta^{2(cutoff+1)} = 0.5^22 at cutoff 10: over the default budget.
    CHECK_THROWS_AS(two_mode_squeezed_state(0.5, two_mode(10)), CutoffTooSmall);
    const auto ok = two_mode_squeezed_state(0.5, two_mode(10), /*tail_tol=*/1e-6);
    CHECK(ok.tail_mass == doctest::Approx(2.384185791015625e-7).epsilon(1e-12));
    CHECK_THROWS_AS(two_mode_squeezed_state(1.0, two_mode(10)), Error);
    CHECK_THROWS_AS(two_mode_squeezed_state(-0.1, two_mode(10)), Error);
}

TEST_CASE("ECS normalization against the closed form") {
    // || |a>|b> - |b>|a> || = sqrt(2 - 2 e^{-|a-b|^2}) -> sqrt(2) at large
    // separation; at (2, -2) the cross term is e^{-16}.
    const FockSpace one = single_mode(40);
    const auto a = coherent_state(2.0, one);
    const auto b = coherent_state(-2.0, one);
    const auto ab = tensor_product(a, b);
    const auto ba = tensor_product(b, a);
    const Eigen::VectorXcd diff = ab.coefficients - ba.coefficients;
    CHECK(diff.norm() == doctest::Approx(1.4142134827987076).epsilon(1e-12));

    const auto ecs = ecs_state(2.0, -2.0, two_mode(40));
    CHECK((ecs.coefficients - diff / diff.norm()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ECS antisymmetry: swapping amplitudes flips the sign") {
    const FockSpace space = two_mode(30);
    const auto fwd = ecs_state(Complex(1.0, 0.5), Complex(-1.0, 0.2), space);
    const auto rev = ecs_state(Complex(-1.0, 0.2), Complex(1.0, 0.5), space);
    CHECK((fwd.coefficients + rev.coefficients).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ECS rejects coincident amplitudes") {
    CHECK_THROWS_AS(ecs_state(1.0, 1.0, two_mode(16)), DegenerateECS);
    CHECK_THROWS_AS(ecs_state(Complex(0.5, 0.5), Complex(0.5, 0.5), two_mode(16)),
                    DegenerateECS);
}

TEST_CASE("ECS reduced state matches the coherent outer-product assembly") {
    // Tr_a |ECS><ECS| = N^2 (|b><b| + |a><a| - <a|b>|b><a| - <b|a>|a><b|).
    const FockSpace two = two_mode(24);
    const FockSpace one = single_mode(24);
    const Complex za(1.4, 0.3), zb(-1.1, -0.6);
    const auto rho = partial_trace(pure_density(ecs_state(za, zb, two)), 1);

    const auto ca = coherent_state(za, one).coefficients;
    const auto cb = coherent_state(zb, one).coefficients;
    const Complex oab = ca.dot(cb);  // <a|b>
    const double n2 = 1.0 / (2.0 - 2.0 * std::exp(-std::norm(za - zb)));
    Eigen::MatrixXcd expect = cb * cb.adjoint() + ca * ca.adjoint() -
                              std::conj(oab) * cb * ca.adjoint() -
                              oab * ca * cb.adjoint();
    expect *= n2;
    CHECK((rho.elements - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ECS reduced state tends to an equal coherent mixture at large separation") {
    const FockSpace two = two_mode(44);
    const FockSpace one = single_mode(44);
    const auto rho = partial_trace(pure_density(ecs_state(3.0, -3.0, two)), 1);
    const auto ca = coherent_state(3.0, one).coefficients;
    const auto cb = coherent_state(-3.0, one).coefficients;
    const Eigen::MatrixXcd mix = 0.5 * (ca * ca.adjoint() + cb * cb.adjoint());
    // The cross operators carry <a|b> = e^{-|a-b|^2/2} = e^{-18} ~ 1.5e-8,
    // spread over coefficients of order 0.1.
    CHECK((rho.elements - mix).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("partial trace: product states factor exactly") {
    const FockSpace one = single_mode(16);
    const auto a = coherent_state(Complex(0.8, 0.1), one);
    const auto b = coherent_state(Complex(-0.2, 0.9), one);
    const auto joint = pure_density(tensor_product(a, b));
    const auto ra = partial_trace(joint, 0);
    const auto rb = partial_trace(joint, 1);
    CHECK((ra.elements - pure_density(a).elements).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((rb.elements - pure_density(b).elements).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(ra.trace() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rb.trace() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("partial trace is linear and trace preserving") {
    const FockSpace two = two_mode(12);
    const auto s1 = pure_density(ecs_state(0.7, -0.7, two));
    const auto s2 = pure_density(two_mode_squeezed_state(0.3, two));
    DensityMatrix blend{two, 0.25 * s1.elements + 0.75 * s2.elements};
    const auto traced = partial_trace(blend, 1);
    const Eigen::MatrixXcd expect = 0.25 * partial_trace(s1, 1).elements +
                                    0.75 * partial_trace(s2, 1).elements;
    CHECK((traced.elements - expect).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(traced.trace() == doctest::Approx(blend.trace()).epsilon(1e-14));
}

TEST_CASE("fidelity of a pure state with itself and with known partners") {
    const FockSpace space = single_mode(30);
    const auto vac = coherent_state(0.0, space);
    const auto one = coherent_state(1.0, space);
    CHECK(fidelity_pure_mixed(vac, pure_density(vac)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    // |<0|alpha=1>|^2 = e^{-1}.
    CHECK(fidelity_pure_mixed(vac, pure_density(one)) ==
          doctest::Approx(0.36787944117144233).epsilon(1e-10));
}

TEST_CASE("fidelity: mixtures, phase invariance, space mismatch") {
    const FockSpace space = single_mode(32);
    const auto a = coherent_state(2.0, space);
    const auto b = coherent_state(-2.0, space);
    // Against an equal orthogonal-ish mixture: ~1/2 (cross terms ~ e^{-16}).
    DensityMatrix mix{space, 0.5 * (pure_density(a).elements +
                                    pure_density(b).elements)};
    CHECK(fidelity_pure_mixed(a, mix) == doctest::Approx(0.5).epsilon(1e-6));
    // Global phase on psi cancels.
    FockVector spun = a;
    spun.coefficients *= std::exp(Complex(0.0, 0.77));
    CHECK(fidelity_pure_mixed(spun, mix) ==
          doctest::Approx(fidelity_pure_mixed(a, mix)).epsilon(1e-14));
    // Linear in rho.
    const double f = 0.25 * fidelity_pure_mixed(a, pure_density(a)) +
                     0.75 * fidelity_pure_mixed(a, pure_density(b));
    DensityMatrix blend{space, 0.25 * pure_density(a).elements +
                                   0.75 * pure_density(b).elements};
    CHECK(fidelity_pure_mixed(a, blend) == doctest::Approx(f).epsilon(1e-12));

    const auto other = coherent_state(0.0, single_mode(10));
    CHECK_THROWS_AS(fidelity_pure_mixed(other, mix), SpaceMismatch);
}
