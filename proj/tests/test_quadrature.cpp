#include "cvtelefid/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cvtelefid;

TEST_CASE("Gauss-Hermite rule: moments of exp(-t^2)") {
    for (int order : {4, 10, 20, 41}) {
        const auto [t, w] = gauss_hermite_nodes(order);
        // integral exp(-t^2) dt = sqrt(pi); integral t^2 exp(-t^2) = sqrt(pi)/2.
        CHECK(w.sum() ==
              doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
        CHECK(w.dot(t.cwiseProduct(t)) ==
              doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-13));
        // Odd moments vanish and the node set is symmetric about zero.
        CHECK(std::abs(w.dot(t)) < 1e-13);
        for (Eigen::Index i = 0; i < t.size(); ++i)
            CHECK(t(i) == doctest::Approx(-t(t.size() - 1 - i)).epsilon(1e-12));
    }
}

TEST_CASE("Gauss-Hermite rule integrates polynomials to machine accuracy") {
    // A rule of order n is exact through degree 2n-1: check t^8 at order 5.
    const auto [t, w] = gauss_hermite_nodes(5);
    double m8 = 0.0;
    for (Eigen::Index i = 0; i < t.size(); ++i) m8 += w(i) * std::pow(t(i), 8);
    // integral t^8 exp(-t^2) dt = 105/16 sqrt(pi).
    CHECK(m8 == doctest::Approx(105.0 / 16.0 * std::sqrt(std::numbers::pi))
                    .epsilon(1e-13));
}

TEST_CASE("Gauss-Laguerre rule: moments of exp(-x) on [0, inf)") {
    for (int order : {6, 20}) {
        const auto [x, w] = gauss_laguerre_nodes(order);
        CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(w.dot(x) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(x.minCoeff() > 0.0);
    }
}

TEST_CASE("complex Gaussian grids: normalization and second moment") {
    for (auto scheme : {QuadratureScheme::gauss_hermite_cartesian,
                        QuadratureScheme::polar_gauss_laguerre}) {
        const auto grid = make_grid(scheme, 20);
        double wsum = 0.0, m2 = 0.0;
        for (const auto& node : grid.nodes) {
            wsum += node.w;
            m2 += node.w * std::norm(node.z);
        }
        // Unit-variance complex Gaussian: weights sum to 1 (by construction
        // for the cartesian grid) and <|z|^2> = 1.
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(m2 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("cartesian and polar grids agree on a smooth integrand") {
    // f(z) = exp(Re z - |z|^2/4) cos(0.8 Im z): analytic, sub-Gaussian growth.
    auto f = [](Complex z) {
        return std::exp(z.real() - std::norm(z) / 4.0) * std::cos(0.8 * z.imag());
    };
    double vals[2] = {0.0, 0.0};
    int k = 0;
    for (auto scheme : {QuadratureScheme::gauss_hermite_cartesian,
                        QuadratureScheme::polar_gauss_laguerre}) {
        const auto grid = make_grid(scheme, 40);
        for (const auto& node : grid.nodes) vals[k] += node.w * f(node.z);
        ++k;
    }
    CHECK(vals[0] == doctest::Approx(vals[1]).epsilon(1e-9));
}

TEST_CASE("polar grid: node count and default phase resolution") {
    const auto grid = polar_gauss_laguerre_grid(8);
    CHECK(grid.nodes.size() == 8u * 16u);  // n_theta defaults to 2*order
    const auto custom = polar_gauss_laguerre_grid(8, 5);
    CHECK(custom.nodes.size() == 8u * 5u);
}

TEST_CASE("memoized Gauss-Hermite rules match fresh ones and stay put") {
    const auto fresh = gauss_hermite_nodes(24);
    const auto& cached = gauss_hermite_nodes_cached(24);
    CHECK((cached.first - fresh.first).cwiseAbs().maxCoeff() == 0.0);
    CHECK((cached.second - fresh.second).cwiseAbs().maxCoeff() == 0.0);
    // References remain valid (same storage) after further inserts.
    const double* before = cached.first.data();
    gauss_hermite_nodes_cached(88);
    gauss_hermite_nodes_cached(152);
    const auto& again = gauss_hermite_nodes_cached(24);
    CHECK(again.first.data() == before);
}

TEST_CASE("quadrature rejects non-positive orders") {
    CHECK_THROWS_AS(gauss_hermite_nodes(0), Error);
    CHECK_THROWS_AS(gauss_laguerre_nodes(-3), Error);
    CHECK_THROWS_AS(gauss_hermite_grid(0), Error);
}
