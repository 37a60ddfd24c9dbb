#pragma once

#include "cvtelefid/fock.hpp"

#include <utility>
#include <vector>

namespace cvtelefid {

enum class QuadratureScheme {
    gauss_hermite_cartesian,
    polar_gauss_laguerre,
};

struct QuadratureNode {
    Complex z;
    double w;
};

// Discretization of the unit-variance complex Gaussian measure:
//   integral d^2z/pi exp(-|z|^2) f(z)  ~=  sum_k w_k f(z_k),
// with weights normalized to sum to exactly 1. Channels with variance sigma
// rescale nodes by sqrt(sigma) at application time.
struct QuadratureGrid {
    std::vector<QuadratureNode> nodes;
    QuadratureScheme scheme = QuadratureScheme::gauss_hermite_cartesian;
    int order = 0;
};

// 1-D Gauss-Hermite rule for weight exp(-t^2) on R (nodes, weights),
// computed by the Golub-Welsch symmetric-tridiagonal eigenproblem.
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_hermite_nodes(int order);

// Memoized variant: the eigensolve is O(order^3) and adaptive integrators
// revisit the same orders, so rules are computed once and kept. Thread-safe.
const std::pair<Eigen::VectorXd, Eigen::VectorXd>& gauss_hermite_nodes_cached(int order);

// 1-D Gauss-Laguerre rule for weight exp(-x) on [0, inf).
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_laguerre_nodes(int order);

// Cartesian product rule: z = t_i + i t_j, w = w_i w_j / pi.
QuadratureGrid gauss_hermite_grid(int order);

// Polar rule: |z|^2 by Gauss-Laguerre, phase by an n_theta-point trapezoid
// (default n_theta = 2*order).
QuadratureGrid polar_gauss_laguerre_grid(int order, int n_theta = 0);

QuadratureGrid make_grid(QuadratureScheme scheme, int order);

}  // namespace cvtelefid
