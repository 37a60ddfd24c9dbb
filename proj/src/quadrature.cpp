#include "cvtelefid/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace cvtelefid {

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights are
// mu_0 * (first eigenvector component)^2.
std::pair<Eigen::VectorXd, Eigen::VectorXd>
golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& subdiag, double mu0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw Error("golub_welsch: tridiagonal eigensolver failed");
    }
    Eigen::VectorXd nodes = solver.eigenvalues();
    Eigen::VectorXd weights = mu0 * solver.eigenvectors().row(0).transpose().array().square();
    return {std::move(nodes), std::move(weights)};
}

}  // namespace

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_hermite_nodes(int order) {
    if (order < 1) throw Error("gauss_hermite_nodes: order must be >= 1");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd subdiag(order - 1 > 0 ? order - 1 : 0);
    for (int i = 1; i < order; ++i) subdiag(i - 1) = std::sqrt(i / 2.0);
    return golub_welsch(diag, subdiag, std::sqrt(std::numbers::pi));
}

const std::pair<Eigen::VectorXd, Eigen::VectorXd>& gauss_hermite_nodes_cached(int order) {
    static std::mutex mutex;
    static std::map<int, std::pair<Eigen::VectorXd, Eigen::VectorXd>> cache;
    std::scoped_lock lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) {
        it = cache.emplace(order, gauss_hermite_nodes(order)).first;
    }
    return it->second;  // map node references stay valid across later inserts
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_laguerre_nodes(int order) {
    if (order < 1) throw Error("gauss_laguerre_nodes: order must be >= 1");
    Eigen::VectorXd diag(order);
    Eigen::VectorXd subdiag(order - 1 > 0 ? order - 1 : 0);
    for (int i = 0; i < order; ++i) diag(i) = 2.0 * i + 1.0;
    for (int i = 1; i < order; ++i) subdiag(i - 1) = static_cast<double>(i);
    return golub_welsch(diag, subdiag, 1.0);
}

QuadratureGrid gauss_hermite_grid(int order) {
    auto [t, w] = gauss_hermite_nodes(order);
    QuadratureGrid grid;
    grid.scheme = QuadratureScheme::gauss_hermite_cartesian;
    grid.order = order;
    grid.nodes.reserve(static_cast<size_t>(order) * order);
    double total = 0.0;
    for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) {
            const double wij = w(i) * w(j) / std::numbers::pi;
            grid.nodes.push_back({Complex(t(i), t(j)), wij});
            total += wij;
        }
    }
    for (auto& node : grid.nodes) node.w /= total;
    return grid;
}

QuadratureGrid polar_gauss_laguerre_grid(int order, int n_theta) {
    if (n_theta <= 0) n_theta = std::max(2 * order, 4);
    auto [x, w] = gauss_laguerre_nodes(order);
    QuadratureGrid grid;
    grid.scheme = QuadratureScheme::polar_gauss_laguerre;
    grid.order = order;
    grid.nodes.reserve(static_cast<size_t>(order) * n_theta);
    double total = 0.0;
    for (int i = 0; i < order; ++i) {
        const double r = std::sqrt(x(i));
        for (int j = 0; j < n_theta; ++j) {
            const double theta = 2.0 * std::numbers::pi * j / n_theta;
            const double wij = w(i) / n_theta;
            grid.nodes.push_back({std::polar(r, theta), wij});
            total += wij;
        }
    }
    for (auto& node : grid.nodes) node.w /= total;
    return grid;
}

QuadratureGrid make_grid(QuadratureScheme scheme, int order) {
    switch (scheme) {
        case QuadratureScheme::gauss_hermite_cartesian: return gauss_hermite_grid(order);
        case QuadratureScheme::polar_gauss_laguerre: return polar_gauss_laguerre_grid(order);
    }
    throw Error("make_grid: unknown scheme");
}

}  // namespace cvtelefid
