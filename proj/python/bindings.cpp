// Python bindings for the core operations: state construction, the Gaussian
// displacement-noise channel, the teleportation simulation, and the
// entanglement-fidelity methods. Cutoffs are passed as plain integers and
// states travel as numpy arrays; tail/trace bookkeeping comes back in tuples.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>

#include "cvtelefid/analytics.hpp"
#include "cvtelefid/channels.hpp"
#include "cvtelefid/entfid.hpp"

namespace py = pybind11;
using namespace cvtelefid;

namespace {

FockSpace space_for(const Eigen::MatrixXcd& rho) {
    if (rho.rows() != rho.cols() || rho.rows() < 1) {
        throw SpaceMismatch("expected a square single-mode density matrix");
    }
    return single_mode(static_cast<int>(rho.rows()) - 1);
}

}  // namespace

PYBIND11_MODULE(pycvtelefid, m) {
    m.doc() =
        "Coherent-state / entangled-coherent-state entanglement fidelities "
        "under Gaussian displacement noise (sigma is a variance; vacuum = 1/2)";

    py::register_exception<CutoffTooSmall>(m, "CutoffTooSmall", PyExc_RuntimeError);
    py::register_exception<GridTooCoarse>(m, "GridTooCoarse", PyExc_RuntimeError);
    py::register_exception<DegenerateECS>(m, "DegenerateECS", PyExc_ValueError);
    py::register_exception<NoRoot>(m, "NoRoot", PyExc_ValueError);

    m.def("default_cutoff", &default_cutoff, py::arg("alpha_max"),
          "Fock cutoff heuristic keeping the coherent tail below ~1e-12");

    m.def(
        "coherent_state",
        [](Complex alpha, int cutoff, double tail_tol) -> Eigen::VectorXcd {
            return coherent_state(alpha, single_mode(cutoff), tail_tol).coefficients;
        },
        py::arg("alpha"), py::arg("cutoff"), py::arg("tail_tol") = kTailTol,
        "truncated, renormalized coherent-state coefficients");

    m.def(
        "displacement_operator",
        [](Complex z, int cutoff) -> Eigen::MatrixXcd {
            return displacement_operator(z, single_mode(cutoff)).elements;
        },
        py::arg("z"), py::arg("cutoff"),
        "matrix elements <m|D(z)|n> on levels 0..cutoff");

    m.def(
        "ecs_state",
        [](Complex alpha, Complex beta, int cutoff) -> Eigen::VectorXcd {
            return ecs_state(alpha, beta, two_mode(cutoff)).coefficients;
        },
        py::arg("alpha"), py::arg("beta"), py::arg("cutoff"),
        "two-mode antisymmetric entangled coherent state, row-major pair index");

    m.def(
        "apply_noise",
        [](const Eigen::MatrixXcd& rho, double sigma, int order, double trace_tol) {
            const FockSpace space = space_for(rho);
            const auto out = apply_noise(make_noise_channel(sigma, order),
                                         DensityMatrix{space, rho}, trace_tol);
            return py::make_tuple(out.rho.elements, out.trace_deficit);
        },
        py::arg("rho"), py::arg("sigma"), py::arg("order") = 20,
        py::arg("trace_tol") = kTraceTol,
        "apply E_sigma; returns (rho_out, trace_deficit)");

    m.def(
        "simulate_teleportation",
        [](const Eigen::MatrixXcd& rho, double eta, int order, double prob_tol) {
            const FockSpace space = space_for(rho);
            const auto setup =
                make_teleportation_setup(eta, space.cutoff, order, prob_tol);
            const auto out =
                simulate_teleportation_channel(setup, DensityMatrix{space, rho});
            return py::make_tuple(out.rho.elements, out.total_probability,
                                  out.trace_deficit);
        },
        py::arg("rho"), py::arg("eta"), py::arg("order") = 20,
        py::arg("prob_tol") = kProbTol,
        "unconditional teleportation output; returns (rho_out, probability, deficit)");

    m.def(
        "fidelity_pure_mixed",
        [](const Eigen::VectorXcd& psi, const Eigen::MatrixXcd& rho) {
            const FockSpace space = space_for(rho);
            if (psi.size() != rho.rows()) {
                throw SpaceMismatch("state vector and density matrix sizes differ");
            }
            return fidelity_pure_mixed(FockVector{space, psi, 0.0},
                                       DensityMatrix{space, rho});
        },
        py::arg("psi"), py::arg("rho"), "<psi| rho |psi>");

    m.def("coherent_entanglement_fidelity", &coherent_entanglement_fidelity,
          py::arg("sigma"), "1 / (1 + sigma)");

    m.def(
        "ecs_entanglement_fidelity",
        [](Complex alpha, Complex beta, double sigma) {
            return ecs_entanglement_fidelity({alpha, beta}, sigma);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("sigma"),
        "closed-form ECS entanglement fidelity");

    m.def(
        "entanglement_fidelity_overlap",
        [](Complex alpha, Complex beta, double sigma, int order) {
            const auto r = entanglement_fidelity_overlap(alpha, beta, sigma,
                                                         gauss_hermite_grid(order));
            return py::make_tuple(r.value, r.est_error);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("sigma"), py::arg("order") = 20,
        "truncation-free quadrature of the exact overlap integrand");

    m.def(
        "entanglement_fidelity_brute",
        [](Complex alpha, Complex beta, double sigma, int cutoff, int order) {
            const auto p = purification_ecs_partner(alpha, beta, single_mode(cutoff));
            const auto r =
                entanglement_fidelity_brute(p, make_noise_channel(sigma, order));
            return py::make_tuple(r.value, r.est_error);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("sigma"), py::arg("cutoff"),
        py::arg("order") = 20,
        "Fock brute force on the ECS-partner purification");

    m.def(
        "required_sigma_for_ecs_fidelity",
        [](Complex alpha, Complex beta, double target) {
            return required_sigma_for_ecs_fidelity({alpha, beta}, target);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("target"),
        "sigma at which the closed-form ECS fidelity reaches target");

    m.def("sigma_from_squeezing", &sigma_from_squeezing, py::arg("eta"),
          "sigma_eta = exp(-2 atanh eta)");
    m.def("sigma_from_detector", &sigma_from_detector, py::arg("nu"),
          "sigma_nu = (1 - nu^2) / nu^2");
    m.def("squeezing_to_db", &squeezing_to_db, py::arg("sigma_eta"),
          "-10 log10(sigma_eta)");
    m.def("db_to_squeezing_sigma", &db_to_squeezing_sigma, py::arg("db"),
          "10^(-db/10)");
    m.def("sigma_from_average_fidelity", &sigma_from_average_fidelity,
          py::arg("fbar"), "invert 1/(1+sigma) at a measured average fidelity");
}
