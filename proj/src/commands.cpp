#include "cvtelefid/commands.hpp"

#include "cvtelefid/channels.hpp"
#include "cvtelefid/entfid.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

namespace cvtelefid {

namespace {

using nlohmann::ordered_json;

// 12 significant digits: enough to reproduce every double we emit, short
// enough to diff by eye.
std::string sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

// ---- fig1 -------------------------------------------------------------------

CurveResult cmd_fig1(double alpha, double sigma_max, int steps,
                     const RunConfig& config) {
    config.validate();
    if (!(alpha > 0.0)) throw ConfigError("fig1: alpha must be > 0");
    if (steps < 2) throw ConfigError("fig1: steps must be >= 2");
    if (!(sigma_max > 0.0)) throw ConfigError("fig1: sigma-max must be > 0");

    const Complex a(alpha, 0.0);
    const Complex b = -a;
    const ECSSpec spec{a, b};
    const QuadratureGrid grid = gauss_hermite_grid(config.gh_order);

    // The brute-force column needs the ECS inside a truncated Fock space;
    // emit it only when the configured cutoff budget covers the amplitude.
    // The working cutoff gets extra headroom beyond the bare heuristic so the
    // Poisson tail clears tail_tol with margin, capped by the configured budget.
    const int needed_cutoff = default_cutoff(alpha);
    const bool with_brute = needed_cutoff <= config.cutoff;
    Purification purification;
    if (with_brute) {
        const int work_cutoff = std::min(
            config.cutoff,
            needed_cutoff + 8 + static_cast<int>(std::ceil(alpha * alpha / 2.0)));
        purification = purification_ecs_partner(a, b, single_mode(work_cutoff),
                                                config.tol("tail_tol"));
    }

    CurveResult result;
    result.alpha = alpha;
    result.points.reserve(static_cast<size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double sigma = sigma_max * i / (steps - 1);
        CurvePoint p;
        p.sigma = sigma;
        p.fe_coherent = coherent_entanglement_fidelity(sigma);
        p.fe_ecs_closed = ecs_entanglement_fidelity(spec, sigma);
        const EntFidResult exact = entanglement_fidelity_overlap(a, b, sigma, grid);
        p.fe_ecs_exact = exact.value;
        p.est_error = exact.est_error;
        if (with_brute) {
            const EntFidResult brute = entanglement_fidelity_brute(
                purification, make_noise_channel(sigma, config.gh_order));
            p.fe_ecs_brute = brute.value;
            p.est_error = std::max(p.est_error, brute.est_error);
        }
        result.points.push_back(p);
    }
    return result;
}

std::string render_curve_csv(const CurveResult& result) {
    std::ostringstream out;
    out << "sigma,fe_coherent,fe_ecs_closed,fe_ecs_exact,fe_ecs_brute,est_error\n";
    for (const auto& p : result.points) {
        out << sig12(p.sigma) << ',' << sig12(p.fe_coherent) << ','
            << sig12(p.fe_ecs_closed) << ',' << sig12(p.fe_ecs_exact) << ','
            << (p.fe_ecs_brute ? sig12(*p.fe_ecs_brute) : "") << ','
            << sig12(p.est_error) << '\n';
    }
    return out.str();
}

std::string render_curve_json(const CurveResult& result) {
    ordered_json doc;
    doc["alpha"] = result.alpha;
    doc["points"] = ordered_json::array();
    for (const auto& p : result.points) {
        ordered_json row;
        row["sigma"] = p.sigma;
        row["fe_coherent"] = p.fe_coherent;
        row["fe_ecs_closed"] = p.fe_ecs_closed;
        row["fe_ecs_exact"] = p.fe_ecs_exact;
        if (p.fe_ecs_brute) {
            row["fe_ecs_brute"] = *p.fe_ecs_brute;
        } else {
            row["fe_ecs_brute"] = nullptr;
        }
        row["est_error"] = p.est_error;
        doc["points"].push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

namespace {

struct SvgFrame {
    double width = 720, height = 480;
    double left = 70, right = 24, top = 28, bottom = 56;
    double sigma_max = 1.0;

    double x(double sigma) const {
        return left + (width - left - right) * (sigma / sigma_max);
    }
    double y(double f) const {
        return top + (height - top - bottom) * (1.0 - f);
    }
};

std::string polyline(const SvgFrame& f, const CurveResult& r,
                     double CurvePoint::* field, const char* color,
                     const char* dash) {
    std::ostringstream out;
    out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\"";
    if (dash[0] != '\0') out << " stroke-dasharray=\"" << dash << "\"";
    out << " points=\"";
    for (const auto& p : r.points) {
        out << sig12(f.x(p.sigma)) << ',' << sig12(f.y(p.*field)) << ' ';
    }
    out << "\"/>\n";
    return out.str();
}

}  // namespace

std::string render_curve_svg(const CurveResult& result) {
    SvgFrame f;
    if (!result.points.empty()) f.sigma_max = result.points.back().sigma;
    if (f.sigma_max <= 0.0) f.sigma_max = 1.0;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width
        << "\" height=\"" << f.height << "\" viewBox=\"0 0 " << f.width << ' '
        << f.height << "\">\n"
        << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Axes and grid lines.
    for (int i = 0; i <= 4; ++i) {
        const double fy = i / 4.0;
        out << "  <line x1=\"" << f.x(0) << "\" y1=\"" << f.y(fy) << "\" x2=\""
            << f.x(f.sigma_max) << "\" y2=\"" << f.y(fy)
            << "\" stroke=\"#dddddd\"/>\n"
            << "  <text x=\"" << f.x(0) - 10 << "\" y=\"" << f.y(fy) + 4
            << "\" font-size=\"12\" text-anchor=\"end\">" << sig12(fy)
            << "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        const double sx = f.sigma_max * i / 5.0;
        out << "  <line x1=\"" << f.x(sx) << "\" y1=\"" << f.y(0) << "\" x2=\""
            << f.x(sx) << "\" y2=\"" << f.y(0) + 5 << "\" stroke=\"#444444\"/>\n"
            << "  <text x=\"" << f.x(sx) << "\" y=\"" << f.y(0) + 20
            << "\" font-size=\"12\" text-anchor=\"middle\">" << sig12(sx)
            << "</text>\n";
    }
    out << "  <rect x=\"" << f.x(0) << "\" y=\"" << f.y(1) << "\" width=\""
        << f.x(f.sigma_max) - f.x(0) << "\" height=\"" << f.y(0) - f.y(1)
        << "\" fill=\"none\" stroke=\"#444444\"/>\n"
        << "  <text x=\"" << (f.x(0) + f.x(f.sigma_max)) / 2 << "\" y=\""
        << f.height - 14
        << "\" font-size=\"13\" text-anchor=\"middle\">noise variance sigma"
           "</text>\n"
        << "  <text x=\"18\" y=\"" << (f.y(0) + f.y(1)) / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << (f.y(0) + f.y(1)) / 2 << ")\">entanglement fidelity</text>\n";

    out << polyline(f, result, &CurvePoint::fe_coherent, "#1f77b4", "");
    out << polyline(f, result, &CurvePoint::fe_ecs_closed, "#d62728", "");
    out << polyline(f, result, &CurvePoint::fe_ecs_exact, "#2ca02c", "6,4");
    bool any_brute = false;
    for (const auto& p : result.points) {
        if (p.fe_ecs_brute) {
            any_brute = true;
            out << "  <circle cx=\"" << sig12(f.x(p.sigma)) << "\" cy=\""
                << sig12(f.y(*p.fe_ecs_brute))
                << "\" r=\"2.6\" fill=\"none\" stroke=\"#9467bd\"/>\n";
        }
    }

    const char* labels[] = {"coherent 1/(1+sigma)", "ECS closed form",
                            "ECS exact overlap", "ECS brute force"};
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    const int n_labels = any_brute ? 4 : 3;
    for (int i = 0; i < n_labels; ++i) {
        const double ly = f.top + 16 + 18 * i;
        out << "  <line x1=\"" << f.x(f.sigma_max) - 190 << "\" y1=\"" << ly - 4
            << "\" x2=\"" << f.x(f.sigma_max) - 166 << "\" y2=\"" << ly - 4
            << "\" stroke=\"" << colors[i] << "\" stroke-width=\"2\"/>\n"
            << "  <text x=\"" << f.x(f.sigma_max) - 160 << "\" y=\"" << ly
            << "\" font-size=\"12\">" << labels[i] << " (alpha=" << sig12(result.alpha)
            << ")</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

// ---- noise budget -----------------------------------------------------------

NoiseBudgetResult cmd_noise_budget(double sigma_G, double eta, double nu,
                                   double sigma_other) {
    if (sigma_G < 0.0) throw Error("noise_budget: sigma_G must be >= 0");
    if (sigma_other < 0.0) throw Error("noise_budget: sigma_other must be >= 0");

    NoiseBudgetResult r;
    r.eta = eta;
    r.nu = nu;
    r.budget.sigma_G = sigma_G;
    r.budget.sigma_eta = sigma_from_squeezing(eta);  // domain-checks eta
    r.budget.sigma_nu = sigma_from_detector(nu);     // domain-checks nu
    r.budget.sigma_other = sigma_other;
    r.total = r.budget.total();
    r.fe_coherent = coherent_entanglement_fidelity(r.total);
    r.passes_half = r.total < 1.0;
    r.passes_two_thirds = r.total < 0.5;
    r.squeezing_db = squeezing_to_db(r.budget.sigma_eta);
    if (eta == 0.0) {
        r.note =
            "eta = 0: sigma_eta = 1 on its own saturates the classical bound "
            "F = 1/2 (the quantum duty); any squeezing at all beats it";
    }
    return r;
}

namespace {

ordered_json budget_json(const NoiseBudgetResult& r) {
    ordered_json doc;
    doc["inputs"] = {{"sigma_G", r.budget.sigma_G},
                     {"eta", r.eta},
                     {"nu", r.nu},
                     {"sigma_other", r.budget.sigma_other}};
    doc["components"] = {{"sigma_G", r.budget.sigma_G},
                         {"sigma_eta", r.budget.sigma_eta},
                         {"sigma_nu", r.budget.sigma_nu},
                         {"sigma_other", r.budget.sigma_other}};
    doc["total_sigma"] = r.total;
    doc["fe_coherent"] = r.fe_coherent;
    doc["threshold_half"] = {{"requires", "sigma < 1"}, {"pass", r.passes_half}};
    doc["threshold_two_thirds"] = {{"requires", "sigma < 1/2"},
                                   {"pass", r.passes_two_thirds}};
    doc["squeezing_db"] = r.squeezing_db;
    if (!r.note.empty()) doc["note"] = r.note;
    return doc;
}

}  // namespace

std::string render_budget_json(const NoiseBudgetResult& r) {
    return budget_json(r).dump(2) + "\n";
}

std::string render_budget_csv(const NoiseBudgetResult& r) {
    std::ostringstream out;
    out << "key,value\n"
        << "sigma_G," << sig12(r.budget.sigma_G) << '\n'
        << "sigma_eta," << sig12(r.budget.sigma_eta) << '\n'
        << "sigma_nu," << sig12(r.budget.sigma_nu) << '\n'
        << "sigma_other," << sig12(r.budget.sigma_other) << '\n'
        << "total_sigma," << sig12(r.total) << '\n'
        << "fe_coherent," << sig12(r.fe_coherent) << '\n'
        << "threshold_half," << (r.passes_half ? "pass" : "fail") << '\n'
        << "threshold_two_thirds," << (r.passes_two_thirds ? "pass" : "fail") << '\n'
        << "squeezing_db," << sig12(r.squeezing_db) << '\n';
    if (!r.note.empty()) out << "note," << r.note << '\n';
    return out.str();
}

// ---- verify -----------------------------------------------------------------

bool VerifyResult::all_passed() const {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

namespace {

// Run one named check, converting any exception into a failure entry so the
// suite always reports every invariant.
template <typename Fn>
void run_check(VerifyResult& result, const std::string& name, double tolerance,
               Fn&& body) {
    CheckResult check;
    check.name = name;
    check.tolerance = tolerance;
    try {
        check.deviation = body(check);
        check.passed = check.deviation <= tolerance;
    } catch (const std::exception& e) {
        check.passed = false;
        check.deviation = std::numeric_limits<double>::quiet_NaN();
        check.detail = e.what();
    }
    result.checks.push_back(std::move(check));
}

DensityMatrix displace_state(const DensityMatrix& rho, Complex w) {
    const Operator d = displacement_operator(w, rho.space);
    return {rho.space, d.elements * rho.elements * d.elements.adjoint()};
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

VerifyResult cmd_verify(const RunConfig& config) {
    config.validate();
    VerifyResult result;
    const double trace_tol = config.tol("trace_tol");
    const double herm_tol = config.tol("herm_tol");
    const double tail_tol = config.tol("tail_tol");
    const FockSpace space = single_mode(config.cutoff);

    // 1. Trace preservation through the Kraus sum (pre-normalization deficit).
    run_check(result, "trace_preservation", trace_tol, [&](CheckResult& c) {
        const auto rho = pure_density(coherent_state(2.0, space, tail_tol));
        const auto out = apply_noise(make_noise_channel(0.3, config.gh_order), rho,
                                     trace_tol);
        c.detail = "E_0.3 on |alpha=2>, cutoff " + std::to_string(config.cutoff);
        return std::abs(out.trace_deficit);
    });

    // 2. Hermiticity preservation of the channel output.
    run_check(result, "hermiticity", herm_tol, [&](CheckResult& c) {
        const auto rho = pure_density(coherent_state(Complex(1.0, 0.7), space, tail_tol));
        const auto out = apply_noise(make_noise_channel(0.5, config.gh_order), rho,
                                     trace_tol);
        c.detail = "E_0.5 on |alpha=1+0.7i>";
        return out.rho.hermiticity_defect();
    });

    // 3. Covariance: E_sigma(D rho D^dag) = D E_sigma(rho) D^dag.
    run_check(result, "displacement_covariance", 1e-6, [&](CheckResult& c) {
        const Complex w(0.5, 0.3);
        const auto channel = make_noise_channel(0.4, config.gh_order);
        const auto rho = pure_density(coherent_state(0.8, space, tail_tol));
        const auto lhs = apply_noise(channel, displace_state(rho, w), trace_tol);
        const auto rhs = apply_noise(channel, rho, trace_tol);
        c.detail = "shift by w=0.5+0.3i against shifting the output";
        return max_abs_diff(lhs.rho.elements, displace_state(rhs.rho, w).elements);
    });

    // 4. Semigroup composition: E_{sigma/2} twice equals E_sigma.
    run_check(result, "semigroup_composition", 1e-6, [&](CheckResult& c) {
        const auto rho = pure_density(coherent_state(1.0, space, tail_tol));
        const auto half = make_noise_channel(0.25, config.gh_order);
        const auto full = make_noise_channel(0.5, config.gh_order);
        const auto twice = apply_noise(half, apply_noise(half, rho, trace_tol).rho,
                                       trace_tol);
        const auto once = apply_noise(full, rho, trace_tol);
        c.detail = "E_0.25 applied twice vs E_0.5";
        return max_abs_diff(twice.rho.elements, once.rho.elements);
    });

    // 5. Entanglement fidelity is a property of rho_b alone: three distinct
    // purifications of the same reduced ECS state must agree.
    run_check(result, "purification_independence", 1e-8, [&](CheckResult& c) {
        const Complex a(1.2, 0.0);
        const FockSpace small = single_mode(std::min(config.cutoff,
                                                     default_cutoff(1.2) + 6));
        const auto ecs = purification_ecs_partner(a, -a, small, tail_tol);
        const DensityMatrix rho_b = ecs.reduced_state();
        // Ancilla-side unitaries leave rho_b exactly invariant: a diagonal
        // phase twist and the canonical eigendecomposition both qualify.
        Eigen::MatrixXcd twisted = ecs.gamma;
        for (Eigen::Index r = 0; r < twisted.rows(); ++r) {
            twisted.row(r) *= std::polar(1.0, 0.7 * static_cast<double>(r));
        }
        const std::vector<Purification> purifications = {
            ecs,
            purification_custom(std::move(twisted), small),
            purification_from_density_matrix(rho_b),
        };
        const auto channel = make_noise_channel(0.3, config.gh_order);
        const auto report = purification_independence_check(rho_b, purifications,
                                                            channel, 1e-8, 1e-8);
        c.detail = "ECS-partner, phase-twisted, and canonical purifications";
        if (!report.consistent) return 1.0 + report.max_pairwise_gap;
        return report.max_pairwise_gap;
    });

    // 6. Average-fidelity inversion for the published benchmark value 0.58:
    // numerically average the pipeline fidelity over 16 phases of |alpha|=1
    // and invert 1/(1+sigma).
    run_check(result, "average_fidelity_inversion", 1e-3, [&](CheckResult& c) {
        const double fbar_target = 0.58;
        const double sigma = sigma_from_average_fidelity(fbar_target);
        const FockSpace phase_space = single_mode(std::min(config.cutoff, 32));
        const auto channel = make_noise_channel(sigma, config.gh_order);
        double fbar = 0.0;
        const int n_phases = 16;
        for (int k = 0; k < n_phases; ++k) {
            const Complex alpha = std::polar(1.0, 2.0 * std::numbers::pi * k / n_phases);
            const FockVector psi = coherent_state(alpha, phase_space, tail_tol);
            const auto out = apply_noise(channel, pure_density(psi), trace_tol);
            fbar += fidelity_pure_mixed(psi, out.rho);
        }
        fbar /= n_phases;
        std::ostringstream detail;
        detail << "sigma(F=0.58) = " << sig12(sigma)
               << "; 16-phase numeric average = " << sig12(fbar);
        c.detail = detail.str();
        return std::abs(fbar - fbar_target);
    });

    return result;
}

std::string render_verify_text(const VerifyResult& result) {
    std::ostringstream out;
    for (const auto& c : result.checks) {
        out << (c.passed ? "PASS" : "FAIL") << ' ' << c.name
            << " deviation=" << sig12(c.deviation) << " tol=" << sig12(c.tolerance);
        if (!c.detail.empty()) out << " (" << c.detail << ')';
        out << '\n';
    }
    out << (result.all_passed() ? "verify: all checks passed"
                                : "verify: FAILURES present")
        << '\n';
    return out.str();
}

std::string render_verify_json(const VerifyResult& result) {
    ordered_json doc;
    doc["checks"] = ordered_json::array();
    for (const auto& c : result.checks) {
        ordered_json row;
        row["name"] = c.name;
        row["passed"] = c.passed;
        if (std::isnan(c.deviation)) {
            row["deviation"] = nullptr;
        } else {
            row["deviation"] = c.deviation;
        }
        row["tolerance"] = c.tolerance;
        row["detail"] = c.detail;
        doc["checks"].push_back(std::move(row));
    }
    doc["all_passed"] = result.all_passed();
    return doc.dump(2) + "\n";
}

// ---- required squeezing -----------------------------------------------------

RequiredSqueezingResult cmd_required_squeezing(double alpha, double target) {
    if (!(alpha > 0.0)) throw ConfigError("required-squeezing: alpha must be > 0");
    RequiredSqueezingResult r;
    r.alpha = alpha;
    r.target = target;
    const ECSSpec spec{Complex(alpha, 0.0), Complex(-alpha, 0.0)};
    r.sigma = required_sigma_for_ecs_fidelity(spec, target);
    r.db = squeezing_to_db(r.sigma);
    r.note = "dB = -10 log10(sigma), from the squeezing parametrization "
             "sigma = exp(-2r)";
    return r;
}

std::string render_squeezing_json(const RequiredSqueezingResult& r) {
    ordered_json doc;
    doc["alpha"] = r.alpha;
    doc["target_fe"] = r.target;
    doc["sigma"] = r.sigma;
    doc["dB"] = r.db;
    doc["note"] = r.note;
    return doc.dump(2) + "\n";
}

std::string render_squeezing_csv(const RequiredSqueezingResult& r) {
    std::ostringstream out;
    out << "key,value\n"
        << "alpha," << sig12(r.alpha) << '\n'
        << "target_fe," << sig12(r.target) << '\n'
        << "sigma," << sig12(r.sigma) << '\n'
        << "dB," << sig12(r.db) << '\n'
        << "note," << r.note << '\n';
    return out.str();
}

}  // namespace cvtelefid
