// cvtelefid: entanglement fidelities of coherent and entangled-coherent
// states sent through a Gaussian displacement-noise channel, plus the
// teleportation noise budget behind that channel.
//
// Convention note: sigma is a *variance* in squared-amplitude units
// (vacuum noise = 1/2), even though fidelity-vs-sigma plots are often
// axis-labeled as a standard deviation.

#include <CLI11.hpp>

#include "cvtelefid/commands.hpp"

#include <fstream>
#include <iostream>

namespace {

using namespace cvtelefid;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;   // verification failed / no result
constexpr int kExitUsage = 2;     // bad flags or config
constexpr int kExitAccuracy = 3;  // CutoffTooSmall / GridTooCoarse

void write_output(const RunConfig& config, const std::string& text) {
    if (config.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(config.output_path);
    if (!out) throw ConfigError("cannot open output file '" + config.output_path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "cvtelefid: coherent-state and entangled-coherent-state entanglement\n"
        "fidelities under Gaussian displacement noise.\n"
        "Note: sigma always denotes a noise VARIANCE (vacuum = 1/2), matching\n"
        "the closed forms F = 1/(1+sigma); it is not a standard deviation."};
    app.require_subcommand(1);

    std::string config_path;
    std::string format = "csv";
    std::string out_path;
    int cutoff = 0;
    int gh_order = 0;
    bool deterministic = false;

    auto* config_opt =
        app.add_option("--config", config_path, "key=value config file")
            ->envname("CVTELEFID_CONFIG");
    auto* out_opt = app.add_option("--out", out_path, "output file (default: stdout)");
    auto* format_opt = app.add_option("--format", format, "output format: csv or json")
                           ->check(CLI::IsMember({"csv", "json"}));
    auto* cutoff_opt =
        app.add_option("--cutoff", cutoff, "Fock-space cutoff (levels 0..cutoff)");
    auto* gh_opt = app.add_option("--gh-order", gh_order, "base Gauss-Hermite order");
    auto* det_opt = app.add_flag(
        "--deterministic", deterministic,
        "assert byte-stable output (reductions are fixed-order already)");

    auto* fig1 = app.add_subcommand(
        "fig1", "entanglement-fidelity curves vs sigma for |alpha> and the odd ECS");
    double alpha = 2.0, sigma_max = 1.0;
    int steps = 21;
    std::string svg_path;
    fig1->add_option("--alpha", alpha, "coherent amplitude (ECS uses +/- alpha)")
        ->capture_default_str();
    fig1->add_option("--sigma-max", sigma_max, "largest noise variance")
        ->capture_default_str();
    fig1->add_option("--steps", steps, "number of sigma samples (inclusive of 0)")
        ->capture_default_str();
    fig1->add_option("--svg", svg_path, "also render a line chart to this file");

    auto* budget = app.add_subcommand(
        "noise-budget", "additive variance budget sigma_G + sigma_eta + sigma_nu + "
                        "sigma_other and its fidelity thresholds");
    double sigma_G = 0.0, eta = 0.0, nu = 1.0, sigma_other = 0.0;
    budget->add_option("--sigma-g", sigma_G, "amplification noise variance")
        ->capture_default_str();
    budget->add_option("--eta", eta, "squeezing parameter in [0,1)")
        ->capture_default_str();
    budget->add_option("--nu", nu, "detector efficiency in (0,1]")
        ->capture_default_str();
    budget->add_option("--sigma-other", sigma_other, "residual noise variance")
        ->capture_default_str();

    auto* verify = app.add_subcommand(
        "verify", "run the channel/fidelity consistency suite (exit 0 iff all pass)");

    auto* squeezing = app.add_subcommand(
        "required-squeezing",
        "noise variance and squeezing (dB) at which the odd ECS reaches a target "
        "entanglement fidelity");
    double sq_alpha = 2.0, target = 0.5;
    squeezing->add_option("--alpha", sq_alpha, "ECS amplitude")->capture_default_str();
    squeezing->add_option("--target", target, "target entanglement fidelity")
        ->capture_default_str();

    // Let the global options (--cutoff, --format, ...) appear after the
    // subcommand name as well.
    for (auto* sub : {fig1, budget, verify, squeezing}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11's own exit codes do not match ours: --help exits 0,
        // everything else is a usage error.
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        // Layering: defaults, then the config file, then explicit flags.
        RunConfig config;
        if (config_opt->count() > 0 && !config_path.empty()) {
            load_config_file(config_path, config);
        }
        if (out_opt->count() > 0) config.output_path = out_path;
        if (format_opt->count() > 0) config.output_format = parse_output_format(format);
        if (cutoff_opt->count() > 0) config.cutoff = cutoff;
        if (gh_opt->count() > 0) config.gh_order = gh_order;
        if (det_opt->count() > 0) config.deterministic_reduction = deterministic;
        config.validate();

        if (fig1->parsed()) {
            const CurveResult curve = cmd_fig1(alpha, sigma_max, steps, config);
            write_output(config, config.output_format == OutputFormat::csv
                                     ? render_curve_csv(curve)
                                     : render_curve_json(curve));
            if (!svg_path.empty()) {
                std::ofstream svg(svg_path);
                if (!svg) throw ConfigError("cannot open svg file '" + svg_path + "'");
                svg << render_curve_svg(curve);
            }
        } else if (budget->parsed()) {
            const NoiseBudgetResult report = cmd_noise_budget(sigma_G, eta, nu, sigma_other);
            write_output(config, config.output_format == OutputFormat::csv
                                     ? render_budget_csv(report)
                                     : render_budget_json(report));
        } else if (verify->parsed()) {
            const VerifyResult report = cmd_verify(config);
            write_output(config, config.output_format == OutputFormat::csv
                                     ? render_verify_text(report)
                                     : render_verify_json(report));
            return report.all_passed() ? kExitOk : kExitFailure;
        } else if (squeezing->parsed()) {
            const RequiredSqueezingResult report = cmd_required_squeezing(sq_alpha, target);
            write_output(config, config.output_format == OutputFormat::csv
                                     ? render_squeezing_csv(report)
                                     : render_squeezing_json(report));
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CutoffTooSmall& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitAccuracy;
    } catch (const GridTooCoarse& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitAccuracy;
    } catch (const std::exception& e) {
        // Includes NoRoot and domain errors: a legitimate negative result.
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}
