#include "mixent/cli.hpp"

#include "mixent/error.hpp"
#include "mixent/estimators.hpp"
#include "mixent/experiments.hpp"
#include "mixent/kernels.hpp"
#include "mixent/montecarlo.hpp"
#include "mixent/mutual_info.hpp"
#include "mixent/spec_file.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <string>

namespace mixent {
namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

GridSpec parse_grid(const std::string& text)
{
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos)
        throw UsageError("--grid expects lo:hi:steps, got '" + text + "'");
    try {
        std::size_t used = 0;
        GridSpec g;
        const std::string lo = text.substr(0, a), hi = text.substr(a + 1, b - a - 1), steps = text.substr(b + 1);
        g.lo = std::stod(lo, &used);
        if (used != lo.size())
            throw std::invalid_argument(lo);
        g.hi = std::stod(hi, &used);
        if (used != hi.size())
            throw std::invalid_argument(hi);
        const long long s = std::stoll(steps, &used);
        if (used != steps.size() || s < 1)
            throw std::invalid_argument(steps);
        g.steps = static_cast<std::size_t>(s);
        if (!(g.lo <= g.hi))
            throw UsageError("--grid needs lo <= hi");
        return g;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("--grid expects lo:hi:steps, got '" + text + "'");
    }
}

} // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Pairwise-distance entropy estimates and bounds for mixture distributions", "mixent"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "mixent 0.1.0");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Print every estimator for a mixture specification file");
    std::string spec_path;
    std::optional<std::size_t> mc_samples;
    std::uint64_t seed = 1;
    estimate->add_option("--spec", spec_path, "Mixture specification (JSON)")->required()->check(CLI::ExistingFile);
    estimate->add_option("--mc", mc_samples, "Monte Carlo sample count (omit to skip)");
    estimate->add_option("--seed", seed, "Random seed for Monte Carlo");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run an experiment sweep and emit CSV (and optionally SVG)");
    std::string experiment;
    SweepConfig cfg;
    std::string grid_text;
    std::string csv_path;
    std::string svg_path;
    sweep->add_option("--experiment", experiment, "Experiment id")
        ->required()
        ->check(CLI::IsMember({"g1", "g2", "g3", "g4", "u1", "u2", "u3", "u4"}));
    sweep->add_option("--n", cfg.components, "Components per mixture")->check(CLI::PositiveNumber);
    sweep->add_option("--dim", cfg.dim, "Dimension (ignored by g4/u4)")->check(CLI::PositiveNumber);
    sweep->add_option("--clusters", cfg.clusters, "Cluster count for g3/u3")->check(CLI::PositiveNumber);
    sweep->add_option("--grid", grid_text, "lo:hi:steps in reported units (ln sigma, ln n, or d)");
    sweep->add_option("--mc", cfg.mc_samples, "Monte Carlo samples per grid point (0 disables)");
    sweep->add_option("--seed", cfg.seed, "Master seed");
    sweep->add_option("--sigma", cfg.sigma, "Spread for the dimension sweeps")->check(CLI::PositiveNumber);
    sweep->add_flag("--equal-clusters", cfg.equal_clusters, "Assign components to clusters round-robin");
    sweep->add_option("--out", csv_path, "CSV output path (stdout when omitted)");
    sweep->add_option("--plot", svg_path, "SVG output path");

    // mi
    auto* mi = app.add_subcommand("mi", "Bound the mutual information across an additive Gaussian noise channel");
    std::string noise_path;
    double alpha = 0.5;
    std::optional<std::size_t> mi_mc;
    mi->add_option("--spec", spec_path, "Gaussian input mixture (JSON)")->required()->check(CLI::ExistingFile);
    mi->add_option("--noise", noise_path, "Noise covariance file (JSON {\"cov\": ...})")
        ->required()
        ->check(CLI::ExistingFile);
    mi->add_option("--alpha", alpha, "Chernoff order for the lower bound");
    mi->add_option("--mc", mi_mc, "Also report a Monte Carlo MI estimate with this many samples");
    mi->add_option("--seed", seed, "Random seed for Monte Carlo");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << "mixent 0.1.0\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (estimate->parsed()) {
            const MixtureModel mix = load_mixture_spec(spec_path);
            const EstimateReport report = estimate_all(mix, mc_samples, seed);
            for (const auto& e : report.entries()) {
                out << e.name << " = " << num(e.value);
                if (e.std_error)
                    out << " (stderr " << num(*e.std_error) << ")";
                out << "\n";
            }
            out << "bias_bound = " << num(bias_bound(mix)) << "\n";
            return 0;
        }
        if (sweep->parsed()) {
            cfg.experiment = *parse_experiment(experiment);
            if (!grid_text.empty())
                cfg.grid = parse_grid(grid_text);
            if (cfg.clusters > cfg.components)
                throw UsageError("--clusters must not exceed --n");
            const auto rows = run_sweep(cfg);
            if (csv_path.empty())
                out << format_csv(rows);
            else
                write_csv(rows, csv_path);
            if (!svg_path.empty())
                render_svg(rows, svg_path);
            return 0;
        }
        if (mi->parsed()) {
            const MixtureModel input = load_mixture_spec(spec_path);
            const AwgnChannel channel = load_noise_spec(noise_path);
            const MiBounds b = mi_bounds(input, channel, alpha);
            out << "MI_lower = " << num(b.lower) << "\n";
            out << "MI_upper = " << num(b.upper) << "\n";
            if (mi_mc) {
                const McResult r = mc_entropy(awgn_push(input, channel), *mi_mc, seed);
                out << "MI_MC = " << num(r.estimate - channel_conditional_entropy(channel)) << " (stderr "
                    << num(r.std_error) << ")\n";
            }
            return 0;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace mixent
