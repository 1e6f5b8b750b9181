// wpshift: scenario-driven front end for the redshifted-wavepacket library.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "wavepacket/analytic.hpp"
#include "wavepacket/coefficients.hpp"
#include "wavepacket/optimize.hpp"
#include "wavepacket/overlap.hpp"
#include "wavepacket/quadrature.hpp"
#include "wavepacket/scenario.hpp"
#include "wavepacket/spacetime.hpp"
#include "wavepacket/states.hpp"
#include "wavepacket/validation.hpp"

namespace wp = wavepacket;
using wp::cli::format_double;

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailed = 1;
constexpr int kConfigError = 2;
constexpr int kNonConvergence = 3;

struct Common {
    std::string config;
    std::string preset;
    std::optional<double> chi;
    std::string out;
    int workers = 1;
    double tolerance = 1e-10;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "Scenario file");
    cmd->add_option("--preset", c.preset, "Built-in scenario (earth-leo, earth-geo, earth-surface-lab, desk-scale)");
    cmd->add_option("--chi", c.chi, "Override the redshift factor");
    cmd->add_option("--out", c.out, "Write CSV here instead of stdout");
    cmd->add_option("--workers", c.workers, "Concurrent sweep points")->check(CLI::PositiveNumber);
    cmd->add_option("--tolerance", c.tolerance, "Optimizer tolerance on z̄")->check(CLI::PositiveNumber);
}

wp::cli::Scenario load(const Common& c) {
    if (!c.config.empty() && !c.preset.empty()) throw wp::cli::ConfigError("give --config or --preset, not both");
    wp::cli::Scenario s = !c.config.empty()   ? wp::cli::load_scenario_file(c.config)
                          : !c.preset.empty() ? wp::cli::load_preset(c.preset)
                                              : wp::cli::parse_scenario("spacetime.chi = 1\n");
    if (c.chi) {
        s.geometry.reset();
        s.chi_override = *c.chi;
    }
    s.validate();
    return s;
}

wp::OptimizeOptions options(const Common& c) {
    wp::OptimizeOptions o;
    o.tolerance = c.tolerance;
    o.workers = c.workers;
    return o;
}

void line(const std::string& key, double v) { std::cout << key << " = " << format_double(v) << '\n'; }

void write_csv(const Common& c, const std::vector<wp::cli::SweepRow>& rows) {
    std::ostringstream o;
    o << wp::cli::csv_header() << '\n';
    for (const auto& r : rows) o << wp::cli::csv_row(r) << '\n';
    if (c.out.empty()) {
        std::cout << o.str();
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw wp::cli::ConfigError("cannot write " + c.out);
    f << o.str();
}

int cmd_redshift(const Common& c) {
    const auto s = load(c);
    const double chi = s.chi();
    double d1 = chi - 1.0, d2 = 0.0;
    if (s.geometry) {
        const auto rf = wp::spacetime::redshift(*s.geometry);
        d1 = rf.delta1;
        d2 = rf.delta2;
        line("r_a_m", s.geometry->r_a);
        line("r_b_m", s.geometry->r_b);
        line("r_s_m", s.geometry->r_s);
    }
    const double k = wp::spacetime::kappa(chi);
    line("chi", chi);
    line("chi_minus_1", s.geometry ? static_cast<double>(wp::spacetime::redshift_factor_ld(*s.geometry) - 1.0L) : chi - 1.0);
    line("delta1", d1);
    line("delta2", d2);
    if (s.geometry && std::isfinite(s.geometry->r_b)) {
        try {
            const auto n = wp::spacetime::delta_near_limit(s.geometry->r_a, s.geometry->r_b - s.geometry->r_a,
                                                           s.geometry->r_s, 0.1);
            line("delta1_near_limit", n.delta1);
            line("delta2_near_limit", n.delta2);
        } catch (const wp::spacetime::ValidityError&) {
        }
    }
    // κ = (χ²−1)/χ² ≈ 2δ₁; the long-double form keeps digits when χ−1 ~ 1e-10.
    const double kappa_precise = s.geometry ? [&] {
        const long double x = wp::spacetime::redshift_factor_ld(*s.geometry);
        return static_cast<double>((x * x - 1.0L) / (x * x));
    }()
                                            : k;
    line("kappa", kappa_precise);
    line("kappa_omega0_rad_s", kappa_precise * s.frame.omega0);
    line("kappa_sigma_rad_s", kappa_precise * s.frame.sigma);
    line("omega0_rad_s", s.frame.omega0);
    return kOk;
}

int cmd_overlap(const Common& c, double z_bar) {
    const auto s = load(c);
    const auto p = s.profile();
    const auto r = wp::overlaps(p, s.chi(), z_bar);
    line("chi", s.chi());
    line("z_bar", z_bar);
    line("delta_p", r.delta_p);
    line("delta_m", r.delta_m);
    line("lambda_re", r.lambda_p.real());
    line("lambda_im", r.lambda_p.imag());
    return kOk;
}

int cmd_optimize(const Common& c) {
    auto s = load(c);
    s.sweep.reset();
    const auto row = wp::cli::evaluate_point(s, 0.0, options(c));
    line("chi", row.chi);
    line("delta1", row.delta1);
    line("z_bar_opt", row.z_bar_opt);
    line("delta_omega_opt_rad_s", row.delta_omega_opt);
    line("delta_p_opt", row.delta_p_opt);
    line("delta_m_opt", row.delta_m_opt);
    line("eta", row.eta);
    line("naive_delta_p", row.naive_delta_p);
    std::cout << "n_evals = " << row.n_evals << '\n';

    const double chi = row.chi;
    std::optional<wp::analytic::OptimalOverlaps> an;
    if (s.kind == wp::ProfileKind::GaussianLinear) an = wp::analytic::gaussian_linear_optimal(chi, s.phi_tilde);
    if (s.kind == wp::ProfileKind::GaussianQuadratic)
        an = wp::analytic::gaussian_quadratic_optimal(chi, s.phi_tilde, s.z0);
    if (an && s.photons.kind == wp::multiphoton::StatisticsKind::Fock && s.photons.n_mean == 1.0) {
        line("analytic_z_bar_opt", an->z_bar_opt);
        line("analytic_delta_p_opt", an->delta_p_opt);
        line("analytic_delta_m_opt", an->delta_m_opt);
        line("gap_delta_p", row.delta_p_opt - an->delta_p_opt);
        line("gap_delta_m", row.delta_m_opt - an->delta_m_opt);
    }
    if (row.flat_objective)
        std::cerr << "warning: objective is flat to double precision at this χ; "
                     "overlaps are 1 to round-off (use --chi for a resolvable desk-scale run)\n";
    if (!c.out.empty()) write_csv(c, {row});
    return row.converged ? kOk : kNonConvergence;
}

int cmd_sweep(const Common& c) {
    const auto s = load(c);
    const auto rows = wp::cli::run_sweep(s, options(c), c.workers);
    write_csv(c, rows);
    bool flat = false, converged = true;
    for (const auto& r : rows) flat |= r.flat_objective, converged &= r.converged;
    if (flat) std::cerr << "warning: flat objective at one or more points (use --chi for desk-scale runs)\n";
    return converged ? kOk : kNonConvergence;
}

int cmd_purity(const Common& c) {
    const auto s = load(c);
    const auto p = s.profile();
    const double chi = s.chi();
    wp::states::FrequencyGrid grid;
    try {
        grid = wp::states::FrequencyGrid::centered(s.states_bins, s.states_lambda);
    } catch (const std::exception& e) {
        throw wp::cli::ConfigError(std::string("states: ") + e.what());
    }
    const auto rx_grid = grid.receiver_frame(chi);
    const auto pure = wp::states::pure_state(p, grid);
    const auto mixed = wp::states::mixed_state(p, grid);
    const auto pure_rx = wp::states::apply_redshift(pure, chi, rx_grid);
    const auto mixed_rx = wp::states::apply_redshift(mixed, chi, rx_grid);
    line("chi", chi);
    line("lambda", s.states_lambda);
    std::cout << "n_bins = " << s.states_bins << '\n';
    line("purity_pure_sent", wp::states::purity(pure));
    line("purity_pure_received", wp::states::purity(pure_rx));
    line("purity_mixed_sent", wp::states::purity(mixed));
    line("purity_mixed_received", wp::states::purity(mixed_rx));
    const auto pure_fixed = wp::states::apply_redshift(pure, chi, grid);
    const auto mixed_fixed = wp::states::apply_redshift(mixed, chi, grid);
    line("fidelity_pure", wp::states::fidelity(pure, pure_fixed));
    line("fidelity_mixed", wp::states::fidelity(mixed, mixed_fixed));
    return kOk;
}

int cmd_validate(const std::string& level, bool strict, const std::string& perturb, double perturb_by) {
    std::unique_ptr<wp::CoefficientOverride> fault;
    if (!perturb.empty()) {
        try {
            fault = std::make_unique<wp::CoefficientOverride>(perturb, perturb_by);
        } catch (const std::invalid_argument& e) {
            throw wp::cli::ConfigError(e.what());
        }
        std::cout << "perturbed " << perturb << " by " << format_double(perturb_by) << " (relative)\n";
    }
    const auto report = wp::validation::run(level == "full" ? wp::validation::Level::Full : wp::validation::Level::Fast);
    std::cout << report.format();
    const bool ok = report.passed(strict);
    std::cout << (ok ? "validation passed\n" : "validation FAILED\n");
    return ok ? kOk : kValidationFailed;
}

int cmd_dump(const Common& c) {
    const std::string text = wp::cli::dump_scenario(load(c));
    if (c.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(c.out);
        if (!f) throw wp::cli::ConfigError("cannot write " + c.out);
        f << text;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gravitational redshift of photon wavepackets: overlaps, optimal shifts, purity"};
    app.require_subcommand(1);

    Common c;
    double z_bar = 0.0;
    std::string level = "fast";
    bool strict = false;
    std::string perturb;
    double perturb_by = 1e-3;

    auto* redshift = app.add_subcommand("redshift", "χ, δ₁, δ₂, κ and κω₀ for a scenario");
    auto* overlap = app.add_subcommand("overlap", "Pure and mixed overlaps at a given z̄");
    auto* optimize = app.add_subcommand("optimize", "Optimal frequency shift and overlaps");
    auto* sweep = app.add_subcommand("sweep", "CSV over the scenario's sweep axis");
    auto* purity = app.add_subcommand("purity", "Discrete-state purity before and after the redshift");
    auto* validate = app.add_subcommand("validate", "Cross-validation battery");
    auto* dump = app.add_subcommand("dump-config", "Print the resolved scenario");
    for (auto* cmd : {redshift, overlap, optimize, sweep, purity, dump}) add_common(cmd, c);
    overlap->add_option("--z-bar", z_bar, "Compensating shift in units of σ");
    validate->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    validate->add_flag("--strict", strict, "Also fail on documented discrepancies in printed formulas");
    validate->add_option("--perturb", perturb, "Seed a fault into a named coefficient")->group("");
    validate->add_option("--perturb-by", perturb_by, "Relative size of the seeded fault")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*redshift) return cmd_redshift(c);
        if (*overlap) return cmd_overlap(c, z_bar);
        if (*optimize) return cmd_optimize(c);
        if (*sweep) return cmd_sweep(c);
        if (*purity) return cmd_purity(c);
        if (*validate) return cmd_validate(level, strict, perturb, perturb_by);
        if (*dump) return cmd_dump(c);
    } catch (const wp::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const wp::quadrature::NonConvergence& e) {
        std::cerr << "non-convergence: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kConfigError;
    }
    return kOk;
}
