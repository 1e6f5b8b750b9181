#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavepacket/multiphoton.hpp"
#include "wavepacket/optimize.hpp"
#include "wavepacket/profiles.hpp"
#include "wavepacket/spacetime.hpp"

// Flat key = value scenario files with dotted section names.

namespace wavepacket::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepAxis {
    std::string param;
    double start = 0.0;
    double stop = 0.0;
    int count = 1;
    bool log_scale = false;

    [[nodiscard]] std::vector<double> values() const;
};

struct Scenario {
    std::optional<spacetime::SpacetimeConfig> geometry;
    std::optional<double> chi_override;
    DimensionfulFrame frame;
    ProfileKind kind = ProfileKind::GaussianLinear;
    double phi_tilde = 0.0;
    double z0 = 0.0;
    double sigma_tilde = 10.0;
    double d_tilde = 2.0;
    double delta_z0 = 0.0;
    multiphoton::PhotonStatistics photons;
    std::optional<SweepAxis> sweep;
    double states_lambda = 0.01;
    std::size_t states_bins = 2048;

    /// Throws ConfigError if the invariants do not hold.
    void validate() const;
    [[nodiscard]] double chi() const;
    /// Expansion δ₁ for a geometry, χ − 1 for an override.
    [[nodiscard]] double delta1() const;
    [[nodiscard]] Profile profile() const;
};

[[nodiscard]] Scenario parse_scenario(const std::string& text);
[[nodiscard]] std::string dump_scenario(const Scenario& s);
[[nodiscard]] Scenario load_scenario_file(const std::string& path);
[[nodiscard]] Scenario load_preset(const std::string& name);
[[nodiscard]] std::vector<std::string> preset_names();
[[nodiscard]] std::string preset_text(const std::string& name);

/// Sets a sweepable parameter by short name (phi_tilde, chi, delta1, n_mean, ...).
void set_parameter(Scenario& s, const std::string& name, double value);
[[nodiscard]] bool is_sweepable(const std::string& name);

/// 17 significant digits.
[[nodiscard]] std::string format_double(double v);

struct SweepRow {
    double param = 0.0;
    double chi = 1.0;
    double delta1 = 0.0;
    double z_bar_opt = 0.0;
    double delta_omega_opt = 0.0;
    double delta_p_opt = 1.0;
    double delta_m_opt = 1.0;
    double eta = 0.0;
    double naive_delta_p = 1.0;
    std::size_t n_evals = 0;
    bool flat_objective = false;
    bool converged = true;
};

[[nodiscard]] std::string csv_header();
[[nodiscard]] std::string csv_row(const SweepRow& r);

/// Optimizes both overlaps for one scenario and applies the photon statistics.
[[nodiscard]] SweepRow evaluate_point(const Scenario& s, double param, const OptimizeOptions& opt);

/// Rows in axis order; points evaluated on up to `workers` threads.
[[nodiscard]] std::vector<SweepRow> run_sweep(const Scenario& s, const OptimizeOptions& opt, int workers);

}  // namespace wavepacket::cli
