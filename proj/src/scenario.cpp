#include "wavepacket/scenario.hpp"

#include "wavepacket/overlap.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <utility>

namespace wavepacket::cli {

namespace {

struct PresetEntry {
    const char* name;
    const char* text;
};

const PresetEntry kPresets[] = {
#include "presets.inc"
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& v) {
    double out = 0.0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    if (v == "inf" || v == "+inf") return INFINITY;
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) throw ConfigError("bad number for " + key + ": '" + v + "'");
    return out;
}

int parse_int(const std::string& key, const std::string& v) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError("bad integer for " + key + ": '" + v + "'");
    return out;
}

const char* const kSweepable[] = {"phi_tilde", "z0",    "sigma_tilde", "d_tilde",      "delta_z0",
                                  "chi",       "delta1", "n_mean",     "r_a_m",        "r_b_m",
                                  "r_s_m",     "omega0_rad_s",         "sigma_rad_s"};

}  // namespace

std::vector<double> SweepAxis::values() const {
    if (count < 1) throw ConfigError("sweep.count must be at least 1");
    if (count == 1) return {start};
    if (log_scale && !(start > 0.0 && stop > 0.0)) throw ConfigError("log sweep needs positive endpoints");
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        v[static_cast<std::size_t>(i)] =
            log_scale ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start))) : start + t * (stop - start);
    }
    v.back() = stop;
    return v;
}

void Scenario::validate() const {
    if (geometry.has_value() == chi_override.has_value())
        throw ConfigError("exactly one of spacetime radii or spacetime.chi must be given");
    if (geometry) {
        try {
            spacetime::check_config(*geometry);
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
    }
    if (chi_override && !(*chi_override > 0.0 && std::isfinite(*chi_override)))
        throw ConfigError("spacetime.chi must be positive");
    try {
        frame.validate();
        photons.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (sweep && !is_sweepable(sweep->param)) throw ConfigError("sweep.param names no parameter: " + sweep->param);
    if (sweep && sweep->count < 1) throw ConfigError("sweep.count must be at least 1");
    if (!(states_lambda > 0.0) || states_bins == 0) throw ConfigError("states.lambda and states.n_bins must be positive");
}

double Scenario::chi() const {
    if (chi_override) return *chi_override;
    if (geometry) return spacetime::redshift_factor(*geometry);
    return 1.0;
}

double Scenario::delta1() const {
    if (chi_override) return *chi_override - 1.0;
    if (!geometry) return 0.0;
    const auto r = spacetime::redshift(*geometry);
    return r.delta1 != 0.0 ? r.delta1 : r.chi - 1.0;
}

Profile Scenario::profile() const {
    try {
        switch (kind) {
            case ProfileKind::GaussianLinear: return gaussian_linear(phi_tilde);
            case ProfileKind::GaussianQuadratic: return gaussian_quadratic(phi_tilde, z0);
            case ProfileKind::CombLinear: return comb(sigma_tilde, d_tilde, phi_tilde, CombPhase::Linear);
            case ProfileKind::CombQuadratic:
                return comb(sigma_tilde, d_tilde, phi_tilde, CombPhase::Quadratic, delta_z0);
        }
    } catch (const std::exception& e) {
        throw ConfigError(std::string("profile: ") + e.what());
    }
    throw ConfigError("unknown profile kind");
}

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    spacetime::SpacetimeConfig g;
    bool have_ra = false, have_rb = false, have_rs = false;
    SweepAxis axis;
    bool have_sweep = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::map<std::string, int> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (seen[key]++) throw ConfigError("duplicate key " + key);

        if (key == "spacetime.r_a_m") g.r_a = parse_number(key, val), have_ra = true;
        else if (key == "spacetime.r_b_m") g.r_b = parse_number(key, val), have_rb = true;
        else if (key == "spacetime.r_s_m") g.r_s = parse_number(key, val), have_rs = true;
        else if (key == "spacetime.chi") s.chi_override = parse_number(key, val);
        else if (key == "spacetime.delta1") s.chi_override = 1.0 + parse_number(key, val);
        else if (key == "frame.omega0_rad_s") s.frame.omega0 = parse_number(key, val);
        else if (key == "frame.sigma_rad_s") s.frame.sigma = parse_number(key, val);
        else if (key == "profile.kind") {
            try {
                s.kind = profile_kind_from_string(val);
            } catch (const std::exception& e) {
                throw ConfigError(e.what());
            }
        }
        else if (key == "profile.phi_tilde") s.phi_tilde = parse_number(key, val);
        else if (key == "profile.z0") s.z0 = parse_number(key, val);
        else if (key == "profile.sigma_tilde") s.sigma_tilde = parse_number(key, val);
        else if (key == "profile.d_tilde") s.d_tilde = parse_number(key, val);
        else if (key == "profile.delta_z0") s.delta_z0 = parse_number(key, val);
        else if (key == "photons.kind") {
            try {
                s.photons.kind = multiphoton::statistics_from_string(val);
            } catch (const std::exception& e) {
                throw ConfigError(e.what());
            }
        }
        else if (key == "photons.n_mean") s.photons.n_mean = parse_number(key, val);
        else if (key == "sweep.param") axis.param = val, have_sweep = true;
        else if (key == "sweep.start") axis.start = parse_number(key, val), have_sweep = true;
        else if (key == "sweep.stop") axis.stop = parse_number(key, val), have_sweep = true;
        else if (key == "sweep.count") axis.count = parse_int(key, val), have_sweep = true;
        else if (key == "sweep.scale") {
            if (val == "log") axis.log_scale = true;
            else if (val == "linear") axis.log_scale = false;
            else throw ConfigError("sweep.scale must be linear or log");
            have_sweep = true;
        }
        else if (key == "states.lambda") s.states_lambda = parse_number(key, val);
        else if (key == "states.n_bins") {
            const int n = parse_int(key, val);
            if (n <= 0) throw ConfigError("states.n_bins must be positive");
            s.states_bins = static_cast<std::size_t>(n);
        }
        else throw ConfigError("unknown key " + key);
    }
    if (have_ra || have_rb || have_rs) {
        if (!(have_ra && have_rb)) throw ConfigError("spacetime needs both r_a_m and r_b_m");
        s.geometry = g;
    }
    if (have_sweep) {
        if (axis.param.empty()) throw ConfigError("sweep.param missing");
        if (axis.count == 1 && axis.stop == 0.0) axis.stop = axis.start;
        s.sweep = axis;
    }
    s.validate();
    return s;
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string dump_scenario(const Scenario& s) {
    std::ostringstream o;
    auto kv = [&](const char* k, const std::string& v) { o << k << " = " << v << '\n'; };
    if (s.geometry) {
        kv("spacetime.r_a_m", format_double(s.geometry->r_a));
        kv("spacetime.r_b_m", format_double(s.geometry->r_b));
        kv("spacetime.r_s_m", format_double(s.geometry->r_s));
    }
    if (s.chi_override) kv("spacetime.chi", format_double(*s.chi_override));
    kv("frame.omega0_rad_s", format_double(s.frame.omega0));
    kv("frame.sigma_rad_s", format_double(s.frame.sigma));
    kv("profile.kind", to_string(s.kind));
    kv("profile.phi_tilde", format_double(s.phi_tilde));
    kv("profile.z0", format_double(s.z0));
    kv("profile.sigma_tilde", format_double(s.sigma_tilde));
    kv("profile.d_tilde", format_double(s.d_tilde));
    kv("profile.delta_z0", format_double(s.delta_z0));
    kv("photons.kind", multiphoton::to_string(s.photons.kind));
    kv("photons.n_mean", format_double(s.photons.n_mean));
    if (s.sweep) {
        kv("sweep.param", s.sweep->param);
        kv("sweep.start", format_double(s.sweep->start));
        kv("sweep.stop", format_double(s.sweep->stop));
        kv("sweep.count", std::to_string(s.sweep->count));
        kv("sweep.scale", s.sweep->log_scale ? "log" : "linear");
    }
    kv("states.lambda", format_double(s.states_lambda));
    kv("states.n_bins", std::to_string(s.states_bins));
    return o.str();
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str());
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& p : kPresets) out.emplace_back(p.name);
    return out;
}

std::string preset_text(const std::string& name) {
    for (const auto& p : kPresets)
        if (name == p.name) return p.text;
    std::string known;
    for (const auto& p : kPresets) known += std::string(known.empty() ? "" : ", ") + p.name;
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
}

Scenario load_preset(const std::string& name) { return parse_scenario(preset_text(name)); }

bool is_sweepable(const std::string& name) {
    for (const char* k : kSweepable)
        if (name == k) return true;
    return false;
}

void set_parameter(Scenario& s, const std::string& name, double value) {
    auto need_geometry = [&]() -> spacetime::SpacetimeConfig& {
        if (!s.geometry) throw ConfigError("sweeping " + name + " needs spacetime radii");
        return *s.geometry;
    };
    if (name == "phi_tilde") s.phi_tilde = value;
    else if (name == "z0") s.z0 = value;
    else if (name == "sigma_tilde") s.sigma_tilde = value;
    else if (name == "d_tilde") s.d_tilde = value;
    else if (name == "delta_z0") s.delta_z0 = value;
    else if (name == "chi") s.geometry.reset(), s.chi_override = value;
    else if (name == "delta1") s.geometry.reset(), s.chi_override = 1.0 + value;
    else if (name == "n_mean") s.photons.n_mean = value;
    else if (name == "r_a_m") need_geometry().r_a = value;
    else if (name == "r_b_m") need_geometry().r_b = value;
    else if (name == "r_s_m") need_geometry().r_s = value;
    else if (name == "omega0_rad_s") s.frame.omega0 = value;
    else if (name == "sigma_rad_s") s.frame.sigma = value;
    else throw ConfigError("unknown sweep parameter " + name);
}

std::string csv_header() {
    return "param,chi,delta1,z_bar_opt,delta_omega_opt_rad_s,delta_p_opt,delta_m_opt,eta,naive_delta_p,n_evals";
}

std::string csv_row(const SweepRow& r) {
    std::ostringstream o;
    o << format_double(r.param) << ',' << format_double(r.chi) << ',' << format_double(r.delta1) << ','
      << format_double(r.z_bar_opt) << ',' << format_double(r.delta_omega_opt) << ',' << format_double(r.delta_p_opt)
      << ',' << format_double(r.delta_m_opt) << ',' << format_double(r.eta) << ',' << format_double(r.naive_delta_p)
      << ',' << r.n_evals;
    return o.str();
}

SweepRow evaluate_point(const Scenario& s, double param, const OptimizeOptions& opt) {
    s.validate();
    const Profile p = s.profile();
    const double chi = s.chi();

    const auto pure = maximize_shift(p, chi, Which::Pure, s.frame, opt);
    const auto mixed = maximize_shift(p, chi, Which::Mixed, s.frame, opt);
    const auto naive = overlaps(p, chi, 0.0, opt.quad);

    const auto best = multiphoton::apply(s.photons, pure.lambda_p_opt, mixed.delta_m_opt);
    const auto at_zero = multiphoton::apply(s.photons, naive.lambda_p, naive.delta_m);

    SweepRow r;
    r.param = param;
    r.chi = chi;
    r.delta1 = s.delta1();
    r.z_bar_opt = pure.z_bar_opt;
    r.delta_omega_opt = pure.delta_omega_opt;
    r.delta_p_opt = best.delta_p;
    r.delta_m_opt = best.delta_m;
    r.eta = best.delta_p / best.delta_m - 1.0;
    r.naive_delta_p = at_zero.delta_p;
    r.n_evals = pure.n_evals + mixed.n_evals;
    r.flat_objective = pure.flat_objective || mixed.flat_objective;
    r.converged = pure.converged && mixed.converged;
    return r;
}

std::vector<SweepRow> run_sweep(const Scenario& s, const OptimizeOptions& opt, int workers) {
    s.validate();
    std::vector<double> values;
    std::string name;
    if (s.sweep) {
        values = s.sweep->values();
        name = s.sweep->param;
    } else {
        values = {0.0};
    }

    std::vector<Scenario> points;
    points.reserve(values.size());
    for (double v : values) {
        Scenario p = s;
        p.sweep.reset();
        if (!name.empty()) set_parameter(p, name, v);
        p.validate();
        points.push_back(std::move(p));
    }

    OptimizeOptions inner = opt;
    inner.workers = 1;
    std::vector<SweepRow> rows(points.size());
    const std::size_t w = static_cast<std::size_t>(std::max(1, workers));
    for (std::size_t begin = 0; begin < points.size(); begin += w) {
        const std::size_t end = std::min(points.size(), begin + w);
        std::vector<std::future<SweepRow>> jobs;
        for (std::size_t i = begin; i < end; ++i)
            jobs.push_back(std::async(w > 1 ? std::launch::async : std::launch::deferred,
                                      [&, i] { return evaluate_point(points[i], values[i], inner); }));
        for (std::size_t i = begin; i < end; ++i) rows[i] = jobs[i - begin].get();
    }
    return rows;
}

}  // namespace wavepacket::cli
