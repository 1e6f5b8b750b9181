#include "wavepacket/coefficients.hpp"

#include <map>
#include <stdexcept>

namespace wavepacket {

namespace {

SpacetimeCoefficients g_spacetime;
ClosedFormCoefficients g_closed;

std::map<std::string, double*> registry() {
    return {
        {"spacetime.d1_a", &g_spacetime.d1_a},
        {"spacetime.d1_b", &g_spacetime.d1_b},
        {"spacetime.d2_aa", &g_spacetime.d2_aa},
        {"spacetime.d2_ab", &g_spacetime.d2_ab},
        {"spacetime.d2_bb", &g_spacetime.d2_bb},
        {"spacetime.n1", &g_spacetime.n1},
        {"spacetime.n2_l", &g_spacetime.n2_l},
        {"spacetime.n2_aa", &g_spacetime.n2_aa},
        {"closed.mixed_prefactor", &g_closed.mixed_prefactor},
        {"closed.zbar_quarter", &g_closed.zbar_quarter},
        {"closed.linear_penalty", &g_closed.linear_penalty},
        {"closed.xi_coeff", &g_closed.xi_coeff},
        {"closed.xi_power", &g_closed.xi_power},
        {"closed.quad_offset", &g_closed.quad_offset},
        {"closed.a1_rate", &g_closed.a1_rate},
        {"closed.a2_quarter", &g_closed.a2_quarter},
        {"closed.a2_coeff", &g_closed.a2_coeff},
        {"closed.zopt_coeff", &g_closed.zopt_coeff},
        {"closed.near_linear", &g_closed.near_linear},
        {"closed.near_quad_phi4", &g_closed.near_quad_phi4},
        {"closed.near_quad_z0", &g_closed.near_quad_z0},
        {"closed.near_quad_den", &g_closed.near_quad_den},
        {"closed.comb_norm_pi", &g_closed.comb_norm_pi},
        {"closed.coherent_rate", &g_closed.coherent_rate},
    };
}

}  // namespace

const SpacetimeCoefficients& active_spacetime() { return g_spacetime; }
const ClosedFormCoefficients& active_closed() { return g_closed; }

std::vector<std::string> coefficient_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
}

CoefficientOverride::CoefficientOverride(const std::string& name, double relative) {
    const auto reg = registry();
    const auto it = reg.find(name);
    if (it == reg.end()) throw std::invalid_argument("unknown coefficient: " + name);
    slot_ = it->second;
    saved_ = *slot_;
    *slot_ = saved_ * (1.0 + relative);
}

CoefficientOverride::~CoefficientOverride() { *slot_ = saved_; }

}  // namespace wavepacket
