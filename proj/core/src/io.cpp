#include "gjsoq/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gjsoq/version.hpp"
#include "json.hpp"

namespace gjsoq {

using json = nlohmann::json;

namespace {

json params_obj(const SystemParams& p) {
    return {{"lambda0", p.lambda0}, {"lambda1", p.lambda1}, {"lambda2", p.lambda2},
            {"mu", p.mu},           {"alpha1", p.alpha1},   {"alpha2", p.alpha2}};
}

json provenance_obj(const Provenance& prov) {
    json overrides = json::object();
    for (const auto& [k, v] : prov.overrides) overrides[k] = v;
    return {{"tool", "gjsoq"},
            {"version", kVersion},
            {"command_line", prov.command_line},
            {"parameter_source", prov.parameter_source},
            {"parameters", params_obj(prov.params)},
            {"overrides", overrides}};
}

json rates_obj(const DerivedRates& d) {
    return {{"lambda", d.lambda},
            {"lambda_hat", d.lambda_hat},
            {"lambda_hat_0", d.lambda_hat_k[0]},
            {"lambda_hat_1", d.lambda_hat_k[1]},
            {"lambda_hat_2", d.lambda_hat_k[2]},
            {"mu_hat_1", d.mu_hat_1},
            {"mu_hat_2", d.mu_hat_2},
            {"rho", d.rho},
            {"rho1", d.rho1},
            {"rho2", d.rho2},
            {"gamma1", d.gamma1},
            {"gamma2", d.gamma2}};
}

json drift_obj(const Drift& d) { return {{"mi", d.mi}, {"mj", d.mj}}; }

json summary_obj(const TrajectorySummary& s) {
    auto est = [](const BatchEstimate& e) { return json{{"mean", e.mean}, {"std_error", e.std_error}}; };
    return {{"mean_n1", s.mean_n1},
            {"mean_n2", s.mean_n2},
            {"mean_abs_diff", s.mean_abs_diff},
            {"busy_fraction", est(s.busy)},
            {"mean_min_orbit", est(s.min_orbit)},
            {"mean_total_orbit", est(s.total)},
            {"total_avg_half_horizon", s.total_avg_half},
            {"total_avg_full_horizon", s.total_avg_full},
            {"events", s.events},
            {"event_rate", s.event_rate}};
}

double number_field(const json& j, const char* key) {
    if (!j.contains(key)) throw InputError(std::string("parameter '") + key + "' is missing");
    const json& v = j.at(key);
    if (!v.is_number()) throw InputError(std::string("parameter '") + key + "' must be a number");
    return v.get<double>();
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

SystemParams params_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed parameter JSON: ") + e.what());
    }
    if (!j.is_object()) throw InputError("parameter JSON must be an object");
    return {number_field(j, "lambda0"), number_field(j, "lambda1"), number_field(j, "lambda2"),
            number_field(j, "mu"),      number_field(j, "alpha1"),  number_field(j, "alpha2")};
}

SystemParams params_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open parameter file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return params_from_json(ss.str());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string params_json(const SystemParams& p) { return params_obj(p).dump(); }

std::string stability_json(const StabilityReport& r, const Provenance& prov) {
    json j;
    j["provenance"] = provenance_obj(prov);
    j["rates"] = rates_obj(r.rates);
    j["drifts"] = {{"r1", drift_obj(r.drifts.r1)}, {"r2", drift_obj(r.drifts.r2)},
                   {"h", drift_obj(r.drifts.h)},   {"v", drift_obj(r.drifts.v)},
                   {"d", drift_obj(r.drifts.d)}};
    j["criterion1"] = r.criterion1;
    j["criterion2"] = r.criterion2;
    j["criterion3"] = r.criterion3;
    j["f1"] = r.f1;
    j["f2"] = r.f2;
    j["stable"] = r.stable;
    j["strongly_pooled"] = r.strongly_pooled;
    j["pooled_margin"] = r.pooled_margin;
    j["strongly_balanced"] = r.strongly_balanced;
    j["caveat"] = r.caveat;
    return j.dump(2);
}

std::string decay_json(const DecayProfile& d, const Provenance& prov) {
    json j;
    j["provenance"] = provenance_obj(prov);
    j["rates"] = rates_obj(d.rates);
    j["z_star"] = d.z_star;
    j["decay_rate"] = d.decay_rate;
    j["eta_min"] = d.roots.eta_min;
    j["eta_max"] = d.roots.eta_max;
    j["theta_min"] = d.roots.theta_min;
    j["theta_max"] = d.roots.theta_max;
    j["x0"] = d.x0;
    j["ratio_neg"] = d.ratio_neg;
    j["ratio_pos"] = d.ratio_pos;
    j["prefactor_neg"] = d.prefactor_neg;
    j["prefactor_pos"] = d.prefactor_pos;
    j["strongly_balanced"] = d.strongly_balanced;
    j["loads_dominated"] = d.loads_dominated;
    j["branch_residuals"] = d.branch_residuals;
    if (d.strongly_balanced)
        j["marginal_sum"] = {{"value", marginal_sum(d)}, {"status", "conjectural"}};
    else
        j["marginal_sum"] = {{"value", nullptr}, {"status", "refused: not strongly balanced"}};
    return j.dump(2);
}

std::string oracle_json(const TruncatedSolution& s, const Provenance& prov) {
    json j;
    j["provenance"] = provenance_obj(prov);
    j["n_max"] = s.n_max;
    j["total_probability"] = s.total();
    j["residual_norm"] = s.residual_norm;
    j["boundary_mass"] = s.mass_at_boundary;
    j["busy_fraction"] = s.busy_fraction();
    j["mean_min_orbit"] = s.mean_min();
    j["warnings"] = s.warnings;
    return j.dump(2);
}

std::string simulation_json(const Trajectory& t, const Provenance& prov) {
    json j;
    j["provenance"] = provenance_obj(prov);
    j["rng"] = t.rng_algorithm;
    j["seed"] = t.seed;
    j["summary"] = summary_obj(t.summary);
    j["final_state"] = {{"t", t.final_state.t},
                        {"n1", t.final_state.n1},
                        {"n2", t.final_state.n2},
                        {"busy", t.final_state.busy}};
    return j.dump(2);
}

std::string regime_json(const RegimeDemo& d, const Provenance& prov) {
    json j = json::parse(simulation_json(d.trajectory, prov));
    j["scenario"] = std::string(scenario_name(d.scenario));
    j["expected_stable"] = scenario_expected_stable(d.scenario);
    j["annotation"] = d.annotation;
    j["growth_ratio"] = d.growth_ratio;
    j["stability"] = json::parse(stability_json(d.report, prov)).at("stable");
    return j.dump(2);
}

void write_provenance_comment(std::ostream& os, const Provenance& prov) {
    os << "# tool: gjsoq " << kVersion << '\n';
    os << "# command: " << prov.command_line << '\n';
    os << "# parameter_source: " << prov.parameter_source << '\n';
    os << "# parameters: " << params_json(prov.params) << '\n';
    if (!prov.overrides.empty()) {
        os << "# overrides:";
        for (const auto& [k, v] : prov.overrides) os << ' ' << k << '=' << format_double(v);
        os << '\n';
    }
}

void write_kernel_csv(std::ostream& os, const CensoredKernel& k, const HalfPlaneKernel& h) {
    os << "region,di,dj,probability\n";
    for (Region r : kAllRegions)
        for (const auto& e : k.at(r))
            os << region_name(r) << ',' << e.di << ',' << e.dj << ',' << format_double(e.probability)
               << '\n';
    // Half-plane zones use (dm, dl) in the di, dj columns.
    for (Zone z : kAllZones)
        for (const auto& e : h.at(z))
            os << "halfplane" << zone_name(z) << ',' << e.dm << ',' << e.dl << ','
               << format_double(e.probability) << '\n';
}

void write_tail_csv(std::ostream& os, const DecayProfile& d, int m_max, int l_min, int l_max) {
    os << "m,l,server,value\n";
    for (int m = 0; m <= m_max; ++m)
        for (int l = l_min; l <= l_max; ++l)
            for (int k = 0; k <= 1; ++k)
                os << m << ',' << l << ',' << k << ',' << format_double(tail_evaluate(d, m, l, k))
                   << '\n';
}

void write_grid_csv(std::ostream& os, const std::vector<GridCell>& cells) {
    os << "i,j,server,value,regime_tag\n";
    for (const auto& c : cells)
        os << c.i << ',' << c.j << ',' << c.server << ',' << format_double(c.value) << ','
           << c.regime_tag << '\n';
}

void write_ratio_csv(std::ostream& os, const std::vector<std::pair<int, double>>& curve) {
    os << "k,ratio\n";
    for (const auto& [k, r] : curve) os << k << ',' << format_double(r) << '\n';
}

void write_solution_csv(std::ostream& os, const TruncatedSolution& s) {
    os << "i,j,k,probability\n";
    for (int i = 0; i <= s.n_max; ++i)
        for (int j = 0; j <= s.n_max; ++j)
            for (int k = 0; k <= 1; ++k)
                os << i << ',' << j << ',' << k << ',' << format_double(s.p(i, j, k)) << '\n';
}

void write_reference_csv(std::ostream& os, const std::vector<LevelProbability>& levels) {
    os << "n,idle_prob,busy_prob\n";
    for (const auto& l : levels)
        os << l.n << ',' << format_double(l.idle) << ',' << format_double(l.busy) << '\n';
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
    os << "t,n1,n2,busy\n";
    for (const auto& s : t.samples)
        os << format_double(s.t) << ',' << s.n1 << ',' << s.n2 << ',' << (s.busy ? 1 : 0) << '\n';
}

}  // namespace gjsoq
