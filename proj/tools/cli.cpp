#include "cli.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <gjsoq/gjsoq.hpp>

#include "CLI11.hpp"
#include "json.hpp"
#include "validate.hpp"

namespace gjsoq::cli {

namespace {

using json = nlohmann::json;

constexpr std::array<const char*, 6> kParamKeys{"lambda0", "lambda1", "lambda2",
                                                "mu",      "alpha1",  "alpha2"};

double& field(SystemParams& p, size_t k) {
    switch (k) {
        case 0: return p.lambda0;
        case 1: return p.lambda1;
        case 2: return p.lambda2;
        case 3: return p.mu;
        case 4: return p.alpha1;
        default: return p.alpha2;
    }
}

struct ParamOptions {
    std::string file;
    std::array<std::optional<double>, 6> inline_values;
};

void add_param_options(CLI::App* sub, ParamOptions& po) {
    sub->add_option("--params", po.file, "JSON file with lambda0..alpha2");
    for (size_t k = 0; k < kParamKeys.size(); ++k)
        sub->add_option(std::string("--") + kParamKeys[k], po.inline_values[k],
                        std::string("override ") + kParamKeys[k]);
}

// File (or fallback preset) first, then inline flags on top.
SystemParams resolve_params(const ParamOptions& po, const std::optional<SystemParams>& fallback,
                            const std::string& fallback_name, Provenance& prov) {
    SystemParams p;
    const bool all_inline = std::all_of(po.inline_values.begin(), po.inline_values.end(),
                                        [](const auto& v) { return v.has_value(); });
    bool base_from_file_or_preset = true;
    if (!po.file.empty()) {
        p = params_from_json_file(po.file);
        prov.parameter_source = po.file;
    } else if (fallback) {
        p = *fallback;
        prov.parameter_source = fallback_name;
    } else if (all_inline) {
        prov.parameter_source = "inline";
        base_from_file_or_preset = false;
    } else {
        std::string missing;
        for (size_t k = 0; k < kParamKeys.size(); ++k)
            if (!po.inline_values[k]) missing += std::string(" --") + kParamKeys[k];
        throw InputError("no parameter source: give --params FILE or all inline rates (missing" +
                         missing + ")");
    }
    for (size_t k = 0; k < kParamKeys.size(); ++k) {
        if (!po.inline_values[k]) continue;
        field(p, k) = *po.inline_values[k];
        if (base_from_file_or_preset) prov.overrides.emplace_back(kParamKeys[k], *po.inline_values[k]);
    }
    prov.params = p;
    return p;
}

void emit(const std::string& path, const std::function<void(std::ostream&)>& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write output file '" + path + "'");
    write(out);
    if (!out) throw InputError("failed while writing '" + path + "'");
}

void emit_text(const std::string& path, const std::string& text) {
    emit(path, [&](std::ostream& os) { os << text << '\n'; });
}

void warn(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

// "m_max=30" and "l_range=-5..5".
void parse_table_spec(const std::vector<std::string>& spec, int& m_max, int& l_min, int& l_max) {
    for (const auto& item : spec) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("table spec '" + item + "' is not key=value");
        const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        try {
            if (key == "m_max") {
                m_max = std::stoi(val);
            } else if (key == "l_range") {
                const auto dots = val.find("..");
                if (dots == std::string::npos) throw InputError("l_range must look like -5..5");
                l_min = std::stoi(val.substr(0, dots));
                l_max = std::stoi(val.substr(dots + 2));
            } else {
                throw InputError("unknown table key '" + key + "'");
            }
        } catch (const std::logic_error& e) {
            if (dynamic_cast<const InputError*>(&e)) throw;
            throw InputError("bad number in table spec '" + item + "'");
        }
    }
    if (m_max < 0 || l_min > l_max) throw InputError("empty tail table range");
}

struct SweepAxis {
    size_t key;
    std::vector<double> values;
};

SweepAxis parse_axis(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw InputError("grid spec '" + spec + "' is not key=values");
    const std::string key = spec.substr(0, eq), vals = spec.substr(eq + 1);
    const auto it = std::find(kParamKeys.begin(), kParamKeys.end(), key);
    if (it == kParamKeys.end()) throw InputError("unknown sweep parameter '" + key + "'");
    SweepAxis axis{static_cast<size_t>(it - kParamKeys.begin()), {}};
    try {
        if (std::count(vals.begin(), vals.end(), ':') == 2) {
            const auto c1 = vals.find(':'), c2 = vals.rfind(':');
            const double start = std::stod(vals.substr(0, c1));
            const double stop = std::stod(vals.substr(c1 + 1, c2 - c1 - 1));
            const int count = std::stoi(vals.substr(c2 + 1));
            if (count < 1) throw InputError("sweep count must be >= 1");
            for (int n = 0; n < count; ++n)
                axis.values.push_back(count == 1 ? start : start + (stop - start) * n / (count - 1));
        } else {
            std::stringstream ss(vals);
            std::string tok;
            while (std::getline(ss, tok, ',')) axis.values.push_back(std::stod(tok));
        }
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const InputError*>(&e)) throw;
        throw InputError("bad number in grid spec '" + spec + "'");
    }
    if (axis.values.empty()) throw InputError("grid spec '" + spec + "' has no values");
    return axis;
}

std::string join(const std::vector<std::string>& args) {
    std::string s;
    for (const auto& a : args) {
        if (!s.empty()) s += ' ';
        s += a;
    }
    return s;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Two-orbit join-the-shortest-orbit retrial system toolkit", "gjsoq"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Provenance prov;
    prov.command_line = join(args);

    // stability
    ParamOptions st_params;
    std::string st_out, st_kernels;
    auto* st = app.add_subcommand("stability", "stability criteria, drifts, pooled/balanced flags");
    add_param_options(st, st_params);
    st->add_option("--out", st_out, "report JSON path (stdout if omitted)");
    st->add_option("--kernels", st_kernels, "also write censored and half-plane kernels as CSV");

    // decay
    ParamOptions dc_params;
    std::string dc_out, dc_table_out;
    std::vector<std::string> dc_table;
    auto* dc = app.add_subcommand("decay", "geometric tail profile of the minimum orbit");
    add_param_options(dc, dc_params);
    dc->add_option("--out", dc_out, "profile JSON path");
    auto* dc_table_opt =
        dc->add_option("--table", dc_table, "tail table extents, e.g. m_max=30 l_range=-5..5")
            ->expected(0, 2);
    dc->add_option("--table-out", dc_table_out, "tail CSV path (stdout if omitted)");

    // approx
    ParamOptions ap_params;
    std::string ap_out;
    GridOptions grid;
    int ap_ratio = 0;
    auto* ap = app.add_subcommand("approx", "closed-form stationary approximations");
    add_param_options(ap, ap_params);
    ap->add_option("--out", ap_out, "CSV path");
    ap->add_option("--i-max", grid.i_max, "largest orbit-1 index")->capture_default_str();
    ap->add_option("--j-max", grid.j_max, "largest orbit-2 index")->capture_default_str();
    ap->add_option("--threshold", grid.asymptotic_threshold,
                   "cells with max(i,j) below this are tagged pre-asymptotic")
        ->capture_default_str();
    ap->add_flag("--normalize", grid.normalize, "divide by the grid total instead of c = 1");
    ap->add_option("--ratio", ap_ratio, "emit Pr(k+1)/Pr(k) for k = 0..K instead of the grid");

    // solve
    ParamOptions sv_params;
    std::string sv_out, sv_diag, sv_format = "csv";
    int sv_nmax = 60;
    bool sv_reference = false;
    auto* sv = app.add_subcommand("solve", "truncated exact stationary solve");
    add_param_options(sv, sv_params);
    sv->add_option("--out", sv_out, "output path");
    sv->add_option("--n-max", sv_nmax, "truncation level")->capture_default_str();
    sv->add_option("--diag", sv_diag, "diagnostics JSON path");
    sv->add_option("--format", sv_format, "csv (solution) or json (diagnostics)")
        ->check(CLI::IsMember({"csv", "json"}));
    sv->add_flag("--reference", sv_reference, "solve the single-orbit reference system instead");

    // simulate
    ParamOptions sm_params;
    std::string sm_out, sm_summary, sm_format = "csv", sm_scenario;
    SimConfig sim;
    std::optional<double> sm_dt;
    auto* sm = app.add_subcommand("simulate", "event-driven simulation");
    add_param_options(sm, sm_params);
    sm->add_option("--out", sm_out, "output path");
    sm->add_option("--summary", sm_summary, "summary JSON path (csv format)");
    sm->add_option("--format", sm_format, "csv (trajectory) or json (summary)")
        ->check(CLI::IsMember({"csv", "json"}));
    sm->add_option("--horizon", sim.horizon, "simulated time")->capture_default_str();
    sm->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
    sm->add_option("--sample-dt", sm_dt, "snapshot spacing (default horizon/1000)");
    sm->add_option("--warmup", sim.warmup_fraction, "fraction of horizon discarded")
        ->capture_default_str();
    sm->add_option("--batches", sim.batches, "batch-means batches")->capture_default_str();
    sm->add_option("--scenario", sm_scenario,
                   "preset regime: criterion1-pooled, criterion1-unpooled, rho-ge-1, "
                   "criterion2-stable, criterion2-unstable, criterion3-stable, "
                   "criterion3-unstable, heavy-traffic-collapse");

    // validate
    ParamOptions vl_params;
    std::string vl_out;
    ValidationOptions vopt;
    bool vl_skip_oracle = false;
    auto* vl = app.add_subcommand("validate", "published-table and oracle checks");
    add_param_options(vl, vl_params);
    vl->add_option("--out", vl_out, "report JSON path");
    vl->add_option("--n-max", vopt.n_max, "oracle truncation level")->capture_default_str();
    vl->add_flag("--skip-oracle", vl_skip_oracle, "skip the truncated solve");

    // sweep
    ParamOptions sw_params;
    std::string sw_command, sw_dir = ".";
    std::vector<std::string> sw_grid;
    unsigned sw_jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* sw = app.add_subcommand("sweep", "run a command over a parameter grid; arguments after -- go to every point");
    add_param_options(sw, sw_params);
    sw->add_option("--command", sw_command, "stability, decay, approx, solve or simulate")
        ->required()
        ->check(CLI::IsMember({"stability", "decay", "approx", "solve", "simulate"}));
    sw->add_option("--grid", sw_grid, "key=v1,v2,... or key=start:stop:count (repeatable)")
        ->required();
    sw->add_option("--out-dir", sw_dir, "directory for per-point outputs")->capture_default_str();
    sw->add_option("--jobs", sw_jobs, "points run concurrently");

    // Everything after "--" is handed to each sweep point untouched.
    const auto dashdash = std::find(args.begin(), args.end(), "--");
    const std::vector<std::string> passthrough(dashdash == args.end() ? dashdash : dashdash + 1,
                                               args.end());
    std::vector<const char*> argv;
    for (auto it = args.begin(); it != dashdash; ++it) argv.push_back(it->c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (dashdash != args.end() && !*sw)
            throw InputError("'--' pass-through is only accepted by sweep");
        if (*st) {
            const SystemParams p = resolve_params(st_params, std::nullopt, "", prov);
            const StabilityReport r = check_stability(p);
            emit_text(st_out, stability_json(r, prov));
            if (!st_kernels.empty())
                emit(st_kernels, [&](std::ostream& os) {
                    write_provenance_comment(os, prov);
                    write_kernel_csv(os, censored_kernel(p), halfplane_kernel(p));
                });
            return kOk;
        }
        if (*dc) {
            const SystemParams p = resolve_params(dc_params, std::nullopt, "", prov);
            const DecayProfile d = decay_profile(p);
            const bool table = dc_table_opt->count() > 0;
            if (!table || !dc_out.empty() || !dc_table_out.empty())
                emit_text(dc_out, decay_json(d, prov));
            if (table) {
                int m_max = 30, l_min = -5, l_max = 5;
                parse_table_spec(dc_table, m_max, l_min, l_max);
                emit(dc_table_out, [&](std::ostream& os) {
                    write_provenance_comment(os, prov);
                    write_tail_csv(os, d, m_max, l_min, l_max);
                });
            }
            return kOk;
        }
        if (*ap) {
            const SystemParams p = resolve_params(ap_params, std::nullopt, "", prov);
            if (!is_symmetric(p)) warn(make_asymmetric(p).warnings);
            if (ap_ratio > 0) {
                const auto curve = ratio_curve(p, ap_ratio);
                emit(ap_out, [&](std::ostream& os) {
                    write_provenance_comment(os, prov);
                    write_ratio_csv(os, curve);
                });
            } else {
                const auto cells = approx_grid(p, grid);
                emit(ap_out, [&](std::ostream& os) {
                    write_provenance_comment(os, prov);
                    write_grid_csv(os, cells);
                });
            }
            return kOk;
        }
        if (*sv) {
            const SystemParams p = resolve_params(sv_params, std::nullopt, "", prov);
            if (sv_reference) {
                const auto levels = reference_stationary(p, sv_nmax);
                emit(sv_out, [&](std::ostream& os) {
                    write_provenance_comment(os, prov);
                    write_reference_csv(os, levels);
                });
                return kOk;
            }
            const TruncatedSolution sol = solve_stationary(p, sv_nmax);
            warn(sol.warnings);
            if (sv_format == "json") {
                emit_text(sv_out, oracle_json(sol, prov));
            } else {
                emit(sv_out, [&](std::ostream& os) {
                    write_provenance_comment(os, prov);
                    write_solution_csv(os, sol);
                });
            }
            if (!sv_diag.empty()) emit_text(sv_diag, oracle_json(sol, prov));
            return kOk;
        }
        if (*sm) {
            std::optional<Scenario> scenario;
            if (!sm_scenario.empty()) scenario = parse_scenario(sm_scenario);
            std::optional<SystemParams> preset;
            if (scenario) preset = scenario_params(*scenario);
            const SystemParams p = resolve_params(
                sm_params, preset, "preset:" + sm_scenario, prov);
            sim.sample_dt = sm_dt ? *sm_dt : sim.horizon / 1000.0;
            std::string summary;
            Trajectory traj;
            if (scenario) {
                RegimeDemo demo = regime_demo(*scenario, p, sim);
                summary = regime_json(demo, prov);
                traj = std::move(demo.trajectory);
            } else {
                traj = simulate(p, sim);
                summary = simulation_json(traj, prov);
            }
            if (sm_format == "json") {
                emit_text(sm_out, summary);
            } else {
                emit(sm_out, [&](std::ostream& os) {
                    write_provenance_comment(os, prov);
                    os << "# rng: " << traj.rng_algorithm << "; seed " << traj.seed << '\n';
                    write_trajectory_csv(os, traj);
                });
                if (!sm_summary.empty()) emit_text(sm_summary, summary);
            }
            return kOk;
        }
        if (*vl) {
            const SystemParams p =
                resolve_params(vl_params, baseline_params(), "preset:baseline", prov);
            vopt.run_oracle = !vl_skip_oracle;
            const ValidationReport report = run_validation(p, vopt);
            json j;
            j["provenance"] = json::parse(stability_json(check_stability(p), prov)).at("provenance");
            j["passed"] = report.all_passed();
            for (const auto& c : report.checks) {
                j["checks"].push_back({{"name", c.name},
                                       {"passed", c.passed},
                                       {"diagnostic", c.diagnostic},
                                       {"detail", c.detail}});
                std::cerr << (c.diagnostic ? "INFO " : (c.passed ? "PASS " : "FAIL ")) << c.name
                          << ": " << c.detail << '\n';
            }
            emit_text(vl_out, j.dump(2));
            return report.all_passed() ? kOk : kValidationFailure;
        }
        if (*sw) {
            const SystemParams base = resolve_params(sw_params, std::nullopt, "", prov);
            std::vector<SweepAxis> axes;
            for (const auto& g : sw_grid) axes.push_back(parse_axis(g));
            std::vector<SystemParams> points{base};
            for (const auto& axis : axes) {
                std::vector<SystemParams> next;
                for (const auto& pt : points)
                    for (double v : axis.values) {
                        SystemParams q = pt;
                        field(q, axis.key) = v;
                        next.push_back(q);
                    }
                points = std::move(next);
            }
            std::filesystem::create_directories(sw_dir);
            const std::vector<std::string>& extra = passthrough;
            const bool json_out = sw_command == "stability" || sw_command == "decay" ||
                                  std::find(extra.begin(), extra.end(), "json") != extra.end();
            std::vector<int> codes(points.size(), 0);
            std::vector<std::string> files(points.size());
            std::atomic<size_t> next{0};
            auto worker = [&] {
                for (size_t n = next++; n < points.size(); n = next++) {
                    files[n] = (std::filesystem::path(sw_dir) /
                                ("point_" + std::to_string(n) + (json_out ? ".json" : ".csv")))
                                   .string();
                    std::vector<std::string> sub{args.front(), sw_command};
                    for (size_t k = 0; k < kParamKeys.size(); ++k) {
                        sub.push_back(std::string("--") + kParamKeys[k]);
                        sub.push_back(format_double(field(points[n], k)));
                    }
                    sub.insert(sub.end(), extra.begin(), extra.end());
                    sub.push_back("--out");
                    sub.push_back(files[n]);
                    codes[n] = run(sub);
                }
            };
            std::vector<std::thread> pool;
            const unsigned jobs = std::max(1u, std::min<unsigned>(sw_jobs, points.size()));
            for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();

            emit((std::filesystem::path(sw_dir) / "index.csv").string(), [&](std::ostream& os) {
                write_provenance_comment(os, prov);
                os << "point,lambda0,lambda1,lambda2,mu,alpha1,alpha2,exit_code,file\n";
                for (size_t n = 0; n < points.size(); ++n) {
                    os << n;
                    for (size_t k = 0; k < kParamKeys.size(); ++k)
                        os << ',' << format_double(field(points[n], k));
                    os << ',' << codes[n] << ',' << files[n] << '\n';
                }
            });
            return *std::max_element(codes.begin(), codes.end());
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const HypothesisError& e) {
        std::cerr << "hypothesis violation: " << e.what() << '\n';
        return kHypothesisViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kOk;
}

}  // namespace gjsoq::cli
