#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gjsoq/approx.hpp"
#include "gjsoq/censored.hpp"
#include "gjsoq/model.hpp"
#include "gjsoq/oracle.hpp"
#include "gjsoq/reference.hpp"
#include "gjsoq/simulator.hpp"
#include "gjsoq/stability.hpp"
#include "gjsoq/tail.hpp"

namespace gjsoq {

// Shortest decimal that round-trips the double.
std::string format_double(double v);

// Keys lambda0, lambda1, lambda2, mu, alpha1, alpha2; all required, numbers only.
// Throws InputError. Does not validate rate domains.
SystemParams params_from_json(std::string_view text);
SystemParams params_from_json_file(const std::string& path);

struct Provenance {
    std::string command_line;
    std::string parameter_source;  // file path, "inline", or "preset:<name>"
    SystemParams params;
    std::vector<std::pair<std::string, double>> overrides;
};

// JSON documents (compact text). Each carries a "provenance" object.
std::string params_json(const SystemParams& p);
std::string stability_json(const StabilityReport& r, const Provenance& prov);
std::string decay_json(const DecayProfile& d, const Provenance& prov);
std::string oracle_json(const TruncatedSolution& s, const Provenance& prov);
std::string simulation_json(const Trajectory& t, const Provenance& prov);
std::string regime_json(const RegimeDemo& d, const Provenance& prov);

// "# key: value" lines placed above the CSV header row.
void write_provenance_comment(std::ostream& os, const Provenance& prov);

void write_kernel_csv(std::ostream& os, const CensoredKernel& k, const HalfPlaneKernel& h);
void write_tail_csv(std::ostream& os, const DecayProfile& d, int m_max, int l_min, int l_max);
void write_grid_csv(std::ostream& os, const std::vector<GridCell>& cells);
void write_ratio_csv(std::ostream& os, const std::vector<std::pair<int, double>>& curve);
void write_solution_csv(std::ostream& os, const TruncatedSolution& s);
void write_reference_csv(std::ostream& os, const std::vector<LevelProbability>& levels);
void write_trajectory_csv(std::ostream& os, const Trajectory& t);

}  // namespace gjsoq
