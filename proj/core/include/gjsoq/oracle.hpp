#pragma once

#include <string>
#include <vector>

#include "gjsoq/model.hpp"

namespace gjsoq {

// State (i, j, k) with 0 <= i, j <= n_max, k in {0 idle, 1 busy}.
inline int state_index(int n_max, int i, int j, int k) { return ((i * (n_max + 1)) + j) * 2 + k; }

struct RateEntry {
    int from = 0;
    int to = 0;
    double rate = 0.0;
};

// Generator in triplet form; diagonal entries are included, rows sum to 0.
struct Generator {
    int n_max = 0;
    int size = 0;
    std::vector<RateEntry> entries;
};

// Busy arrivals that would leave the grid are dropped (reflecting truncation).
Generator build_generator(const SystemParams& p, int n_max);

struct TruncatedSolution {
    int n_max = 0;
    std::vector<double> prob;  // by state_index
    double mass_at_boundary = 0.0;
    double residual_norm = 0.0;  // max |(pi Q)_s|
    std::vector<std::string> warnings;

    double p(int i, int j, int k) const { return prob[state_index(n_max, i, j, k)]; }
    double total() const;
    double busy_fraction() const;
    double mean_min() const;  // E[min(N1, N2)]
};

// Idle states are eliminated exactly, then sparse LU on the busy states with the
// origin's balance equation replaced by normalization.
TruncatedSolution solve_stationary(const SystemParams& p, int n_max);

// Relabeling by m = min(i, j), l = j - i.
class MinDiffTable {
public:
    explicit MinDiffTable(const TruncatedSolution& sol);

    int n_max() const { return n_max_; }
    bool contains(int m, int l) const;
    double at(int m, int l, int k) const;  // throws std::out_of_range off the grid

private:
    int n_max_;
    std::vector<double> prob_;
};

MinDiffTable transform_min_diff(const TruncatedSolution& sol);

}  // namespace gjsoq
