#include "gjsoq/oracle.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "gjsoq/errors.hpp"

namespace gjsoq {

Generator build_generator(const SystemParams& p, int n_max) {
    validate(p);
    if (n_max < 3) throw InputError("n_max must be >= 3");
    Generator g;
    g.n_max = n_max;
    g.size = 2 * (n_max + 1) * (n_max + 1);
    g.entries.reserve(static_cast<size_t>(g.size) * 4);
    const double lam = p.lambda();

    auto add = [&](int from, int to, double rate, double& out) {
        if (rate <= 0.0) return;
        g.entries.push_back({from, to, rate});
        out += rate;
    };
    for (int i = 0; i <= n_max; ++i) {
        for (int j = 0; j <= n_max; ++j) {
            const int idle = state_index(n_max, i, j, 0);
            const int busy = state_index(n_max, i, j, 1);

            double out = 0.0;
            add(idle, busy, lam, out);
            if (i > 0) add(idle, state_index(n_max, i - 1, j, 1), p.alpha1, out);
            if (j > 0) add(idle, state_index(n_max, i, j - 1, 1), p.alpha2, out);
            g.entries.push_back({idle, idle, -out});

            out = 0.0;
            add(busy, idle, p.mu, out);
            double to1 = p.lambda1, to2 = p.lambda2;
            if (i < j)
                to1 += p.lambda0;
            else if (j < i)
                to2 += p.lambda0;
            else {
                to1 += 0.5 * p.lambda0;
                to2 += 0.5 * p.lambda0;
            }
            if (i < n_max) add(busy, state_index(n_max, i + 1, j, 1), to1, out);
            if (j < n_max) add(busy, state_index(n_max, i, j + 1, 1), to2, out);
            g.entries.push_back({busy, busy, -out});
        }
    }
    return g;
}

double TruncatedSolution::total() const {
    double s = 0.0;
    for (double v : prob) s += v;
    return s;
}

double TruncatedSolution::busy_fraction() const {
    double s = 0.0;
    for (size_t k = 1; k < prob.size(); k += 2) s += prob[k];
    return s;
}

double TruncatedSolution::mean_min() const {
    double s = 0.0;
    for (int i = 0; i <= n_max; ++i)
        for (int j = 0; j <= n_max; ++j) s += std::min(i, j) * (p(i, j, 0) + p(i, j, 1));
    return s;
}

TruncatedSolution solve_stationary(const SystemParams& p, int n_max) {
    const Generator g = build_generator(p, n_max);

    // Idle states only feed busy states, so they are eliminated exactly (the
    // busy-state censored generator), and recovered from the busy solution via
    // their own balance rows. Keeps those rows exact down to the smallest cells.
    const int busy_count = g.size / 2;
    auto is_busy = [](int s) { return s % 2 == 1; };
    auto busy_slot = [](int s) { return s / 2; };
    std::vector<double> idle_out(g.size, 0.0);
    std::vector<std::vector<std::pair<int, double>>> idle_exits(g.size);
    std::vector<std::vector<std::pair<int, double>>> idle_entries(g.size);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(g.entries.size() * 2);
    for (const auto& e : g.entries) {
        if (!is_busy(e.from)) {
            if (e.from == e.to)
                idle_out[e.from] = -e.rate;
            else if (is_busy(e.to))
                idle_exits[e.from].emplace_back(busy_slot(e.to), e.rate);
            else
                throw NumericError("idle-to-idle transition breaks the idle elimination");
        } else if (!is_busy(e.to)) {
            idle_entries[e.to].emplace_back(busy_slot(e.from), e.rate);
        } else {
            trips.emplace_back(busy_slot(e.from), busy_slot(e.to), e.rate);
        }
    }
    for (int s = 0; s < g.size; s += 2)
        for (const auto& [from, in_rate] : idle_entries[s])
            for (const auto& [to, out_rate] : idle_exits[s])
                trips.emplace_back(from, to, in_rate * out_rate / idle_out[s]);

    // Solve Q_busy^T x = 0 with the origin's row replaced by sum(x) = 1.
    const int pinned = busy_slot(state_index(n_max, 0, 0, 1));
    std::vector<Eigen::Triplet<double>> transposed;
    transposed.reserve(trips.size() + busy_count);
    for (const auto& t : trips)
        if (t.col() != pinned) transposed.emplace_back(t.col(), t.row(), t.value());
    for (int s = 0; s < busy_count; ++s) transposed.emplace_back(pinned, s, 1.0);
    Eigen::SparseMatrix<double> A(busy_count, busy_count);
    A.setFromTriplets(transposed.begin(), transposed.end());
    A.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) throw NumericError("sparse LU failed: singular truncated generator");
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(busy_count);
    rhs(pinned) = 1.0;
    const Eigen::VectorXd x = lu.solve(rhs);
    if (lu.info() != Eigen::Success) throw NumericError("sparse LU solve failed");

    std::vector<double> full(g.size, 0.0);
    for (int s = 0; s < busy_count; ++s) full[2 * s + 1] = x(s);
    for (int s = 0; s < g.size; s += 2) {
        double inflow = 0.0;
        for (const auto& [from, rate] : idle_entries[s]) inflow += x(from) * rate;
        full[s] = inflow / idle_out[s];
    }
    double total = 0.0;
    for (double v : full) total += v;
    for (double& v : full) v /= total;

    TruncatedSolution sol;
    sol.n_max = n_max;
    sol.prob = std::move(full);

    std::vector<double> balance(g.size, 0.0);
    for (const auto& e : g.entries) balance[e.to] += sol.prob[e.from] * e.rate;
    for (double b : balance) sol.residual_norm = std::max(sol.residual_norm, std::abs(b));

    for (int i = 0; i <= n_max; ++i)
        for (int j = 0; j <= n_max; ++j)
            if (i == n_max || j == n_max) sol.mass_at_boundary += sol.p(i, j, 0) + sol.p(i, j, 1);
    if (sol.mass_at_boundary > 1e-6)
        sol.warnings.push_back("boundary mass " + std::to_string(sol.mass_at_boundary) +
                               " exceeds 1e-6; increase n_max");
    return sol;
}

MinDiffTable::MinDiffTable(const TruncatedSolution& sol) : n_max_(sol.n_max), prob_(sol.prob) {}

bool MinDiffTable::contains(int m, int l) const {
    if (m < 0) return false;
    const int i = m + std::max(-l, 0);
    const int j = m + std::max(l, 0);
    return i <= n_max_ && j <= n_max_;
}

double MinDiffTable::at(int m, int l, int k) const {
    if (!contains(m, l) || (k != 0 && k != 1)) throw std::out_of_range("(m, l, k) outside the grid");
    const int i = m + std::max(-l, 0);
    const int j = m + std::max(l, 0);
    return prob_[state_index(n_max_, i, j, k)];
}

MinDiffTable transform_min_diff(const TruncatedSolution& sol) { return MinDiffTable(sol); }

}  // namespace gjsoq
