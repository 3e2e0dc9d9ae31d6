#pragma once

#include <vector>

#include "gjsoq/model.hpp"

namespace gjsoq {

// Single-orbit retrial queue: one orbit retrying at alpha1 + alpha2 (alpha1
// alone when it holds one job), phases ordered (idle, busy). Raw rates.
struct ReferenceQBD {
    Mat2 up{};            // level n -> n+1
    Mat2 local_level0{};  // level 0 diagonal block
    Mat2 local_level1{};  // level 1 diagonal block
    Mat2 local{};         // level n >= 2 diagonal block
    Mat2 down_level1{};   // level 1 -> 0
    Mat2 down{};          // level n -> n-1, n >= 2
    Mat2 R{};             // minimal solution of up + R local + R^2 down = 0
    int r_iterations = 0;
    double zeta = 0.0;    // spectral radius of R
};

// Builds the blocks and iterates for R to 1e-14; throws HypothesisError when
// lambda_hat >= mu_hat_1 + mu_hat_2, NumericError past 1e5 iterations.
ReferenceQBD reference_qbd(const SystemParams& p);

// det(up + local z + down z^2).
double reference_determinant(const ReferenceQBD& q, double z);

// Root of the determinant in (0, 1), found by sign scan and bisection.
double reference_decay_rate(const SystemParams& p);

struct LevelProbability {
    int n = 0;
    double idle = 0.0;
    double busy = 0.0;
};

// Matrix-geometric stationary vector on levels 0..n_max (normalized over all levels).
std::vector<LevelProbability> reference_stationary(const SystemParams& p, int n_max);

}  // namespace gjsoq
