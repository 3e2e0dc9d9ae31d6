#include "gjsoq/censored.hpp"

namespace gjsoq {

namespace {

// Appends the self-loop so the row sums to one; rates are raw and divided by theta here.
template <typename Entry>
std::vector<Entry> normalize(std::vector<Entry> steps, double theta) {
    double out = 0.0;
    for (auto& e : steps) {
        e.probability /= theta;
        out += e.probability;
    }
    Entry self{};
    self.probability = 1.0 - out;
    steps.push_back(self);
    return steps;
}

}  // namespace

double CensoredKernel::probability(Region r, int di, int dj) const {
    for (const auto& e : at(r))
        if (e.di == di && e.dj == dj) return e.probability;
    return 0.0;
}

double HalfPlaneKernel::probability(Zone z, int dm, int dl) const {
    for (const auto& e : at(z))
        if (e.dm == dm && e.dl == dl) return e.probability;
    return 0.0;
}

CensoredKernel censored_kernel(const SystemParams& p) {
    const DerivedRates d = derive_rates(p);
    const double theta = p.theta();
    const double l0 = p.lambda0, l1 = p.lambda1, l2 = p.lambda2;
    // An idle excursion ends with a successful retrial from orbit k with
    // probability alpha_k over the idle exit rate; mu_hat_k folds in mu.
    const double down1_both = d.mu_hat_1 / d.sigma;
    const double down2_both = d.mu_hat_2 / d.sigma;
    const double down1_only = d.mu_hat_1 / (d.lambda + p.alpha1);
    const double down2_only = d.mu_hat_2 / (d.lambda + p.alpha2);

    CensoredKernel k;
    auto set = [&](Region r, std::vector<KernelEntry> steps) {
        k.regions[static_cast<int>(r)] = normalize(std::move(steps), theta);
    };
    set(Region::R1, {{1, 0, l1}, {0, 1, l0 + l2}, {-1, 0, down1_both}, {0, -1, down2_both}});
    set(Region::R2, {{1, 0, l0 + l1}, {0, 1, l2}, {-1, 0, down1_both}, {0, -1, down2_both}});
    set(Region::D,
        {{1, 0, 0.5 * l0 + l1}, {0, 1, 0.5 * l0 + l2}, {-1, 0, down1_both}, {0, -1, down2_both}});
    set(Region::H, {{1, 0, l1}, {0, 1, l0 + l2}, {-1, 0, down1_only}});
    set(Region::V, {{1, 0, l0 + l1}, {0, 1, l2}, {0, -1, down2_only}});
    set(Region::O, {{1, 0, l1 + 0.5 * l0}, {0, 1, l2 + 0.5 * l0}});
    return k;
}

Zone zone_of(int m, int l) {
    if (m < 0) throw InputError("minimum coordinate must be nonnegative");
    if (m == 0) {
        if (l < 0) return Zone::EdgeNeg;
        if (l > 0) return Zone::EdgePos;
        return Zone::Origin;
    }
    if (l < 0) return Zone::Neg;
    if (l > 0) return Zone::Pos;
    return Zone::Diag;
}

std::string_view zone_name(Zone z) noexcept {
    switch (z) {
        case Zone::Neg: return "-";
        case Zone::Pos: return "+";
        case Zone::Diag: return "2";
        case Zone::EdgeNeg: return "1-";
        case Zone::EdgePos: return "1+";
        case Zone::Origin: return "0";
    }
    return "?";
}

HalfPlaneKernel halfplane_kernel(const SystemParams& p) {
    const DerivedRates d = derive_rates(p);
    const double theta = p.theta();
    const double l0 = p.lambda0, l1 = p.lambda1, l2 = p.lambda2;
    const double down1_both = d.mu_hat_1 / d.sigma;
    const double down2_both = d.mu_hat_2 / d.sigma;
    const double down1_only = d.mu_hat_1 / (d.lambda + p.alpha1);
    const double down2_only = d.mu_hat_2 / (d.lambda + p.alpha2);

    HalfPlaneKernel k;
    auto set = [&](Zone z, std::vector<HalfPlaneEntry> steps) {
        k.zones[static_cast<int>(z)] = normalize(std::move(steps), theta);
    };
    set(Zone::Neg, {{0, -1, l1}, {-1, -1, down2_both}, {0, 1, down1_both}, {1, 1, l0 + l2}});
    set(Zone::Pos, {{0, 1, l2}, {0, -1, down2_both}, {-1, 1, down1_both}, {1, -1, l0 + l1}});
    set(Zone::Diag, {{0, 1, l2 + 0.5 * l0},
                     {-1, -1, down2_both},
                     {-1, 1, down1_both},
                     {0, -1, 0.5 * l0 + l1}});
    set(Zone::EdgeNeg, {{0, -1, l1}, {0, 1, down1_only}, {1, 1, l0 + l2}});
    set(Zone::EdgePos, {{0, 1, l2}, {0, -1, down2_only}, {1, -1, l0 + l1}});
    set(Zone::Origin, {{0, 1, l2 + 0.5 * l0}, {0, -1, l1 + 0.5 * l0}});
    return k;
}

}  // namespace gjsoq
