#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "gjsoq/model.hpp"

namespace gjsoq {

struct KernelEntry {
    int di = 0;
    int dj = 0;
    double probability = 0.0;
};

// One-step kernel of the chain watched only at busy states, per region.
// Each region's entries (including the (0,0) self-loop) sum to 1.
struct CensoredKernel {
    std::array<std::vector<KernelEntry>, 6> regions;

    const std::vector<KernelEntry>& at(Region r) const { return regions[static_cast<int>(r)]; }
    // Probability of the given step from region r; 0 when absent.
    double probability(Region r, int di, int dj) const;
};

CensoredKernel censored_kernel(const SystemParams& p);

// Zones of the walk in coordinates m = min(i,j), l = j - i.
enum class Zone { Neg, Pos, Diag, EdgeNeg, EdgePos, Origin };

inline constexpr std::array<Zone, 6> kAllZones{Zone::Neg,     Zone::Pos,     Zone::Diag,
                                               Zone::EdgeNeg, Zone::EdgePos, Zone::Origin};

Zone zone_of(int m, int l);
std::string_view zone_name(Zone z) noexcept;

// Steps keyed (dm, dl).
struct HalfPlaneEntry {
    int dm = 0;
    int dl = 0;
    double probability = 0.0;
};

struct HalfPlaneKernel {
    std::array<std::vector<HalfPlaneEntry>, 6> zones;

    const std::vector<HalfPlaneEntry>& at(Zone z) const { return zones[static_cast<int>(z)]; }
    double probability(Zone z, int dm, int dl) const;
};

HalfPlaneKernel halfplane_kernel(const SystemParams& p);

}  // namespace gjsoq
