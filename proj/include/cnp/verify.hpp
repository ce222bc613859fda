#pragma once

// Patch-scale checks: planarity, line continuity, shadow periods, the
// configuration walk along shadow lines, and the Penrose identities.

#include "cnp/ammann.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cnp {

struct ThicknessEstimate {
    FieldElement t_star;     // smallest t with all lifts in c + t W (internal space)
    FieldElement thickness;  // max(1, t_star)
    Vec centre;              // an optimal c
    size_t vertices = 0;
};

// Lifted vertices against the internal projection of E; works for any
// codimension.
ThicknessEstimate check_planarity(const std::vector<IVec>& lifted, const Slope& e);
ThicknessEstimate check_planarity(const Patch& p);

// Flips the `which`-th hexagon (three tiles around a degree three vertex of
// the complete core). nullopt if there are fewer.
std::optional<Patch> elementary_flip(const Patch& p, size_t which = 0);

struct DecoratedPatch {
    Patch patch;
    std::vector<DecoratedTile> decorations;  // parallel to patch.tiles
};

// Every tile gets the lines through all vertices of the patch.
DecoratedPatch decorate_patch(const LineFamilies& lf, const Patch& p);

struct ContinuityReport {
    bool pass = true;
    size_t shared_edges = 0;
    std::optional<std::pair<size_t, size_t>> witness;  // tiles whose common edge breaks a line
    std::string detail;
};
ContinuityReport check_line_continuity(const DecoratedPatch& dp);

struct ShadowReport {
    int direction = 0;
    IVec period;
    size_t verified = 0;
    size_t failures = 0;
    int margin = 0;
    bool pass = false;
    std::optional<Tile> witness;  // shadow tile whose translate is missing
};

// In the i-shadow every tile deep enough in the core must reappear
// translated by q; with line families, its direction-i decoration too.
ShadowReport check_shadow_period(const Patch& p, int i, const IVec& q, int margin,
                                 const LineFamilies* lf = nullptr);

struct WalkReport {
    int direction = 0;
    IVec expected;                // omega_i(p_i)
    std::set<IVec> vectors;       // vertex to vertex vectors found
    size_t paths = 0;
    size_t dead_ends = 0;
    size_t max_branching = 0;
    bool pass = false;
};

// Follows the direction-i line from a vertex of the i-shadow through every
// continuation allowed by the tileset until the next vertex.
WalkReport shadow_walk(const Tileset& ts, int i, int max_steps = 64);

struct SuiteItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::vector<SuiteItem> items;
    bool pass() const;
};

SuiteReport penrose_identity_suite();

}  // namespace cnp
