#pragma once

// FP-method: lines through every vertex in the projected subperiod
// directions, decorated tiles and interval census.

#include "cnp/atlas.hpp"

#include <array>
#include <string>
#include <vector>

namespace cnp {

class NotCharacterized : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoFineProjection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Everything the line construction needs about a slope and a projection.
struct LineFamilies {
    Slope slope;
    FieldMatrix projection;      // 2 x n
    std::vector<Subperiod> lifted;  // indexed by the dropped slot f
    std::vector<Vec> subperiod;     // lifted p_f
    std::vector<Vec> normal;     // normal[f][l] = cross(A p_f, A e_l)
    std::vector<FieldElement> direction_norm2;  // |A p_f|^2

    // Offset of the direction-f line through the lifted point y.
    FieldElement offset(int f, const IVec& y) const;
};

// Requires a 4 -> 2 slope with four lifted subperiods.
LineFamilies line_families(const Slope& e, const FieldMatrix& a);

struct AmmannSegment {
    int direction = 0;
    std::array<FieldElement, 2> from, to;  // tile-local (lambda, mu)
};

struct DecoratedTile {
    int i = 0, j = 1;
    std::vector<std::vector<FieldElement>> offsets;  // per direction, sorted, relative to the tile corner
    std::vector<AmmannSegment> segments;

    std::string key() const;
    // Same tile restricted to one direction.
    DecoratedTile only(int f) const;
};

// Tile (i, j) whose corner is the origin; `vertices` are lifted vertex
// offsets around it. Lines through them crossing the tile interior become
// segments.
DecoratedTile decorate(const LineFamilies& lf, int i, int j, const std::vector<IVec>& vertices);
// Segment of the direction-f line at the given offset inside tile (i, j).
AmmannSegment segment_in_tile(const LineFamilies& lf, int f, int i, int j, const FieldElement& offset);

struct DecorationRadius {
    FieldElement d_squared;  // exact
    Rational bound;          // rational upper bound of d
};
DecorationRadius decoration_radius(const LineFamilies& lf);

struct Tileset {
    LineFamilies lines;
    std::vector<DecoratedTile> tiles;  // sorted by key
    Rational search_radius;
    int reach = 0;  // largest |u_l| of a vertex whose line was used
    std::vector<std::vector<FieldElement>> intervals;  // per direction, if a census was attached

    std::vector<std::string> keys() const;
};

// Enumerates, for every tile type, the window cells of the origin tile and
// the lines through vertices within the search radius. The search radius
// is the decoration radius plus half the largest tile diagonal plus extra.
Tileset decorated_tileset(const Slope& e, const FieldMatrix& a, const Rational& extra = 0);
// Convenience: characterization and fine projection are computed first.
Tileset decorated_tileset(const Slope& e, const Rational& extra = 0);

// Decorated tiles read off a patch: only tiles whose lifted position is
// deep enough inside the complete core to see every line crossing them.
std::vector<DecoratedTile> harvest(const LineFamilies& lf, const Patch& p, int margin);
// Largest |u_l| of a vertex within the search radius of a tile.
int harvest_margin(const LineFamilies& lf, const Rational& search_radius);

struct IntervalCensus {
    int direction = 0;
    std::vector<FieldElement> gaps;  // distinct offset differences, increasing
    std::vector<double> spacings;    // perpendicular distances
    size_t lines = 0;
};

// Distinct spacings between consecutive direction-f lines crossing the
// part of the patch that is at least `margin` inside the complete core.
IntervalCensus interval_census(const LineFamilies& lf, const Patch& p, int f, int margin);

}  // namespace cnp
