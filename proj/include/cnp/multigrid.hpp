#pragma once

// De Bruijn multigrid duality: canonical cut-and-project patches, lifts and
// shadows.

#include "cnp/geometry.hpp"
#include "cnp/slope.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace cnp {

using IVec = std::vector<int>;

class NonGenericShift : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InconsistentLift : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Tile {
    int i = 0, j = 1;  // edge directions, i < j
    IVec pos;          // lifted corner; vertices pos + {0, e_i, e_j, e_i + e_j}

    bool operator==(const Tile& o) const { return i == o.i && j == o.j && pos == o.pos; }
    bool operator<(const Tile& o) const;
};

struct Patch {
    Slope slope;
    FieldMatrix projection;  // 2 x n
    int k = 0;
    std::vector<Rational> shift;
    std::vector<Tile> tiles;

    Point2 point(const IVec& x) const;
    Point2 edge(int l) const;
    Polygon polygon(const Tile& t) const;
    // Distinct lifted vertices, sorted.
    std::vector<IVec> vertices() const;
};

struct Multigrid {
    Slope slope;
    FieldMatrix grid;  // d x n, column l is the normal of grid l
    std::vector<Rational> shift;
};

struct ShiftOptions {
    uint64_t seed = 1;
    bool integer_sum = false;  // shift coordinates sum to an integer
};

// Rational shift with denominator 10007 drawn from mt19937_64(seed).
std::vector<Rational> draw_shift(int n, uint64_t seed, bool integer_sum);

Multigrid generators_to_grid(const Slope& e, const std::vector<Rational>& shift);
// Tiles dual to intersections among lines -k..k of every grid.
Patch dual(const Multigrid& g, const FieldMatrix& projection, int k);
// dual() with up to 32 deterministic re-draws of the shift.
Patch generate_patch(const Slope& e, const FieldMatrix& projection, int k, ShiftOptions opt = {});

struct IVecHash {
    size_t operator()(const IVec& v) const;
};

// Lift recovered from geometry alone: each edge of type l adds e_l.
// Anchored at the first vertex of the first tile.
std::unordered_map<Point2, IVec, Point2Hash> lift(const Patch& p);

// Drops tiles whose type contains i, deletes coordinate i everywhere.
Patch shadow_patch(const Patch& p, int i);

// Vertices x with x_l in [-k+1, k] for all l; these carry their full star.
bool in_complete_core(const IVec& x, int k);

struct OverlapWitness {
    size_t a, b;  // tile indices
};
std::optional<OverlapWitness> find_overlap(const Patch& p);

// Checks the vertex star closes: around every core vertex the tile angles
// sum to a full turn (edges pair up with opposite orientation).
bool stars_close(const Patch& p);

}  // namespace cnp
