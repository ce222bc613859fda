#pragma once

// Windows, regions and r-atlases in a two dimensional internal space.

#include "cnp/multigrid.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace cnp {

class AtlasError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateWindow : public AtlasError {
public:
    using AtlasError::AtlasError;
};

// Rows span the orthogonal complement of E (exact kernel, not normalised).
// Requires n - d = 2.
FieldMatrix internal_projection(const Slope& e);

struct Window {
    Polygon polygon;
    FieldMatrix internal;  // 2 x n

    Point2 project(const IVec& u) const;
    Point2 project(const Vec& u) const;
};

Window window(const Slope& e);

// Intersection of the translates W - pi'(x), x in the pattern.
Polygon region(const Window& w, const std::vector<IVec>& pattern);

Location point_membership(const Polygon& p, const Point2& z);

enum class Metric { graph, euclid };
Metric parse_metric(const std::string& s);
std::string to_string(Metric m);

struct RMap {
    std::vector<IVec> cells;  // sorted lifted vertex offsets, origin included
    std::vector<Tile> tiles;  // faces whose four corners are cells
    std::vector<Tile> added;  // tiles added by closure
    int radius = 0;
    Metric metric = Metric::graph;
    bool closed = false;

    bool has(const IVec& u) const;
};

// Vertices around the origin, given which offsets are vertices of the tiling.
RMap rmap_from(const std::function<bool(const IVec&)>& present, int n, int r, Metric m);
// Vertices around the origin vertex for the internal point z (z in W).
RMap rmap_at(const Window& w, const Point2& z, int r, Metric m);

// Fills notches: at a vertex, two consecutive boundary edges whose outer
// sector is convex and contains no other edge direction get the tile they
// span. Repeated to a fixpoint. The projection fixes the angular order.
RMap close_rmap(RMap m, const FieldMatrix& projection);

struct Cell {
    Polygon polygon;
    std::vector<bool> inside;  // one flag per translate
};

// Splits the convex domain by the convex translates; each output cell lies
// inside or outside every translate.
std::vector<Cell> partition(const Polygon& domain, const std::vector<Polygon>& translates);

struct AtlasEntry {
    RMap map;
    std::vector<Polygon> region;  // convex pieces
    FieldElement area;
    Point2 sample;                 // interior point of the first piece
};

struct Atlas {
    Window window;
    std::vector<AtlasEntry> entries;
    FieldElement window_area;
    FieldElement covered_area;
};

// Offsets u in the metric ball that can occur together with the origin.
std::vector<IVec> atlas_candidates(const Window& w, int n, int r, Metric m);

Atlas atlas(const Slope& e, int r, Metric m = Metric::graph);

// Canonical key of an r-map (its sorted cells).
std::string rmap_key(const RMap& m);

}  // namespace cnp
