#pragma once

// Slopes (d-planes in R^n over a number field), Grassmann coordinates and
// subperiods.

#include "cnp/matrix.hpp"
#include "cnp/polysys.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cnp {

class SlopeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Slope {
    FieldPtr field;
    int n = 0;
    int d = 0;
    std::vector<Vec> generators;  // d rows of length n
    std::string name;

    // Validates shapes and rank; throws SlopeError("degenerate slope") if rank < d.
    static Slope make(FieldPtr field, std::vector<Vec> generators, std::string name = "");
    static Slope parse(const std::string& text);
    static Slope load(const std::string& path);
    std::string serialize() const;

    FieldMatrix matrix() const { return FieldMatrix(field, generators); }
    // True iff v lies in the row space of the generators.
    bool contains(const Vec& v) const;
};

// Built-in example slopes.
Slope cyrenaic_slope(bool negative_root = false);
Slope ammann_beenker_slope();
Slope penrose_slope();
Slope rauzy_slope();
// Its orthogonal complement: the 3 -> 1 line, internal space of dimension 2.
Slope rauzy_line_slope();
Slope golden_octagonal_slope();
Slope axis_slope(int n);

struct GrassmannCoordinates {
    int n = 0, d = 0;
    std::map<std::vector<int>, FieldElement> g;
    const FieldElement& at(const std::vector<int>& s) const { return g.at(s); }
    FieldElement pair(int i, int j) const;  // antisymmetric access for d = 2
};

GrassmannCoordinates grassmann(const Slope& e);

struct Subperiod {
    std::vector<int> dropped;  // the n-3 type indices
    std::vector<int> kept;     // the 3 integer positions, increasing
    std::vector<Integer> integer_entries;
    std::optional<Vec> lifted;

    std::string type_label() const;       // e.g. "0" or "14"
    std::vector<std::string> entry_strings() const;  // "*" at dropped slots
    Vec integer_vector(const FieldPtr& f, int n) const;  // zeros at dropped slots
};

struct SubperiodReport {
    std::vector<Subperiod> subperiods;
    std::vector<std::vector<int>> doubly_periodic;  // kernel dimension >= 2
    std::vector<std::vector<int>> aperiodic;        // empty kernel
};

SubperiodReport integer_subperiods(const Slope& e);
// Solves the non-integer entries so that the vector lies in E; throws
// SlopeError("no lift") if impossible.
std::vector<Subperiod> lifted_subperiods(const Slope& e, const std::vector<Subperiod>& subs);
std::vector<Subperiod> lifted_subperiods(const Slope& e);

struct Characterization {
    bool characterized = false;
    SystemResult chart;               // plane-chart system
    std::optional<SystemResult> minors;  // one-unknown-per-entry minor system
    std::vector<int> chart_pivots;
};

// Plane chart E = rowspace [I | X] on the pivot columns; one equation per
// subperiod saying that E contains a vector with the given integer entries.
std::vector<MPoly> chart_system(int n, const std::vector<Subperiod>& subs, std::pair<int, int> pivots);
// Matrix of subperiods with one variable per non-integer entry; all 3-minors.
std::vector<MPoly> subperiod_minor_system(int n, const std::vector<Subperiod>& subs);

Characterization characterize(const Slope& e, const std::vector<Subperiod>& subs,
                              bool with_minor_system = true);
bool is_characterized_by_subperiods(const Slope& e);
bool totally_irrational_flag(const std::vector<Subperiod>& lifted, const Characterization& c);

// Integer versions of a lifted subperiod. One non-integer slot: (floor, ceil).
// Two slots: (floor-ceil, ceil-floor), i.e. floor at the first and ceil at
// the second slot, then the reverse.
std::pair<std::vector<Integer>, std::vector<Integer>> floor_ceil(const Subperiod& p);

Vec shadow_map(const Vec& v, int i);
std::vector<Integer> shadow_map(const std::vector<Integer>& v, int i);

std::vector<std::vector<int>> combinations(int n, int k);

}  // namespace cnp
