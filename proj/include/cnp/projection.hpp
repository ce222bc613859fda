#pragma once

// Orthogonal and fine projections of a slope onto the plane, and the
// validity check.

#include "cnp/multigrid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cnp {

enum class ProjectionKind { orthogonal, fine, custom };

struct Projection {
    FieldMatrix matrix;  // 2 x n
    ProjectionKind kind = ProjectionKind::custom;
};

class DegenerateProjection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rows: the generators made orthogonal by Gram-Schmidt, without normalising.
Projection orthogonal_projection(const Slope& e);
// Exact orthogonal projector P = G^T (G G^T)^-1 G (n x n).
FieldMatrix orthogonal_projector(const Slope& e);

struct FineCandidate {
    Vec lambda;           // A e_i = lambda_i A p_i
    FieldMatrix m;        // columns e_i - lambda_i p_i
    FieldMatrix kernel;   // left kernel of m
    FieldMatrix matrix;   // chosen 2 x n candidate
    bool valid = false;
    std::string reason;   // why it was rejected
};

struct FineSearch {
    std::vector<FineCandidate> candidates;
    std::optional<Projection> projection;  // first valid candidate
};

// Collinearity A e_i = lambda_i A p_i for the lifted subperiods p_0..p_3;
// validity is certified on a dual patch of size k.
FineSearch fine_projection_search(const Slope& e, const std::vector<Subperiod>& lifted, int k = 6,
                                  uint64_t seed = 1);
std::optional<Projection> fine_projection(const Slope& e, int k = 6);

struct ValidityReport {
    bool valid = false;
    bool orientation_ok = false;
    std::optional<std::pair<Tile, Tile>> overlap;
    std::string detail;
};

// (a) orientation screen against the orthogonal projection, (b) disjoint
// tile interiors on a dual patch of size k. Throws DegenerateProjection if
// some det(A e_i, A e_j) vanishes.
ValidityReport check_projection(const FieldMatrix& a, const Slope& e, int k = 6, uint64_t seed = 1);
bool is_valid_projection(const FieldMatrix& a, const Slope& e, int k = 6, uint64_t seed = 1);

// Same row space test for 2 x n matrices: rank of the stacked matrix.
bool same_row_space(const FieldMatrix& a, const FieldMatrix& b);

}  // namespace cnp
