#include "cnp/projection.hpp"

namespace cnp {

Projection orthogonal_projection(const Slope& e) {
    std::vector<Vec> rows;
    for (const auto& g : e.generators) {
        Vec v = g;
        for (const auto& r : rows) v = v - scale(dot(g, r) / dot(r, r), r);
        rows.push_back(v);
    }
    return {FieldMatrix(e.field, rows), ProjectionKind::orthogonal};
}

FieldMatrix orthogonal_projector(const Slope& e) {
    FieldMatrix g = e.matrix();
    return g.transpose() * (g * g.transpose()).inverse() * g;
}

bool same_row_space(const FieldMatrix& a, const FieldMatrix& b) {
    int ra = a.rank();
    return ra == b.rank() && a.stack(b).rank() == ra;
}

namespace {

// Coordinates (alpha, beta) of p = alpha*u + beta*v.
std::array<FieldElement, 2> plane_coords(const Slope& e, const Vec& p) {
    const Vec& u = e.generators[0];
    const Vec& v = e.generators[1];
    for (int a = 0; a < e.n; ++a)
        for (int b = a + 1; b < e.n; ++b) {
            FieldElement det = det2(u[a], v[a], u[b], v[b]);
            if (det.is_zero()) continue;
            return {det2(p[a], v[a], p[b], v[b]) / det, det2(u[a], p[a], u[b], p[b]) / det};
        }
    throw SlopeError("degenerate slope");
}

}  // namespace

ValidityReport check_projection(const FieldMatrix& a, const Slope& e, int k, uint64_t seed) {
    ValidityReport rep;
    if (a.rows() != 2 || a.cols() != e.n) throw DegenerateProjection("projection must be 2 x n");
    if (a.rank() != 2) throw DegenerateProjection("projection has rank < 2");
    FieldMatrix o = orthogonal_projection(e).matrix;
    int global = 0;
    rep.orientation_ok = true;
    for (int i = 0; i < e.n && rep.orientation_ok; ++i)
        for (int j = i + 1; j < e.n; ++j) {
            Sign s = det2(a(0, i), a(0, j), a(1, i), a(1, j)).sign();
            if (s == Sign::zero)
                throw DegenerateProjection("det(A e_" + std::to_string(i) + ", A e_" + std::to_string(j) + ") = 0");
            Sign t = det2(o(0, i), o(0, j), o(1, i), o(1, j)).sign();
            int rel = to_int(s) * to_int(t);
            if (global == 0) global = rel;
            if (rel != global) {
                rep.orientation_ok = false;
                rep.detail = "orientation of tiles " + std::to_string(i) + std::to_string(j) +
                             " disagrees with the orthogonal projection";
                break;
            }
        }
    if (!rep.orientation_ok) return rep;
    Patch p = generate_patch(e, a, k, {seed, false});
    auto w = find_overlap(p);
    if (w) {
        rep.overlap = std::pair{p.tiles[w->a], p.tiles[w->b]};
        rep.detail = "overlapping tiles in dual patch of size " + std::to_string(k);
        return rep;
    }
    rep.valid = true;
    return rep;
}

bool is_valid_projection(const FieldMatrix& a, const Slope& e, int k, uint64_t seed) {
    try {
        return check_projection(a, e, k, seed).valid;
    } catch (const DegenerateProjection&) {
        return false;
    }
}

FineSearch fine_projection_search(const Slope& e, const std::vector<Subperiod>& lifted, int k, uint64_t seed) {
    FineSearch out;
    if (e.n != 4 || e.d != 2) throw SlopeError("fine projections are searched for 4->2 slopes only");
    const FieldPtr& f = e.field;
    std::vector<const Vec*> p(4, nullptr);
    for (const auto& s : lifted)
        if (s.dropped.size() == 1 && s.lifted) p[s.dropped[0]] = &*s.lifted;
    for (int i = 0; i < 4; ++i)
        if (!p[i]) throw SlopeError("missing lifted subperiod p_" + std::to_string(i));

    std::vector<std::array<FieldElement, 2>> c;
    for (int i = 0; i < 4; ++i) c.push_back(plane_coords(e, *p[i]));
    // sum_l lambda_l c_l[r] g_s[l] = delta_rs
    FieldMatrix sys(f, 4, 4);
    Vec rhs = zero_vec(f, 4);
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
            int row = 2 * r + s;
            for (int l = 0; l < 4; ++l) sys(row, l) = c[l][r] * e.generators[s][l];
            if (r == s) rhs[row] = FieldElement(f, 1L);
        }
    FineCandidate cand;
    if (sys.rank() < 4) {
        cand.reason = "collinearity system is singular";
        out.candidates.push_back(cand);
        return out;
    }
    cand.lambda = sys.solve(rhs);
    for (int l = 0; l < 4; ++l)
        if (cand.lambda[l].is_zero()) cand.reason = "lambda_" + std::to_string(l) + " = 0";
    FieldMatrix a(f, 2, 4);
    for (int l = 0; l < 4; ++l)
        for (int r = 0; r < 2; ++r) a(r, l) = cand.lambda[l] * c[l][r];
    cand.m = FieldMatrix(f, 4, 4);
    for (int l = 0; l < 4; ++l)
        for (int r = 0; r < 4; ++r)
            cand.m(r, l) = (r == l ? FieldElement(f, 1L) : FieldElement(f, 0L)) - cand.lambda[l] * (*p[l])[r];
    cand.kernel = cand.m.left_kernel();
    if (!(a * cand.m).is_zero() || cand.m.rank() > 2) throw SlopeError("fine projection failed its own collinearity check");
    cand.matrix = a;
    if (!cand.reason.empty()) {
        out.candidates.push_back(cand);
        return out;
    }
    std::vector<FieldMatrix> tries{a};
    if (cand.kernel.rows() > 2)
        for (const auto& pr : combinations(cand.kernel.rows(), 2)) tries.push_back(cand.kernel.select_rows(pr));
    for (const auto& t : tries) {
        if (t.rank() < 2) continue;
        ValidityReport rep;
        try {
            rep = check_projection(t, e, k, seed);
        } catch (const DegenerateProjection& ex) {
            cand.reason = ex.what();
            continue;
        }
        if (rep.valid) {
            cand.matrix = t;
            cand.valid = true;
            cand.reason.clear();
            out.projection = Projection{t, ProjectionKind::fine};
            break;
        }
        cand.reason = rep.detail;
    }
    out.candidates.push_back(cand);
    return out;
}

std::optional<Projection> fine_projection(const Slope& e, int k) {
    return fine_projection_search(e, lifted_subperiods(e), k).projection;
}

}  // namespace cnp
