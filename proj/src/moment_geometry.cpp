#include "moment_geometry.hpp"

#include "rational_lp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace toric {

ToricStackData make_stack_data(std::size_t N, IntegerMatrix lattice_hat, IntegerMatrix B,
                               RationalVector a_lift) {
    if (N == 0) throw InputError("N", "N must be positive");
    if (B.cols() != N)
        throw InputError("B", "B has " + std::to_string(B.cols()) + " columns, expected N = " +
                                  std::to_string(N));
    if (a_lift.size() != N)
        throw InputError("a_lift", "a_lift has " + std::to_string(a_lift.size()) +
                                       " entries, expected N = " + std::to_string(N));
    ToricStackData data;
    data.ext = make_extension(N, std::move(lattice_hat));
    data.A = subgroup_from_kernel(std::move(B));
    data.a_hat = preimage_in_extension(data.ext, data.A);
    data.a_lift = std::move(a_lift);
    return data;
}

RationalVector AffineSlice::point(const RationalVector& lambda) const {
    RationalVector x = base;
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < N(); ++j) x[j] += directions(i, j) * lambda[i];
    return x;
}

Rational AffineSlice::coordinate(std::size_t j, const RationalVector& lambda) const {
    Rational x = base[j];
    for (std::size_t i = 0; i < dim(); ++i) x += directions(i, j) * lambda[i];
    return x;
}

AffineSlice affine_slice(const ToricStackData& data) {
    return AffineSlice{data.a_lift, to_rational(data.A.B)};
}

std::vector<double> moment_eval(std::span<const std::complex<double>> z) {
    std::vector<double> out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) out[j] = std::norm(z[j]);
    return out;
}

RationalVector moment_eval(std::span<const std::pair<Rational, Rational>> z) {
    RationalVector out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j)
        out[j] = z[j].first * z[j].first + z[j].second * z[j].second;
    return out;
}

namespace {

RationalVector normal_of(const AffineSlice& s, std::size_t j) {
    RationalVector b(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) b[i] = s.directions(i, j);
    return b;
}

bool in_face(const OrthantFace& J, std::size_t j) {
    return std::binary_search(J.begin(), J.end(), j);
}

std::size_t normal_rank(const AffineSlice& s, const OrthantFace& J) {
    return rank(s.directions.select_cols(J));
}

}  // namespace

std::optional<RationalVector> face_point(const AffineSlice& slice, const OrthantFace& J) {
    // Variables (lambda, t): maximize t subject to x_j = 0 on J,
    // x_j - t >= 0 off J, t <= 1. The open stratum is nonempty iff t* > 0.
    const std::size_t n = slice.dim();
    LinearProgram lp;
    lp.num_vars = n + 1;
    for (std::size_t j = 0; j < slice.N(); ++j) {
        RationalVector row = normal_of(slice, j);
        row.push_back(in_face(J, j) ? Rational(0) : Rational(-1));
        lp.add(std::move(row), in_face(J, j) ? Relation::Equal : Relation::GreaterEqual,
               Rational(-slice.base[j]));
    }
    RationalVector cap(n + 1, Rational(0));
    cap[n] = 1;
    lp.add(cap, Relation::LessEqual, Rational(1));
    lp.objective = cap;

    LpResult r = solve(lp);
    if (r.status != LpStatus::Optimal || r.value <= 0) return std::nullopt;
    r.point.pop_back();
    return r.point;
}

bool closed_face_meets(const AffineSlice& slice, const OrthantFace& J) {
    LinearProgram lp;
    lp.num_vars = slice.dim();
    for (std::size_t j = 0; j < slice.N(); ++j)
        lp.add(normal_of(slice, j), in_face(J, j) ? Relation::Equal : Relation::GreaterEqual,
               Rational(-slice.base[j]));
    return solve(lp).status != LpStatus::Infeasible;
}

bool face_meets_slice(const ToricStackData& data, const OrthantFace& J) {
    return face_point(affine_slice(data), J).has_value();
}

bool interior_meets_slice(const ToricStackData& data) { return face_meets_slice(data, {}); }

namespace {

// Depth-first over subsets in lexicographic (pre-)order. A subtree is
// pruned when the closed face of its root misses the slice, since every
// superset then misses it as well.
void visit_faces(const AffineSlice& slice, OrthantFace& J,
                 const std::function<void(const OrthantFace&, RationalVector)>& emit) {
    if (!closed_face_meets(slice, J)) return;
    if (auto p = face_point(slice, J)) emit(J, std::move(*p));
    std::size_t start = J.empty() ? 0 : J.back() + 1;
    for (std::size_t k = start; k < slice.N(); ++k) {
        J.push_back(k);
        visit_faces(slice, J, emit);
        J.pop_back();
    }
}

bool canonical_less(const OrthantFace& a, const OrthantFace& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

}  // namespace

std::vector<MeetingFace> meeting_faces(const AffineSlice& slice) {
    std::vector<MeetingFace> out;
    OrthantFace J;
    visit_faces(slice, J, [&](const OrthantFace& face, RationalVector w) {
        out.push_back({face, std::move(w), normal_rank(slice, face)});
    });
    std::stable_sort(out.begin(), out.end(), [](const MeetingFace& a, const MeetingFace& b) {
        return canonical_less(a.J, b.J);
    });
    return out;
}

RegularityVerdict regularity(const AffineSlice& slice) {
    RegularityVerdict v;
    OrthantFace J;
    // Pre-order visit is lexicographic, so the first dependent face wins.
    visit_faces(slice, J, [&](const OrthantFace& face, const RationalVector&) {
        if (v.regular && normal_rank(slice, face) < face.size()) {
            v.regular = false;
            v.witness = face;
        }
    });
    return v;
}

RegularityVerdict is_regular_value(const ToricStackData& data) {
    return regularity(affine_slice(data));
}

namespace {

void for_each_subset(std::size_t N, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
        if (pos == k) {
            fn(idx);
            return;
        }
        for (std::size_t i = start; i + (k - pos) <= N; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
}

std::size_t affine_rank(const std::vector<RationalVector>& pts, const std::vector<std::size_t>& idx) {
    if (idx.size() <= 1) return 0;
    const std::size_t n = pts[idx[0]].size();
    RationalMatrix diff(idx.size() - 1, n);
    for (std::size_t r = 1; r < idx.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) diff(r - 1, c) = pts[idx[r]][c] - pts[idx[0]][c];
    return rank(diff);
}

// Pulling triangulation of a bounded face given by its vertex indices.
void triangulate(const std::vector<RationalVector>& verts, const std::vector<std::set<std::size_t>>& tight,
                 const std::vector<std::size_t>& face, std::size_t dim, std::size_t num_ineq,
                 std::vector<std::vector<std::size_t>>& out) {
    if (dim == 0) {
        out.push_back({face.front()});
        return;
    }
    const std::size_t apex = face.front();
    std::set<std::vector<std::size_t>> subfaces;
    for (std::size_t j = 0; j < num_ineq; ++j) {
        std::vector<std::size_t> sub;
        for (auto v : face)
            if (tight[v].count(j)) sub.push_back(v);
        if (sub.size() == face.size() || sub.empty()) continue;
        if (std::binary_search(sub.begin(), sub.end(), apex)) continue;
        if (affine_rank(verts, sub) + 1 != dim) continue;
        subfaces.insert(sub);
    }
    for (const auto& sub : subfaces) {
        std::vector<std::vector<std::size_t>> part;
        triangulate(verts, tight, sub, dim - 1, num_ineq, part);
        for (auto& simplex : part) {
            simplex.push_back(apex);
            out.push_back(std::move(simplex));
        }
    }
}

}  // namespace

MomentPolytope polytope_of(const AffineSlice& slice) {
    const std::size_t n = slice.dim();
    const std::size_t N = slice.N();
    MomentPolytope P;
    P.n = n;
    for (std::size_t j = 0; j < N; ++j) P.h_rep.push_back({normal_of(slice, j), slice.base[j]});
    P.facet_labels.assign(N, std::nullopt);
    P.is_facet.assign(N, false);
    P.f_vector.assign(n + 1, 0);

    P.empty = !closed_face_meets(slice, {});
    if (P.empty) return P;

    auto faces = meeting_faces(slice);
    for (const auto& f : faces) {
        if (f.normal_rank < f.J.size()) P.regular = false;
        P.f_vector[n - f.normal_rank] += 1;
        if (f.J.size() == 1 && f.normal_rank == 1) P.is_facet[f.J[0]] = true;
    }

    // Vertices: every independent n-subset of tight inequalities whose
    // solution satisfies the rest.
    std::set<RationalVector> vertex_set;
    for_each_subset(N, n, [&](const std::vector<std::size_t>& S) {
        RationalMatrix sys(n, n);
        RationalVector rhs(n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) sys(r, c) = slice.directions(c, S[r]);
            rhs[r] = -slice.base[S[r]];
        }
        if (rank(sys) < n) return;
        auto sol = solve_affine(sys, rhs);
        if (!sol) return;
        for (std::size_t j = 0; j < N; ++j)
            if (slice.coordinate(j, sol->particular) < 0) return;
        vertex_set.insert(sol->particular);
    });
    P.v_rep.assign(vertex_set.begin(), vertex_set.end());

    for (std::size_t i = 0; i < n && P.bounded; ++i)
        for (int sign : {1, -1}) {
            LinearProgram lp;
            lp.num_vars = n;
            for (std::size_t j = 0; j < N; ++j)
                lp.add(normal_of(slice, j), Relation::GreaterEqual, Rational(-slice.base[j]));
            lp.objective.assign(n, Rational(0));
            lp.objective[i] = sign;
            if (solve(lp).status == LpStatus::Unbounded) {
                P.bounded = false;
                break;
            }
        }

    if (P.bounded) {
        std::vector<std::size_t> all(P.v_rep.size());
        for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
        if (affine_rank(P.v_rep, all) < n) {
            P.normalized_volume = Rational(0);
        } else {
            std::vector<std::set<std::size_t>> tight(P.v_rep.size());
            for (std::size_t v = 0; v < P.v_rep.size(); ++v)
                for (std::size_t j = 0; j < N; ++j)
                    if (slice.coordinate(j, P.v_rep[v]) == 0) tight[v].insert(j);
            std::vector<std::vector<std::size_t>> simplices;
            triangulate(P.v_rep, tight, all, n, N, simplices);
            Rational vol = 0;
            for (const auto& s : simplices) {
                RationalMatrix m(n, n);
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < n; ++c) m(r, c) = P.v_rep[s[r]][c] - P.v_rep[s[n]][c];
                vol += abs(determinant(m));
            }
            P.normalized_volume = vol;
        }
    }
    return P;
}

MomentPolytope moment_polytope(const ToricStackData& data) { return polytope_of(affine_slice(data)); }

}  // namespace toric
