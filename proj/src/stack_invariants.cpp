#include "stack_invariants.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

RationalMatrix congruence_lattice_basis(const IntegerMatrix& C, const OrthantFace& J) {
    const std::size_t N = C.cols();
    const std::size_t k = J.size();
    IntegerMatrix CJ = C.select_cols(J);
    if (rank(CJ) < k)
        throw InfiniteStabilizer("normals on the face are linearly dependent");

    // U CJ V = D; CJ s in Z^n  <=>  (V^-1 s)_i in (1/d_i) Z.
    auto snf = smith_normal_form(CJ);
    auto d = snf.nonzero_diagonal();
    RationalMatrix basis(N, N);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t r = 0; r < k; ++r) basis(J[r], i) = Rational(snf.V(r, i), d[i]);
    std::size_t col = k;
    for (std::size_t j = 0; j < N; ++j)
        if (!std::binary_search(J.begin(), J.end(), j)) basis(j, col++) = 1;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t r = 0; r < N; ++r) basis(r, i).canonicalize();
    return basis;
}

FiniteAbelianGroup stabilizer_group(const IntegerMatrix& lattice_hat, const IntegerMatrix& C,
                                    const OrthantFace& J) {
    RationalMatrix basis = congruence_lattice_basis(C, J);
    auto inv = inverse(basis);
    if (!inv) throw std::logic_error("congruence lattice basis is singular");
    const std::size_t N = C.cols();
    // Coordinates of the generators of lattice_hat in the L_J basis.
    IntegerMatrix coords(lattice_hat.rows(), N);
    for (std::size_t r = 0; r < lattice_hat.rows(); ++r) {
        RationalVector gen(N);
        for (std::size_t c = 0; c < N; ++c) gen[c] = lattice_hat(r, c);
        RationalVector y = mat_vec(*inv, gen);
        for (std::size_t c = 0; c < N; ++c) {
            if (y[c].get_den() != 1) throw std::logic_error("lattice_hat is not inside L_J");
            coords(r, c) = y[c].get_num();
        }
    }
    return cokernel_structure(coords);
}

FiniteAbelianGroup stabilizer_on_face(const ToricStackData& data, const OrthantFace& J) {
    if (!face_meets_slice(data, J)) throw PreconditionError("face does not meet the slice");
    return stabilizer_group(data.ext.lattice_hat, data.A.B, J);
}

std::vector<InertiaRecord> inertia_table(const ToricStackData& data) {
    AffineSlice slice = affine_slice(data);
    if (!regularity(slice).regular) throw PreconditionError("level is not regular");
    std::vector<InertiaRecord> out;
    for (const auto& f : meeting_faces(slice))
        out.push_back({f.J, stabilizer_group(data.ext.lattice_hat, data.A.B, f.J), f.J.empty()});
    return out;
}

void label_facets(const ToricStackData& data, MomentPolytope& polytope) {
    for (std::size_t j = 0; j < polytope.is_facet.size(); ++j) {
        if (!polytope.is_facet[j]) continue;
        polytope.facet_labels[j] = stabilizer_group(data.ext.lattice_hat, data.A.B, {j}).order();
    }
}

bool effectiveness_check(const ToricStackData& data) {
    AffineSlice slice = affine_slice(data);
    if (!regularity(slice).regular) throw PreconditionError("level is not regular");
    if (!closed_face_meets(slice, {})) throw PreconditionError("level set is empty");
    if (data.n() == 0) return true;
    // An element of G acting trivially on the coarse space lifts to some x
    // fixing a point with free T^N-orbit; then x lies in Gamma, which is
    // inside A_hat, so its class in G is trivial. Needs such a point.
    if (!face_point(slice, {})) return false;
    IntegerMatrix standard = IntegerMatrix::identity(data.N());
    return stabilizer_group(standard, standard, {}).is_trivial();
}

StackSummary stack_summary(const ToricStackData& data) {
    AffineSlice slice = affine_slice(data);
    StackSummary s;
    s.residual_torus_dim = data.n();
    s.regular = regularity(slice).regular;
    s.empty = !closed_face_meets(slice, {});
    if (s.empty) return s;
    if (face_point(slice, {})) s.gerbe = stabilizer_group(data.ext.lattice_hat, data.A.B, {});
    if (s.regular) {
        s.dimension = 2 * data.n();
        s.effective = effectiveness_check(data);
    }
    return s;
}

namespace {

StageInvariants collect(const AffineSlice& slice, const IntegerMatrix& lattice_hat,
                        const IntegerMatrix& congruence, std::size_t dimension) {
    StageInvariants inv;
    inv.dimension = dimension;
    MomentPolytope P = polytope_of(slice);
    inv.empty = P.empty;
    inv.f_vector = P.f_vector;
    inv.normalized_volume = P.normalized_volume;
    if (P.empty) return inv;
    const std::size_t n = slice.dim();
    for (const auto& f : meeting_faces(slice)) {
        FiniteAbelianGroup g = stabilizer_group(lattice_hat, congruence, f.J);
        if (f.J.empty()) inv.gerbe = g;
        if (f.normal_rank == n) inv.vertex_inertia.push_back(g);
        if (f.J.size() == 1 && f.normal_rank == 1) inv.facet_labels.push_back(g.order());
    }
    std::sort(inv.vertex_inertia.begin(), inv.vertex_inertia.end());
    std::sort(inv.facet_labels.begin(), inv.facet_labels.end());
    return inv;
}

template <class T>
std::string join(const std::vector<T>& xs) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) os << ", ";
        if constexpr (std::is_same_v<T, FiniteAbelianGroup>) os << xs[i].to_string();
        else os << xs[i];
    }
    os << ']';
    return os.str();
}

std::string show(const std::optional<Rational>& q) { return q ? to_string(*q) : "unbounded"; }

std::optional<std::string> first_difference(const StageInvariants& a, const StageInvariants& b) {
    if (a.empty != b.empty)
        return std::string("empty: one-shot ") + (a.empty ? "true" : "false") + " vs staged " +
               (b.empty ? "true" : "false");
    if (a.dimension != b.dimension)
        return "dimension: one-shot " + std::to_string(a.dimension) + " vs staged " +
               std::to_string(b.dimension);
    if (a.gerbe != b.gerbe)
        return "gerbe: one-shot " + a.gerbe.to_string() + " vs staged " + b.gerbe.to_string();
    if (a.vertex_inertia != b.vertex_inertia)
        return "vertex_inertia: one-shot " + join(a.vertex_inertia) + " vs staged " +
               join(b.vertex_inertia);
    if (a.facet_labels != b.facet_labels)
        return "facet_labels: one-shot " + join(a.facet_labels) + " vs staged " + join(b.facet_labels);
    if (a.f_vector != b.f_vector)
        return "f_vector: one-shot " + join(a.f_vector) + " vs staged " + join(b.f_vector);
    if (a.normalized_volume != b.normalized_volume)
        return "normalized_volume: one-shot " + show(a.normalized_volume) + " vs staged " +
               show(b.normalized_volume);
    return std::nullopt;
}

}  // namespace

StagesReport stages_verify(const ToricStackData& outer, const IntegerMatrix& inner_B,
                           const std::optional<RationalVector>& level_shift) {
    StagesReport report;
    const std::size_t N = outer.N();
    if (inner_B.cols() != N)
        throw InputError("stages.B_inner", "stages.B_inner has " + std::to_string(inner_B.cols()) +
                                               " columns, expected N = " + std::to_string(N));
    ToricStackData inner = make_stack_data(N, outer.ext.lattice_hat, inner_B, outer.a_lift);
    const std::size_t n1 = inner.n();
    const std::size_t n2 = outer.n();

    // ker B_inner inside ker B_outer  <=>  B_outer = Q B_inner with Q integral.
    IntegerMatrix Q(n2, n1);
    RationalMatrix inner_t = to_rational(inner.A.B.transpose());
    for (std::size_t r = 0; r < n2; ++r) {
        RationalVector target(N);
        for (std::size_t c = 0; c < N; ++c) target[c] = outer.A.B(r, c);
        auto sol = solve_affine(inner_t, target);
        if (!sol) {
            report.status = StagesStatus::NestingViolated;
            report.detail = "Lie algebra of ker(B_inner) is not contained in that of ker(B)";
            return report;
        }
        for (std::size_t c = 0; c < n1; ++c) {
            if (sol->particular[c].get_den() != 1) {
                report.status = StagesStatus::NestingViolated;
                report.detail = "ker(B_inner) is not contained in ker(B): component groups do not nest";
                return report;
            }
            Q(r, c) = sol->particular[c].get_num();
        }
    }
    report.quotient_map = Q;

    RationalVector shift = level_shift.value_or(RationalVector(n1, Rational(0)));
    if (shift.size() != n1)
        throw InputError("stages.level_shift", "stages.level_shift has " + std::to_string(shift.size()) +
                                                   " entries, expected " + std::to_string(n1));

    AffineSlice one_shot = affine_slice(outer);
    AffineSlice first = affine_slice(inner);
    // Second stage: lambda_1 = shift + Q^T lambda_2 inside the first-stage slice.
    AffineSlice staged{first.point(shift), to_rational(Q) * first.directions};
    IntegerMatrix staged_congruence = Q * inner.A.B;

    if (!regularity(one_shot).regular) {
        report.status = StagesStatus::Irregular;
        report.detail = "one-shot level is not regular";
        return report;
    }
    if (!regularity(first).regular) {
        report.status = StagesStatus::Irregular;
        report.detail = "first-stage level is not regular";
        return report;
    }
    if (!regularity(staged).regular) {
        report.status = StagesStatus::Irregular;
        report.detail = "second-stage level is not regular";
        return report;
    }

    report.one_shot = collect(one_shot, outer.ext.lattice_hat, outer.A.B, 2 * n2);
    // dim X_1 - 2 dim(A_2/A_1), with dim X_1 = 2 n1 and dim(A_2/A_1) = n1 - n2.
    report.staged = collect(staged, outer.ext.lattice_hat, staged_congruence, 2 * n1 - 2 * (n1 - n2));

    if (auto diff = first_difference(*report.one_shot, *report.staged)) {
        report.status = StagesStatus::Inconsistent;
        report.detail = *diff;
    } else {
        report.status = StagesStatus::Consistent;
    }
    return report;
}

}  // namespace toric
