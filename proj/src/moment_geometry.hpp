#pragma once

#include "torus.hpp"

#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace toric {

/// The hypothesis tuple of the generalized Delzant construction: the
/// extension, the subgroup A = ker B, its preimage A_hat and a lift
/// a_lift in (R^N)* of the moment level.
struct ToricStackData {
    TorusExtension ext;
    ClosedSubgroup A;
    SubgroupHat a_hat;
    RationalVector a_lift;

    std::size_t N() const noexcept { return ext.N; }
    std::size_t n() const noexcept { return A.codim(); }
};

ToricStackData make_stack_data(std::size_t N, IntegerMatrix lattice_hat, IntegerMatrix B,
                               RationalVector a_lift);

/// Coordinate face of the orthant: the indices (0-based, sorted) forced to 0.
using OrthantFace = std::vector<std::size_t>;

/// V_a = {base + directions^T lambda}; directions is n x N and column j is
/// the normal b_j of the inequality x_j >= 0 in lambda-coordinates.
struct AffineSlice {
    RationalVector base;
    RationalMatrix directions;

    std::size_t N() const noexcept { return base.size(); }
    std::size_t dim() const noexcept { return directions.rows(); }
    RationalVector point(const RationalVector& lambda) const;
    /// Value of x_j at lambda.
    Rational coordinate(std::size_t j, const RationalVector& lambda) const;
};

AffineSlice affine_slice(const ToricStackData& data);

/// (|z_1|^2, ..., |z_N|^2).
std::vector<double> moment_eval(std::span<const std::complex<double>> z);
/// Exact variant on Gaussian rationals given as (re, im) pairs.
RationalVector moment_eval(std::span<const std::pair<Rational, Rational>> z);

/// lambda with x_j = 0 on J and x_j > 0 off J, if one exists.
std::optional<RationalVector> face_point(const AffineSlice& slice, const OrthantFace& J);
/// Weak variant: x_j = 0 on J, x_j >= 0 off J.
bool closed_face_meets(const AffineSlice& slice, const OrthantFace& J);

bool face_meets_slice(const ToricStackData& data, const OrthantFace& J);
bool interior_meets_slice(const ToricStackData& data);

struct MeetingFace {
    OrthantFace J;
    RationalVector witness;   // lambda in the relative interior of the stratum
    std::size_t normal_rank;  // rank of {b_j : j in J}
};

/// All J whose open stratum meets the slice, ordered by |J| then
/// lexicographically.
std::vector<MeetingFace> meeting_faces(const AffineSlice& slice);

struct RegularityVerdict {
    bool regular = true;
    std::optional<OrthantFace> witness;  // lexicographically smallest offending face
};

RegularityVerdict regularity(const AffineSlice& slice);
RegularityVerdict is_regular_value(const ToricStackData& data);

struct Inequality {
    RationalVector normal;  // b_j
    Rational offset;        // a_j; the inequality is <b_j, lambda> >= -a_j
};

struct MomentPolytope {
    std::size_t n = 0;
    std::vector<Inequality> h_rep;
    std::vector<RationalVector> v_rep;
    /// One entry per inequality; unset for redundant rows. Filled in by
    /// label_facets().
    std::vector<std::optional<Integer>> facet_labels;
    std::vector<bool> is_facet;
    /// f_vector[k] = number of k-dimensional faces, k = 0..n.
    std::vector<std::size_t> f_vector;
    bool empty = false;
    bool bounded = true;
    bool regular = true;
    /// n! * Euclidean volume in lambda-coordinates; unset when unbounded or empty.
    std::optional<Rational> normalized_volume;
};

MomentPolytope polytope_of(const AffineSlice& slice);
MomentPolytope moment_polytope(const ToricStackData& data);

}  // namespace toric
