#pragma once

#include "moment_geometry.hpp"

#include <string>

namespace toric {

class InfiniteStabilizer : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Columns form a basis of L_J = {t in R^N : C t in Z^n, t_j in Z for j
/// not in J}. Throws InfiniteStabilizer when the columns of C on J are
/// dependent (L_J is then not discrete).
RationalMatrix congruence_lattice_basis(const IntegerMatrix& C, const OrthantFace& J);

/// L_J / lattice_hat for the congruence matrix C.
FiniteAbelianGroup stabilizer_group(const IntegerMatrix& lattice_hat, const IntegerMatrix& C,
                                    const OrthantFace& J);

/// A_hat-stabilizer of any point of Z whose zero set is exactly J.
/// Throws PreconditionError if J does not meet the slice and
/// InfiniteStabilizer on the irregular case.
FiniteAbelianGroup stabilizer_on_face(const ToricStackData& data, const OrthantFace& J);

struct InertiaRecord {
    OrthantFace face;
    FiniteAbelianGroup group;
    bool is_generic = false;
};

/// One record per meeting face, ordered by |J| then lexicographically.
/// Throws PreconditionError on an irregular level.
std::vector<InertiaRecord> inertia_table(const ToricStackData& data);

/// Sets facet_labels[j] = |stabilizer on the open facet j| for every facet.
void label_facets(const ToricStackData& data, MomentPolytope& polytope);

bool effectiveness_check(const ToricStackData& data);

struct StackSummary {
    std::optional<std::size_t> dimension;  // 2n when regular and nonempty
    std::size_t residual_torus_dim = 0;
    std::optional<FiniteAbelianGroup> gerbe;
    bool effective = false;
    bool regular = false;
    bool empty = false;
};

StackSummary stack_summary(const ToricStackData& data);

/// Invariants compared by the reduction-in-stages verifier.
struct StageInvariants {
    std::size_t dimension = 0;
    FiniteAbelianGroup gerbe;
    std::vector<FiniteAbelianGroup> vertex_inertia;  // sorted multiset
    std::vector<Integer> facet_labels;               // sorted multiset
    std::vector<std::size_t> f_vector;
    std::optional<Rational> normalized_volume;
    bool empty = false;
};

enum class StagesStatus { Consistent, Inconsistent, NestingViolated, Irregular };

struct StagesReport {
    StagesStatus status = StagesStatus::Consistent;
    std::string detail;
    /// Integral Q with B_outer = Q * B_inner (set when nesting holds).
    std::optional<IntegerMatrix> quotient_map;
    std::optional<StageInvariants> one_shot;
    std::optional<StageInvariants> staged;
};

/// Compares the one-shot reduction by A_hat_2 = ker(B_outer) with the
/// staged reduction: first by A_hat_1 = ker(B_inner) at the induced level,
/// then by A_2/A_1 = ker(Q) inside G_1 = T^{n_1} at the level whose lift in
/// G_1-coordinates is `level_shift` (zero when omitted).
StagesReport stages_verify(const ToricStackData& outer, const IntegerMatrix& inner_B,
                           const std::optional<RationalVector>& level_shift = std::nullopt);

}  // namespace toric
