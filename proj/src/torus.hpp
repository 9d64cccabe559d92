#pragma once

#include "lattice.hpp"

namespace toric {

/// Extension 1 -> Gamma -> T^N_hat -> T^N -> 1 with T^N_hat = R^N / L_hat for
/// a finite-index sublattice L_hat of Z^N (rows of `lattice_hat`), so that
/// Gamma = Z^N / L_hat.
struct TorusExtension {
    std::size_t N = 0;
    IntegerMatrix lattice_hat;
    FiniteAbelianGroup gamma;
};

/// A = ker(B : T^N -> T^n) for an integral n x N matrix B of rank n.
struct ClosedSubgroup {
    IntegerMatrix B;
    /// Rows span the Lie algebra ker_R(B) (integral HNF basis).
    IntegerMatrix lie_algebra_basis;
    /// Rows span the annihilator of the Lie algebra, i.e. rowspace(B).
    RationalMatrix annihilator_basis;
    /// pi_0(A) = Z^n / B Z^N.
    FiniteAbelianGroup component_group;

    std::size_t ambient_dim() const noexcept { return B.cols(); }
    std::size_t codim() const noexcept { return B.rows(); }
    std::size_t dim() const noexcept { return B.cols() - B.rows(); }
};

/// Preimage A_hat = {t in R^N : B t in Z^n} / L_hat of A in T^N_hat.
struct SubgroupHat {
    TorusExtension parent;
    ClosedSubgroup base;

    /// pi_0(A_hat) = Z^n / (B * L_hat^T).
    FiniteAbelianGroup component_group() const;
};

/// G = T^N / A, identified with T^n through B.
struct ResidualTorus {
    std::size_t n = 0;
    IntegerMatrix identification;
};

TorusExtension make_extension(std::size_t N, IntegerMatrix lattice_hat);
ClosedSubgroup subgroup_from_kernel(IntegerMatrix B);
SubgroupHat preimage_in_extension(const TorusExtension& ext, const ClosedSubgroup& A);
ResidualTorus residual_torus(const ClosedSubgroup& A);

}  // namespace toric
