#include "torus.hpp"

namespace toric {

TorusExtension make_extension(std::size_t N, IntegerMatrix lattice_hat) {
    if (lattice_hat.rows() != N || lattice_hat.cols() != N)
        throw InputError("lattice_hat", "lattice_hat must be " + std::to_string(N) + "x" +
                                            std::to_string(N));
    if (N > 0 && determinant(lattice_hat) == 0)
        throw InputError("lattice_hat", "lattice_hat not finite index (det = 0)");
    TorusExtension ext;
    ext.N = N;
    ext.gamma = cokernel_structure(lattice_hat);
    ext.lattice_hat = std::move(lattice_hat);
    return ext;
}

ClosedSubgroup subgroup_from_kernel(IntegerMatrix B) {
    if (rank(B) != B.rows())
        throw InputError("B", "B is rank deficient (rank " + std::to_string(rank(B)) + " < " +
                                  std::to_string(B.rows()) + ")");
    ClosedSubgroup A;
    A.lie_algebra_basis = integer_kernel_basis(B);
    A.annihilator_basis = to_rational(B);
    // Z^n / B Z^N is the cokernel of the column lattice of B.
    A.component_group = cokernel_structure(B.transpose());
    A.B = std::move(B);
    return A;
}

FiniteAbelianGroup SubgroupHat::component_group() const {
    IntegerMatrix image = base.B * parent.lattice_hat.transpose();
    return cokernel_structure(image.transpose());
}

SubgroupHat preimage_in_extension(const TorusExtension& ext, const ClosedSubgroup& A) {
    if (A.ambient_dim() != ext.N)
        throw InputError("B", "B has " + std::to_string(A.ambient_dim()) + " columns, expected N = " +
                                  std::to_string(ext.N));
    return SubgroupHat{ext, A};
}

ResidualTorus residual_torus(const ClosedSubgroup& A) { return ResidualTorus{A.codim(), A.B}; }

}  // namespace toric
