#pragma once

#include "matrix.hpp"

#include <string>
#include <vector>

namespace toric {

/// Finite abelian group in invariant-factor form: Z/d1 x ... x Z/dk with
/// d1 | d2 | ... | dk and every di >= 2. The empty list is the trivial group.
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;
    /// Normalizes an arbitrary list of positive cyclic orders into
    /// invariant factors (drops 1s, fixes the divisibility chain).
    static FiniteAbelianGroup from_cyclic_orders(std::vector<Integer> orders);

    const std::vector<Integer>& invariant_factors() const noexcept { return factors_; }
    Integer order() const;
    bool is_trivial() const noexcept { return factors_.empty(); }
    /// "1" for the trivial group, otherwise e.g. "Z/2 x Z/6".
    std::string to_string() const;

    friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;
    friend bool operator<(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.factors_ < b.factors_;
    }

private:
    std::vector<Integer> factors_;
};

/// U * M * V = D, U and V unimodular, D diagonal with d1 | d2 | ...,
/// nonnegative, zeros trailing.
struct SmithDecomposition {
    IntegerMatrix U;
    IntegerMatrix D;
    IntegerMatrix V;

    /// Nonzero diagonal entries of D.
    std::vector<Integer> nonzero_diagonal() const;
};

class NotFiniteIndex : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Smallest-absolute-value pivot, ties broken by lowest row then lowest
/// column. Deterministic.
SmithDecomposition smith_normal_form(const IntegerMatrix& m);

/// Row-style Hermite normal form of the lattice spanned by the rows of
/// `m`: echelon, positive pivots, entries above each pivot in [0, pivot).
/// Zero rows are dropped.
IntegerMatrix hermite_normal_form(const IntegerMatrix& m);

/// Z^cols / (row lattice of m) as torsion part plus free rank.
struct AbelianQuotient {
    FiniteAbelianGroup torsion;
    std::size_t free_rank = 0;
};
AbelianQuotient row_lattice_quotient(const IntegerMatrix& m);

/// Z^N / (row lattice of m), N = m.cols(). Throws NotFiniteIndex when
/// the row lattice has rank < N.
FiniteAbelianGroup cokernel_structure(const IntegerMatrix& m);

/// Rows: HNF basis of the saturated lattice {v in Z^cols : m v = 0}.
IntegerMatrix integer_kernel_basis(const IntegerMatrix& m);

}  // namespace toric
