#pragma once

#include "moment_geometry.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace toric::numeric {

using ComplexVector = std::vector<std::complex<double>>;

/// Infinitesimal action of e_k on C^N is u(z)_k = kGeneratorScale * i * z_k.
/// With omega = sqrt(-1) sum dz ^ dzbar = 2 sum dx ^ dy and
/// mu = sum |z_j|^2 e_j^*, the value -1 is the one for which
/// iota_u omega = d<e_k, mu> holds identically.
inline constexpr double kGeneratorScale = -1.0;

class EmptyInterior : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct SamplePoint {
    ComplexVector z;
    OrthantFace face;
    RationalVector lambda;
    double residual_level_error = 0.0;  // max_i |mu_A(z)_i - a_i| / max(1, |a|)
};

/// Interior points of the level set: lambda uniform in a rational bounding
/// box of the polytope (with rejection), x = a + B^T lambda exact, random
/// phases, z_j = sqrt(x_j) e^{i phi_j}. Throws EmptyInterior.
std::vector<SamplePoint> sample_level_points(const ToricStackData& data, std::size_t count,
                                             std::uint64_t seed);

/// Points of Z whose zero set is exactly J. Throws EmptyInterior when the
/// stratum misses the level.
std::vector<SamplePoint> sample_stratum_points(const ToricStackData& data, const OrthantFace& J,
                                               std::size_t count, std::uint64_t seed);

/// Real 2N x 2N matrix of omega in coordinates (x_1, y_1, x_2, y_2, ...).
std::vector<double> symplectic_matrix(std::size_t N);

/// Generator u_eps(z) as a real 2N-vector, closed form.
std::vector<double> generator(std::span<const std::complex<double>> z, std::span<const double> eps);

/// max over real coordinates of |iota_{u_eps} omega - d<eps, mu>|, where
/// u_eps is the central difference of the torus action along each e_k
/// (combined linearly in eps) and d<eps, mu> is a central difference too.
double check_moment_equation(std::span<const std::complex<double>> z, std::span<const double> eps,
                             double h);

/// Generators of the Lie algebra of A at z have full numerical rank.
bool check_local_freeness(const ToricStackData& data, std::span<const std::complex<double>> z,
                          double tol);

struct KernelRank {
    std::size_t dim_kernel = 0;
    std::size_t expected = 0;
    std::size_t tangent_dim = 0;
    /// False when a normalized singular value falls within a factor 10
    /// of the threshold; such samples are discarded by verify().
    bool well_conditioned = true;
};

/// Kernel dimension of omega restricted to T_z Z = ker d mu_A.
KernelRank check_reduced_kernel_rank(const ToricStackData& data, std::span<const std::complex<double>> z,
                                     double tol);

/// ker ds and ker dt of the action groupoid A_hat x Z => Z meet only in 0
/// at (e, z).
bool check_groupoid_transversality(const ToricStackData& data, std::span<const std::complex<double>> z,
                                   double tol);

/// Largest acceptable |d<mu,eps> - iota_u omega| over the samples.
inline constexpr double kMomentResidualBound = 1e-6;

struct VerifyOptions {
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    double fd_step = 1e-5;
};

struct NumericReport {
    std::size_t samples = 0;
    double max_moment_residual = 0.0;
    double max_level_residual = 0.0;
    std::size_t locally_free_samples = 0;
    bool witness_checked = false;
    bool witness_locally_free = false;
    bool local_freeness_agrees = true;
    std::size_t well_conditioned_samples = 0;
    std::size_t kernel_rank_matches = 0;
    bool kernel_rank_agrees = true;
    bool transversality_agrees = true;
    VerifyOptions options;

    bool moment_identity_holds() const { return max_moment_residual <= kMomentResidualBound; }
    bool all_agree() const {
        return moment_identity_holds() && local_freeness_agrees && kernel_rank_agrees && transversality_agrees;
    }
};

/// Samples spread round-robin over every stratum meeting the level, plus
/// the irregularity witness when there is one.
NumericReport verify(const ToricStackData& data, const VerifyOptions& options);

}  // namespace toric::numeric
