#include "numeric_verify.hpp"

#include "rational_lp.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

namespace toric::numeric {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr int kMaxRejections = 1000;

MatrixXd lie_basis(const ToricStackData& data) {
    const auto& L = data.A.lie_algebra_basis;
    MatrixXd m(static_cast<Eigen::Index>(L.rows()), static_cast<Eigen::Index>(L.cols()));
    for (std::size_t r = 0; r < L.rows(); ++r)
        for (std::size_t c = 0; c < L.cols(); ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = L(r, c).get_d();
    return m;
}

// Singular values normalized by the largest one; empty when all vanish.
struct RankInfo {
    std::size_t rank = 0;
    bool well_conditioned = true;
};

// Singular values are normalized by `scale`, or by the largest one when no
// reference scale is given.
RankInfo numerical_rank(const VectorXd& sv, double tol, double scale = 0.0) {
    RankInfo info;
    const double ref = scale > 0.0 ? scale : (sv.size() ? sv(0) : 0.0);
    if (sv.size() == 0 || ref == 0.0) return info;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        double s = sv(i) / ref;
        if (s > tol) ++info.rank;
        if (s >= tol / 10 && s <= tol * 10) info.well_conditioned = false;
    }
    return info;
}

// Columns u_{eps_i}(z) for the Lie algebra basis rows eps_i.
MatrixXd generator_matrix(const ToricStackData& data, std::span<const std::complex<double>> z) {
    MatrixXd basis = lie_basis(data);
    const std::size_t N = z.size();
    MatrixXd U(static_cast<Eigen::Index>(2 * N), basis.rows());
    for (Eigen::Index i = 0; i < basis.rows(); ++i) {
        std::vector<double> eps(N);
        for (std::size_t j = 0; j < N; ++j) eps[j] = basis(i, static_cast<Eigen::Index>(j));
        auto u = generator(z, eps);
        for (std::size_t k = 0; k < 2 * N; ++k) U(static_cast<Eigen::Index>(k), i) = u[k];
    }
    return U;
}

Rational quantized_uniform(std::mt19937_64& rng, const Rational& lo, const Rational& hi) {
    // k / 2^32 with k uniform: an exact rational in [0, 1).
    Rational u(Integer(static_cast<unsigned long>(rng() >> 32)), Integer(1) << 32);
    u.canonicalize();
    return lo + u * (hi - lo);
}

SamplePoint make_point(const ToricStackData& data, const AffineSlice& slice, RationalVector lambda,
                       OrthantFace face, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    RationalVector x = slice.point(lambda);
    SamplePoint p;
    p.z.resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        double r = std::sqrt(x[j].get_d());
        double phi = phase(rng);
        p.z[j] = std::polar(r, phi);
    }
    for (auto j : face) p.z[j] = 0.0;

    // mu_A(z)_i = <eps_i, |z|^2> against a_i = <eps_i, a_lift>.
    const auto& L = data.A.lie_algebra_basis;
    double scale = 1.0, worst = 0.0;
    auto mu = moment_eval(p.z);
    for (std::size_t i = 0; i < L.rows(); ++i) {
        double lhs = 0.0;
        Rational a = 0;
        for (std::size_t j = 0; j < L.cols(); ++j) {
            lhs += L(i, j).get_d() * mu[j];
            a += Rational(L(i, j)) * data.a_lift[j];
        }
        scale = std::max(scale, std::abs(a.get_d()));
        worst = std::max(worst, std::abs(lhs - a.get_d()));
    }
    p.residual_level_error = worst / scale;
    p.lambda = std::move(lambda);
    p.face = std::move(face);
    return p;
}

bool strictly_inside(const AffineSlice& slice, const RationalVector& lambda, const OrthantFace& J) {
    for (std::size_t j = 0; j < slice.N(); ++j) {
        if (std::binary_search(J.begin(), J.end(), j)) continue;
        if (slice.coordinate(j, lambda) <= 0) return false;
    }
    return true;
}

// Halve the step from `inner` toward `candidate` until strictly inside.
RationalVector pull_inside(const AffineSlice& slice, const RationalVector& inner, RationalVector candidate,
                           const OrthantFace& J) {
    while (!strictly_inside(slice, candidate, J))
        for (std::size_t i = 0; i < candidate.size(); ++i) candidate[i] = (candidate[i] + inner[i]) / 2;
    return candidate;
}

}  // namespace

std::vector<double> symplectic_matrix(std::size_t N) {
    std::vector<double> omega(4 * N * N, 0.0);
    for (std::size_t j = 0; j < N; ++j) {
        omega[(2 * j) * 2 * N + 2 * j + 1] = 2.0;
        omega[(2 * j + 1) * 2 * N + 2 * j] = -2.0;
    }
    return omega;
}

std::vector<double> generator(std::span<const std::complex<double>> z, std::span<const double> eps) {
    std::vector<double> u(2 * z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        std::complex<double> v = kGeneratorScale * std::complex<double>(0.0, 1.0) * eps[j] * z[j];
        u[2 * j] = v.real();
        u[2 * j + 1] = v.imag();
    }
    return u;
}

double check_moment_equation(std::span<const std::complex<double>> z, std::span<const double> eps,
                             double h) {
    const std::size_t N = z.size();
    const std::size_t dim = 2 * N;

    // u_eps = sum_k eps_k * (a(h e_k, z) - a(-h e_k, z)) / 2h.
    std::vector<double> u(dim, 0.0);
    for (std::size_t k = 0; k < N; ++k) {
        if (eps[k] == 0.0) continue;
        std::complex<double> plus = std::exp(std::complex<double>(0.0, kGeneratorScale * h)) * z[k];
        std::complex<double> minus = std::exp(std::complex<double>(0.0, -kGeneratorScale * h)) * z[k];
        std::complex<double> d = (plus - minus) / (2.0 * h);
        u[2 * k] += eps[k] * d.real();
        u[2 * k + 1] += eps[k] * d.imag();
    }

    std::vector<double> coords(dim);
    for (std::size_t j = 0; j < N; ++j) {
        coords[2 * j] = z[j].real();
        coords[2 * j + 1] = z[j].imag();
    }
    auto pairing = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t j = 0; j < N; ++j) s += eps[j] * (v[2 * j] * v[2 * j] + v[2 * j + 1] * v[2 * j + 1]);
        return s;
    };

    auto omega = symplectic_matrix(N);
    double residual = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
        double contraction = 0.0;
        for (std::size_t a = 0; a < dim; ++a) contraction += u[a] * omega[a * dim + b];
        auto fwd = coords, bwd = coords;
        fwd[b] += h;
        bwd[b] -= h;
        double differential = (pairing(fwd) - pairing(bwd)) / (2.0 * h);
        residual = std::max(residual, std::abs(contraction - differential));
    }
    return residual;
}

bool check_local_freeness(const ToricStackData& data, std::span<const std::complex<double>> z, double tol) {
    MatrixXd U = generator_matrix(data, z);
    if (U.cols() == 0) return true;
    Eigen::JacobiSVD<MatrixXd> svd(U);
    return numerical_rank(svd.singularValues(), tol).rank == static_cast<std::size_t>(U.cols());
}

bool check_groupoid_transversality(const ToricStackData& data, std::span<const std::complex<double>> z,
                                   double tol) {
    // T_(e,z)(A_hat x Z) = a + T_z Z. ker ds = {(xi, 0)}, ker dt = {(xi, -u_xi)}.
    MatrixXd U = generator_matrix(data, z);
    const Eigen::Index d = U.cols();
    if (d == 0) return true;
    const Eigen::Index two_n = U.rows();
    MatrixXd both = MatrixXd::Zero(d + two_n, 2 * d);
    both.block(0, 0, d, d) = MatrixXd::Identity(d, d);
    both.block(0, d, d, d) = MatrixXd::Identity(d, d);
    both.block(d, d, two_n, d) = -U;
    Eigen::JacobiSVD<MatrixXd> svd(both);
    return numerical_rank(svd.singularValues(), tol).rank == static_cast<std::size_t>(2 * d);
}

KernelRank check_reduced_kernel_rank(const ToricStackData& data, std::span<const std::complex<double>> z,
                                     double tol) {
    const std::size_t N = z.size();
    const Eigen::Index dim = static_cast<Eigen::Index>(2 * N);
    MatrixXd basis = lie_basis(data);
    KernelRank out;
    out.expected = static_cast<std::size_t>(basis.rows());

    // d mu_A: row i is the gradient of sum_j eps_ij |z_j|^2.
    MatrixXd dmu(basis.rows(), dim);
    for (Eigen::Index i = 0; i < basis.rows(); ++i)
        for (std::size_t j = 0; j < N; ++j) {
            dmu(i, static_cast<Eigen::Index>(2 * j)) = 2.0 * basis(i, static_cast<Eigen::Index>(j)) * z[j].real();
            dmu(i, static_cast<Eigen::Index>(2 * j + 1)) = 2.0 * basis(i, static_cast<Eigen::Index>(j)) * z[j].imag();
        }

    MatrixXd tangent;
    if (dmu.rows() == 0) {
        tangent = MatrixXd::Identity(dim, dim);
    } else {
        Eigen::JacobiSVD<MatrixXd> svd(dmu, Eigen::ComputeFullV);
        RankInfo r = numerical_rank(svd.singularValues(), tol);
        out.well_conditioned = out.well_conditioned && r.well_conditioned;
        tangent = svd.matrixV().rightCols(dim - static_cast<Eigen::Index>(r.rank));
    }
    out.tangent_dim = static_cast<std::size_t>(tangent.cols());

    auto om = symplectic_matrix(N);
    MatrixXd omega(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a)
        for (Eigen::Index b = 0; b < dim; ++b) omega(a, b) = om[static_cast<std::size_t>(a * dim + b)];
    MatrixXd restricted = tangent.transpose() * omega * tangent;
    if (restricted.rows() == 0) return out;
    // The tangent basis is orthonormal, so omega's own norm is the natural
    // scale; omega|T may vanish identically (Lagrangian level sets).
    Eigen::JacobiSVD<MatrixXd> svd(restricted);
    RankInfo r = numerical_rank(svd.singularValues(), tol, omega.norm() / std::sqrt(static_cast<double>(dim)));
    out.well_conditioned = out.well_conditioned && r.well_conditioned;
    out.dim_kernel = out.tangent_dim - r.rank;
    return out;
}

std::vector<SamplePoint> sample_level_points(const ToricStackData& data, std::size_t count,
                                             std::uint64_t seed) {
    AffineSlice slice = affine_slice(data);
    auto inner = face_point(slice, {});
    if (!inner) throw EmptyInterior("level set misses the open orthant");
    const std::size_t n = slice.dim();

    // Bounding box from exact LPs; unbounded sides are capped around the
    // interior point.
    std::vector<std::optional<Rational>> lo(n), hi(n);
    Rational width = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (int sign : {1, -1}) {
            LinearProgram lp;
            lp.num_vars = n;
            for (std::size_t j = 0; j < slice.N(); ++j) {
                RationalVector row(n);
                for (std::size_t k = 0; k < n; ++k) row[k] = slice.directions(k, j);
                lp.add(std::move(row), Relation::GreaterEqual, Rational(-slice.base[j]));
            }
            lp.objective.assign(n, Rational(0));
            lp.objective[i] = sign;
            LpResult r = solve(lp);
            if (r.status != LpStatus::Optimal) continue;
            if (sign > 0) hi[i] = r.value;
            else lo[i] = -r.value;
        }
    for (std::size_t i = 0; i < n; ++i)
        if (lo[i] && hi[i]) width = std::max(width, Rational(*hi[i] - *lo[i]));
    for (std::size_t i = 0; i < n; ++i) {
        if (!lo[i]) lo[i] = (*inner)[i] - width;
        if (!hi[i]) hi[i] = (*inner)[i] + width;
    }

    std::mt19937_64 rng(seed);
    std::vector<SamplePoint> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        RationalVector lambda(n);
        bool accepted = false;
        for (int attempt = 0; attempt < kMaxRejections && !accepted; ++attempt) {
            for (std::size_t i = 0; i < n; ++i) lambda[i] = quantized_uniform(rng, *lo[i], *hi[i]);
            accepted = strictly_inside(slice, lambda, {});
        }
        if (!accepted) lambda = pull_inside(slice, *inner, lambda, {});
        out.push_back(make_point(data, slice, std::move(lambda), {}, rng));
    }
    return out;
}

std::vector<SamplePoint> sample_stratum_points(const ToricStackData& data, const OrthantFace& J,
                                               std::size_t count, std::uint64_t seed) {
    AffineSlice slice = affine_slice(data);
    auto inner = face_point(slice, J);
    if (!inner) throw EmptyInterior("stratum misses the level set");
    const std::size_t n = slice.dim();

    // Directions keeping x_j = 0 for j in J.
    RationalMatrix tight(J.size(), n);
    for (std::size_t r = 0; r < J.size(); ++r)
        for (std::size_t k = 0; k < n; ++k) tight(r, k) = slice.directions(k, J[r]);
    RationalMatrix along = rational_kernel(tight);

    std::mt19937_64 rng(seed);
    std::vector<SamplePoint> out;
    out.reserve(count);
    const Rational one = 1;
    for (std::size_t s = 0; s < count; ++s) {
        RationalVector lambda = *inner;
        for (std::size_t r = 0; r < along.rows(); ++r) {
            Rational c = quantized_uniform(rng, -one, one);
            for (std::size_t k = 0; k < n; ++k) lambda[k] += c * along(r, k);
        }
        lambda = pull_inside(slice, *inner, std::move(lambda), J);
        out.push_back(make_point(data, slice, std::move(lambda), J, rng));
    }
    return out;
}

NumericReport verify(const ToricStackData& data, const VerifyOptions& options) {
    NumericReport rep;
    rep.options = options;
    AffineSlice slice = affine_slice(data);
    RegularityVerdict verdict = regularity(slice);
    auto faces = meeting_faces(slice);

    std::vector<SamplePoint> points;
    if (!faces.empty()) {
        std::vector<std::size_t> quota(faces.size(), options.samples / faces.size());
        for (std::size_t i = 0; i < options.samples % faces.size(); ++i) ++quota[i];
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (quota[f] == 0) continue;
            auto pts = sample_stratum_points(data, faces[f].J, quota[f], options.seed + f);
            points.insert(points.end(), pts.begin(), pts.end());
        }
    }

    std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    const std::size_t N = data.N();

    for (const auto& p : points) {
        rep.max_level_residual = std::max(rep.max_level_residual, p.residual_level_error);
        std::vector<double> eps(N);
        for (auto& e : eps) e = coeff(rng);
        rep.max_moment_residual = std::max(rep.max_moment_residual, check_moment_equation(p.z, eps, options.fd_step));

        bool free = check_local_freeness(data, p.z, options.tol);
        bool transverse = check_groupoid_transversality(data, p.z, options.tol);
        if (free) ++rep.locally_free_samples;
        if (free != transverse) rep.transversality_agrees = false;
        if (verdict.regular && !free) rep.local_freeness_agrees = false;

        if (free) {
            KernelRank k = check_reduced_kernel_rank(data, p.z, options.tol);
            if (k.well_conditioned) {
                ++rep.well_conditioned_samples;
                if (k.dim_kernel == k.expected) ++rep.kernel_rank_matches;
            }
        }
    }
    rep.samples = points.size();

    if (!verdict.regular) {
        SamplePoint w = sample_stratum_points(data, *verdict.witness, 1, options.seed).front();
        rep.witness_checked = true;
        rep.witness_locally_free = check_local_freeness(data, w.z, options.tol);
        if (rep.witness_locally_free) rep.local_freeness_agrees = false;
        if (check_groupoid_transversality(data, w.z, options.tol) != rep.witness_locally_free)
            rep.transversality_agrees = false;
    }

    rep.kernel_rank_agrees =
        rep.well_conditioned_samples == 0 ||
        100 * rep.kernel_rank_matches >= 99 * rep.well_conditioned_samples;
    return rep;
}

}  // namespace toric::numeric
