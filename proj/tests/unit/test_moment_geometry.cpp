#include <doctest.h>

#include "moment_geometry.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <random>

using namespace toric;
using support::face;

namespace {

ToricStackData cp1(long a1 = 1, long a2 = 0) {
    return make_stack_data(2, IntegerMatrix::identity(2), IntegerMatrix{{1, -1}}, {a1, a2});
}
ToricStackData teardrop() { return make_stack_data(2, IntegerMatrix::identity(2), IntegerMatrix{{2, -1}}, {0, 2}); }
ToricStackData cp2() {
    return make_stack_data(3, IntegerMatrix::identity(3), IntegerMatrix{{1, -1, 0}, {0, 1, -1}}, {1, 0, 0});
}

}  // namespace

TEST_CASE("moment_eval") {
    using C = std::complex<double>;
    std::vector<C> z0{0, 0};
    CHECK(moment_eval(z0) == std::vector<double>{0, 0});
    std::vector<C> z1{1, C(0, 1)};
    CHECK(moment_eval(z1) == std::vector<double>{1, 1});
    std::vector<C> z2{C(1, 1), 2};
    CHECK(moment_eval(z2) == std::vector<double>{2, 4});
    std::vector<std::pair<Rational, Rational>> q{{make_rational(1, 2), make_rational(1, 3)}};
    CHECK(moment_eval(q) == RationalVector{make_rational(13, 36)});
}

TEST_CASE("make_stack_data validation") {
    CHECK_THROWS_AS(make_stack_data(2, IntegerMatrix::identity(2), IntegerMatrix{{1, -1}}, {1}), InputError);
    CHECK_THROWS_AS(make_stack_data(2, IntegerMatrix::identity(2), IntegerMatrix{{1, -1, 0}}, {1, 0}), InputError);
}

TEST_CASE("face_meets_slice examples") {
    auto d = cp1();
    CHECK(face_meets_slice(d, {}));
    CHECK_FALSE(face_meets_slice(d, face({1, 2})));
    CHECK(face_meets_slice(d, face({1})));
    CHECK(face_meets_slice(d, face({2})));
    CHECK(interior_meets_slice(d));
    CHECK_FALSE(interior_meets_slice(cp1(-1, -1)));
    CHECK(interior_meets_slice(teardrop()));

    auto slice = affine_slice(d);
    auto p = face_point(slice, face({1}));
    REQUIRE(p);
    CHECK(slice.coordinate(0, *p) == 0);
    CHECK(slice.coordinate(1, *p) > 0);
}

TEST_CASE("slice constancy along the Lie algebra of A") {
    for (const auto& name : support::corpus()) {
        auto d = support::load(name).to_data();
        auto slice = affine_slice(d);
        std::mt19937_64 rng(1);
        std::uniform_int_distribution<int> c(-5, 5);
        for (std::size_t r = 0; r < d.A.lie_algebra_basis.rows(); ++r) {
            auto v = d.A.lie_algebra_basis.row(r);
            auto pairing = [&](const RationalVector& x) {
                Rational s = 0;
                for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * v[j];
                return s;
            };
            for (int t = 0; t < 5; ++t) {
                RationalVector lambda(d.n());
                for (auto& l : lambda) l = Rational(c(rng), 3);
                for (auto& l : lambda) l.canonicalize();
                CHECK(pairing(slice.point(lambda)) == pairing(d.a_lift));
            }
        }
    }
}

TEST_CASE("regularity verdicts") {
    CHECK(is_regular_value(cp1()).regular);
    auto sing = is_regular_value(cp1(0, 0));
    CHECK_FALSE(sing.regular);
    REQUIRE(sing.witness);
    CHECK(*sing.witness == face({1, 2}));
    CHECK(is_regular_value(teardrop()).regular);
    CHECK(is_regular_value(cp2()).regular);
    // Empty level: regular vacuously.
    CHECK(is_regular_value(cp1(-1, -1)).regular);
}

TEST_CASE("witness is the lexicographically smallest offending face") {
    // x = (l1, -l1, 1 + l2): both {1,2} and {1,2,3} meet with dependent normals.
    auto d = make_stack_data(3, IntegerMatrix::identity(3), IntegerMatrix{{1, -1, 0}, {0, 0, 1}}, {0, 0, 1});
    auto v = is_regular_value(d);
    REQUIRE_FALSE(v.regular);
    CHECK(*v.witness == face({1, 2}));
}

TEST_CASE("meeting faces ordering and monotone consistency") {
    auto slice = affine_slice(cp2());
    auto faces = meeting_faces(slice);
    std::vector<OrthantFace> Js;
    for (const auto& f : faces) Js.push_back(f.J);
    CHECK(Js == std::vector<OrthantFace>{{}, {0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}});
    for (const auto& f : faces) {
        for (std::size_t drop = 0; drop < f.J.size(); ++drop) {
            OrthantFace sub = f.J;
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
            CHECK(closed_face_meets(slice, sub));
        }
    }
}

TEST_CASE("polytope examples") {
    auto p1 = moment_polytope(cp1());
    CHECK(p1.v_rep == std::vector<RationalVector>{{-1}, {0}});
    CHECK(p1.bounded);
    CHECK(p1.normalized_volume == Rational(1));
    CHECK(p1.f_vector == std::vector<std::size_t>{2, 1});

    auto p2 = moment_polytope(cp2());
    CHECK(p2.v_rep == std::vector<RationalVector>{{-1, -1}, {-1, 0}, {0, 0}});
    CHECK(p2.f_vector == std::vector<std::size_t>{3, 3, 1});
    CHECK(p2.normalized_volume == Rational(1));

    auto pt = moment_polytope(teardrop());
    CHECK(pt.v_rep == std::vector<RationalVector>{{0}, {2}});

    auto pe = moment_polytope(cp1(-1, -1));
    CHECK(pe.empty);
    CHECK(pe.v_rep.empty());
    CHECK_FALSE(pe.normalized_volume);

    auto ray = moment_polytope(support::load("stages_coordinate.json").to_data());
    CHECK_FALSE(ray.bounded);
    CHECK_FALSE(ray.normalized_volume);
    CHECK(ray.v_rep.size() == 1);
}

TEST_CASE("vertices agree with the Cramer oracle and are simple on regular levels") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> num(-6, 6);
    int regular_seen = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t N = 3 + trial % 3;
        const std::size_t n = 1 + trial % 2;
        IntegerMatrix B = oracle::random_matrix(n, N, -2, 2, rng);
        if (rank(B) < n) continue;
        RationalVector a(N);
        for (auto& q : a) q = Rational(num(rng), 2);
        for (auto& q : a) q.canonicalize();
        auto d = make_stack_data(N, IntegerMatrix::identity(N), B, a);
        auto poly = moment_polytope(d);
        auto ref = oracle::polytope_vertices(B, a);
        CHECK(std::set<RationalVector>(poly.v_rep.begin(), poly.v_rep.end()) == ref);
        if (!is_regular_value(d).regular) continue;
        ++regular_seen;
        auto slice = affine_slice(d);
        for (const auto& v : poly.v_rep) {
            std::vector<std::size_t> tight;
            for (std::size_t j = 0; j < N; ++j)
                if (slice.coordinate(j, v) == 0) tight.push_back(j);
            CHECK(tight.size() == n);
            CHECK(rank(B.select_cols(tight)) == n);
        }
    }
    CHECK(regular_seen > 20);
}

TEST_CASE("2D volume agrees with the shoelace formula") {
    auto d = support::load("weighted_p112.json").to_data();
    auto p = moment_polytope(d);
    REQUIRE(p.v_rep.size() == 3);
    // Shoelace over the convex hull order; a triangle needs no sorting.
    const auto& v = p.v_rep;
    Rational area2 = (v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]);
    CHECK(p.normalized_volume == abs(area2));
}

TEST_CASE("unimodular change of B preserves the combinatorics") {
    std::mt19937_64 rng(9);
    for (const auto& name : support::corpus()) {
        auto spec = support::load(name);
        auto base = moment_polytope(spec.to_data());
        auto verdict = is_regular_value(spec.to_data());
        for (int t = 0; t < 5; ++t) {
            IntegerMatrix U = oracle::random_unimodular(spec.B.rows(), rng);
            auto d = make_stack_data(spec.N, spec.lattice_hat, U * spec.B, spec.a_lift);
            auto p = moment_polytope(d);
            CHECK(p.f_vector == base.f_vector);
            CHECK(p.v_rep.size() == base.v_rep.size());
            CHECK(p.normalized_volume == base.normalized_volume);
            CHECK(is_regular_value(d).regular == verdict.regular);
            CHECK(is_regular_value(d).witness == verdict.witness);
        }
    }
}
