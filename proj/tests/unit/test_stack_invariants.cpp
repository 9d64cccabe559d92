#include <doctest.h>

#include "oracles.hpp"
#include "stack_invariants.hpp"
#include "support.hpp"

#include <random>

using namespace toric;
using support::face;

namespace {

FiniteAbelianGroup Zmod(long d) { return FiniteAbelianGroup::from_cyclic_orders({Integer(d)}); }

ToricStackData teardrop() { return make_stack_data(2, IntegerMatrix::identity(2), IntegerMatrix{{2, -1}}, {0, 2}); }
ToricStackData gerbe() { return make_stack_data(1, IntegerMatrix{{2}}, IntegerMatrix(0, 1), {1}); }
ToricStackData cp1() { return make_stack_data(2, IntegerMatrix::identity(2), IntegerMatrix{{1, -1}}, {1, 0}); }

// t satisfies the defining congruences of L_J.
bool in_congruence_lattice(const IntegerMatrix& C, const OrthantFace& J, const RationalVector& t) {
    for (std::size_t j = 0; j < t.size(); ++j)
        if (std::find(J.begin(), J.end(), j) == J.end() && t[j].get_den() != 1) return false;
    for (std::size_t r = 0; r < C.rows(); ++r) {
        Rational s = 0;
        for (std::size_t c = 0; c < t.size(); ++c) s += C(r, c) * t[c];
        if (s.get_den() != 1) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("stabilizer examples") {
    CHECK(stabilizer_on_face(teardrop(), face({1})) == Zmod(2));
    CHECK(stabilizer_on_face(teardrop(), face({2})).is_trivial());
    CHECK(stabilizer_on_face(teardrop(), {}).is_trivial());
    CHECK(stabilizer_on_face(gerbe(), {}) == Zmod(2));
    CHECK_THROWS_AS(stabilizer_on_face(cp1(), face({1, 2})), PreconditionError);
    auto sing = make_stack_data(2, IntegerMatrix::identity(2), IntegerMatrix{{1, -1}}, {0, 0});
    CHECK_THROWS_AS(stabilizer_on_face(sing, face({1, 2})), InfiniteStabilizer);
}

TEST_CASE("inertia tables") {
    auto t = inertia_table(teardrop());
    REQUIRE(t.size() == 3);
    CHECK(t[0].face.empty());
    CHECK(t[0].is_generic);
    CHECK(t[0].group.is_trivial());
    CHECK(t[1].face == face({1}));
    CHECK(t[1].group == Zmod(2));
    CHECK(t[2].group.is_trivial());

    auto g = inertia_table(gerbe());
    REQUIRE(g.size() == 1);
    CHECK(g[0].group == Zmod(2));

    for (const auto& r : inertia_table(cp1())) CHECK(r.group.is_trivial());
    auto sing = make_stack_data(2, IntegerMatrix::identity(2), IntegerMatrix{{1, -1}}, {0, 0});
    CHECK_THROWS_AS(inertia_table(sing), PreconditionError);
}

TEST_CASE("facet labels") {
    auto d = teardrop();
    auto p = moment_polytope(d);
    label_facets(d, p);
    REQUIRE(p.facet_labels.size() == 2);
    CHECK(p.facet_labels[0] == Integer(2));
    CHECK(p.facet_labels[1] == Integer(1));

    auto g = support::load("orbifold_gamma.json").to_data();
    auto pg = moment_polytope(g);
    label_facets(g, pg);
    CHECK(pg.facet_labels[0] == Integer(2));
    CHECK(pg.facet_labels[1] == Integer(2));
}

TEST_CASE("summaries") {
    auto s = stack_summary(cp1());
    CHECK(s.dimension == std::size_t{2});
    CHECK(s.residual_torus_dim == 1);
    CHECK(s.gerbe->is_trivial());
    CHECK(s.effective);
    CHECK(s.regular);
    CHECK_FALSE(s.empty);

    auto g = stack_summary(gerbe());
    CHECK(g.dimension == std::size_t{0});
    CHECK(g.gerbe == Zmod(2));
    CHECK(g.effective);

    auto e = stack_summary(make_stack_data(2, IntegerMatrix::identity(2), IntegerMatrix{{1, -1}}, {-1, -1}));
    CHECK(e.empty);
    CHECK_FALSE(e.dimension);
    CHECK(effectiveness_check(teardrop()));
}

TEST_CASE("stabilizers agree with explicit coset enumeration") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> num(-4, 4);
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t N = 2 + trial % 2;
        const std::size_t n = 1 + trial % N;
        IntegerMatrix B = oracle::random_matrix(n, N, -3, 3, rng);
        if (rank(B) < n) continue;
        IntegerMatrix L = IntegerMatrix::identity(N);
        if (trial % 3 == 0) L = oracle::random_matrix(N, N, -2, 2, rng);
        Integer det = determinant(L);
        if (det == 0 || abs(det) > 4) continue;
        RationalVector a(N);
        for (auto& q : a) q = num(rng);
        auto d = make_stack_data(N, L, B, a);
        if (!is_regular_value(d).regular) continue;
        for (const auto& f : meeting_faces(affine_slice(d))) {
            auto got = stabilizer_on_face(d, f.J);
            auto ref = oracle::enumerate_stabilizer(L, B, f.J, 24);
            CHECK(got.order() == ref.order);
            CHECK(oracle::order_profile(got.invariant_factors(), 24) == ref.profile);
            ++checked;
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("gerbe identity and monotonicity on the corpus") {
    for (const auto& name : support::corpus()) {
        auto d = support::load(name).to_data();
        if (!is_regular_value(d).regular || !interior_meets_slice(d)) continue;
        CHECK(stabilizer_on_face(d, {}) == d.ext.gamma);
        auto faces = meeting_faces(affine_slice(d));
        for (const auto& big : faces)
            for (const auto& small : faces) {
                if (!std::includes(big.J.begin(), big.J.end(), small.J.begin(), small.J.end())) continue;
                CHECK(stabilizer_on_face(d, big.J).order() % stabilizer_on_face(d, small.J).order() == 0);
                RationalMatrix basis = congruence_lattice_basis(d.A.B, small.J);
                for (std::size_t c = 0; c < basis.cols(); ++c)
                    CHECK(in_congruence_lattice(d.A.B, big.J, basis.col(c)));
            }
    }
}

TEST_CASE("stages fixtures") {
    auto run = [](const std::string& name) {
        auto spec = support::load(name);
        return stages_verify(spec.to_data(), spec.stages->B_inner, spec.stages->level_shift);
    };
    CHECK(run("stages_coordinate.json").status == StagesStatus::Consistent);
    CHECK(run("stages_identity.json").status == StagesStatus::Consistent);
    CHECK(run("stages_teardrop.json").status == StagesStatus::Consistent);
    CHECK(run("stages_uncorrupted.json").status == StagesStatus::Consistent);
    auto bad = run("stages_corrupted.json");
    CHECK(bad.status == StagesStatus::Inconsistent);
    CHECK(bad.detail.rfind("vertex_inertia", 0) == 0);
    REQUIRE(bad.one_shot);
    REQUIRE(bad.staged);
    CHECK(bad.one_shot->facet_labels != bad.staged->facet_labels);
    CHECK(run("stages_nesting_violated.json").status == StagesStatus::NestingViolated);

    auto coord = run("stages_coordinate.json");
    CHECK(coord.one_shot->dimension == 2);
    CHECK(coord.quotient_map == IntegerMatrix{{0, 1}});
}

TEST_CASE("stages: component groups must nest") {
    // ker(2 t) has two components; ker(t) has one. ker(t) is inside ker(2t) but not conversely.
    auto outer = make_stack_data(1, IntegerMatrix{{1}}, IntegerMatrix{{1}}, {1});
    auto r = stages_verify(outer, IntegerMatrix{{2}});
    CHECK(r.status == StagesStatus::NestingViolated);
    auto outer2 = make_stack_data(1, IntegerMatrix{{1}}, IntegerMatrix{{2}}, {1});
    CHECK(stages_verify(outer2, IntegerMatrix{{1}}).status != StagesStatus::NestingViolated);
}
