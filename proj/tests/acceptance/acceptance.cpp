// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.  Each criterion carries its own wall-clock budget.

#include "oracles.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

using namespace toric;
using support::face;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) note << "first violation: " << what;
        ok = ok && cond;
    }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.ok = false;
        out.note << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= budget_s) {
        out.ok = false;
        out.note << " (over budget " << budget_s << " s)";
    }
    if (!out.ok) ++failures;
    std::printf("AC%-2d %s  %-58s %8.3f s  %s\n", id, out.ok ? "PASS" : "FAIL", title, secs, out.note.str().c_str());
    std::fflush(stdout);
}

FiniteAbelianGroup Zmod(long d) { return FiniteAbelianGroup::from_cyclic_orders({Integer(d)}); }

std::vector<Integer> label_multiset(const AnalysisReport& r) {
    std::vector<Integer> out;
    for (const auto& l : r.polytope.facet_labels)
        if (l) out.push_back(*l);
    std::sort(out.begin(), out.end());
    return out;
}

bool all_inertia_trivial(const AnalysisReport& r) {
    return std::all_of(r.inertia.begin(), r.inertia.end(), [](const auto& rec) { return rec.group.is_trivial(); });
}

}  // namespace

int main() {
    criterion(1, "Delzant-classical corpus (CP1, CP2)", 1.0, [](Outcome& o) {
        for (const char* name : {"cp1.json", "cp2.json"}) {
            auto r = run_analysis(support::load(name));
            const std::size_t n = r.input.B.rows();
            o.require(r.regularity.regular, std::string(name) + " regular");
            o.require(r.summary.effective, std::string(name) + " effective");
            o.require(r.summary.gerbe && r.summary.gerbe->is_trivial(), std::string(name) + " gerbe trivial");
            o.require(r.summary.dimension == 2 * n, std::string(name) + " dim = 2 dim G");
            o.require(r.polytope.v_rep.size() == n + 1, std::string(name) + " simplex vertex count");
            o.require(r.polytope.normalized_volume == Rational(1), std::string(name) + " unit lattice volume");
            o.require(all_inertia_trivial(r), std::string(name) + " inertia trivial");
        }
        auto p1 = run_analysis(support::load("cp1.json")).polytope;
        o.require(p1.v_rep == std::vector<RationalVector>{{-1}, {0}}, "CP1 segment [-1, 0]");
        auto p2 = run_analysis(support::load("cp2.json")).polytope;
        o.require(p2.v_rep == std::vector<RationalVector>{{-1, -1}, {-1, 0}, {0, 0}}, "CP2 triangle vertices");
    });

    criterion(2, "Teardrop CP(1,2) inertia and facet labels", 1.0, [](Outcome& o) {
        auto r = run_analysis(support::load("teardrop.json"));
        o.require(r.inertia.size() == 3, "three strata");
        if (r.inertia.size() == 3) {
            o.require(r.inertia[0].face.empty() && r.inertia[0].group.is_trivial(), "{}: 1");
            o.require(r.inertia[1].face == face({1}) && r.inertia[1].group == Zmod(2), "{1}: Z/2");
            o.require(r.inertia[2].face == face({2}) && r.inertia[2].group.is_trivial(), "{2}: 1");
        }
        o.require(r.polytope.facet_labels.size() == 2 && r.polytope.facet_labels[0] == Integer(2) &&
                      r.polytope.facet_labels[1] == Integer(1),
                  "labels (2, 1)");
    });

    criterion(3, "Gerbe fixture: dim 0, gerbe Z/2", 1.0, [](Outcome& o) {
        auto r = run_analysis(support::load("gerbe.json"));
        o.require(r.summary.dimension == std::size_t{0}, "dim 0");
        o.require(r.summary.gerbe == Zmod(2), "gerbe Z/2");
        o.require(r.inertia.size() == 1 && r.inertia[0].is_generic && r.inertia[0].group == Zmod(2),
                  "generic inertia Z/2");
    });

    criterion(4, "Regularity <=> numeric local freeness (corpus)", 10.0, [](Outcome& o) {
        std::size_t total = 0;
        for (const auto& name : support::corpus()) {
            auto d = support::load(name).to_data();
            numeric::VerifyOptions opts;
            opts.samples = 100;
            opts.tol = 1e-8;
            auto rep = numeric::verify(d, opts);
            bool nonempty = !moment_polytope(d).empty;
            if (nonempty) o.require(rep.samples >= 100, name + ": >= 100 samples");
            o.require(rep.local_freeness_agrees, name + ": local freeness agrees");
            o.require(rep.transversality_agrees, name + ": transversality agrees");
            total += rep.samples;
        }
        auto sing = support::load("cp1_singular.json").to_data();
        auto v = is_regular_value(sing);
        o.require(!v.regular && v.witness == face({1, 2}), "singular fixture witness {1,2}");
        auto rep = numeric::verify(sing, {});
        o.require(rep.witness_checked && !rep.witness_locally_free, "witness point not locally free");
        o.note << total << " samples";
    });

    criterion(5, "Moment-equation residuals and O(h^2) convergence", 10.0, [](Outcome& o) {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> coeff(-1.0, 1.0);
        std::vector<numeric::SamplePoint> points;
        for (const char* name : {"cp1.json", "cp2.json", "teardrop.json", "weighted_p112.json", "orbifold_gamma.json"}) {
            auto pts = numeric::sample_level_points(support::load(name).to_data(), 20, 11);
            points.insert(points.end(), pts.begin(), pts.end());
        }
        double worst = 0, lo = 1e9, hi = 0;
        for (const auto& p : points) {
            std::vector<double> eps(p.z.size());
            for (auto& e : eps) e = coeff(rng);
            double r = numeric::check_moment_equation(p.z, eps, 1e-5);
            worst = std::max(worst, r);
            double ratio = numeric::check_moment_equation(p.z, eps, 1e-2) / numeric::check_moment_equation(p.z, eps, 5e-3);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        o.require(points.size() >= 100, "100 (z, eps) pairs");
        o.require(worst < 1e-6, "residual < 1e-6 at h = 1e-5");
        o.require(lo >= 3.5 && hi <= 4.5, "halving ratio in [3.5, 4.5]");
        o.note << "max residual " << worst << ", ratio [" << lo << ", " << hi << "]";
    });

    criterion(6, "Reduced kernel rank = dim A on regular levels", 10.0, [](Outcome& o) {
        std::size_t wc = 0, match = 0;
        for (const auto& name : support::corpus()) {
            auto d = support::load(name).to_data();
            if (!is_regular_value(d).regular || moment_polytope(d).empty) continue;
            auto rep = numeric::verify(d, {});
            o.require(rep.kernel_rank_agrees, name + ": kernel rank >= 99%");
            wc += rep.well_conditioned_samples;
            match += rep.kernel_rank_matches;
        }
        o.require(wc > 0, "some well-conditioned samples");
        o.note << match << "/" << wc << " well-conditioned samples match";
    });

    criterion(7, "Theorem 5.4 conformance sweep (random inputs)", 60.0, [](Outcome& o) {
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<int> dimN(1, 6), den(1, 4), num(-4, 12);
        std::size_t generated = 0, regular_nonempty = 0;
        while (generated < 240) {
            const std::size_t N = dimN(rng);
            std::uniform_int_distribution<int> dimn(0, static_cast<int>(N));
            const std::size_t n = dimn(rng);
            IntegerMatrix L = oracle::random_matrix(N, N, -2, 2, rng);
            // Mostly near-identity lattices, so the determinant bound is met often.
            if (generated % 2 == 0) {
                L = IntegerMatrix::identity(N);
                std::uniform_int_distribution<std::size_t> idx(0, N - 1);
                std::uniform_int_distribution<int> scale(1, 3);
                L(idx(rng), idx(rng)) += scale(rng);
            }
            Integer det = determinant(L);
            if (det == 0 || abs(det) > 12) continue;
            IntegerMatrix B = oracle::random_matrix(n, N, -3, 3, rng);
            if (rank(B) < n) continue;
            RationalVector a(N);
            for (auto& q : a) q = Rational(num(rng), den(rng));
            for (auto& q : a) q.canonicalize();
            ++generated;

            auto d = make_stack_data(N, L, B, a);
            auto s = stack_summary(d);
            if (!s.regular || s.empty) continue;
            ++regular_nonempty;
            std::ostringstream tag;
            tag << "N=" << N << " n=" << n << " input #" << generated;
            o.require(s.effective, tag.str() + " effective");
            o.require(s.dimension == 2 * n, tag.str() + " dim = 2n");
            auto table = inertia_table(d);
            o.require(!table.empty() && table.front().is_generic && table.front().group == d.ext.gamma,
                      tag.str() + " generic inertia = Gamma");
        }
        o.require(regular_nonempty >= 50, "enough regular nonempty inputs");
        o.note << generated << " inputs, " << regular_nonempty << " regular+nonempty";
    });

    criterion(8, "SNF algebraic properties (1000 random matrices)", 30.0, [](Outcome& o) {
        std::mt19937_64 rng(8);
        std::uniform_int_distribution<int> dim(1, 6);
        for (int t = 0; t < 1000; ++t) {
            IntegerMatrix m = oracle::random_matrix(dim(rng), dim(rng), -20, 20, rng);
            auto s = smith_normal_form(m);
            o.require(s.U * m * s.V == s.D, "U M V = D");
            o.require(abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1, "unimodular U, V");
            bool diagonal = true;
            for (std::size_t r = 0; r < s.D.rows(); ++r)
                for (std::size_t c = 0; c < s.D.cols(); ++c)
                    if (r != c && s.D(r, c) != 0) diagonal = false;
            o.require(diagonal, "D diagonal");
            auto d = s.nonzero_diagonal();
            for (std::size_t i = 0; i < d.size(); ++i) {
                o.require(d[i] > 0, "positive invariant factors");
                if (i > 0) o.require(d[i] % d[i - 1] == 0, "divisibility chain");
            }
            if (m.rows() == m.cols() && determinant(m) != 0)
                o.require(cokernel_structure(m).order() == abs(determinant(m)), "cokernel order = |det|");
        }
    });

    criterion(9, "Reduction in stages (3 fixtures + negative control)", 5.0, [](Outcome& o) {
        for (const char* name : {"stages_coordinate.json", "stages_identity.json", "stages_teardrop.json"}) {
            auto r = run_stages(support::load(name));
            o.require(r.report.status == StagesStatus::Consistent, std::string(name) + " consistent");
        }
        auto bad = run_stages(support::load("stages_corrupted.json"));
        o.require(bad.report.status == StagesStatus::Inconsistent, "corrupted fixture inconsistent");
        o.note << "control: " << bad.report.detail;
    });

    criterion(10, "Unimodular invariance of B (20 U per corpus input)", 30.0, [](Outcome& o) {
        std::mt19937_64 rng(10);
        for (const auto& name : support::corpus()) {
            auto spec = support::load(name);
            auto base = run_analysis(spec);
            for (int t = 0; t < 20; ++t) {
                InputSpec moved = spec;
                moved.B = oracle::random_unimodular(spec.B.rows(), rng) * spec.B;
                auto r = run_analysis(moved);
                o.require(r.regularity.regular == base.regularity.regular, name + " verdict");
                o.require(r.regularity.witness == base.regularity.witness, name + " witness");
                o.require(r.polytope.f_vector == base.polytope.f_vector, name + " f-vector");
                o.require(label_multiset(r) == label_multiset(base), name + " label multiset");
                o.require(r.summary.gerbe == base.summary.gerbe, name + " gerbe");
                o.require(r.summary.dimension == base.summary.dimension, name + " dimension");
            }
        }
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
