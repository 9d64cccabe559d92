#include "report.hpp"

#include <chrono>
#include <limits>
#include <sstream>

namespace toric {

using nlohmann::json;

namespace {

// ---- scalar encoding -------------------------------------------------------

json int_json(const Integer& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

Integer parse_integer(const json& v, const std::string& field) {
    if (v.is_number_integer()) {
        if (v.is_number_unsigned()) return Integer(std::to_string(v.get<unsigned long long>()));
        return Integer(std::to_string(v.get<long long>()));
    }
    if (v.is_string()) {
        Rational q = parse_rational(v.get<std::string>(), field);
        if (q.get_den() != 1) throw InputError(field, field + ": expected an integer");
        return q.get_num();
    }
    throw InputError(field, field + ": expected an integer");
}

Rational parse_rational_value(const json& v, const std::string& field) {
    if (v.is_string()) return parse_rational(v.get<std::string>(), field);
    if (v.is_number_integer()) return Rational(parse_integer(v, field));
    throw InputError(field, field + ": expected a rational string \"p/q\"");
}

IntegerMatrix parse_matrix(const json& v, std::size_t cols, const std::string& field) {
    if (!v.is_array()) throw InputError(field, field + ": expected an array of rows");
    IntegerMatrix m(v.size(), cols);
    for (std::size_t r = 0; r < v.size(); ++r) {
        const json& row = v[r];
        if (!row.is_array() || row.size() != cols)
            throw InputError(field, field + ": row " + std::to_string(r) + " must have " +
                                        std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_integer(row[c], field);
    }
    return m;
}

RationalVector parse_rational_vector(const json& v, std::size_t size, const std::string& field) {
    if (!v.is_array() || v.size() != size)
        throw InputError(field, field + ": expected " + std::to_string(size) + " rationals");
    RationalVector out;
    for (const auto& e : v) out.push_back(parse_rational_value(e, field));
    return out;
}

json matrix_json(const IntegerMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(int_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json rational_vector_json(const RationalVector& v) {
    json out = json::array();
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
}

// Faces are 1-based on the wire.
json face_json(const OrthantFace& J) {
    json out = json::array();
    for (auto j : J) out.push_back(j + 1);
    return out;
}

OrthantFace face_from_json(const json& v) {
    OrthantFace J;
    for (const auto& e : v) J.push_back(e.get<std::size_t>() - 1);
    return J;
}

json group_json(const FiniteAbelianGroup& g) {
    json factors = json::array();
    for (const auto& f : g.invariant_factors()) factors.push_back(int_json(f));
    return {{"invariant_factors", factors}, {"order", int_json(g.order())}};
}

FiniteAbelianGroup group_from_json(const json& v) {
    std::vector<Integer> orders;
    for (const auto& f : v.at("invariant_factors")) orders.push_back(parse_integer(f, "invariant_factors"));
    return FiniteAbelianGroup::from_cyclic_orders(std::move(orders));
}

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string face_text(const OrthantFace& J) {
    std::string s = "{";
    for (std::size_t i = 0; i < J.size(); ++i) s += (i ? "," : "") + std::to_string(J[i] + 1);
    return s + "}";
}

std::string vector_text(const RationalVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + ")";
}

}  // namespace

// ---- input ----------------------------------------------------------------

InputSpec parse_input(const json& j) {
    if (!j.is_object()) throw InputError("", "input must be a JSON object");
    InputSpec spec;
    if (!j.contains("N")) throw InputError("N", "N: missing");
    if (!j.at("N").is_number_integer() || j.at("N").get<long long>() <= 0)
        throw InputError("N", "N: must be a positive integer");
    spec.N = j.at("N").get<std::size_t>();

    if (!j.contains("lattice_hat")) throw InputError("lattice_hat", "lattice_hat: missing");
    spec.lattice_hat = parse_matrix(j.at("lattice_hat"), spec.N, "lattice_hat");
    if (!j.contains("B")) throw InputError("B", "B: missing");
    spec.B = parse_matrix(j.at("B"), spec.N, "B");
    if (!j.contains("a_lift")) throw InputError("a_lift", "a_lift: missing");
    spec.a_lift = parse_rational_vector(j.at("a_lift"), spec.N, "a_lift");

    if (j.contains("stages") && !j.at("stages").is_null()) {
        const json& st = j.at("stages");
        if (!st.is_object() || !st.contains("B_inner"))
            throw InputError("stages.B_inner", "stages.B_inner: missing");
        StagesSpec s;
        s.B_inner = parse_matrix(st.at("B_inner"), spec.N, "stages.B_inner");
        if (st.contains("level_shift") && !st.at("level_shift").is_null())
            s.level_shift = parse_rational_vector(st.at("level_shift"), s.B_inner.rows(), "stages.level_shift");
        spec.stages = std::move(s);
    }
    // Structural validation (finite index, rank, ...) happens here so that
    // every consumer sees the same diagnostics.
    (void)spec.to_data();
    if (spec.stages) (void)subgroup_from_kernel(spec.stages->B_inner);
    return spec;
}

InputSpec parse_input_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError("", std::string("malformed JSON: ") + e.what());
    }
    return parse_input(j);
}

json to_json(const InputSpec& spec) {
    json j = {{"N", spec.N},
              {"lattice_hat", matrix_json(spec.lattice_hat)},
              {"B", matrix_json(spec.B)},
              {"a_lift", rational_vector_json(spec.a_lift)}};
    if (spec.stages) {
        json st = {{"B_inner", matrix_json(spec.stages->B_inner)}};
        if (spec.stages->level_shift) st["level_shift"] = rational_vector_json(*spec.stages->level_shift);
        j["stages"] = st;
    }
    return j;
}

// ---- analysis ---------------------------------------------------------------

AnalysisReport run_analysis(const InputSpec& spec, const AnalysisOptions& options) {
    auto start = std::chrono::steady_clock::now();
    ToricStackData data = spec.to_data();
    AnalysisReport rep;
    rep.input = spec;
    rep.gamma = data.ext.gamma;
    rep.regularity = is_regular_value(data);
    rep.summary = stack_summary(data);
    rep.polytope = moment_polytope(data);
    if (rep.regularity.regular && !rep.summary.empty) {
        rep.inertia = inertia_table(data);
        label_facets(data, rep.polytope);
    }
    if (options.verify) rep.numeric = numeric::verify(data, *options.verify);

    if (!rep.regularity.regular) rep.exit_code = kExitIrregular;
    else if (rep.summary.empty) rep.exit_code = kExitEmpty;
    else if (rep.numeric && !rep.numeric->all_agree()) rep.exit_code = kExitNumericDisagreement;
    rep.timing_ms = elapsed_ms(start);
    return rep;
}

json to_json(const AnalysisReport& r) {
    json h_rep = json::array();
    for (const auto& ineq : r.polytope.h_rep)
        h_rep.push_back({{"normal", rational_vector_json(ineq.normal)}, {"offset", to_string(ineq.offset)}});
    json v_rep = json::array();
    for (const auto& v : r.polytope.v_rep) v_rep.push_back(rational_vector_json(v));
    json labels = json::array();
    for (const auto& l : r.polytope.facet_labels) labels.push_back(l ? int_json(*l) : json(nullptr));
    json redundant = json::array();
    for (bool f : r.polytope.is_facet) redundant.push_back(!f);

    json polytope = {{"n", r.polytope.n},
                     {"h_rep", h_rep},
                     {"v_rep", v_rep},
                     {"facet_labels", labels},
                     {"redundant", redundant},
                     {"f_vector", r.polytope.f_vector},
                     {"empty", r.polytope.empty},
                     {"bounded", r.polytope.bounded},
                     {"regular", r.polytope.regular},
                     {"normalized_volume", r.polytope.normalized_volume
                                               ? json(to_string(*r.polytope.normalized_volume))
                                               : json(nullptr)}};

    json inertia = json::array();
    for (const auto& rec : r.inertia)
        inertia.push_back({{"face", face_json(rec.face)}, {"group", group_json(rec.group)}, {"is_generic", rec.is_generic}});

    json j = {{"tool", kToolName},
              {"version", kToolVersion},
              {"input", to_json(r.input)},
              {"gamma", group_json(r.gamma)},
              {"regularity",
               {{"verdict", r.regularity.regular ? "regular" : "irregular"},
                {"witness", r.regularity.witness ? face_json(*r.regularity.witness) : json(nullptr)}}},
              {"empty", r.summary.empty},
              {"dimension", optional_json(r.summary.dimension)},
              {"residual_torus_dim", r.summary.residual_torus_dim},
              {"gerbe", r.summary.gerbe ? group_json(*r.summary.gerbe) : json(nullptr)},
              {"effective", r.summary.effective},
              {"polytope", polytope},
              {"inertia_table", inertia},
              {"exit_code", r.exit_code},
              {"timing_ms", r.timing_ms}};

    if (r.numeric) {
        const auto& n = *r.numeric;
        j["numeric"] = {{"samples", n.samples},
                        {"max_moment_residual", n.max_moment_residual},
                        {"max_level_residual", n.max_level_residual},
                        {"locally_free_samples", n.locally_free_samples},
                        {"witness_checked", n.witness_checked},
                        {"witness_locally_free", n.witness_locally_free},
                        {"local_freeness_agrees", n.local_freeness_agrees},
                        {"well_conditioned_samples", n.well_conditioned_samples},
                        {"kernel_rank_matches", n.kernel_rank_matches},
                        {"kernel_rank_agrees", n.kernel_rank_agrees},
                        {"transversality_agrees", n.transversality_agrees},
                        {"moment_identity_holds", n.moment_identity_holds()},
                        {"agrees", n.all_agree()},
                        {"tolerances",
                         {{"samples", n.options.samples},
                          {"seed", n.options.seed},
                          {"tol", n.options.tol},
                          {"fd_step", n.options.fd_step}}}};
    }
    return j;
}

AnalysisReport analysis_report_from_json(const json& j) {
    AnalysisReport r;
    r.input = parse_input(j.at("input"));
    r.gamma = group_from_json(j.at("gamma"));
    r.regularity.regular = j.at("regularity").at("verdict") == "regular";
    if (!j.at("regularity").at("witness").is_null())
        r.regularity.witness = face_from_json(j.at("regularity").at("witness"));

    r.summary.empty = j.at("empty").get<bool>();
    r.summary.regular = r.regularity.regular;
    if (!j.at("dimension").is_null()) r.summary.dimension = j.at("dimension").get<std::size_t>();
    r.summary.residual_torus_dim = j.at("residual_torus_dim").get<std::size_t>();
    if (!j.at("gerbe").is_null()) r.summary.gerbe = group_from_json(j.at("gerbe"));
    r.summary.effective = j.at("effective").get<bool>();

    const json& p = j.at("polytope");
    r.polytope.n = p.at("n").get<std::size_t>();
    for (const auto& ineq : p.at("h_rep"))
        r.polytope.h_rep.push_back({parse_rational_vector(ineq.at("normal"), r.polytope.n, "normal"),
                                    parse_rational_value(ineq.at("offset"), "offset")});
    for (const auto& v : p.at("v_rep")) r.polytope.v_rep.push_back(parse_rational_vector(v, r.polytope.n, "v_rep"));
    for (const auto& l : p.at("facet_labels"))
        r.polytope.facet_labels.push_back(l.is_null() ? std::nullopt
                                                      : std::optional<Integer>(parse_integer(l, "facet_labels")));
    for (const auto& red : p.at("redundant")) r.polytope.is_facet.push_back(!red.get<bool>());
    r.polytope.f_vector = p.at("f_vector").get<std::vector<std::size_t>>();
    r.polytope.empty = p.at("empty").get<bool>();
    r.polytope.bounded = p.at("bounded").get<bool>();
    r.polytope.regular = p.at("regular").get<bool>();
    if (!p.at("normalized_volume").is_null())
        r.polytope.normalized_volume = parse_rational_value(p.at("normalized_volume"), "normalized_volume");

    for (const auto& rec : j.at("inertia_table"))
        r.inertia.push_back({face_from_json(rec.at("face")), group_from_json(rec.at("group")),
                             rec.at("is_generic").get<bool>()});

    if (j.contains("numeric")) {
        const json& n = j.at("numeric");
        numeric::NumericReport nr;
        nr.samples = n.at("samples");
        nr.max_moment_residual = n.at("max_moment_residual");
        nr.max_level_residual = n.at("max_level_residual");
        nr.locally_free_samples = n.at("locally_free_samples");
        nr.witness_checked = n.at("witness_checked");
        nr.witness_locally_free = n.at("witness_locally_free");
        nr.local_freeness_agrees = n.at("local_freeness_agrees");
        nr.well_conditioned_samples = n.at("well_conditioned_samples");
        nr.kernel_rank_matches = n.at("kernel_rank_matches");
        nr.kernel_rank_agrees = n.at("kernel_rank_agrees");
        nr.transversality_agrees = n.at("transversality_agrees");
        const json& t = n.at("tolerances");
        nr.options = {t.at("samples"), t.at("seed"), t.at("tol"), t.at("fd_step")};
        r.numeric = nr;
    }
    r.exit_code = j.at("exit_code").get<int>();
    r.timing_ms = j.at("timing_ms").get<double>();
    return r;
}

std::string to_text(const AnalysisReport& r) {
    std::ostringstream os;
    os << kToolName << ' ' << kToolVersion << '\n';
    os << "N = " << r.input.N << ", n = " << r.summary.residual_torus_dim << ", Gamma = " << r.gamma.to_string()
       << '\n';
    os << "level: " << (r.regularity.regular ? "regular" : "irregular");
    if (r.regularity.witness) os << " (witness J = " << face_text(*r.regularity.witness) << ")";
    os << '\n';
    if (r.summary.empty) {
        os << "level set is empty: the quotient is the empty stack\n";
        return os.str();
    }
    if (r.summary.dimension) os << "dimension: " << *r.summary.dimension << '\n';
    if (r.summary.gerbe) os << "gerbe: " << r.summary.gerbe->to_string() << '\n';
    os << "effective: " << (r.summary.effective ? "yes" : "no") << '\n';

    const auto& P = r.polytope;
    os << "polytope: " << P.v_rep.size() << " vertices, f-vector (";
    for (std::size_t k = 0; k < P.f_vector.size(); ++k) os << (k ? ", " : "") << P.f_vector[k];
    os << "), " << (P.bounded ? "bounded" : "unbounded");
    if (P.normalized_volume) os << ", normalized volume " << to_string(*P.normalized_volume);
    os << '\n';
    for (const auto& v : P.v_rep) os << "  vertex " << vector_text(v) << '\n';
    for (std::size_t j = 0; j < P.h_rep.size(); ++j) {
        os << "  x" << j + 1 << " = " << to_string(P.h_rep[j].offset) << " + <" << vector_text(P.h_rep[j].normal)
           << ", lambda> >= 0";
        if (!P.is_facet[j]) os << "  [redundant]";
        else if (P.facet_labels[j]) os << "  [label " << P.facet_labels[j]->get_str() << "]";
        os << '\n';
    }
    if (!r.inertia.empty()) {
        os << "inertia:\n";
        for (const auto& rec : r.inertia)
            os << "  J = " << face_text(rec.face) << ": " << rec.group.to_string() << (rec.is_generic ? "  (generic)" : "")
               << '\n';
    }
    if (r.numeric) {
        const auto& n = *r.numeric;
        os << "numeric: " << n.samples << " samples, max moment residual " << n.max_moment_residual
           << (n.moment_identity_holds() ? "" : " (exceeds bound)") << ", local freeness " << (n.local_freeness_agrees ? "agrees" : "DISAGREES") << ", kernel rank "
           << n.kernel_rank_matches << '/' << n.well_conditioned_samples << (n.kernel_rank_agrees ? " agrees" : " DISAGREES")
           << ", transversality " << (n.transversality_agrees ? "agrees" : "DISAGREES") << '\n';
    }
    return os.str();
}

std::string polytope_off(const MomentPolytope& P) {
    std::ostringstream os;
    os << "OFF\n" << P.v_rep.size() << " 0 0\n";
    for (const auto& v : P.v_rep) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << to_decimal(v[i], 12);
        os << '\n';
    }
    return os.str();
}

// ---- stages -----------------------------------------------------------------

StagesOutcome run_stages(const InputSpec& spec) {
    if (!spec.stages) throw InputError("stages", "stages: missing stages block");
    auto start = std::chrono::steady_clock::now();
    StagesOutcome out;
    out.input = spec;
    out.report = stages_verify(spec.to_data(), spec.stages->B_inner, spec.stages->level_shift);
    switch (out.report.status) {
        case StagesStatus::Consistent: out.exit_code = kExitOk; break;
        case StagesStatus::Inconsistent: out.exit_code = kExitStagesInconsistent; break;
        case StagesStatus::NestingViolated: out.exit_code = kExitInvalid; break;
        case StagesStatus::Irregular: out.exit_code = kExitIrregular; break;
    }
    out.timing_ms = elapsed_ms(start);
    return out;
}

namespace {

const char* status_name(StagesStatus s) {
    switch (s) {
        case StagesStatus::Consistent: return "consistent";
        case StagesStatus::Inconsistent: return "inconsistent";
        case StagesStatus::NestingViolated: return "nesting_violated";
        case StagesStatus::Irregular: return "irregular";
    }
    return "unknown";
}

json invariants_json(const StageInvariants& inv) {
    json vertex = json::array();
    for (const auto& g : inv.vertex_inertia) vertex.push_back(group_json(g));
    json labels = json::array();
    for (const auto& l : inv.facet_labels) labels.push_back(int_json(l));
    return {{"dimension", inv.dimension},
            {"empty", inv.empty},
            {"gerbe", group_json(inv.gerbe)},
            {"vertex_inertia", vertex},
            {"facet_labels", labels},
            {"f_vector", inv.f_vector},
            {"normalized_volume", inv.normalized_volume ? json(to_string(*inv.normalized_volume)) : json(nullptr)}};
}

}  // namespace

json to_json(const StagesOutcome& o) {
    const auto& r = o.report;
    json j = {{"tool", kToolName},
              {"version", kToolVersion},
              {"input", to_json(o.input)},
              {"verdict", status_name(r.status)},
              {"detail", r.detail},
              {"quotient_map", r.quotient_map ? matrix_json(*r.quotient_map) : json(nullptr)},
              {"one_shot", r.one_shot ? invariants_json(*r.one_shot) : json(nullptr)},
              {"staged", r.staged ? invariants_json(*r.staged) : json(nullptr)},
              {"exit_code", o.exit_code},
              {"timing_ms", o.timing_ms}};
    return j;
}

std::string to_text(const StagesOutcome& o) {
    std::ostringstream os;
    os << kToolName << ' ' << kToolVersion << '\n';
    os << "stages: " << status_name(o.report.status) << '\n';
    if (!o.report.detail.empty()) os << "detail: " << o.report.detail << '\n';
    auto show = [&](const char* name, const std::optional<StageInvariants>& inv) {
        if (!inv) return;
        os << name << ": dim " << inv->dimension << ", gerbe " << inv->gerbe.to_string() << ", vertices "
           << inv->vertex_inertia.size() << ", volume "
           << (inv->normalized_volume ? to_string(*inv->normalized_volume) : std::string("unbounded")) << '\n';
    };
    show("one-shot", o.report.one_shot);
    show("staged  ", o.report.staged);
    return os.str();
}

}  // namespace toric
