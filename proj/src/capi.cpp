#include "toricstack/toricstack.h"

#include "report.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

struct ts_input {
    toric::InputSpec spec;
};

struct ts_analysis {
    toric::AnalysisReport report;
};

struct ts_stages {
    toric::StagesOutcome outcome;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_field;

ts_status fail(ts_status status, std::string message, std::string field = {}) {
    g_last_error = std::move(message);
    g_last_field = std::move(field);
    return status;
}

void clear_error() {
    g_last_error.clear();
    g_last_field.clear();
}

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Maps exceptions escaping the core onto status codes.
template <class F>
ts_status guarded(F&& body) {
    clear_error();
    try {
        return body();
    } catch (const toric::InputError& e) {
        return fail(TS_ERR_INVALID_INPUT, e.what(), e.field());
    } catch (const std::bad_alloc&) {
        return fail(TS_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(TS_ERR_INTERNAL, e.what());
    }
}

}  // namespace

extern "C" {

const char* ts_version(void) { return toric::kToolVersion; }
const char* ts_last_error(void) { return g_last_error.c_str(); }
const char* ts_last_error_field(void) { return g_last_field.c_str(); }
void ts_string_free(char* s) { std::free(s); }

void ts_verify_options_init(ts_verify_options* opts) {
    if (!opts) return;
    toric::numeric::VerifyOptions d;
    opts->samples = d.samples;
    opts->seed = d.seed;
    opts->tol = d.tol;
    opts->fd_step = d.fd_step;
}

ts_status ts_input_from_json(const char* json_text, ts_input** out) {
    if (!json_text || !out) return fail(TS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = new ts_input{toric::parse_input_text(json_text)};
        return TS_OK;
    });
}

ts_status ts_input_from_file(const char* path, ts_input** out) {
    if (!path || !out) return fail(TS_ERR_INVALID_ARGUMENT, "null argument");
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(TS_ERR_IO, std::string("cannot open ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return ts_input_from_json(buf.str().c_str(), out);
}

void ts_input_free(ts_input* input) { delete input; }

ts_status ts_analyze(const ts_input* input, const ts_verify_options* verify, ts_analysis** out) {
    if (!input || !out) return fail(TS_ERR_INVALID_ARGUMENT, "null argument");
    if (verify && (verify->tol <= 0 || verify->fd_step <= 0))
        return fail(TS_ERR_INVALID_ARGUMENT, "tol and fd_step must be positive");
    return guarded([&] {
        toric::AnalysisOptions opts;
        if (verify) opts.verify = toric::numeric::VerifyOptions{verify->samples, verify->seed, verify->tol, verify->fd_step};
        *out = new ts_analysis{toric::run_analysis(input->spec, opts)};
        return TS_OK;
    });
}

int ts_analysis_exit_code(const ts_analysis* analysis) {
    return analysis ? analysis->report.exit_code : TS_EXIT_INVALID;
}

ts_status ts_analysis_render(const ts_analysis* analysis, ts_format format, char** out) {
    if (!analysis || !out) return fail(TS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::string s = format == TS_FORMAT_TEXT ? toric::to_text(analysis->report)
                                                 : toric::to_json(analysis->report).dump(2) + "\n";
        *out = duplicate(s);
        return *out ? TS_OK : fail(TS_ERR_INTERNAL, "out of memory");
    });
}

ts_status ts_analysis_polytope_off(const ts_analysis* analysis, char** out) {
    if (!analysis || !out) return fail(TS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = duplicate(toric::polytope_off(analysis->report.polytope));
        return *out ? TS_OK : fail(TS_ERR_INTERNAL, "out of memory");
    });
}

void ts_analysis_free(ts_analysis* analysis) { delete analysis; }

ts_status ts_run_stages(const ts_input* input, ts_stages** out) {
    if (!input || !out) return fail(TS_ERR_INVALID_ARGUMENT, "null argument");
    if (!input->spec.stages) return fail(TS_ERR_PRECONDITION, "input has no stages block", "stages");
    return guarded([&] {
        *out = new ts_stages{toric::run_stages(input->spec)};
        return TS_OK;
    });
}

int ts_stages_exit_code(const ts_stages* stages) { return stages ? stages->outcome.exit_code : TS_EXIT_INVALID; }

ts_status ts_stages_render(const ts_stages* stages, ts_format format, char** out) {
    if (!stages || !out) return fail(TS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::string s = format == TS_FORMAT_TEXT ? toric::to_text(stages->outcome)
                                                 : toric::to_json(stages->outcome).dump(2) + "\n";
        *out = duplicate(s);
        return *out ? TS_OK : fail(TS_ERR_INTERNAL, "out of memory");
    });
}

void ts_stages_free(ts_stages* stages) { delete stages; }

ts_status ts_row_lattice_quotient(const int64_t* entries, size_t rows, size_t cols, char** out_json) {
    if (!out_json || (!entries && rows * cols > 0)) return fail(TS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        toric::IntegerMatrix m(rows, cols);
        for (size_t r = 0; r < rows; ++r)
            for (size_t c = 0; c < cols; ++c) m(r, c) = toric::Integer(std::to_string(entries[r * cols + c]));
        auto q = toric::row_lattice_quotient(m);
        nlohmann::json factors = nlohmann::json::array();
        for (const auto& f : q.torsion.invariant_factors())
            factors.push_back(f.fits_slong_p() ? nlohmann::json(f.get_si()) : nlohmann::json(f.get_str()));
        nlohmann::json j = {{"invariant_factors", factors}, {"free_rank", q.free_rank}};
        *out_json = duplicate(j.dump());
        return *out_json ? TS_OK : fail(TS_ERR_INTERNAL, "out of memory");
    });
}

}  // extern "C"
