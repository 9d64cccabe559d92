// toricstack command-line front end.  Talks to the library only through the
// C API in toricstack/toricstack.h.

#include <toricstack/toricstack.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

namespace {

struct Freer {
    void operator()(char* s) const { ts_string_free(s); }
    void operator()(ts_input* p) const { ts_input_free(p); }
    void operator()(ts_analysis* p) const { ts_analysis_free(p); }
    void operator()(ts_stages* p) const { ts_stages_free(p); }
};
template <class T>
using Owned = std::unique_ptr<T, Freer>;

int report_error(const char* what) {
    std::string field = ts_last_error_field();
    std::cerr << "toricstack: " << what << ": " << ts_last_error();
    if (!field.empty()) std::cerr << " [field: " << field << "]";
    std::cerr << "\n";
    return TS_EXIT_INVALID;
}

bool write_file(const std::string& path, const char* body) {
    std::ofstream out(path, std::ios::binary);
    out << body;
    return static_cast<bool>(out);
}

Owned<ts_input> load(const std::string& path, int& code) {
    ts_input* raw = nullptr;
    if (ts_input_from_file(path.c_str(), &raw) != TS_OK) {
        code = report_error(path.c_str());
        return nullptr;
    }
    return Owned<ts_input>(raw);
}

int analyze(const std::string& path, const ts_verify_options* verify, ts_format format, const std::string& off_path) {
    int code = 0;
    auto input = load(path, code);
    if (!input) return code;

    ts_analysis* raw = nullptr;
    if (ts_analyze(input.get(), verify, &raw) != TS_OK) return report_error("analysis failed");
    Owned<ts_analysis> analysis(raw);

    char* text = nullptr;
    if (ts_analysis_render(analysis.get(), format, &text) != TS_OK) return report_error("render failed");
    Owned<char> body(text);
    std::fputs(body.get(), stdout);

    if (!off_path.empty()) {
        char* off = nullptr;
        if (ts_analysis_polytope_off(analysis.get(), &off) != TS_OK) return report_error("polytope export failed");
        Owned<char> off_body(off);
        if (!write_file(off_path, off_body.get())) {
            std::cerr << "toricstack: cannot write " << off_path << "\n";
            return TS_EXIT_INVALID;
        }
    }
    return ts_analysis_exit_code(analysis.get());
}

int stages(const std::string& path, ts_format format) {
    int code = 0;
    auto input = load(path, code);
    if (!input) return code;

    ts_stages* raw = nullptr;
    if (ts_run_stages(input.get(), &raw) != TS_OK) return report_error("stages failed");
    Owned<ts_stages> result(raw);

    char* text = nullptr;
    if (ts_stages_render(result.get(), format, &text) != TS_OK) return report_error("render failed");
    Owned<char> body(text);
    std::fputs(body.get(), stdout);
    return ts_stages_exit_code(result.get());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symplectic toric DM stacks: exact invariants and numeric checks", "toricstack"};
    app.set_version_flag("--version", std::string(ts_version()));
    app.require_subcommand(1);

    std::string format_name = "json";
    std::string off_path;
    app.add_option("--format", format_name, "Report format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_option("--polytope-out", off_path, "Write the moment polytope vertices in OFF-style text");

    std::string file;
    auto* analyze_cmd = app.add_subcommand("analyze", "Exact analysis of a toric stack input");
    analyze_cmd->add_option("file", file, "Input JSON")->required();

    auto* stages_cmd = app.add_subcommand("stages", "Compare one-shot and staged reduction");
    stages_cmd->add_option("file", file, "Input JSON with a stages block")->required();

    ts_verify_options opts;
    ts_verify_options_init(&opts);
    auto* verify_cmd = app.add_subcommand("verify", "Exact analysis plus floating-point verification");
    verify_cmd->add_option("file", file, "Input JSON")->required();
    verify_cmd->add_option("--samples", opts.samples, "Sample points")->capture_default_str();
    verify_cmd->add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
    verify_cmd->add_option("--tol", opts.tol, "Relative rank tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify_cmd->add_option("--fd-step", opts.fd_step, "Finite-difference step")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // Options are accepted before or after the subcommand.
    for (auto* sub : {analyze_cmd, stages_cmd, verify_cmd}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return TS_EXIT_INVALID;
    }

    ts_format format = format_name == "text" ? TS_FORMAT_TEXT : TS_FORMAT_JSON;
    if (*analyze_cmd) return analyze(file, nullptr, format, off_path);
    if (*verify_cmd) return analyze(file, &opts, format, off_path);
    return stages(file, format);
}
