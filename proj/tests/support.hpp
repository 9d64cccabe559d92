#pragma once

#include "report.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef TORIC_FIXTURES
#error "TORIC_FIXTURES must point at tests/fixtures"
#endif

namespace support {

inline std::string fixture_path(const std::string& name) { return std::string(TORIC_FIXTURES) + "/" + name; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline toric::InputSpec load(const std::string& name) { return toric::parse_input_text(read_file(fixture_path(name))); }

/// Valid analysis fixtures (the "corpus").
inline const std::vector<std::string>& corpus() {
    static const std::vector<std::string> names = {
        "cp1.json",        "cp1_singular.json",     "cp2.json",        "teardrop.json",
        "gerbe.json",      "empty_diagonal.json",   "weighted_p112.json", "orbifold_gamma.json",
        "stages_coordinate.json", "stages_teardrop.json", "stages_uncorrupted.json"};
    return names;
}

inline toric::OrthantFace face(std::initializer_list<std::size_t> one_based) {
    toric::OrthantFace J;
    for (auto j : one_based) J.push_back(j - 1);
    return J;
}

}  // namespace support
