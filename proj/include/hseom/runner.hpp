// runner.hpp - experiment workflows behind the command-line tool

#pragma once

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

#include "hseom/config.hpp"

namespace hseom {

inline constexpr const char* kLibraryVersion = "1.0.0";

struct PreflightReport {
    std::uint64_t awf = 0;
    long long dim = 0;
    std::uint64_t bytes = 0; // awf * dim * 16 * (1 + 5 integrator buffers)
    long long steps = 0;     // RK4 steps summed over every contour run
    double dt = 0.0;
    double horizon = 0.0;
    std::vector<std::string> warnings;

    std::string to_string() const;
};

// Throws ResourceError when the hierarchy exceeds hierarchy.max_awf.
PreflightReport preflight(const RunConfig& cfg);

struct ValidationRow {
    std::string check;
    double residual = 0.0;
    double threshold = 0.0;
    bool passed() const { return residual <= threshold; }
};

// Oracle-versus-engine residuals at desk scale.
std::vector<ValidationRow> validation_suite(int workers = 1);

// Runs the configured experiment, writing artifacts to cfg.output. Returns
// the process exit status; errors propagate as exceptions.
int run_experiment(const RunConfig& cfg, std::ostream& log);

// 2 config, 3 numerical, 4 resource.
int exit_code_for(const std::exception& e);
std::string error_kind(const std::exception& e);

} // namespace hseom
