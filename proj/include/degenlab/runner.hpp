#pragma once

#include <filesystem>
#include <string>

#include "degenlab/config.hpp"

namespace degenlab {

struct RunOptions {
    std::filesystem::path out_dir;
    int threads = 1;
};

/// Executes one subcommand pipeline, writing a JSON summary and CSV reports
/// into the output directory. Returns 0 when every asserted invariant
/// passed, 1 otherwise. Configuration and convergence failures propagate as
/// ConfigError / ConvergenceError for the caller to map to exit codes.
int run_subcommand(const std::string& name, const RunConfig& cfg, const RunOptions& opts);

int run_classify(const RunConfig& cfg, const RunOptions& opts);
int run_verify_inequalities(const RunConfig& cfg, const RunOptions& opts);
int run_validate_f(const RunConfig& cfg, const RunOptions& opts);
int run_operator_checks(const RunConfig& cfg, const RunOptions& opts);
int run_solve(const RunConfig& cfg, const RunOptions& opts);
int run_strong_limit(const RunConfig& cfg, const RunOptions& opts);
int run_stability(const RunConfig& cfg, const RunOptions& opts);
int run_converge(const RunConfig& cfg, const RunOptions& opts);

}  // namespace degenlab
