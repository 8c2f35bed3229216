#pragma once

#include <string>

#include "pflow/io.hpp"

namespace pflow {

enum class RunMode { solve, mms, audit, holefill, probe };

RunMode mode_from_name(const std::string& name);  ///< throws on unknown mode

struct RunConfig {
    RunMode mode = RunMode::solve;
    Config config;
    std::string out_dir = ".";
    bool plots = false;
};

/// Batch driver.  Returns 0 on success, 2 on solver non-convergence and 3 on
/// audit/verification failure; deterministic outputs are written to out_dir.
/// Plot emission failures never change the exit status.
int run(const RunConfig& rc);

}  // namespace pflow
