#pragma once

#include <string>
#include <vector>

#include "pflow/constitutive.hpp"

namespace pflow {

struct InequalityResult {
    std::string name;
    /// tightest constant making the inequality hold on all samples
    /// (max ratio for upper bounds, min ratio for lower bounds)
    double empirical_constant = 0.0;
    bool pass = false;
    std::string witness;  // worst-case sample point
};

struct AssumptionAudit {
    std::vector<InequalityResult> results;
    double empirical_K1 = 0.0;      // flux ellipticity
    double empirical_K2 = 0.0;      // flux bound
    double empirical_lambda = 0.0;  // monotonicity constant of (c11)
    bool pass = false;

    const InequalityResult* find(const std::string& name) const;
};

/// Stratified sample layout for the audit: a c-grid, shear magnitudes near
/// 0, near the truncation level and far above it, and random directions.
struct SampleSpec {
    int c_samples = 13;
    double c_range = 3.0;
    int directions = 8;
    int flux_samples = 10000;
    double fd_step = 1e-5;
    double margin = 1e-3;
    unsigned seed = 20240601u;
};

AssumptionAudit audit_assumptions(const ConstitutiveModel& model, double A,
                                  const SampleSpec& spec = {});

}  // namespace pflow
