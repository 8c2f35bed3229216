#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pflow/constitutive.hpp"
#include "pflow/diagnostics.hpp"
#include "pflow/field.hpp"
#include "pflow/holefill.hpp"
#include "pflow/solver.hpp"

namespace pflow {

/// Sectioned line-oriented key-value configuration:
///   [section]
///   key = value   # comment
struct Config {
    std::map<std::string, std::map<std::string, std::string>> sections;

    static Config parse(std::istream& in);
    static Config parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
};

/// plain-text field dump: "field <rank> <n_modes> <components>" followed by
/// one row-major physical block per component
void write_field(std::ostream& out, const SpectralField& f);
void write_field_file(const std::string& path, const SpectralField& f);
SpectralField read_field(std::istream& in);
SpectralField read_field_file(const std::string& path);

ConstitutiveModel model_from_config(const Config& cfg, const std::string& section = "model");
SolverConfig solver_from_config(const Config& cfg, const std::string& section = "solver");
ProbeLayout probes_from_config(const Config& cfg, const std::string& section = "probes");
HoleFillCase holefill_case_from_config(const Config& cfg,
                                       const std::string& section = "holefill");

/// deterministic CSV output (12 significant digits)
std::string format_number(double v);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::vector<std::vector<std::string>> report_rows(const EstimateReport& rep);
void write_report_csv(const std::string& path, const EstimateReport& rep);

}  // namespace pflow
