#include "pflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pflow {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

Rank rank_from_name(const std::string& name) {
    if (name == "scalar") return Rank::scalar;
    if (name == "vector") return Rank::vector;
    if (name == "sym_tensor") return Rank::sym_tensor;
    if (name == "tensor") return Rank::tensor;
    throw std::runtime_error("unknown field rank: " + name);
}

const char* rank_name(Rank r) {
    switch (r) {
        case Rank::scalar: return "scalar";
        case Rank::vector: return "vector";
        case Rank::sym_tensor: return "sym_tensor";
        case Rank::tensor: return "tensor";
    }
    return "?";
}

}  // namespace

Config Config::parse(std::istream& in) {
    Config cfg;
    std::string line, section = "global";
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            cfg.sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line without '=': " + line);
        cfg.sections[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse(in);
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto s = sections.find(section);
    return s != sections.end() && s->second.count(key) > 0;
}

std::string Config::get(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
    const auto s = sections.find(section);
    if (s == sections.end()) return fallback;
    const auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    const std::string v = get(section, key, "");
    return v.empty() ? fallback : std::stod(v);
}

int Config::get_int(const std::string& section, const std::string& key, int fallback) const {
    const std::string v = get(section, key, "");
    return v.empty() ? fallback : std::stoi(v);
}

void write_field(std::ostream& out, const SpectralField& f) {
    out << rank_name(f.rank()) << ' ' << f.grid().n_modes << ' ' << f.components() << '\n';
    for (int c = 0; c < f.components(); ++c) {
        const auto& vals = f.physical(c);
        for (std::size_t i = 0; i < vals.size(); ++i)
            out << format_number(vals[i]) << ((i + 1) % f.grid().n_modes == 0 ? '\n' : ' ');
    }
}

void write_field_file(const std::string& path, const SpectralField& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write field file: " + path);
    write_field(out, f);
}

SpectralField read_field(std::istream& in) {
    std::string rank;
    int n = 0, ncomp = 0;
    if (!(in >> rank >> n >> ncomp)) throw std::runtime_error("malformed field header");
    SpectralField f(PeriodicGrid{n}, rank_from_name(rank));
    if (ncomp != f.components()) throw std::runtime_error("field component count mismatch");
    for (int c = 0; c < ncomp; ++c) {
        std::vector<double> vals(static_cast<std::size_t>(n) * n);
        for (auto& v : vals)
            if (!(in >> v)) throw std::runtime_error("truncated field data");
        f.set_physical(c, std::move(vals));
    }
    return f;
}

SpectralField read_field_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open field file: " + path);
    return read_field(in);
}

ConstitutiveModel model_from_config(const Config& cfg, const std::string& section) {
    const std::string kind = cfg.get(section, "exponent", "tanh");
    ConstitutiveModel m = ConstitutiveModel::canonical();
    if (kind == "constant") {
        m.exponent = ExponentFunction::constant(cfg.get_double(section, "p", 2.0));
    } else if (kind == "tanh") {
        m.exponent = ExponentFunction::tanh_law(cfg.get_double(section, "a", 0.4),
                                                cfg.get_double(section, "b", 1.0),
                                                cfg.get_double(section, "base", 2.0));
    } else if (kind == "quadratic") {
        m.exponent = ExponentFunction::quadratic(
            cfg.get_double(section, "a", 0.1), cfg.get_double(section, "declared_p_plus", 2.4),
            cfg.get_double(section, "declared_lipschitz", 0.4));
    } else {
        throw std::runtime_error("unknown exponent kind: " + kind);
    }
    const double g0 = cfg.get_double(section, "gamma0", 1.0);
    m.gamma = g0 == 0.0 ? GammaFunction::zero() : GammaFunction::rational(g0);
    m.flux.K1 = cfg.get_double(section, "K1", 0.5);
    m.flux.K2 = cfg.get_double(section, "K2", 1.5);
    return m;
}

SolverConfig solver_from_config(const Config& cfg, const std::string& section) {
    SolverConfig sc;
    sc.grid = PeriodicGrid{cfg.get_int(section, "grid", 32)};
    sc.n_basis = cfg.get_int(section, "n_basis", 24);
    sc.A = cfg.get_double(section, "A", 2.0);
    sc.relaxation = cfg.get_double(section, "relaxation", 0.7);
    sc.tol_residual = cfg.get_double(section, "tol_residual", 1e-9);
    sc.max_picard = cfg.get_int(section, "max_picard", 500);
    sc.A_margin = cfg.get_double(section, "A_margin", 0.9);
    sc.A_growth = cfg.get_double(section, "A_growth", 2.0);
    sc.A_max = cfg.get_double(section, "A_max", 1e6);
    sc.mean_c = cfg.get_double(section, "mean_c", 1.0);
    sc.validate();
    return sc;
}

ProbeLayout probes_from_config(const Config& cfg, const std::string& section) {
    ProbeLayout layout;
    layout.centers_per_dim = cfg.get_int(section, "centers_per_dim", 8);
    layout.r0 = cfg.get_double(section, "r0", 0.25);
    layout.dyadic_levels = cfg.get_int(section, "dyadic_levels", 4);
    return layout;
}

namespace {

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    for (std::string tok; std::getline(ss, tok, ',');) out.push_back(std::stod(trim(tok)));
    return out;
}

}  // namespace

HoleFillCase holefill_case_from_config(const Config& cfg, const std::string& section) {
    const std::string kind = cfg.get(section, "kind", "power");
    if (kind == "explicit") {
        HoleFillCase hc;
        hc.radii = parse_list(cfg.get(section, "radii", ""));
        hc.g = parse_list(cfg.get(section, "g", ""));
        hc.alpha = cfg.get_double(section, "alpha", 1.0);
        hc.beta = cfg.get_double(section, "beta", 1.0);
        hc.nu = cfg.get_double(section, "nu", 1.0);
        hc.r0 = cfg.get_double(section, "r0", hc.radii.empty() ? 0.25 : hc.radii.front());
        hc.validate();
        return hc;
    }
    SynthParams params;
    params.r0 = cfg.get_double(section, "r0", 0.25);
    params.levels = cfg.get_int(section, "levels", 6);
    params.s = cfg.get_double(section, "s", 1.0);
    params.knee = cfg.get_double(section, "knee", 0.05);
    params.scale = cfg.get_double(section, "scale", 1.0);
    params.alpha = cfg.get_double(section, "alpha", 1.0);
    params.beta = cfg.get_double(section, "beta", 1.0);
    params.nu = cfg.get_double(section, "nu", 1.0);
    const unsigned long seed = static_cast<unsigned long>(cfg.get_int(section, "seed", 42));
    if (kind == "power") return synth_case(SynthKind::power, params, seed);
    if (kind == "plateau") return synth_case(SynthKind::plateau, params, seed);
    if (kind == "random_monotone") return synth_case(SynthKind::random_monotone, params, seed);
    throw std::runtime_error("unknown holefill case kind: " + kind);
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write csv: " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? ',' : '\n');
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? ',' : '\n');
}

std::vector<std::vector<std::string>> report_rows(const EstimateReport& rep) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : rep.rows) {
        std::vector<std::string> row = {format_number(r.center.x), format_number(r.center.y),
                                        format_number(r.radius), format_number(r.lhs)};
        std::string terms;
        for (std::size_t i = 0; i < r.rhs_terms.size(); ++i)
            terms += (i ? ";" : "") + format_number(r.rhs_terms[i]);
        row.push_back(terms);
        row.push_back(format_number(r.local_constant));
        row.push_back(r.tag);
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_report_csv(const std::string& path, const EstimateReport& rep) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write csv: " + path);
    out << "# report " << rep.name << " n=" << rep.n_modes << " A=" << format_number(rep.A)
        << " empirical_constant=" << format_number(rep.empirical_constant)
        << " excluded=" << rep.excluded_probes << " pass=" << (rep.pass ? 1 : 0) << '\n';
    for (const auto& [k, v] : rep.scalars) out << "# " << k << " = " << format_number(v) << '\n';
    out << "center_x,center_y,radius,lhs,rhs_terms,local_constant,tag\n";
    for (const auto& row : report_rows(rep)) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? ',' : '\n');
    }
}

}  // namespace pflow
