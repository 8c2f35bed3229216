#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "pflow/run.hpp"
#include "pflow/solver.hpp"

using namespace pflow;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("powerflow_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int spawn_cli(const std::string& args) {
    const std::string cmd = std::string(POWERFLOW_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("mode names parse and unknown modes are usage errors") {
    CHECK(mode_from_name("solve") == RunMode::solve);
    CHECK(mode_from_name("mms") == RunMode::mms);
    CHECK(mode_from_name("audit") == RunMode::audit);
    CHECK(mode_from_name("holefill") == RunMode::holefill);
    CHECK(mode_from_name("probe") == RunMode::probe);
    CHECK_THROWS_AS((void)mode_from_name("fly"), std::invalid_argument);
}

TEST_CASE("configuration parser handles sections, comments, and defaults") {
    std::istringstream in(
        "# top comment\n"
        "[solver]\n"
        "grid = 16   # inline comment\n"
        "relaxation = 0.5\n"
        "\n"
        "[model]\n"
        "exponent = tanh\n");
    const Config cfg = Config::parse(in);
    CHECK(cfg.has("solver", "grid"));
    CHECK(cfg.get_int("solver", "grid", 0) == 16);
    CHECK(cfg.get_double("solver", "relaxation", 0.0) == 0.5);
    CHECK(cfg.get("model", "exponent", "") == "tanh");
    CHECK(cfg.get_int("solver", "missing", 7) == 7);
    CHECK_FALSE(cfg.has("nope", "x"));

    std::istringstream bad("[solver]\nthis line has no equals sign\n");
    CHECK_THROWS_AS((void)Config::parse(bad), std::runtime_error);
}

TEST_CASE("field round trip through the text format") {
    const PeriodicGrid grid{16};
    SpectralField f = SpectralField::from_function(
        grid, Rank::vector, [](double x, double y) -> std::vector<double> {
            return {x + 2.0 * y, x * y};
        });
    std::stringstream buffer;
    write_field(buffer, f);
    SpectralField g = read_field(buffer);
    CHECK(g.rank() == Rank::vector);
    CHECK(g.grid().n_modes == 16);
    CHECK(l2_norm(subtract(f, g)) < 1e-12);
}

TEST_CASE("solve mode accepts source fields from dump files") {
    const fs::path dir = make_temp_dir("field_input");
    const PeriodicGrid grid{32};
    const ProblemData reference = standard_problem(grid, 0.05);
    write_field_file((dir / "f.txt").string(), reference.f);
    write_field_file((dir / "g.txt").string(), reference.g);
    write_text(dir / "run.cfg",
               "[solver]\ngrid = 32\nn_basis = 16\n[problem]\nf = " +
                   (dir / "f.txt").string() + "\ng = " + (dir / "g.txt").string() + "\n");
    RunConfig rc;
    rc.mode = RunMode::solve;
    rc.config = Config::parse_file((dir / "run.cfg").string());
    rc.out_dir = (dir / "out").string();
    REQUIRE(run(rc) == 0);

    write_text(dir / "builtin.cfg", "[solver]\ngrid = 32\nn_basis = 16\n");
    rc.config = Config::parse_file((dir / "builtin.cfg").string());
    rc.out_dir = (dir / "builtin_out").string();
    REQUIRE(run(rc) == 0);
    // the dump is 12 significant digits, so agreement is near-exact, not bitwise
    for (const char* name : {"velocity.txt", "concentration.txt"}) {
        CAPTURE(name);
        const SpectralField a = read_field_file((dir / "out" / name).string());
        const SpectralField b = read_field_file((dir / "builtin_out" / name).string());
        CHECK(l2_norm(subtract(a, b)) < 1e-9 * (1.0 + l2_norm(b)));
    }
}

TEST_CASE("holefill mode accepts an explicit case") {
    const fs::path dir = make_temp_dir("holefill_explicit");
    write_text(dir / "run.cfg",
               "[holefill]\nkind = explicit\n"
               "radii = 0.25, 0.125, 0.0625, 0.03125\n"
               "g = 0.5, 0.25, 0.125, 0.0625\n"
               "alpha = 4.0\nbeta = 1.0\nnu = 2.0\nr0 = 0.25\n");
    RunConfig rc;
    rc.mode = RunMode::holefill;
    rc.config = Config::parse_file((dir / "run.cfg").string());
    rc.out_dir = (dir / "out").string();
    CHECK(run(rc) == 0);
    CHECK(fs::exists(dir / "out" / "holefill.csv"));

    write_text(dir / "bad.cfg",
               "[holefill]\nkind = explicit\n"
               "radii = 0.25, 0.125\ng = 0.1, 0.2\n");  // G must be nondecreasing in R
    rc.config = Config::parse_file((dir / "bad.cfg").string());
    rc.out_dir = (dir / "bad_out").string();
    CHECK_THROWS_AS((void)run(rc), std::invalid_argument);
}

TEST_CASE("holefill mode succeeds and writes a deterministic report") {
    const fs::path dir = make_temp_dir("holefill");
    write_text(dir / "run.cfg", "[holefill]\nkind = power\ns = 1.0\nlevels = 6\n");
    RunConfig rc;
    rc.mode = RunMode::holefill;
    rc.config = Config::parse_file((dir / "run.cfg").string());
    rc.out_dir = (dir / "out").string();
    CHECK(run(rc) == 0);
    const std::string first = read_text(dir / "out" / "holefill.csv");
    CHECK_FALSE(first.empty());

    rc.out_dir = (dir / "out2").string();
    CHECK(run(rc) == 0);
    CHECK(read_text(dir / "out2" / "holefill.csv") == first);  // byte-identical
}

TEST_CASE("audit mode distinguishes sound from broken models") {
    const fs::path dir = make_temp_dir("audit");
    write_text(dir / "good.cfg", "[model]\nexponent = tanh\na = 0.4\nb = 1.0\ngamma0 = 1.0\n");
    write_text(dir / "bad.cfg", "[model]\nexponent = quadratic\na = 0.1\n");
    RunConfig rc;
    rc.mode = RunMode::audit;
    rc.config = Config::parse_file((dir / "good.cfg").string());
    rc.out_dir = (dir / "good_out").string();
    CHECK(run(rc) == 0);

    rc.config = Config::parse_file((dir / "bad.cfg").string());
    rc.out_dir = (dir / "bad_out").string();
    CHECK(run(rc) == 3);
    CHECK(fs::exists(dir / "bad_out" / "audit.csv"));
}

TEST_CASE("solve mode converges on the built-in problem and reports non-convergence") {
    const fs::path dir = make_temp_dir("solve");
    write_text(dir / "ok.cfg", "[solver]\ngrid = 32\nn_basis = 16\n");
    RunConfig rc;
    rc.mode = RunMode::solve;
    rc.config = Config::parse_file((dir / "ok.cfg").string());
    rc.out_dir = (dir / "ok_out").string();
    CHECK(run(rc) == 0);
    CHECK(fs::exists(dir / "ok_out" / "convergence.csv"));
    CHECK(fs::exists(dir / "ok_out" / "velocity.txt"));

    write_text(dir / "stuck.cfg",
               "[solver]\ngrid = 32\nn_basis = 16\nmax_picard = 2\ntol_residual = 1e-14\n");
    rc.config = Config::parse_file((dir / "stuck.cfg").string());
    rc.out_dir = (dir / "stuck_out").string();
    CHECK(run(rc) == 2);
}

TEST_CASE("solve outputs are byte-reproducible across identical runs") {
    const fs::path dir = make_temp_dir("repro");
    write_text(dir / "run.cfg", "[solver]\ngrid = 32\nn_basis = 16\n");
    RunConfig rc;
    rc.mode = RunMode::solve;
    rc.config = Config::parse_file((dir / "run.cfg").string());
    rc.out_dir = (dir / "a").string();
    REQUIRE(run(rc) == 0);
    rc.out_dir = (dir / "b").string();
    REQUIRE(run(rc) == 0);
    for (const char* name : {"convergence.csv", "shear.csv", "velocity.txt",
                             "concentration.txt"}) {
        CAPTURE(name);
        CHECK(read_text(dir / "a" / name) == read_text(dir / "b" / name));
    }
}

TEST_CASE("command line exit codes") {
    const fs::path dir = make_temp_dir("cli");
    write_text(dir / "hole.cfg", "[holefill]\nkind = power\ns = 0.5\n");

    CHECK(spawn_cli("") == 1);  // missing required arguments
    CHECK(spawn_cli("fly --config " + (dir / "hole.cfg").string()) == 1);  // unknown mode
    CHECK(spawn_cli("holefill --config " + (dir / "missing.cfg").string()) == 1);
    CHECK(spawn_cli("holefill --config " + (dir / "hole.cfg").string() + " --out " +
                    (dir / "out").string()) == 0);
}

TEST_CASE("plot emission is optional and never changes the exit status") {
    const fs::path dir = make_temp_dir("plots");
    write_text(dir / "run.cfg", "[holefill]\nkind = power\ns = 1.5\n");
    RunConfig rc;
    rc.mode = RunMode::holefill;
    rc.config = Config::parse_file((dir / "run.cfg").string());
    rc.out_dir = (dir / "out").string();
    rc.plots = true;
    CHECK(run(rc) == 0);
}
