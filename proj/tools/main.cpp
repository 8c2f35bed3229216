#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "pflow/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"periodic power-law flow solver and estimate toolkit"};
    std::string mode, config_path, out_dir = ".";
    bool plots = false;
    app.add_option("mode", mode, "solve | mms | audit | holefill | probe")->required();
    app.add_option("--config", config_path, "path to run configuration")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--plots", plots, "emit static SVG plots");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage problems are exit 1; --help is success
    }

    try {
        pflow::RunConfig rc;
        rc.mode = pflow::mode_from_name(mode);
        rc.config = pflow::Config::parse_file(config_path);
        rc.out_dir = out_dir;
        rc.plots = plots;
        return pflow::run(rc);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
