#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "annwb/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw annwb::Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"annwb - exact commutative-algebra workbench"};
    app.require_subcommand(1);

    std::string file;
    std::string window_opt, hrange_opt, cache_dir;
    int tmax = -1, budget = -1;

    CLI::App* run = app.add_subcommand("run", "run a session file and print the report");
    run->add_option("file", file, "session file")->required();
    run->add_option("--window", window_opt, "internal degree window a..b");
    run->add_option("--hrange", hrange_opt, "cohomological window a..b");
    run->add_option("--tmax", tmax, "stabilization exponent ceiling");
    run->add_option("--budget", budget, "search budget");
    run->add_option("--cache-dir", cache_dir, "Groebner cache directory");

    std::string fmt_file;
    CLI::App* fmt = app.add_subcommand("fmt", "print the canonical form of a session file");
    fmt->add_option("file", fmt_file, "session file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (fmt->parsed()) {
            annwb::Session s = annwb::parse_session(read_file(fmt_file));
            std::cout << annwb::pretty_print(s);
            return 0;
        }
        annwb::Session s = annwb::parse_session(read_file(file));
        auto parse_range = [](const std::string& txt, int& a, int& b) {
            size_t dots = txt.find("..");
            if (dots == std::string::npos) throw annwb::Error("range must be a..b");
            a = std::stoi(txt.substr(0, dots));
            b = std::stoi(txt.substr(dots + 2));
        };
        if (!window_opt.empty()) parse_range(window_opt, s.window.d_lo, s.window.d_hi);
        if (!hrange_opt.empty()) parse_range(hrange_opt, s.window.h_lo, s.window.h_hi);
        if (tmax > 0) s.window.t_max = tmax;
        if (budget > 0) s.budget = budget;
        if (cache_dir.empty()) {
            const char* env = std::getenv("ANNWB_CACHE_DIR");
            if (env) cache_dir = env;
        }
        if (!cache_dir.empty()) annwb::set_gb_cache_dir(cache_dir);

        annwb::RunResult res = annwb::run_session(s);
        std::cout << res.report;
        return res.exit_code;
    } catch (const annwb::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const annwb::SemanticError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const annwb::ResourceLimitError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
