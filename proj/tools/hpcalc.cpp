#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hpcalc/session.hpp"

int main(int argc, char** argv) {
    CLI::App app{"hpcalc - exact verification calculator for twisted de Rham complexes, "
                 "matrix factorizations, and Koszul duality"};
    std::string file;
    hpcalc::SessionOptions opt;
    std::string json_path;
    app.add_option("file", file, "command file, or '-' for stdin")->required();
    app.add_option("--seed", opt.seed, "random seed for sampled checks (default 0)");
    app.add_option("--samples", opt.samples, "sample count for sampled checks (default 100)");
    app.add_option("--json", json_path, "write the machine-readable report to this path");
    app.add_flag("--strict", opt.strict, "enable cycle checking on chain-level maps");
    CLI11_PARSE(app, argc, argv);

    std::string text;
    if (file == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(file);
        if (!in) {
            std::cerr << "error: cannot open " << file << "\n";
            return 2;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }

    hpcalc::Report report;
    try {
        hpcalc::SessionSpec spec = hpcalc::parse_session(text);
        report = hpcalc::run_session(spec, opt);
    } catch (const hpcalc::parse_error& e) {
        std::cerr << "input error at " << e.what() << "\n";
        return 2;
    } catch (const hpcalc::semantic_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }

    report.print(std::cout);
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << report.json() << "\n";
    }
    return report.all_pass() ? 0 : 1;
}
