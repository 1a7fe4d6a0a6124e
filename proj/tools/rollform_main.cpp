// Command-line harness: selects fixtures and verification targets, sweeps
// grids and emits machine-readable residual reports.
//
// Exit codes: 0 every check passed, 1 a check or control failed,
// 2 usage error or fixture precondition failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "rollform/errors.hpp"
#include "rollform/registry.hpp"

namespace {

using namespace rollform;

bool parse_grid(const std::string& s, VerifyRequest& req) {
    int a = 0, b = 0, c = 0;
    if (std::sscanf(s.c_str(), "%dx%dx%d", &a, &b, &c) == 3) {
        req.nu = a; req.nv = b; req.nw = c;
        return a > 0 && b > 0 && c > 0;
    }
    if (std::sscanf(s.c_str(), "%dx%d", &a, &b) == 2) {
        req.nu = a; req.nv = b;
        return a > 0 && b > 0;
    }
    return false;
}

bool parse_rect(const std::string& s, VerifyRequest& req) {
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            vals.push_back(std::stod(item));
        } catch (...) {
            return false;
        }
    }
    if (vals.size() != 4 && vals.size() != 6) return false;
    req.has_rect = true;
    req.u0 = vals[0]; req.u1 = vals[1]; req.v0 = vals[2]; req.v1 = vals[3];
    if (vals.size() == 6) {
        req.has_wrange = true;
        req.w0 = vals[4]; req.w1 = vals[5];
    }
    return true;
}

bool parse_tol(const std::string& s, VerifyRequest& req) {
    const auto pos = s.find('=');
    if (pos == std::string::npos) return false;
    try {
        req.tol[s.substr(0, pos)] = std::stod(s.substr(pos + 1));
    } catch (...) {
        return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"residual verification for rolling surfaces and contact distributions"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run a target and emit a residual report");
    std::string target, fixture, grid, rect, out;
    std::vector<std::string> tols;
    std::uint64_t seed = 12345;
    verify->add_option("--target", target, "registered target id (see `list`)")->required();
    verify->add_option("--fixture", fixture, "fixture name; defaults per target");
    verify->add_option("--grid", grid, "grid as NUxNV or NUxNVxNW");
    verify->add_option("--rect", rect, "parameter rectangle u0,u1,v0,v1[,w0,w1]");
    verify->add_option("--tol", tols, "per-check tolerance override name=value")
        ->take_all();
    verify->add_option("--seed", seed, "seed for randomized probes");
    verify->add_option("--out", out, "write the report to this file instead of stdout");

    auto* list = app.add_subcommand("list", "list registered targets");
    auto* schema = app.add_subcommand("report-schema", "describe the report document layout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) {
            for (const auto& t : list_targets())
                std::cout << t.id << " -- " << t.summary << "\n";
            return 0;
        }
        if (schema->parsed()) {
            std::cout << report_schema_text();
            return 0;
        }

        VerifyRequest req;
        req.target = target;
        req.fixture = fixture;
        req.seed = seed;
        if (!grid.empty() && !parse_grid(grid, req)) {
            std::cerr << "error: bad --grid '" << grid << "'\n";
            return 2;
        }
        if (!rect.empty() && !parse_rect(rect, req)) {
            std::cerr << "error: bad --rect '" << rect << "'\n";
            return 2;
        }
        for (const auto& t : tols)
            if (!parse_tol(t, req)) {
                std::cerr << "error: bad --tol '" << t << "'\n";
                return 2;
            }

        const ResidualReport rep = run_verify(req);
        const std::string doc = rep.serialize();
        if (out.empty()) {
            std::cout << doc;
        } else {
            std::ofstream f(out, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot write " << out << "\n";
                return 2;
            }
            f << doc;
        }
        if (!rep.error.empty()) return 2;
        return rep.pass() ? 0 : 1;
    } catch (const MalformedInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
