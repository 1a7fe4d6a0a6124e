#include "rollform/report.hpp"

#include <cstdio>
#include <sstream>

namespace rollform {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt17(const Complex& z) {
    return "[" + fmt17(z.real()) + ", " + fmt17(z.imag()) + "]";
}

namespace {

const char* mode_name(ControlStat::Mode m) {
    switch (m) {
        case ControlStat::Mode::MinExceeds: return "min-exceeds";
        case ControlStat::Mode::MaxExceeds: return "max-exceeds";
        case ControlStat::Mode::RateExceeds: return "rate-exceeds";
    }
    return "?";
}

}  // namespace

std::string ResidualReport::serialize() const {
    std::ostringstream out;
    out << "schema: " << kReportSchema << "\n";
    out << "tool: " << kToolVersion << "\n";
    out << "target: " << target << "\n";
    out << "fixture: " << fixture << "\n";
    out << "seed: " << seed << "\n";
    out << "grid:\n";
    out << "  nu: " << nu << "\n";
    out << "  nv: " << nv << "\n";
    if (nw > 0) out << "  nw: " << nw << "\n";
    out << "rect:\n";
    out << "  u: [" << fmt17(u0) << ", " << fmt17(u1) << "]\n";
    out << "  v: [" << fmt17(v0) << ", " << fmt17(v1) << "]\n";
    if (nw > 0) out << "  w: [" << fmt17(w0) << ", " << fmt17(w1) << "]\n";
    if (!error.empty()) {
        out << "error: " << error << "\n";
        out << "overall: fail\n";
        return out.str();
    }
    if (!notes.empty()) {
        out << "notes:\n";
        for (const auto& [k, v] : notes) out << "  " << k << ": " << v << "\n";
    }
    out << "checks:\n";
    for (const auto& c : checks) {
        out << "  " << c.name << ":\n";
        out << "    tolerance: " << fmt17(c.tolerance) << "\n";
        out << "    max_abs: " << fmt17(c.max_abs) << "\n";
        out << "    mean_abs: " << fmt17(c.mean_abs()) << "\n";
        out << "    count: " << c.count << "\n";
        out << "    argmax:\n";
        out << "      index: [" << c.argmax_index[0] << ", " << c.argmax_index[1];
        if (c.dims == 3) out << ", " << c.argmax_index[2];
        out << "]\n";
        out << "      point: [" << fmt17(c.argmax_point[0]) << ", " << fmt17(c.argmax_point[1]);
        if (c.dims == 3) out << ", " << fmt17(c.argmax_point[2]);
        out << "]\n";
        out << "    pass: " << (c.pass() ? "true" : "false") << "\n";
    }
    if (!controls.empty()) {
        out << "negative_controls:\n";
        for (const auto& c : controls) {
            out << "  " << c.name << ":\n";
            out << "    mode: " << mode_name(c.mode) << "\n";
            out << "    threshold: " << fmt17(c.threshold) << "\n";
            out << "    min_abs: " << fmt17(c.count ? c.min_abs : 0.0) << "\n";
            out << "    max_abs: " << fmt17(c.max_abs) << "\n";
            if (c.mode == ControlStat::Mode::RateExceeds) {
                out << "    required_rate: " << fmt17(c.required_rate) << "\n";
                out << "    rate: " << fmt17(c.rate()) << "\n";
            }
            out << "    pass: " << (c.pass() ? "true" : "false") << "\n";
        }
    }
    out << "overall: " << (pass() ? "pass" : "fail") << "\n";
    return out.str();
}

std::string report_schema_text() {
    std::ostringstream out;
    out << "schema version: " << kReportSchema << "\n\n"
        << "A report is an indented key-value tree, two spaces per level.\n"
        << "Scalars print with 17 significant digits; complex values print as\n"
        << "[re, im] pairs.  Grid points are swept row-major in (u, v, w) and\n"
        << "argmax locations appear both as indices and parameter values.\n\n"
        << "top-level keys, in order:\n"
        << "  schema, tool, target, fixture, seed   run identification\n"
        << "  grid: nu, nv [, nw]                   grid dimensions per axis\n"
        << "  rect: u, v [, w]                      parameter rectangle\n"
        << "  error                                 only when a precondition failed\n"
        << "  notes                                 free-form diagnostics\n"
        << "  checks: <name>:                       positive residual checks\n"
        << "    tolerance, max_abs, mean_abs, count, argmax{index, point}, pass\n"
        << "  negative_controls: <name>:            corruption / violation probes\n"
        << "    mode, threshold, min_abs, max_abs [, required_rate, rate], pass\n"
        << "  overall                               pass iff every check passes and\n"
        << "                                        every control exceeds its threshold\n";
    return out.str();
}

}  // namespace rollform
