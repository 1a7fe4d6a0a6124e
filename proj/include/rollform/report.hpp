#pragma once

// Machine-readable residual reports.  One self-describing key-value tree per
// verification run, numbers with 17 significant digits, complex values as
// [re, im] pairs.  Serialization is deterministic: identical request and seed
// reproduce the document byte for byte.

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "rollform/complex3.hpp"

namespace rollform {

inline constexpr const char* kReportSchema = "rollform-report/1";
inline constexpr const char* kToolVersion = "rollform 1.0.0";

std::string fmt17(double x);
std::string fmt17(const Complex& z);

/// A positive check: pass iff max_abs <= tolerance.
struct CheckStat {
    std::string name;
    double tolerance = 0;
    double max_abs = 0;
    double sum_abs = 0;
    std::int64_t count = 0;
    int dims = 2;
    std::array<int, 3> argmax_index{-1, -1, -1};
    std::array<double, 3> argmax_point{0, 0, 0};

    void update(double value, std::array<int, 3> idx, std::array<double, 3> pt) {
        ++count;
        sum_abs += value;
        if (value > max_abs || count == 1) {
            max_abs = value;
            argmax_index = idx;
            argmax_point = pt;
        }
    }
    double mean_abs() const { return count ? sum_abs / double(count) : 0.0; }
    bool pass() const { return max_abs <= tolerance; }
};

/// A negative control: the monitored statistic must exceed its threshold.
struct ControlStat {
    enum class Mode { MinExceeds, MaxExceeds, RateExceeds };
    std::string name;
    Mode mode = Mode::MinExceeds;
    double threshold = 0;      // per-point magnitude floor
    double required_rate = 0;  // only for RateExceeds
    double min_abs = std::numeric_limits<double>::infinity();
    double max_abs = 0;
    std::int64_t count = 0;
    std::int64_t exceeding = 0;

    void update(double value) {
        ++count;
        min_abs = std::min(min_abs, value);
        max_abs = std::max(max_abs, value);
        if (value > threshold) ++exceeding;
    }
    double rate() const { return count ? double(exceeding) / double(count) : 0.0; }
    bool pass() const {
        switch (mode) {
            case Mode::MinExceeds: return count > 0 && min_abs > threshold;
            case Mode::MaxExceeds: return max_abs > threshold;
            case Mode::RateExceeds: return rate() >= required_rate;
        }
        return false;
    }
};

struct ResidualReport {
    std::string target;
    std::string fixture;
    std::uint64_t seed = 0;
    int nu = 0, nv = 0, nw = 0;  // nw = 0 for 2-parameter targets
    double u0 = 0, u1 = 0, v0 = 0, v1 = 0, w0 = 0, w1 = 0;
    std::vector<std::pair<std::string, std::string>> notes;
    std::vector<CheckStat> checks;
    std::vector<ControlStat> controls;
    std::string error;  // nonempty: a precondition failed and nothing ran

    bool pass() const {
        if (!error.empty()) return false;
        for (const auto& c : checks)
            if (!c.pass()) return false;
        for (const auto& c : controls)
            if (!c.pass()) return false;
        return true;
    }

    std::string serialize() const;
};

/// Human-oriented description of the report layout (the `report-schema`
/// subcommand prints this).
std::string report_schema_text();

}  // namespace rollform
