#pragma once

// Verification target registry: maps stable target ids onto grid sweeps of
// the library's residual operations and assembles deterministic reports.

#include <map>
#include <vector>

#include "rollform/report.hpp"

namespace rollform {

struct VerifyRequest {
    std::string target;
    std::string fixture;      // empty: use the target's default fixture
    int nu = 0, nv = 0, nw = 0;  // 0: use the target's default grid
    bool has_rect = false;
    double u0 = 0, u1 = 0, v0 = 0, v1 = 0;
    bool has_wrange = false;
    double w0 = 0, w1 = 0;
    std::uint64_t seed = 12345;
    std::map<std::string, double> tol;  // per-check tolerance overrides
};

struct TargetInfo {
    std::string id;
    std::string summary;  // the identity the target certifies
    std::string default_fixture;
    int default_nu = 16, default_nv = 16, default_nw = 0;
    std::vector<std::string> ops;  // library operations the target exercises
};

/// Registered targets in stable order.
const std::vector<TargetInfo>& list_targets();

/// Runs one verification target.  Unknown target or fixture names throw
/// MalformedInputError; fixture precondition failures come back as a report
/// with the `error` field set.
ResidualReport run_verify(const VerifyRequest& req);

/// Canonical list of residual operations that must be reachable from the
/// registry (enforced by a test).
const std::vector<std::string>& required_operations();

}  // namespace rollform
