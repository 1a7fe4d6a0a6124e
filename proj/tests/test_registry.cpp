#include <doctest.h>

#include <algorithm>
#include <set>

#include "rollform/errors.hpp"
#include "rollform/registry.hpp"

using namespace rollform;

TEST_CASE("every residual operation is reachable from a registered target") {
    std::set<std::string> covered;
    for (const auto& t : list_targets())
        for (const auto& op : t.ops) covered.insert(op);
    for (const auto& op : required_operations()) {
        CAPTURE(op);
        CHECK(covered.count(op) == 1);
    }
}

TEST_CASE("registry content and ordering are stable") {
    const auto& a = list_targets();
    const auto& b = list_targets();
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].id == b[i].id);

    std::set<std::string> ids;
    for (const auto& t : a) ids.insert(t.id);
    for (const char* required :
         {"alg:eq-fund", "roll:eq-om", "roll:eq-omjk", "roll:eq-omom", "roll:eq-om-prime",
          "dist:genericity", "dist:pfaffian", "dist:abc", "dist:n-condition", "dist:cons",
          "dist:case-b"}) {
        CAPTURE(required);
        CHECK(ids.count(required) == 1);
    }
    for (const auto& t : a) CHECK_FALSE(t.summary.empty());
}

TEST_CASE("reports are byte-identical for identical request and seed") {
    VerifyRequest req;
    req.target = "roll:eq-om";
    req.nu = 6;
    req.nv = 6;
    req.seed = 77;
    const std::string one = run_verify(req).serialize();
    const std::string two = run_verify(req).serialize();
    CHECK(one == two);

    VerifyRequest alg;
    alg.target = "alg:eq-fund";
    alg.nu = 4;
    alg.nv = 4;
    alg.seed = 1;
    const std::string s1 = run_verify(alg).serialize();
    alg.seed = 2;
    const std::string s2 = run_verify(alg).serialize();
    CHECK(s1 != s2);  // the seed is live, not decorative
}

TEST_CASE("unknown targets and fixtures are usage errors") {
    VerifyRequest req;
    req.target = "nope:nothing";
    CHECK_THROWS_AS(run_verify(req), MalformedInputError);
    try {
        run_verify(req);
    } catch (const MalformedInputError& e) {
        // the error lists the registered names
        CHECK(std::string(e.what()).find("alg:eq-fund") != std::string::npos);
    }

    req.target = "surf:gauss";
    req.fixture = "moebius";
    CHECK_THROWS_AS(run_verify(req), MalformedInputError);

    req.target = "dist:pfaffian";
    req.fixture = "caseb:pseudosphere";  // wrong family for this target
    CHECK_THROWS_AS(run_verify(req), MalformedInputError);
}

TEST_CASE("fixture precondition failures produce structured error reports") {
    VerifyRequest req;
    req.target = "dist:pfaffian";
    req.fixture = "backlund:sphere:sigma=0.785";  // K = +1 seed is rejected
    const ResidualReport rep = run_verify(req);
    CHECK_FALSE(rep.error.empty());
    CHECK_FALSE(rep.pass());
    CHECK(rep.serialize().find("error:") != std::string::npos);
}

TEST_CASE("grid dimensions below two are rejected") {
    VerifyRequest req;
    req.target = "alg:eq-fund";
    req.nu = 1;
    req.nv = 8;
    CHECK_THROWS_AS(run_verify(req), MalformedInputError);
}

TEST_CASE("tolerance overrides reach the checks") {
    VerifyRequest req;
    req.target = "alg:eq-fund";
    req.nu = 4;
    req.nv = 4;
    req.tol["fund.residual"] = 1e-30;  // unreachable: forces a failure
    const ResidualReport rep = run_verify(req);
    CHECK_FALSE(rep.pass());
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].tolerance == 1e-30);
}

TEST_CASE("report serialization carries the documented keys") {
    VerifyRequest req;
    req.target = "roll:eq-om";
    req.nu = 4;
    req.nv = 4;
    const std::string doc = run_verify(req).serialize();
    for (const char* key : {"schema: rollform-report/1", "tool: ", "target: roll:eq-om",
                            "fixture: catenoid:helicoid", "seed: ", "grid:", "rect:", "checks:",
                            "negative_controls:", "overall: "}) {
        CAPTURE(key);
        CHECK(doc.find(key) != std::string::npos);
    }
    CHECK_FALSE(report_schema_text().empty());
}
