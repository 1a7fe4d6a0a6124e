#include <doctest.h>

#include <cmath>

#include "rollform/rng.hpp"
#include "rollform/surface.hpp"
#include "support/fd_oracle.hpp"

using namespace rollform;
namespace tst = rollform::testing;

namespace {

// Same catalog shapes rebuilt through the forward-mode backend, to cross
// check the hand-derived jet tables.
std::unique_ptr<SurfacePatch> make_ad_surface(const std::string& name) {
    const Rect r = make_surface(name)->rect();
    if (name == "catenoid")
        return std::make_unique<CallableSurface>("catenoid:ad", r, [](const Jet2& u, const Jet2& v) {
            return JV2{cosh_jet(v) * cos_jet(u), cosh_jet(v) * sin_jet(u), v};
        });
    if (name == "helicoid")
        return std::make_unique<CallableSurface>("helicoid:ad", r, [](const Jet2& u, const Jet2& v) {
            return JV2{sinh_jet(v) * cos_jet(u), sinh_jet(v) * sin_jet(u), u};
        });
    if (name == "sphere")
        return std::make_unique<CallableSurface>("sphere:ad", r, [](const Jet2& u, const Jet2& v) {
            return JV2{cos_jet(u) * cos_jet(v), sin_jet(u) * cos_jet(v), sin_jet(v)};
        });
    if (name == "pseudosphere")
        return std::make_unique<CallableSurface>("pseudosphere:ad", r, [](const Jet2& u, const Jet2& v) {
            const Jet2 sech = reciprocal(cosh_jet(v));
            const Jet2 tanh = sinh_jet(v) * sech;
            return JV2{sech * cos_jet(u), sech * sin_jet(u), v - tanh};
        });
    if (name == "plane")
        return std::make_unique<CallableSurface>("plane:ad", r, [](const Jet2& u, const Jet2& v) {
            return JV2{u, v, Jet2(0.0)};
        });
    return std::make_unique<CallableSurface>("cylinder:ad", r, [](const Jet2& u, const Jet2& v) {
        return JV2{cos_jet(u), sin_jet(u), v};
    });
}

std::vector<std::pair<double, double>> sample_points(const SurfacePatch& s, int n, Rng& rng) {
    std::vector<std::pair<double, double>> pts;
    const Rect& r = s.rect();
    for (int k = 0; k < n; ++k)
        pts.emplace_back(rng.uniform(r.u0, r.u1), rng.uniform(r.v0, r.v1));
    return pts;
}

}  // namespace

TEST_CASE("catalog jets agree with the forward-mode backend") {
    Rng rng(21);
    for (const auto& name : surface_catalog_names()) {
        const auto cat = make_surface(name);
        const auto ad = make_ad_surface(name);
        for (const auto& [u, v] : sample_points(*cat, 10, rng)) {
            const JV2 a = cat->position_jets(u, v);
            const JV2 b = ad->position_jets(u, v);
            for (int c = 0; c < 3; ++c)
                for (int i = 0; i <= 3; ++i)
                    for (int j = 0; i + j <= 3; ++j)
                        CHECK(std::abs(a(c).coeff(i, j) - b(c).coeff(i, j)) < 1e-12);
        }
    }
}

TEST_CASE("catalog jets agree with the finite-difference oracle level by level") {
    Rng rng(22);
    for (const auto& name : surface_catalog_names()) {
        const auto s = make_surface(name);
        for (const auto& [u, v] : sample_points(*s, 5, rng)) {
            const JV2 x = s->position_jets(u, v);
            for (int c = 0; c < 3; ++c) {
                auto val = [&](const std::array<double, 3>& p) {
                    return s->position_jets(p[0], p[1])(c).value();
                };
                auto du = [&](const std::array<double, 3>& p) {
                    return s->position_jets(p[0], p[1])(c).partial(1, 0);
                };
                auto duv = [&](const std::array<double, 3>& p) {
                    return s->position_jets(p[0], p[1])(c).partial(1, 1);
                };
                const std::array<double, 3> at{u, v, 0};
                CHECK(tst::rel_err(tst::fd_derivative(val, at, 0), x(c).partial(1, 0)) <= 1e-6);
                CHECK(tst::rel_err(tst::fd_derivative(val, at, 1), x(c).partial(0, 1)) <= 1e-6);
                CHECK(tst::rel_err(tst::fd_derivative(du, at, 0), x(c).partial(2, 0)) <= 1e-6);
                CHECK(tst::rel_err(tst::fd_derivative(du, at, 1), x(c).partial(1, 1)) <= 1e-6);
                CHECK(tst::rel_err(tst::fd_derivative(duv, at, 0), x(c).partial(2, 1)) <= 1e-6);
                CHECK(tst::rel_err(tst::fd_derivative(duv, at, 1), x(c).partial(1, 2)) <= 1e-6);
            }
        }
    }
}

TEST_CASE("frames: normals orthogonal and unit, K known on standard shapes") {
    Rng rng(23);
    const auto sphere = make_surface("sphere");
    for (const auto& [u, v] : sample_points(*sphere, 20, rng)) {
        const SurfaceFrame f = frame(*sphere, u, v);
        CHECK(std::abs(dot3(f.n0, f.xu)) < 1e-11);
        CHECK(std::abs(dot3(f.n0, f.xv)) < 1e-11);
        CHECK(std::abs(norm_sq3(f.n0) - Complex(1)) < 1e-11);
        CHECK(std::abs(f.K - Complex(1)) < 1e-9);
    }
    const auto plane = make_surface("plane");
    const SurfaceFrame pf = frame(*plane, 0.3, -0.7);
    CHECK(std::abs(pf.L) + std::abs(pf.M) + std::abs(pf.N) == 0.0);
    CHECK(std::abs(pf.K) == 0.0);

    const auto pseudo = make_surface("pseudosphere");
    for (const auto& [u, v] : sample_points(*pseudo, 20, rng)) {
        const SurfaceFrame f = frame(*pseudo, u, v);
        CHECK(std::abs(f.K - Complex(-1)) < 1e-9);
    }
    const auto cyl = make_surface("cylinder");
    CHECK(std::abs(frame(*cyl, 1.0, 0.5).K) < 1e-12);
}

TEST_CASE("gauss identity residual on catalog grids") {
    for (const auto& name : {"plane", "sphere", "catenoid", "pseudosphere"}) {
        const auto s = make_surface(name);
        const Rect& r = s->rect();
        double worst = 0;
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) {
                const double u = r.u0 + (r.u1 - r.u0) * (i + 0.5) / 16;
                const double v = r.v0 + (r.v1 - r.v0) * (j + 0.5) / 16;
                worst = std::max(worst, max_abs(gauss_identity_residual(*s, u, v)));
            }
        CAPTURE(name);
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("catenoid and helicoid are isometric on the shared grid") {
    const auto cat = make_surface("catenoid");
    const auto hel = make_surface("helicoid");
    const Rect& r = cat->rect();
    double worst = 0;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            const double u = r.u0 + (r.u1 - r.u0) * (i + 0.5) / 16;
            const double v = r.v0 + (r.v1 - r.v0) * (j + 0.5) / 16;
            worst = std::max(worst, isometry_residual(*cat, *hel, u, v));
        }
    CHECK(worst <= 1e-10);

    // closed form: both first fundamental forms are cosh^2(v) (du^2 + dv^2)
    const SurfaceFrame f = frame(*cat, 0.4, 0.6);
    const double c2 = std::cosh(0.6) * std::cosh(0.6);
    CHECK(std::abs(f.E - Complex(c2)) < 1e-12);
    CHECK(std::abs(f.F) < 1e-12);
    CHECK(std::abs(f.G - Complex(c2)) < 1e-12);
}

TEST_CASE("degenerate metric raises; unknown fixture raises") {
    // a map collapsing v: x(u,v) = (u, u, 0) has isotropic (rank-1) metric
    CallableSurface degen("degen", {0, 1, 0, 1}, [](const Jet2& u, const Jet2&) {
        return JV2{u, u, Jet2(0.0)};
    });
    CHECK_THROWS_AS(frame(degen, 0.5, 0.5), DegenerateMetricError);
    CHECK_THROWS_AS(make_surface("moebius"), MalformedInputError);
}

TEST_CASE("swapped patch transposes jets") {
    const auto cat = make_surface("catenoid");
    SwappedPatch sw(*cat);
    const JV2 a = cat->position_jets(0.3, 0.8);
    const JV2 b = sw.position_jets(0.8, 0.3);
    CHECK(std::abs(a(0).coeff(2, 1) - b(0).coeff(1, 2)) == 0.0);
    CHECK(std::abs(a(2).value() - b(2).value()) == 0.0);
}
