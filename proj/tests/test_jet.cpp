#include <doctest.h>

#include <cmath>

#include "rollform/jet.hpp"
#include "rollform/rng.hpp"
#include "support/fd_oracle.hpp"

using namespace rollform;
namespace tst = rollform::testing;

namespace {

// f(u,v) = sin(u) cosh(v) + u^2 v, assembled in jet arithmetic.
Jet2 sample_field(double u, double v) {
    const Jet2 ju = Jet2::variable(u, 0);
    const Jet2 jv = Jet2::variable(v, 1);
    return sin_jet(ju) * cosh_jet(jv) + ju * ju * jv;
}

}  // namespace

TEST_CASE("jet arithmetic against closed-form partials") {
    const double u = 0.7, v = -0.4;
    const Jet2 f = sample_field(u, v);
    CHECK(std::abs(f.value() - Complex(std::sin(u) * std::cosh(v) + u * u * v)) < 1e-15);
    CHECK(std::abs(f.partial(1, 0) - Complex(std::cos(u) * std::cosh(v) + 2 * u * v)) < 1e-14);
    CHECK(std::abs(f.partial(0, 1) - Complex(std::sin(u) * std::sinh(v) + u * u)) < 1e-14);
    CHECK(std::abs(f.partial(1, 1) - Complex(std::cos(u) * std::sinh(v) + 2 * u)) < 1e-14);
    CHECK(std::abs(f.partial(2, 0) - Complex(-std::sin(u) * std::cosh(v) + 2 * v)) < 1e-14);
    CHECK(std::abs(f.partial(3, 0) - Complex(-std::cos(u) * std::cosh(v)))< 1e-14);
    CHECK(std::abs(f.partial(2, 1) - Complex(-std::sin(u) * std::sinh(v) + 2.0)) < 1e-14);
}

TEST_CASE("jet division and sqrt round trips") {
    Rng rng(7);
    for (int k = 0; k < 50; ++k) {
        Jet3 g(Complex(0));
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; i + j <= 3; ++j)
                for (int l = 0; i + j + l <= 3; ++l) g.coeff(i, j, l) = rng.complex_box(1.0);
        g.coeff(0, 0, 0) += Complex(3.0, 0.5);  // keep away from zero and the cut

        const Jet3 inv = reciprocal(g);
        const Jet3 one = g * inv;
        CHECK(std::abs(one.value() - Complex(1)) < 1e-13);
        CHECK(std::abs(one.coeff(1, 1, 0)) < 1e-12);
        CHECK(std::abs(one.coeff(1, 1, 1)) < 1e-12);

        const Jet3 r = sqrt_jet(g);
        const Jet3 back = r * r - g;
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; i + j <= 3; ++j)
                for (int l = 0; i + j + l <= 3; ++l)
                    CHECK(std::abs(back.coeff(i, j, l)) < 1e-12);
    }
}

TEST_CASE("derivative extraction lowers order; exhaustion throws") {
    const Jet2 f = sample_field(0.3, 0.2);
    Jet2 fu = f.derivative(0);
    CHECK(fu.order() == 2);
    CHECK(std::abs(fu.value() - f.partial(1, 0)) < 1e-15);
    Jet2 fuv = fu.derivative(1);
    CHECK(fuv.order() == 1);
    Jet2 fuvu = fuv.derivative(0);
    CHECK(fuvu.order() == 0);
    CHECK_THROWS_AS(fuvu.derivative(0), JetOrderError);
    CHECK_THROWS_AS(fuvu.partial(1, 0), JetOrderError);
}

TEST_CASE("jets match the finite-difference oracle on every level") {
    // Each derivative order is certified as a first central difference of the
    // jet level below it, down to the raw values.
    auto value = [](const std::array<double, 3>& p) {
        return sample_field(p[0], p[1]).value();
    };
    auto first_u = [](const std::array<double, 3>& p) {
        return sample_field(p[0], p[1]).partial(1, 0);
    };
    auto second_uv = [](const std::array<double, 3>& p) {
        return sample_field(p[0], p[1]).partial(1, 1);
    };

    Rng rng(11);
    for (int k = 0; k < 20; ++k) {
        const std::array<double, 3> at{rng.uniform(-1, 1), rng.uniform(-1, 1), 0};
        const Jet2 f = sample_field(at[0], at[1]);
        CHECK(tst::rel_err(tst::fd_derivative(value, at, 0), f.partial(1, 0)) < 1e-9);
        CHECK(tst::rel_err(tst::fd_derivative(value, at, 1), f.partial(0, 1)) < 1e-9);
        CHECK(tst::rel_err(tst::fd_derivative(first_u, at, 1), f.partial(1, 1)) < 1e-9);
        CHECK(tst::rel_err(tst::fd_derivative(first_u, at, 0), f.partial(2, 0)) < 1e-9);
        CHECK(tst::rel_err(tst::fd_derivative(second_uv, at, 0), f.partial(2, 1)) < 1e-9);
        CHECK(tst::rel_err(tst::fd_derivative(second_uv, at, 1), f.partial(1, 2)) < 1e-9);
    }
}

TEST_CASE("mixed partials are symmetric by construction and against the oracle") {
    auto first_v = [](const std::array<double, 3>& p) {
        return sample_field(p[0], p[1]).partial(0, 1);
    };
    const std::array<double, 3> at{0.45, -0.8, 0};
    const Jet2 f = sample_field(at[0], at[1]);
    // d/du of f_v equals the single stored (1,1) coefficient
    CHECK(tst::rel_err(tst::fd_derivative(first_v, at, 0), f.partial(1, 1)) < 1e-9);
}

TEST_CASE("promotion to three parameters keeps w-derivatives zero") {
    const Jet2 f = sample_field(0.2, 0.9);
    const Jet3 g = promote(f);
    CHECK(g.value() == f.value());
    CHECK(g.partial(1, 1, 0) == f.partial(1, 1));
    CHECK(g.partial(0, 0, 1) == Complex(0));
    CHECK(g.partial(1, 0, 1) == Complex(0));
}

TEST_CASE("jets work as Eigen scalars") {
    const Jet3 u = Jet3::variable(0.4, 0);
    const Jet3 w = Jet3::variable(1.1, 2);
    JV3 a{u * w, sin_jet(u), Jet3(2.0)};
    JV3 b{Jet3(1.0), u, cos_jet(w)};
    const Jet3 d = dot3(a, b);
    CHECK(std::abs(d.value() - (0.4 * 1.1 + std::sin(0.4) * 0.4 + 2 * std::cos(1.1))) < 1e-14);
    const JV3 c = cross3(a, b);
    CHECK(std::abs(c(0).value() -
                   (std::sin(0.4) * std::cos(1.1) - 2.0 * 0.4)) < 1e-14);
    JM3 m = JM3::Identity();
    m(0, 1) = u;
    const JV3 mv = m * a;
    CHECK(std::abs(mv(0).value() - (0.4 * 1.1 + 0.4 * std::sin(0.4))) < 1e-14);
}
