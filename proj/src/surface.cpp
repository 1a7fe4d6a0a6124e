#include "rollform/surface.hpp"

#include <cmath>

#include "rollform/errors.hpp"

namespace rollform {

namespace {

// Jet of a univariate factor along `axis` from its derivative values
// f, f', f'', f''' at the base point.
Jet2 univar(int axis, const std::array<double, 4>& d) {
    Jet2 j{Complex(d[0])};
    int e[2] = {0, 0};
    for (int k = 1; k <= 3; ++k) {
        e[axis] = k;
        j.coeff(e[0], e[1]) = Complex(d[k] / detail::kFactorial[k]);
    }
    return j;
}

Jet2 cos_u(double u) { return univar(0, {std::cos(u), -std::sin(u), -std::cos(u), std::sin(u)}); }
Jet2 sin_u(double u) { return univar(0, {std::sin(u), std::cos(u), -std::sin(u), -std::cos(u)}); }
Jet2 cos_v(double v) { return univar(1, {std::cos(v), -std::sin(v), -std::cos(v), std::sin(v)}); }
Jet2 sin_v(double v) { return univar(1, {std::sin(v), std::cos(v), -std::sin(v), -std::cos(v)}); }
Jet2 cosh_v(double v) { return univar(1, {std::cosh(v), std::sinh(v), std::cosh(v), std::sinh(v)}); }
Jet2 sinh_v(double v) { return univar(1, {std::sinh(v), std::cosh(v), std::sinh(v), std::cosh(v)}); }
Jet2 lin(int axis, double t) { return univar(axis, {t, 1.0, 0.0, 0.0}); }

struct Catenoid final : SurfacePatch {
    Catenoid() : SurfacePatch("catenoid", {0.1, 6.18, -1.2, 1.2}) {}
    JV2 position_jets(double u, double v) const override {
        return {cosh_v(v) * cos_u(u), cosh_v(v) * sin_u(u), lin(1, v)};
    }
};

struct Helicoid final : SurfacePatch {
    Helicoid() : SurfacePatch("helicoid", {0.1, 6.18, -1.2, 1.2}) {}
    JV2 position_jets(double u, double v) const override {
        return {sinh_v(v) * cos_u(u), sinh_v(v) * sin_u(u), lin(0, u)};
    }
};

struct Sphere final : SurfacePatch {
    Sphere() : SurfacePatch("sphere", {0.1, 6.18, -1.2, 1.2}) {}
    JV2 position_jets(double u, double v) const override {
        return {cos_u(u) * cos_v(v), sin_u(u) * cos_v(v), sin_v(v)};
    }
};

// Tractrix of revolution, K = -1; cusp at v = 0 is excluded by the rectangle.
struct Pseudosphere final : SurfacePatch {
    Pseudosphere() : SurfacePatch("pseudosphere", {0.1, 6.18, 0.8, 2.0}) {}
    JV2 position_jets(double u, double v) const override {
        const double s = 1.0 / std::cosh(v);
        const double t = std::tanh(v);
        const Jet2 sech = univar(1, {s, -s * t, s * (t * t - s * s), 5 * s * s * s * t - s * t * t * t});
        const Jet2 zmer = univar(1, {v - t, t * t, 2 * s * s * t, 2 * s * s * s * s - 4 * s * s * t * t});
        return {sech * cos_u(u), sech * sin_u(u), zmer};
    }
};

struct Plane final : SurfacePatch {
    Plane() : SurfacePatch("plane", {-2.0, 2.0, -2.0, 2.0}) {}
    JV2 position_jets(double u, double v) const override {
        return {lin(0, u), lin(1, v), Jet2(Complex(0))};
    }
};

struct Cylinder final : SurfacePatch {
    Cylinder() : SurfacePatch("cylinder", {0.1, 6.18, -2.0, 2.0}) {}
    JV2 position_jets(double u, double v) const override {
        return {cos_u(u), sin_u(u), lin(1, v)};
    }
};

}  // namespace

std::unique_ptr<SurfacePatch> make_surface(const std::string& name) {
    if (name == "catenoid") return std::make_unique<Catenoid>();
    if (name == "helicoid") return std::make_unique<Helicoid>();
    if (name == "sphere") return std::make_unique<Sphere>();
    if (name == "pseudosphere") return std::make_unique<Pseudosphere>();
    if (name == "plane") return std::make_unique<Plane>();
    if (name == "cylinder") return std::make_unique<Cylinder>();
    throw MalformedInputError("unknown surface fixture: " + name);
}

std::vector<std::string> surface_catalog_names() {
    return {"catenoid", "helicoid", "pseudosphere", "sphere", "plane", "cylinder"};
}

JV2 SwappedPatch::position_jets(double u, double v) const {
    const JV2 x = base_.position_jets(v, u);
    JV2 r;
    for (int i = 0; i < 3; ++i) {
        Jet2 s(Complex(0));
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; a + b <= 3; ++b) s.coeff(b, a) = x(i).coeff(a, b);
        r(i) = s;
    }
    return r;
}

FrameJets2 frame_jets(const SurfacePatch& s, double u, double v, double tol) {
    FrameJets2 f;
    f.x = s.position_jets(u, v);
    f.xu = d_axis(f.x, 0);
    f.xv = d_axis(f.x, 1);
    const JV2 cr = cross3(f.xu, f.xv);
    const Jet2 w2 = norm_sq3(cr);
    const double scale = max_abs(value_of(f.xu)) * max_abs(value_of(f.xv));
    if (approx_zero(w2.value(), scale * scale, tol))
        throw DegenerateMetricError(s.name() + ": isotropic induced metric at sample point");
    f.W = sqrt_jet(w2);
    const Jet2 iw = reciprocal(f.W);
    f.n0 = {cr(0) * iw, cr(1) * iw, cr(2) * iw};
    return f;
}

FrameJets3 frame_jets3(const SurfacePatch& s, double u, double v, double tol) {
    const FrameJets2 f = frame_jets(s, u, v, tol);
    return {promote(f.x), promote(f.xu), promote(f.xv), promote(f.n0), promote(f.W)};
}

SymTensor2<Complex, 2> first_fundamental(const FrameJets2& f) {
    SymTensor2<Complex, 2> g;
    g(0, 0) = dot3(f.xu, f.xu).value();
    g(0, 1) = dot3(f.xu, f.xv).value();
    g(1, 1) = dot3(f.xv, f.xv).value();
    return g;
}

SymTensor2<Complex, 2> second_fundamental(const FrameJets2& f) {
    SymTensor2<Complex, 2> b;
    b(0, 0) = dot3(f.n0, d_axis(f.xu, 0)).value();
    b(0, 1) = dot3(f.n0, d_axis(f.xu, 1)).value();
    b(1, 1) = dot3(f.n0, d_axis(f.xv, 1)).value();
    return b;
}

SurfaceFrame frame(const SurfacePatch& s, double u, double v, double tol) {
    const FrameJets2 f = frame_jets(s, u, v, tol);
    SurfaceFrame r;
    r.x = value_of(f.x);
    r.xu = value_of(f.xu);
    r.xv = value_of(f.xv);
    r.n0 = value_of(f.n0);
    r.W = f.W.value();
    const auto I = first_fundamental(f);
    const auto II = second_fundamental(f);
    r.E = I(0, 0); r.F = I(0, 1); r.G = I(1, 1);
    r.L = II(0, 0); r.M = II(0, 1); r.N = II(1, 1);
    r.K = (r.L * r.N - r.M * r.M) / (r.E * r.G - r.F * r.F);
    return r;
}

CVec3 gauss_identity_residual(const SurfacePatch& s, double u, double v) {
    const FrameJets2 f = frame_jets(s, u, v);
    const CVec3 nu = value_of(d_axis(f.n0, 0));
    const CVec3 nv = value_of(d_axis(f.n0, 1));
    const auto I = first_fundamental(f);
    const auto II = second_fundamental(f);
    const Complex k = (II(0, 0) * II(1, 1) - II(0, 1) * II(0, 1)) /
                      (I(0, 0) * I(1, 1) - I(0, 1) * I(0, 1));
    return cross3(nu, nv) - CVec3(k * f.W.value() * value_of(f.n0));
}

double isometry_residual(const SurfacePatch& a, const SurfacePatch& b, double u, double v) {
    const auto Ia = first_fundamental(frame_jets(a, u, v));
    const auto Ib = first_fundamental(frame_jets(b, u, v));
    double r = 0;
    for (int p = 0; p < 2; ++p)
        for (int q = p; q < 2; ++q) r = std::max(r, std::abs(Ia(p, q) - Ib(p, q)));
    return r;
}

}  // namespace rollform
