#include "rollform/rolling.hpp"

#include "rollform/errors.hpp"

namespace rollform {

namespace {

JM2 frame_matrix(const JV2& a, const JV2& b, const JV2& c) {
    JM2 m;
    for (int i = 0; i < 3; ++i) {
        m(i, 0) = a(i);
        m(i, 1) = b(i);
        m(i, 2) = c(i);
    }
    return m;
}

SymTensor2<Jet2, 2> second_fundamental_jets(const FrameJets2& f) {
    SymTensor2<Jet2, 2> b;
    b(0, 0) = dot3(f.n0, d_axis(f.xu, 0));
    b(0, 1) = dot3(f.n0, d_axis(f.xu, 1));
    b(1, 1) = dot3(f.n0, d_axis(f.xv, 1));
    return b;
}

}  // namespace

RollingJets rolling_from_frames(const FrameJets2& f0, const FrameJets2& fx, double tol) {
    RollingJets rj;
    rj.f0 = f0;
    rj.fx = fx;
    const JM2 fx_mat = frame_matrix(fx.xu, fx.xv, fx.n0);
    rj.normal_flipped = false;
    JM2 f0_mat = frame_matrix(f0.xu, f0.xv, f0.n0);
    rj.R = fx_mat * inverse3(f0_mat);
    if (std::abs(det3(value_of(rj.R)) - Complex(1)) > tol) {
        // the opposite determinant branch: put -N0 in the inverted frame
        rj.normal_flipped = true;
        f0_mat = frame_matrix(f0.xu, f0.xv, JV2(-f0.n0));
        rj.R = fx_mat * inverse3(f0_mat);
        if (std::abs(det3(value_of(rj.R)) - Complex(1)) > tol)
            throw IsometryViolationError("rolling rotation has non-unit determinant");
    }
    rj.t = rj.fx.x - rj.R * rj.f0.x;
    return rj;
}

RollingJets rolling_map_jets(const SurfacePatch& x0, const SurfacePatch& x, double u, double v,
                             double tol) {
    const double iso = isometry_residual(x0, x, u, v);
    if (iso > tol)
        throw IsometryViolationError(x0.name() + " / " + x.name() +
                                     ": first fundamental forms differ at the sample point");
    return rolling_from_frames(frame_jets(x0, u, v, tol), frame_jets(x, u, v, tol), tol);
}

Form1<JV2, 2> connection_jets(const RollingJets& rj) {
    const JM2 rt = rj.R.transpose();
    Form1<JV2, 2> omega;
    for (int j = 0; j < 2; ++j) {
        const JM2 m = rt * d_axis(rj.R, j);
        omega[j] = cross3(rj.f0.n0, JV2(m * rj.f0.n0));
    }
    return omega;
}

Form1<JV2, 2> connection_jets_sff(const RollingJets& rj) {
    const auto b0 = second_fundamental_jets(rj.f0);
    const auto bx = second_fundamental_jets(rj.fx);
    SymTensor2<Jet2, 2> s;
    for (int p = 0; p < 2; ++p)
        for (int q = p; q < 2; ++q) s(p, q) = bx(p, q) - b0(p, q);
    return connection_from_s(rj.f0.xu, rj.f0.xv, rj.f0.W, s);
}

RollingState rolling_map(const SurfacePatch& x0, const SurfacePatch& x, double u, double v,
                         double tol) {
    const RollingJets rj = rolling_map_jets(x0, x, u, v, tol);
    RollingState st;
    st.R = value_of(rj.R);
    st.t = value_of(rj.t);
    st.omega = value_of(connection_jets(rj));
    st.omega_sff = value_of(connection_jets_sff(rj));
    st.normal_flipped = rj.normal_flipped;
    return st;
}

Form1<JV2, 2> other_face_via_rprime(const RollingJets& rj) {
    JM2 refl = JM2::Identity();
    const JM2 outer = rj.f0.n0 * rj.f0.n0.transpose();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) refl(i, j) -= Jet2(2.0) * outer(i, j);
    const JM2 rp = rj.R * refl;
    const JM2 rpt = rp.transpose();
    Form1<JV2, 2> omega;
    for (int j = 0; j < 2; ++j) {
        const JM2 m = rpt * d_axis(rp, j);
        omega[j] = cross3(rj.f0.n0, JV2(m * rj.f0.n0));
    }
    return omega;
}

MapResiduals map_residuals(const RollingJets& rj) {
    MapResiduals r;
    const CMat3 R = value_of(rj.R);
    r.rot_orthogonality = max_abs(CMat3(R.transpose() * R - CMat3::Identity()));
    r.rot_det = std::abs(det3(R) - Complex(1));

    const CVec3 xu0 = value_of(rj.f0.xu), xv0 = value_of(rj.f0.xv);
    const CVec3 xu = value_of(rj.fx.xu), xv = value_of(rj.fx.xv);
    r.roll_differential =
        std::max(max_abs(CVec3(R * xu0 - xu)), max_abs(CVec3(R * xv0 - xv)));

    const CMat3 dRu = value_of(d_axis(rj.R, 0)), dRv = value_of(d_axis(rj.R, 1));
    const CVec3 x0 = value_of(rj.f0.x);
    r.translation_compat = std::max(max_abs(CVec3(value_of(d_axis(rj.t, 0)) + dRu * x0)),
                                    max_abs(CVec3(value_of(d_axis(rj.t, 1)) + dRv * x0)));

    const CMat3 rtdR[2] = {CMat3(R.transpose() * dRu), CMat3(R.transpose() * dRv)};
    const CVec3 n0 = value_of(rj.f0.n0);
    const CVec3 dn0[2] = {value_of(d_axis(rj.f0.n0, 0)), value_of(d_axis(rj.f0.n0, 1))};
    const CVec3 dn[2] = {value_of(d_axis(rj.fx.n0, 0)), value_of(d_axis(rj.fx.n0, 1))};
    for (int j = 0; j < 2; ++j) {
        const CVec3 lhs = rtdR[j] * n0;
        const CVec3 rhs = R.transpose() * dn[j] - dn0[j];
        r.secoi = std::max(r.secoi, max_abs(CVec3(lhs - rhs)));
    }

    r.comp_seed = max_abs(CVec3(rtdR[0] * xv0 - rtdR[1] * xu0));
    const CMat3 dRrt[2] = {CMat3(dRu * R.transpose()), CMat3(dRv * R.transpose())};
    r.comp_target = max_abs(CVec3(dRrt[0] * xv - dRrt[1] * xu));

    const CVec3 tang[2] = {xu0, xv0};
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l)
                r.dx0_quadratic =
                    std::max(r.dx0_quadratic, std::abs(dot3(tang[j], CVec3(rtdR[k] * tang[l]))));

    const auto omega = value_of(connection_jets(rj));
    for (int j = 0; j < 2; ++j)
        r.alpha_link = std::max(r.alpha_link, max_abs(CMat3(rtdR[j] - alpha(omega[j]))));
    return r;
}

std::vector<Form1<CVec3, 2>> annihilator_witnesses(const SurfaceFrame& f, Rng& rng, int count) {
    // a_u = p1 xu + p2 xv + p3 n0, a_v = q1 xu + q2 xv + q3 n0 with
    //   p1 E + p2 F = 0,  q1 F + q2 G = 0,  p1 F + p2 G + q1 E + q2 F = 0.
    if (std::abs(f.E) < 1e-12)
        throw DegenerateMetricError("annihilator family needs E away from zero");
    const Complex det = f.E * f.G - f.F * f.F;
    std::vector<Form1<CVec3, 2>> out;
    for (int k = 0; k < count; ++k) {
        const Complex tpar = rng.complex_box(1.0);
        const Complex p2 = tpar;
        const Complex p1 = -tpar * f.F / f.E;
        const Complex rhs3 = -(p1 * f.F + p2 * f.G);
        // [E F; F G] [q1 q2]^T = [rhs3, 0]^T
        const Complex q1 = (rhs3 * f.G) / det;
        const Complex q2 = (-rhs3 * f.F) / det;
        const Complex p3 = rng.complex_box(1.0), q3 = rng.complex_box(1.0);
        Form1<CVec3, 2> a;
        a[0] = p1 * f.xu + p2 * f.xv + p3 * f.n0;
        a[1] = q1 * f.xu + q2 * f.xv + q3 * f.n0;
        out.push_back(a);
    }
    return out;
}

FlatGerm flat_germ(const FrameJets3& f0, Complex s11, Complex s12, Rng& rng) {
    // second fundamental form values
    const Complex b11 = dot3(f0.n0, d_axis(f0.xu, 0)).value();
    const Complex b12 = dot3(f0.n0, d_axis(f0.xu, 1)).value();
    const Complex b22 = dot3(f0.n0, d_axis(f0.xv, 1)).value();

    // admissible value: det(II + s) = det II, affine-linear in s22
    while (std::abs(b11 + s11) < 1e-2) s11 += rng.complex_box(0.5);
    const Complex s22 =
        (b11 * b22 + (b12 + s12) * (b12 + s12) - b12 * b12) / (b11 + s11) - b22;

    const Jet3 iw = reciprocal(f0.W);
    const JV3 t1 = f0.xu * iw;
    const JV3 t2 = f0.xv * iw;
    const CVec3 t1v = value_of(t1), t2v = value_of(t2);

    const CVec3 wu = s12 * t1v - s11 * t2v;
    const CVec3 wv = s22 * t1v - s12 * t2v;
    const CVec3 curl_target = -cross3(wu, wv);
    const CVec3 frame_part = s22 * value_of(d_axis(t1, 0)) - s12 * value_of(d_axis(t2, 0)) -
                             s12 * value_of(d_axis(t1, 1)) + s11 * value_of(d_axis(t2, 1));
    const CVec3 rhs = curl_target - frame_part;

    FlatGerm g;
    g.s11 = s11;
    g.s12 = s12;
    g.s22 = s22;
    g.normal_defect = std::abs(dot3(value_of(f0.n0), rhs));

    // tangential coordinates of rhs in the (t1, t2) basis
    const Complex g11 = dot3(t1v, t1v), g12 = dot3(t1v, t2v), g22 = dot3(t2v, t2v);
    const Complex gdet = g11 * g22 - g12 * g12;
    const Complex r1 = dot3(t1v, rhs), r2 = dot3(t2v, rhs);
    const Complex c1 = (g22 * r1 - g12 * r2) / gdet;
    const Complex c2 = (g11 * r2 - g12 * r1) / gdet;

    SymTensor2<Jet3, 2> s;
    Jet3 j11(s11), j12(s12), j22(s22);
    j11.coeff(1, 0, 0) = rng.complex_box(0.5);
    j11.coeff(0, 1, 0) = c2;
    j22.coeff(1, 0, 0) = c1;
    j22.coeff(0, 1, 0) = rng.complex_box(0.5);
    s(0, 0) = j11;
    s(0, 1) = j12;
    s(1, 1) = j22;
    g.omega = connection_from_s(f0.xu, f0.xv, f0.W, s);
    return g;
}

}  // namespace rollform
