#include "rollform/contactdist.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "rollform/errors.hpp"

namespace rollform {

namespace {

// tangential coordinates of a vector in the (xu, xv) basis (Gram solve)
std::pair<Complex, Complex> tangential_coords(const CVec3& xu, const CVec3& xv, const CVec3& V) {
    const Complex E = dot3(xu, xu), F = dot3(xu, xv), G = dot3(xv, xv);
    const Complex det = E * G - F * F;
    const Complex b1 = dot3(xu, V), b2 = dot3(xv, V);
    return {(G * b1 - F * b2) / det, (E * b2 - F * b1) / det};
}

Form1<Jet3, 2> dw_from_jets_a(const DistJets& d, const Form1<JV3, 2>& omega, double tol) {
    const JV3 wV = d_axis(d.V, 2);
    const Jet3 den = dot3(d.seed.n0, cross3(wV, d.V)) + d.nn * dot3(d.V, wV);
    if (std::abs(den.value()) <= tol)
        throw DegeneratePfaffianError("dw denominator N0^T(dV/dw x V) + nn V^T dV/dw vanishes");
    const Jet3 iden = reciprocal(den);
    Form1<Jet3, 2> phi;
    for (int j = 0; j < 2; ++j) {
        const JV3 dpj = d_axis(d.p, j);
        const Jet3 n1 = dot3(d.seed.n0, cross3(d.V, dpj));
        const Jet3 n2 =
            d.mm * dot3(d.V, JV3(cross3(omega[j], d.seed.n0) + d_axis(d.seed.n0, j)));
        const Jet3 n3 = d.nn * dot3(d.V, dpj);
        phi[j] = (n1 + n2 - n3) * iden;
    }
    return phi;
}

Form1<Jet3, 2> dw_from_jets_b(const DistJets& d, const Form1<JV3, 2>& omega, double tol) {
    const JV3 wV = d_axis(d.V, 2);
    const Jet3 den = dot3(d.V, wV);
    if (std::abs(den.value()) <= tol)
        throw DegeneratePfaffianError("dw denominator V^T dV/dw vanishes");
    const Jet3 iden = reciprocal(den);
    Form1<Jet3, 2> phi;
    for (int j = 0; j < 2; ++j) {
        const JV3 dpj = d_axis(d.p, j);
        const Jet3 n2 =
            d.mm * dot3(d.V, JV3(cross3(omega[j], d.seed.n0) + d_axis(d.seed.n0, j)));
        phi[j] = (n2 - dot3(d.V, dpj)) * iden;
    }
    return phi;
}

// beta = V^T(omega x N0 + dN0), gamma = (N0 x V)^T(omega x N0 + dN0) (values)
struct ProbeForms {
    Form1<Complex, 2> beta, gamma;
};

ProbeForms probe_forms(const DistJets& d, const Form1<JV3, 2>& omega) {
    ProbeForms pf;
    const CVec3 n0 = value_of(d.seed.n0);
    const CVec3 V = value_of(d.V);
    const CVec3 nxv = cross3(n0, V);
    for (int j = 0; j < 2; ++j) {
        const CVec3 arg = cross3(value_of(omega[j]), n0) + value_of(d_axis(d.seed.n0, j));
        pf.beta[j] = dot3(V, arg);
        pf.gamma[j] = dot3(nxv, arg);
    }
    return pf;
}

// smooth bounded scalar field with randomized coefficients
ScalarField3 random_smooth_field(Rng& rng, double amplitude) {
    const std::array<double, 7> c = {rng.uniform(-1, 1) * amplitude,
                                     rng.uniform(-1, 1) * amplitude,
                                     rng.uniform(-1, 1) * amplitude,
                                     rng.uniform(-1, 1) * amplitude,
                                     rng.uniform(0, 6.28),
                                     rng.uniform(0, 6.28),
                                     rng.uniform(0, 6.28)};
    return [c](const Jet3& u, const Jet3& v, const Jet3& w) {
        return Jet3(c[0]) + Jet3(c[1]) * sin_jet(u + Jet3(c[4])) +
               Jet3(c[2]) * cos_jet(v + Jet3(c[5])) + Jet3(c[3]) * sin_jet(w + Jet3(c[6]));
    };
}

}  // namespace

Form1<JV3, 2> GermOmega::at(double u, double v, double) const {
    Rng rng(rng_seed_);
    const FrameJets3 f = frame_jets3(seed_, u, v);
    return flat_germ(f, rng.complex_box(0.6), rng.complex_box(0.6), rng).omega;
}

DistJets ConfigA::jets(double u, double v, double w) const {
    DistJets d;
    d.seed = frame_jets3(*seed, u, v);
    const Jet3 ju = Jet3::variable(u, 0), jv = Jet3::variable(v, 1), jw = Jet3::variable(w, 2);
    d.V = V(d.seed, ju, jv, jw);
    d.p = d.seed.x + d.V;
    d.mm = mm(ju, jv, jw);
    d.nn = nn(ju, jv, jw);
    d.m = JV3(cross3(d.V, d.seed.n0)) + JV3(d.mm * d.seed.n0) + JV3(d.nn * d.V);
    return d;
}

DistJets ConfigB::jets(double u, double v, double w) const {
    DistJets d;
    d.seed = frame_jets3(*seed, u, v);
    const Jet3 ju = Jet3::variable(u, 0), jv = Jet3::variable(v, 1), jw = Jet3::variable(w, 2);
    d.V = V(d.seed, ju, jv, jw);
    d.p = d.seed.x + d.V;
    d.mm = mm(ju, jv, jw);
    d.nn = Jet3(0.0);
    d.m = d.V + JV3(d.mm * d.seed.n0);
    return d;
}

GenericityValue genericity_value(const DistJets& d) {
    const CVec3 m = value_of(d.m);
    const CVec3 V = value_of(d.V);
    const CVec3 wV = value_of(d_axis(d.V, 2));
    const CVec3 n0 = value_of(d.seed.n0);
    GenericityValue g;
    g.m_dot_wV = dot3(m, wV);
    g.cross_norm_sq = norm_sq3(cross3(cross3(m, V), n0));
    return g;
}

Form1<Jet3, 2> dw_connection(const ConfigA& cfg, const OmegaField3& omega, double u, double v,
                             double w, double tol) {
    return dw_from_jets_a(cfg.jets(u, v, w), omega.at(u, v, w), tol);
}

Form1<Jet3, 2> dw_connection(const ConfigB& cfg, const OmegaField3& omega, double u, double v,
                             double w, double tol) {
    return dw_from_jets_b(cfg.jets(u, v, w), omega.at(u, v, w), tol);
}

Form1<Complex, 2> integrability_residual(const DistJets& d, const Form1<CVec3, 2>& omega_values,
                                         const Form1<Complex, 2>& dw_values, double tol) {
    const CVec3 m = value_of(d.m);
    const CVec3 V = value_of(d.V);
    const CVec3 wV = value_of(d_axis(d.V, 2));
    if (std::abs(dot3(m, wV)) <= tol)
        throw NonGenericError("integrability residual needs m^T dV/dw away from zero");
    Form1<Complex, 2> r;
    for (int j = 0; j < 2; ++j) {
        const CVec3 dpj = value_of(d_axis(d.p, j));
        r[j] = dot3(m, CVec3(cross3(omega_values[j], V) + dpj + dw_values[j] * wV));
    }
    return r;
}

Complex compat_density(const Form1<Jet3, 2>& phi) {
    return phi[1].derivative(0).value() - phi[0].derivative(1).value() +
           phi[0].value() * phi[1].derivative(2).value() -
           phi[1].value() * phi[0].derivative(2).value();
}

ABCDecomposition extract_abc(const ConfigA& cfg, double u, double v, double w,
                             std::uint64_t probe_seed, int extra_probes, double tol) {
    const DistJets d = cfg.jets(u, v, w);

    std::vector<Form1<JV3, 2>> omegas;
    omegas.push_back(Form1<JV3, 2>{});                                   // identity rolling
    omegas.push_back(other_face_form(Form1<JV3, 2>{}, d.seed.n0));       // its other face
    for (int k = 0; k < extra_probes; ++k) {
        const GermOmega germ(*cfg.seed, probe_seed + std::uint64_t(k));
        const auto om = germ.at(u, v, w);
        omegas.push_back(om);
        omegas.push_back(other_face_form(om, d.seed.n0));
    }

    const int rows = int(omegas.size());
    Eigen::MatrixXcd mat(rows, 5);
    Eigen::VectorXcd rhs(rows);
    for (int r = 0; r < rows; ++r) {
        const auto phi = dw_from_jets_a(d, omegas[r], tol);
        const ProbeForms pf = probe_forms(d, omegas[r]);
        mat(r, 0) = Complex(1);
        mat(r, 1) = pf.beta[1];
        mat(r, 2) = -pf.beta[0];
        mat(r, 3) = pf.gamma[1];
        mat(r, 4) = -pf.gamma[0];
        rhs(r) = compat_density(phi);
    }

    // The probe functional has a one-dimensional kernel (the annihilator
    // family), so the system has numerical rank 4; solve with the rank-4
    // pseudo-inverse for the minimum-norm representative.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(3) < 1e-10 * sv(0))
        throw IllConditionedExtractionError("probe system singular beyond the expected kernel",
                                            sv(0) / sv(3));
    Eigen::VectorXcd q = Eigen::VectorXcd::Zero(5);
    for (int i = 0; i < 4; ++i)
        q += svd.matrixV().col(i) * (svd.matrixU().col(i).adjoint() * rhs)(0) / sv(i);

    ABCDecomposition dec;
    dec.A = q(0);
    dec.Bu = q(1);
    dec.Bv = q(2);
    dec.Cu = q(3);
    dec.Cv = q(4);
    dec.cond = sv(0) / sv(3);
    dec.lsq_residual = (mat * q - rhs).cwiseAbs().maxCoeff();
    return dec;
}

BcRelations bc_relations_residual(const ABCDecomposition& dec, const DistJets& d, double tol) {
    const CVec3 xu = value_of(d.seed.xu), xv = value_of(d.seed.xv);
    const CVec3 n0 = value_of(d.seed.n0);
    const CVec3 V = value_of(d.V);
    const CVec3 nxv = cross3(n0, V);

    BcRelations r;
    r.r_bu = dec.Bu * dot3(nxv, xu) - dec.Cu * dot3(V, xu);
    r.r_bv = dec.Bv * dot3(nxv, xv) - dec.Cv * dot3(V, xv);
    r.r_mixed = dec.Bu * dot3(nxv, xv) + dec.Bv * dot3(nxv, xu) - dec.Cu * dot3(V, xv) -
                dec.Cv * dot3(V, xu);
    r.r_ortho = dot3(nxv, CVec3(dec.Cu * xv - dec.Cv * xu));

    const auto [v1, v2] = tangential_coords(xu, xv, V);
    r.r_prop = dec.Cu * v1 + dec.Cv * v2;
    const Complex den = v1 * v1 + v2 * v2;
    const double dir_scale = std::sqrt(tol);
    r.conditioning_warning = std::abs(den) < dir_scale || std::abs(dot3(nxv, xu)) < dir_scale ||
                             std::abs(dot3(nxv, xv)) < dir_scale;
    r.a = r.conditioning_warning ? Complex(0) : (dec.Cu * v2 - dec.Cv * v1) / den;
    return r;
}

BCoefficient b_coefficient(const DistJets& d, double tol) {
    const CVec3 n0 = value_of(d.seed.n0);
    const CVec3 V = value_of(d.V);
    const CVec3 wV = value_of(d_axis(d.V, 2));
    const CVec3 nxv = cross3(n0, V);
    const Complex den =
        dot3(n0, cross3(wV, V)) + d.nn.value() * dot3(V, wV);
    if (std::abs(den) <= tol)
        throw DegeneratePfaffianError("b coefficient: Pfaffian denominator vanishes");
    const Complex front = d.mm.value() * d.nn.value() * norm_sq3(nxv) / (den * den);

    const CVec3 tang[2] = {value_of(d.seed.xu), value_of(d.seed.xv)};
    Complex b[2];
    for (int j = 0; j < 2; ++j) {
        const Complex rho = dot3(tang[j], nxv);
        if (std::abs(rho) <= tol)
            throw DegenerateDirectionError("b coefficient: dx0^T(N0 x V) vanishes");
        const CVec3 dpj = value_of(d_axis(d.p, j));
        b[j] = front * dot3(n0, cross3(wV, dpj)) / rho;
    }
    return {b[0], b[1], b[0] - b[1]};
}

Complex n_condition_residual(const DistJets& d) {
    const CVec3 n0 = value_of(d.seed.n0);
    const CVec3 V = value_of(d.V);
    const CVec3 wV = value_of(d_axis(d.V, 2));
    const CVec3 nxv = cross3(n0, V);
    const Complex ku = dot3(n0, cross3(wV, value_of(d_axis(d.p, 0))));
    const Complex kv = dot3(n0, cross3(wV, value_of(d_axis(d.p, 1))));
    const Complex ru = dot3(value_of(d.seed.xu), nxv);
    const Complex rv = dot3(value_of(d.seed.xv), nxv);
    return d.nn.value() * (ku * rv - kv * ru);
}

CaseBRelation caseb_b_relation(const DistJets& d, double tol) {
    const CVec3 n0 = value_of(d.seed.n0);
    const CVec3 V = value_of(d.V);
    const CVec3 wV = value_of(d_axis(d.V, 2));
    const Complex vwv = dot3(V, wV);
    if (std::abs(vwv) <= tol)
        throw DegeneratePfaffianError("case B relation: V^T dV/dw vanishes");
    const CVec3 nxv = cross3(n0, V);
    const Complex nxv2 = norm_sq3(nxv);
    if (std::abs(nxv2) <= tol)
        throw DegenerateDirectionError("case B relation: |N0 x V|^2 vanishes");

    Complex lhs[2], rhsc[2];
    for (int j = 0; j < 2; ++j) {
        const CVec3 dpj = value_of(d_axis(d.p, j));
        const CVec3 tangj = j == 0 ? value_of(d.seed.xu) : value_of(d.seed.xv);
        lhs[j] = d.mm.value() * dot3(n0, cross3(wV, dpj)) / (vwv * vwv);
        rhsc[j] = dot3(tangj, nxv) / nxv2;
    }
    // least squares over the two covector components
    Complex num = 0, denom = 0;
    for (int j = 0; j < 2; ++j) {
        num += std::conj(rhsc[j]) * lhs[j];
        denom += std::conj(rhsc[j]) * rhsc[j];
    }
    CaseBRelation r;
    r.b = std::abs(denom) > 0 ? num / denom : Complex(0);
    r.fit_residual = std::max(std::abs(lhs[0] - r.b * rhsc[0]), std::abs(lhs[1] - r.b * rhsc[1]));
    const double scale = max_abs(wV) * max_abs(V);
    r.parallel_wV = max_abs(CVec3(cross3(wV, V))) <= std::sqrt(tol) * std::max(1.0, scale);
    return r;
}

SymTensor2<Complex, 3> cons_residual(const DistJets& d, double tol) {
    if (!genericity_value(d).generic(std::max(tol, 1e-12)))
        throw NonGenericError("consistency residual requires a generic distribution");
    const Jet3 mu = dot3(d.m, d.seed.n0);
    if (std::abs(mu.value()) <= tol)
        throw NonGenericError("consistency residual: m^T N0 vanishes");

    // M = N0 m^T / (m^T N0)
    const Jet3 imu = reciprocal(mu);
    JM3 M;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M(i, j) = d.seed.n0(i) * d.m(j) * imu;

    const CVec3 dp[2] = {value_of(d_axis(d.p, 0)), value_of(d_axis(d.p, 1))};
    const CVec3 n0 = value_of(d.seed.n0);
    const Complex two_form = dot3(n0, CVec3(2.0 * cross3(dp[0], dp[1])));
    if (std::abs(two_form) <= tol)
        throw DegeneratePfaffianError(
            "consistency residual: N0^T[d(V+x0) x^ d(V+x0)] vanishes; reparametrize w");

    const CMat3 dM[2] = {value_of(d_axis(M, 0)), value_of(d_axis(M, 1))};
    const CMat3 dMw = value_of(d_axis(M, 2));
    const CVec3 wV = value_of(d_axis(d.V, 2));
    const CVec3 zw = dM[0] * dp[1] - dM[1] * dp[0];
    const CVec3 z0 = zw / two_form;

    const CVec3 m = value_of(d.m);
    CMat3 proj = CMat3::Identity();
    proj -= (m * n0.transpose()) / mu.value();

    Form1<CVec3, 2> arow, bracket;
    for (int j = 0; j < 2; ++j) {
        arow[j] = proj.transpose() * dp[j];
        const Complex kj = dot3(n0, cross3(wV, dp[j]));
        bracket[j] = dM[j] * wV - dMw * dp[j] + CVec3(2.0 * kj * z0);
    }

    const SymTensor2<Complex, 2> uv = sym_prod_dot(arow, bracket);
    SymTensor2<Complex, 3> s;
    for (int p = 0; p < 2; ++p)
        for (int q = p; q < 2; ++q) s(p, q) = uv(p, q);
    return s;
}

double sym_max_abs(const SymTensor2<Complex, 3>& s) {
    double r = 0;
    for (const auto& x : s.s) r = std::max(r, std::abs(x));
    return r;
}

// ---------------------------------------------------------------------------
// fixtures

ConfigA backlund_fixture(const SurfacePatch& seed, Complex sigma, double w0, double w1,
                         double tol) {
    const Complex ss = std::sin(sigma);
    if (std::abs(ss * ss) <= tol)
        throw InvalidFixtureError("backlund fixture: sin(sigma)^2 ~ 0, centers collapse");
    const Rect& r = seed.rect();
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const double u = r.u0 + (r.u1 - r.u0) * (i + 0.5) / 5;
            const double v = r.v0 + (r.v1 - r.v0) * (j + 0.5) / 5;
            if (std::abs(frame(seed, u, v).K + Complex(1)) > tol)
                throw InvalidFixtureError("backlund fixture: seed is not pseudospherical");
        }

    ConfigA cfg;
    cfg.seed = &seed;
    cfg.w0 = w0;
    cfg.w1 = w1;
    cfg.name = "backlund:" + seed.name();
    const Complex cs = std::cos(sigma);
    cfg.V = [ss](const FrameJets3& f, const Jet3&, const Jet3&, const Jet3& w) {
        const Jet3 e_len = dot3(f.xu, f.xu);
        const JV3 t1 = f.xu * reciprocal(sqrt_jet(e_len));
        const JV3 orth = f.xv - JV3((dot3(f.xu, f.xv) * reciprocal(e_len)) * f.xu);
        const JV3 t2 = orth * reciprocal(sqrt_jet(norm_sq3(orth)));
        return JV3(Jet3(ss) * (cos_jet(w) * t1 + sin_jet(w) * t2));
    };
    cfg.mm = [cs](const Jet3&, const Jet3&, const Jet3&) { return Jet3(cs); };
    cfg.nn = [](const Jet3&, const Jet3&, const Jet3&) { return Jet3(0.0); };
    return cfg;
}

ConfigA with_nn(ConfigA base, ScalarField3 nn, const std::string& tag) {
    base.nn = std::move(nn);
    base.name += ":" + tag;
    return base;
}

ConfigA perturb_centers(ConfigA base, std::uint64_t seed, double eps) {
    Rng rng(seed);
    const ScalarField3 f1 = random_smooth_field(rng, 1.0);
    const ScalarField3 f2 = random_smooth_field(rng, 1.0);
    const VectorField3 inner = base.V;
    base.V = [inner, f1, f2, eps](const FrameJets3& f, const Jet3& u, const Jet3& v,
                                  const Jet3& w) {
        const JV3 V = inner(f, u, v, w);
        return JV3(V + Jet3(eps) * (f1(u, v, w) * f.xu + f2(u, v, w) * f.xv));
    };
    base.name += ":perturbed:" + std::to_string(seed);
    return base;
}

ConfigA geodesic_sphere_fixture(const SurfacePatch& sphere, Complex nn_value) {
    ConfigA cfg;
    cfg.seed = &sphere;
    cfg.w0 = 0.1;
    cfg.w1 = 0.9;
    cfg.name = "geodesic:" + sphere.name();
    // V = psi(w) (phat - (phat^T x) x): the great-circle field through phat,
    // scaled radially in w; dV/dw stays parallel to V.
    const CVec3 phat = CVec3(1, 1, 1) / std::sqrt(3.0);
    cfg.V = [phat](const FrameJets3& f, const Jet3&, const Jet3&, const Jet3& w) {
        const JV3 pj = to_jets<3>(phat);
        const Jet3 psi = Jet3(0.5) + w * Jet3(1.0 / 3.0);
        return JV3(psi * (pj - JV3(dot3(pj, f.x) * f.x)));
    };
    cfg.mm = [](const Jet3&, const Jet3&, const Jet3& w) { return Jet3(1.0) + w * Jet3(0.25); };
    cfg.nn = [nn_value](const Jet3&, const Jet3&, const Jet3&) { return Jet3(nn_value); };
    return cfg;
}

ConfigB caseb_fixture(const SurfacePatch& seed, const std::string& variant) {
    ConfigB cfg;
    cfg.seed = &seed;
    cfg.w0 = 0.1;
    cfg.w1 = 1.0;
    cfg.name = "caseb:" + seed.name() + ":" + variant;
    const bool parallel = variant == "parallel";
    const bool twisted = variant == "twisted";
    if (!parallel && !twisted && variant != "meridian")
        throw MalformedInputError("unknown case B fixture variant: " + variant);
    cfg.V = [parallel, twisted](const FrameJets3& f, const Jet3&, const Jet3& v, const Jet3& w) {
        const Jet3 psi = Jet3(1.0) + w * Jet3(0.5);
        JV3 V = psi * f.xv;
        if (!parallel) {
            const Jet3 chi = w + Jet3(0.2);
            V = V + JV3(chi * f.n0);
        }
        if (twisted) {
            const Jet3 g = w * (v - Jet3(1.0)) * Jet3(0.5);
            V = V + JV3(g * f.xu);
        }
        return V;
    };
    cfg.mm = [](const Jet3&, const Jet3&, const Jet3& w) { return Jet3(1.0) + w * Jet3(0.25); };
    return cfg;
}

}  // namespace rollform
