#include "rollform/registry.hpp"

#include <functional>
#include <optional>

#include "rollform/contactdist.hpp"
#include "rollform/errors.hpp"
#include "rollform/rng.hpp"

namespace rollform {

namespace {

// ---------------------------------------------------------------------------
// request plumbing

struct Resolved {
    int nu, nv, nw;
    double u0, u1, v0, v1, w0, w1;
};

Resolved resolve(const VerifyRequest& req, const TargetInfo& info, const Rect& rect, double w0,
                 double w1) {
    Resolved r;
    r.nu = req.nu > 0 ? req.nu : info.default_nu;
    r.nv = req.nv > 0 ? req.nv : info.default_nv;
    r.nw = req.nw > 0 ? req.nw : info.default_nw;
    if (r.nu < 2 || r.nv < 2 || (info.default_nw > 0 && r.nw < 2))
        throw MalformedInputError("grid dimensions must be at least 2 per axis");
    if (req.has_rect) {
        r.u0 = req.u0; r.u1 = req.u1; r.v0 = req.v0; r.v1 = req.v1;
    } else {
        r.u0 = rect.u0; r.u1 = rect.u1; r.v0 = rect.v0; r.v1 = rect.v1;
    }
    if (req.has_wrange) {
        r.w0 = req.w0; r.w1 = req.w1;
    } else {
        r.w0 = w0; r.w1 = w1;
    }
    return r;
}

double tol_of(const VerifyRequest& req, const std::string& name, double dflt) {
    const auto it = req.tol.find(name);
    return it == req.tol.end() ? dflt : it->second;
}

CheckStat make_check(const VerifyRequest& req, const std::string& name, double dflt,
                     int dims = 2) {
    CheckStat c;
    c.name = name;
    c.tolerance = tol_of(req, name, dflt);
    c.dims = dims;
    return c;
}

ResidualReport base_report(const VerifyRequest& req, const TargetInfo& info, const Resolved& g,
                           const std::string& fixture) {
    ResidualReport rep;
    rep.target = info.id;
    rep.fixture = fixture;
    rep.seed = req.seed;
    rep.nu = g.nu;
    rep.nv = g.nv;
    rep.nw = info.default_nw > 0 ? g.nw : 0;
    rep.u0 = g.u0; rep.u1 = g.u1; rep.v0 = g.v0; rep.v1 = g.v1;
    rep.w0 = g.w0; rep.w1 = g.w1;
    return rep;
}

template <typename Fn>
void sweep2(const Resolved& g, Fn&& fn) {
    for (int i = 0; i < g.nu; ++i)
        for (int j = 0; j < g.nv; ++j) {
            const double u = g.u0 + (g.u1 - g.u0) * (i + 0.5) / g.nu;
            const double v = g.v0 + (g.v1 - g.v0) * (j + 0.5) / g.nv;
            fn(std::array<int, 3>{i, j, -1}, std::array<double, 3>{u, v, 0});
        }
}

template <typename Fn>
void sweep3(const Resolved& g, Fn&& fn) {
    for (int i = 0; i < g.nu; ++i)
        for (int j = 0; j < g.nv; ++j)
            for (int k = 0; k < g.nw; ++k) {
                const double u = g.u0 + (g.u1 - g.u0) * (i + 0.5) / g.nu;
                const double v = g.v0 + (g.v1 - g.v0) * (j + 0.5) / g.nv;
                const double w = g.w0 + (g.w1 - g.w0) * (k + 0.5) / g.nw;
                fn(std::array<int, 3>{i, j, k}, std::array<double, 3>{u, v, w});
            }
}

// ---------------------------------------------------------------------------
// fixture parsing

std::pair<std::unique_ptr<SurfacePatch>, std::unique_ptr<SurfacePatch>> parse_pair(
    const std::string& name) {
    const auto pos = name.find(':');
    if (pos == std::string::npos)
        throw MalformedInputError("expected <seed>:<target> pair fixture, got '" + name + "'");
    return {make_surface(name.substr(0, pos)), make_surface(name.substr(pos + 1))};
}

struct DistFixture {
    std::unique_ptr<SurfacePatch> seed;
    std::optional<ConfigA> a;
    std::optional<ConfigB> b;
    double w0 = 0, w1 = 1;

    DistJets jets(double u, double v, double w) const {
        return a ? a->jets(u, v, w) : b->jets(u, v, w);
    }
};

DistFixture parse_dist_fixture(const std::string& name) {
    DistFixture f;
    if (name.rfind("backlund:", 0) == 0) {
        const auto rest = name.substr(9);
        const auto pos = rest.find(":sigma=");
        if (pos == std::string::npos)
            throw MalformedInputError("expected backlund:<seed>:sigma=<value>, got '" + name +
                                      "'");
        f.seed = make_surface(rest.substr(0, pos));
        const double sigma = std::stod(rest.substr(pos + 7));
        f.a = backlund_fixture(*f.seed, sigma);
    } else if (name.rfind("geodesic:", 0) == 0) {
        f.seed = make_surface(name.substr(9));
        f.a = geodesic_sphere_fixture(*f.seed, Complex(0.3));
    } else if (name.rfind("caseb:", 0) == 0) {
        f.seed = make_surface(name.substr(6));
        f.b = caseb_fixture(*f.seed, "meridian");
    } else {
        throw MalformedInputError(
            "unknown distribution fixture '" + name +
            "'; expected backlund:<seed>:sigma=<v>, geodesic:<seed> or caseb:<seed>");
    }
    f.w0 = f.a ? f.a->w0 : f.b->w0;
    f.w1 = f.a ? f.a->w1 : f.b->w1;
    return f;
}

const ConfigA& require_backlund(const DistFixture& f, const std::string& target) {
    if (!f.a || f.a->name.rfind("backlund:", 0) != 0)
        throw MalformedInputError(target + " requires a backlund:<seed>:sigma=<v> fixture");
    return *f.a;
}

// ---------------------------------------------------------------------------
// algebra targets

ResidualReport run_alg_eq_fund(const VerifyRequest& req, const TargetInfo& info,
                               const std::string& fixture) {
    const Resolved g = resolve(req, info, Rect{0, 1, 0, 1}, 0, 0);
    ResidualReport rep = base_report(req, info, g, fixture);
    CheckStat res = make_check(req, "fund.residual", 1e-12);
    Rng rng(req.seed);
    const int n = g.nu * g.nv;
    for (int k = 0; k < n; ++k) {
        const CVec3 a = rng.cvec3_box(2.0), b = rng.cvec3_box(2.0);
        Form1<CVec3, 2> w1, w2;
        w1[0] = rng.cvec3_box(1.5); w1[1] = rng.cvec3_box(1.5);
        w2[0] = rng.cvec3_box(1.5); w2[1] = rng.cvec3_box(1.5);
        res.update(form_max_abs(fund_identity_residual(a, b, w1, w2)), {k, 0, -1},
                   {double(k), 0, 0});
    }
    rep.checks.push_back(res);
    return rep;
}

ResidualReport run_alg_alpha(const VerifyRequest& req, const TargetInfo& info,
                             const std::string& fixture) {
    const Resolved g = resolve(req, info, Rect{0, 1, 0, 1}, 0, 0);
    ResidualReport rep = base_report(req, info, g, fixture);
    CheckStat cross = make_check(req, "alpha.cross_formula", 1e-12);
    CheckStat comm = make_check(req, "alpha.commutator", 1e-12);
    CheckStat trace = make_check(req, "alpha.trace_metric", 1e-12);
    CheckStat conj = make_check(req, "alpha.rotation_conjugation", 1e-10);
    CheckStat round = make_check(req, "alpha.roundtrip", 1e-13);
    Rng rng(req.seed);
    const int n = g.nu * g.nv;
    for (int k = 0; k < n; ++k) {
        const std::array<int, 3> idx{k, 0, -1};
        const std::array<double, 3> pt{double(k), 0, 0};
        const CVec3 x = rng.cvec3_box(2.0), y = rng.cvec3_box(2.0);
        const CMat3 outer = y * x.transpose() - x * y.transpose();
        cross.update(max_abs(CMat3(alpha(CVec3(cross3(x, y))) - outer)), idx, pt);
        const CMat3 cm = alpha(x) * alpha(y) - alpha(y) * alpha(x);
        comm.update(max_abs(CMat3(alpha(CVec3(alpha(x) * y)) - cm)), idx, pt);
        trace.update(std::abs(mat_dot(alpha(x), alpha(y)) - dot3(x, y)), idx, pt);
        const CMat3 r = random_rotation(rng);
        conj.update(max_abs(CMat3(alpha(CVec3(r * x)) - r * alpha(x) * r.transpose())), idx, pt);
        round.update(max_abs(CVec3(alpha_inv(alpha(x)) - x)), idx, pt);
    }
    rep.checks = {cross, comm, trace, conj, round};
    return rep;
}

// ---------------------------------------------------------------------------
// surface targets

Complex known_curvature(const std::string& name, double /*u*/, double v, bool& known) {
    known = true;
    if (name == "sphere") return Complex(1);
    if (name == "pseudosphere") return Complex(-1);
    if (name == "plane" || name == "cylinder") return Complex(0);
    if (name == "catenoid") {
        const double c = std::cosh(v);
        return Complex(-1.0 / (c * c * c * c));
    }
    if (name == "helicoid") {
        const double c = std::cosh(v);
        return Complex(-1.0 / (c * c * c * c));
    }
    known = false;
    return Complex(0);
}

ResidualReport run_surf_gauss(const VerifyRequest& req, const TargetInfo& info,
                              const std::string& fixture) {
    const auto s = make_surface(fixture);
    const Resolved g = resolve(req, info, s->rect(), 0, 0);
    ResidualReport rep = base_report(req, info, g, fixture);
    CheckStat gauss = make_check(req, "gauss.residual", 1e-8);
    CheckStat orth = make_check(req, "frame.tangent_orthogonality", 1e-11);
    CheckStat unit = make_check(req, "frame.unit_normal", 1e-11);
    CheckStat curv = make_check(req, "curvature.known", 1e-9);
    bool have_curv = true;
    sweep2(g, [&](std::array<int, 3> idx, std::array<double, 3> pt) {
        gauss.update(max_abs(gauss_identity_residual(*s, pt[0], pt[1])), idx, pt);
        const SurfaceFrame f = frame(*s, pt[0], pt[1]);
        orth.update(std::max(std::abs(dot3(f.n0, f.xu)), std::abs(dot3(f.n0, f.xv))), idx, pt);
        unit.update(std::abs(norm_sq3(f.n0) - Complex(1)), idx, pt);
        bool known = false;
        const Complex kref = known_curvature(fixture, pt[0], pt[1], known);
        if (known)
            curv.update(std::abs(f.K - kref), idx, pt);
        else
            have_curv = false;
    });
    rep.checks = {gauss, orth, unit};
    if (have_curv) rep.checks.push_back(curv);
    return rep;
}

ResidualReport run_surf_pair(const VerifyRequest& req, const TargetInfo& info,
                             const std::string& fixture) {
    const auto [a, b] = parse_pair(fixture);
    const Resolved g = resolve(req, info, a->rect(), 0, 0);
    ResidualReport rep = base_report(req, info, g, fixture);
    CheckStat iso = make_check(req, "isometry.residual", 1e-10);
    sweep2(g, [&](std::array<int, 3> idx, std::array<double, 3> pt) {
        iso.update(isometry_residual(*a, *b, pt[0], pt[1]), idx, pt);
    });
    rep.checks = {iso};
    return rep;
}

// ---------------------------------------------------------------------------
// rolling targets

ResidualReport run_roll_map(const VerifyRequest& req, const TargetInfo& info,
                            const std::string& fixture) {
    const auto [x0, x] = parse_pair(fixture);
    const Resolved g = resolve(req, info, x0->rect(), 0, 0);
    ResidualReport rep = base_report(req, info, g, fixture);
    CheckStat orth = make_check(req, "rot.orthogonality", 1e-10);
    CheckStat det = make_check(req, "rot.det", 1e-10);
    CheckStat diff = make_check(req, "roll.differential", 1e-9);
    CheckStat tcomp = make_check(req, "translation.compat", 1e-9);
    CheckStat secoi = make_check(req, "secoi.residual", 1e-9);
    CheckStat comp0 = make_check(req, "comp.seed", 1e-9);
    CheckStat compx = make_check(req, "comp.target", 1e-9);
    CheckStat quad = make_check(req, "dx0.quadratic", 1e-9);
    CheckStat alink = make_check(req, "alpha.link", 1e-8);
    bool flipped = false;
    sweep2(g, [&](std::array<int, 3> idx, std::array<double, 3> pt) {
        const RollingJets rj = rolling_map_jets(*x0, *x, pt[0], pt[1]);
        flipped = flipped || rj.normal_flipped;
        const MapResiduals mr = map_residuals(rj);
        orth.update(mr.rot_orthogonality, idx, pt);
        det.update(mr.rot_det, idx, pt);
        diff.update(mr.roll_differential, idx, pt);
        tcomp.update(mr.translation_compat, idx, pt);
        secoi.update(mr.secoi, idx, pt);
        comp0.update(mr.comp_seed, idx, pt);
        compx.update(mr.comp_target, idx, pt);
        quad.update(mr.dx0_quadratic, idx, pt);
        alink.update(mr.alpha_link, idx, pt);
    });
    rep.notes.emplace_back("normal_flipped", flipped ? "true" : "false");
    rep.checks = {orth, det, diff, tcomp, secoi, comp0, compx, quad, alink};
    return rep;
}

ResidualReport run_roll_eq_om(const VerifyRequest& req, const TargetInfo& info,
                              const std::string& fixture) {
    const auto [x0, x] = parse_pair(fixture);
    const Resolved g = resolve(req, info, x0->rect(), 0, 0);
    ResidualReport rep = base_report(req, info, g, fixture);
    CheckStat r1 = make_check(req, "flatness.r1", 1e-7);
    CheckStat r2 = make_check(req, "flatness.r2", 1e-7);
    CheckStat r3 = make_check(req, "flatness.r3", 1e-10);
    ControlStat corrupt;
    corrupt.name = "s12-corruption";
    corrupt.mode = ControlStat::Mode::MinExceeds;
    corrupt.threshold = tol_of(req, "s12-corruption", 1e-3);
    sweep2(g, [&](std::array<int, 3> idx, std::array<double, 3> pt) {
        const RollingJets rj = rolling_map_jets(*x0, *x, pt[0], pt[1]);
        const auto omega = connection_jets(rj);
        const auto fr = flatness_residuals(omega, rj.f0.xu, rj.f0.xv, rj.f0.n0);
        r1.update(form_max_abs(fr.r1), idx, pt);
        r2.update(form_max_abs(fr.r2), idx, pt);
        r3.update(form_max_abs(fr.r3), idx, pt);
        // inject an asymmetric s12 into the du coefficient only
        Form1<CVec3, 2> wv = value_of(omega);
        wv[0] += CVec3(Complex(0.1) / rj.f0.W.value() * value_of(rj.f0.xu));
        Form1<CVec3, 2> dx0;
        dx0[0] = value_of(rj.f0.xu);
        dx0[1] = value_of(rj.f0.xv);
        corrupt.update(form_max_abs(cross_wedge(wv, dx0)));
    });
    rep.checks = {r1, r2, r3};
    rep.controls = {corrupt};
    return rep;
}

ResidualReport run_roll_eq_omjk(const VerifyRequest& req, const TargetInfo& info,
                                const std::string& fixture) {
    const auto [x0, x] = parse_pair(fixture);
    const Resolved g = resolve(req, info, x0->rect(), 0, 0);
    ResidualReport rep = base_report(req, info, g, fixture);
    CheckStat two = make_check(req, "twoway.residual", 1e-8);
    sweep2(g, [&](std::array<int, 3> idx, std::array<double, 3> pt) {
        const RollingJets rj = rolling_map_jets(*x0, *x, pt[0], pt[1]);
        const Form1<CVec3, 2> d =
            value_of(connection_jets(rj)) - value_of(connection_jets_sff(rj));
        two.update(form_max_abs(d), idx, pt);
    });
    rep.checks = {two};
    return rep;
}

ResidualReport run_roll_eq_omom(const VerifyRequest& req, const TargetInfo& info,
                                const std::string& fixture) {
    const auto [x0, x] = parse_pair(fixture);
    const Resolved g = resolve(req, info, x0->rect(), 0, 0);
    ResidualReport rep = base_report(req, info, g, fixture);
    CheckStat om = make_check(req, "omom.residual", 1e-7);
    sweep2(g, [&](std::array<int, 3> idx, std::array<double, 3> pt) {
        const RollingJets rj = rolling_map_jets(*x0, *x, pt[0], pt[1]);
        om.update(form_max_abs(omom_residual(connection_jets(rj), rj.f0.n0)), idx, pt);
    });
    rep.checks = {om};
    return rep;
}

ResidualReport run_roll_eq_om_prime(const VerifyRequest& req, const TargetInfo& info,
                                    const std::string& fixture) {
    const auto [x0, x] = parse_pair(fixture);
    const Resolved g = resolve(req, info, x0->rect(), 0, 0);
    ResidualReport rep = base_report(req, info, g, fixture);
    CheckStat two = make_check(req, "prime.two_path", 1e-8);
    CheckStat inv = make_check(req, "prime.involution", 1e-10);
    sweep2(g, [&](std::array<int, 3> idx, std::array<double, 3> pt) {
        const RollingJets rj = rolling_map_jets(*x0, *x, pt[0], pt[1]);
        const auto omega = connection_jets(rj);
        const auto prime = other_face_form(omega, rj.f0.n0);
        two.update(form_max_abs(Form1<CVec3, 2>(value_of(prime) -
                                                value_of(other_face_via_rprime(rj)))),
                   idx, pt);
        const auto twice = other_face_form(prime, rj.f0.n0);
        inv.update(form_max_abs(Form1<CVec3, 2>(value_of(twice) - value_of(omega))), idx, pt);
    });
    rep.checks = {two, inv};
    return rep;
}

ResidualReport run_roll_eq_aom(const VerifyRequest& req, const TargetInfo& info,
                               const std::string& fixture) {
    const auto [x0, x] = parse_pair(fixture);
    const Resolved g = resolve(req, info, x0->rect(), 0, 0);
    ResidualReport rep = base_report(req, info, g, fixture);
    CheckStat pair = make_check(req, "aom.pairing", 1e-8);
    CheckStat pairp = make_check(req, "aom.pairing_other_face", 1e-8);
    Rng rng(req.seed);
    sweep2(g, [&](std::array<int, 3> idx, std::array<double, 3> pt) {
        const RollingJets rj = rolling_map_jets(*x0, *x, pt[0], pt[1]);
        const auto omega = value_of(connection_jets(rj));
        const auto prime = value_of(other_face_form(connection_jets(rj), rj.f0.n0));
        const SurfaceFrame f = frame(*x0, pt[0], pt[1]);
        for (const auto& a : annihilator_witnesses(f, rng, 3)) {
            pair.update(std::abs(aom_pairing(a, omega)), idx, pt);
            pairp.update(std::abs(aom_pairing(a, prime)), idx, pt);
        }
    });
    rep.checks = {pair, pairp};
    return rep;
}

// ---------------------------------------------------------------------------
// distribution targets

ResidualReport run_dist_genericity(const VerifyRequest& req, const TargetInfo& info,
                                   const std::string& fixture) {
    const DistFixture f = parse_dist_fixture(fixture);
    const Resolved g = resolve(req, info, f.seed->rect(), f.w0, f.w1);
    ResidualReport rep = base_report(req, info, g, fixture);
    auto control = [&](const std::string& name) {
        ControlStat c;
        c.name = name;
        c.mode = ControlStat::Mode::MinExceeds;
        c.threshold = tol_of(req, name, 1e-6);
        return c;
    };
    ControlStat c1 = control("genericity.m_dot_wV");
    ControlStat c2 = control("genericity.cross_norm_sq");
    ControlStat c3 = control("m.nonzero");
    ControlStat c4 = control("mm.nonzero");
    sweep3(g, [&](std::array<int, 3>, std::array<double, 3> pt) {
        const DistJets d = f.jets(pt[0], pt[1], pt[2]);
        const GenericityValue gv = genericity_value(d);
        c1.update(std::abs(gv.m_dot_wV));
        c2.update(std::abs(gv.cross_norm_sq));
        c3.update(max_abs(value_of(d.m)));
        if (f.a) c4.update(std::abs(d.mm.value()));
    });
    rep.controls = {c1, c2, c3};
    if (f.a) rep.controls.push_back(c4);
    return rep;
}

ResidualReport run_dist_pfaffian(const VerifyRequest& req, const TargetInfo& info,
                                 const std::string& fixture) {
    const DistFixture f = parse_dist_fixture(fixture);
    const ConfigA& cfg = require_backlund(f, info.id);
    const Resolved g = resolve(req, info, f.seed->rect(), f.w0, f.w1);
    ResidualReport rep = base_report(req, info, g, fixture);
    CheckStat back = make_check(req, "pfaffian.back_substitution", 1e-9, 3);
    CheckStat fz = make_check(req, "pfaffian.frobenius_zero", 1e-7, 3);
    CheckStat ff = make_check(req, "pfaffian.frobenius_other_face", 1e-7, 3);
    CheckStat fg = make_check(req, "pfaffian.frobenius_germ", 1e-7, 3);
    const ZeroOmega zero;
    const OtherFaceZeroOmega face(*f.seed);
    const GermOmega germ(*f.seed, req.seed);
    sweep3(g, [&](std::array<int, 3> idx, std::array<double, 3> pt) {
        const DistJets d = f.jets(pt[0], pt[1], pt[2]);
        for (const OmegaField3* om : {(const OmegaField3*)&zero, (const OmegaField3*)&face,
                                      (const OmegaField3*)&germ}) {
            const auto omv = om->at(pt[0], pt[1], pt[2]);
            const auto phi = dw_connection(cfg, *om, pt[0], pt[1], pt[2]);
            back.update(form_max_abs(integrability_residual(d, value_of(omv), value_of(phi))),
                        idx, pt);
        }
        fz.update(std::abs(compat_density(dw_connection(cfg, zero, pt[0], pt[1], pt[2]))), idx,
                  pt);
        ff.update(std::abs(compat_density(dw_connection(cfg, face, pt[0], pt[1], pt[2]))), idx,
                  pt);
        fg.update(std::abs(compat_density(dw_connection(cfg, germ, pt[0], pt[1], pt[2]))), idx,
                  pt);
    });
    rep.checks = {back, fz, ff, fg};
    return rep;
}

ResidualReport run_dist_abc(const VerifyRequest& req, const TargetInfo& info,
                            const std::string& fixture) {
    const DistFixture f = parse_dist_fixture(fixture);
    const ConfigA& cfg = require_backlund(f, info.id);
    const Resolved g = resolve(req, info, f.seed->rect(), f.w0, f.w1);
    ResidualReport rep = base_report(req, info, g, fixture);
    CheckStat a = make_check(req, "abc.A", 1e-7, 3);
    CheckStat lsq = make_check(req, "abc.lsq_residual", 1e-7, 3);
    CheckStat probe = make_check(req, "abc.probe_independence", 1e-7, 3);
    CheckStat bc = make_check(req, "bc.relations", 1e-7, 3);
    double max_cond = 0;
    sweep3(g, [&](std::array<int, 3> idx, std::array<double, 3> pt) {
        const ABCDecomposition dec = extract_abc(cfg, pt[0], pt[1], pt[2], req.seed);
        const ABCDecomposition alt =
            extract_abc(cfg, pt[0], pt[1], pt[2], req.seed + 0x5bd1e995ULL);
        a.update(std::abs(dec.A), idx, pt);
        lsq.update(dec.lsq_residual, idx, pt);
        probe.update(std::max({std::abs(dec.A - alt.A), std::abs(dec.Bu - alt.Bu),
                               std::abs(dec.Bv - alt.Bv), std::abs(dec.Cu - alt.Cu),
                               std::abs(dec.Cv - alt.Cv)}),
                     idx, pt);
        bc.update(bc_relations_residual(dec, f.jets(pt[0], pt[1], pt[2])).max_abs(), idx, pt);
        max_cond = std::max(max_cond, dec.cond);
    });
    rep.notes.emplace_back("max_probe_condition", fmt17(max_cond));
    rep.checks = {a, lsq, probe, bc};
    return rep;
}

ResidualReport run_dist_n_condition(const VerifyRequest& req, const TargetInfo& info,
                                    const std::string& fixture) {
    const DistFixture f = parse_dist_fixture(fixture);
    const ConfigA& base = require_backlund(f, info.id);
    const Resolved g = resolve(req, info, f.seed->rect(), f.w0, f.w1);
    ResidualReport rep = base_report(req, info, g, fixture);
    CheckStat tang = make_check(req, "n_condition.tangency", 1e-8, 3);
    ControlStat inject;
    inject.name = "nn-injection";
    inject.mode = ControlStat::Mode::RateExceeds;
    inject.threshold = tol_of(req, "nn-injection", 1e-4);
    inject.required_rate = 0.9;
    sweep3(g, [&](std::array<int, 3> idx, std::array<double, 3> pt) {
        tang.update(std::abs(n_condition_residual(base.jets(pt[0], pt[1], pt[2]))), idx, pt);
    });
    const auto nn01 = [](const Jet3&, const Jet3&, const Jet3&) { return Jet3(0.1); };
    for (std::uint64_t k = 1; k <= 5; ++k) {
        const ConfigA pert = with_nn(perturb_centers(base, req.seed + k, 0.05), nn01, "nn=0.1");
        sweep3(g, [&](std::array<int, 3>, std::array<double, 3> pt) {
            inject.update(std::abs(n_condition_residual(pert.jets(pt[0], pt[1], pt[2]))));
        });
    }
    rep.checks = {tang};
    rep.controls = {inject};
    return rep;
}

ResidualReport run_dist_cons(const VerifyRequest& req, const TargetInfo& info,
                             const std::string& fixture) {
    const DistFixture f = parse_dist_fixture(fixture);
    const ConfigA& base = require_backlund(f, info.id);
    const Resolved g = resolve(req, info, f.seed->rect(), f.w0, f.w1);
    ResidualReport rep = base_report(req, info, g, fixture);
    CheckStat cons = make_check(req, "cons.residual", 1e-6, 3);
    ControlStat pert;
    pert.name = "nn-perturbed";
    pert.mode = ControlStat::Mode::MaxExceeds;
    pert.threshold = tol_of(req, "nn-perturbed", 1e-3);
    const ConfigA bad = with_nn(
        base, [](const Jet3&, const Jet3&, const Jet3&) { return Jet3(0.1); }, "nn=0.1");
    sweep3(g, [&](std::array<int, 3> idx, std::array<double, 3> pt) {
        cons.update(sym_max_abs(cons_residual(base.jets(pt[0], pt[1], pt[2]))), idx, pt);
        pert.update(sym_max_abs(cons_residual(bad.jets(pt[0], pt[1], pt[2]))));
    });
    rep.checks = {cons};
    rep.controls = {pert};
    return rep;
}

ResidualReport run_dist_b_coeff(const VerifyRequest& req, const TargetInfo& info,
                                const std::string& fixture) {
    const DistFixture f = parse_dist_fixture(fixture);
    if (!f.a) throw MalformedInputError(info.id + " requires a ConfigA fixture");
    const Rect sub = f.a->name.rfind("geodesic:", 0) == 0 ? Rect{0.4, 1.4, 0.2, 0.9}
                                                          : f.seed->rect();
    const Resolved g = resolve(req, info, sub, f.w0, f.w1);
    ResidualReport rep = base_report(req, info, g, fixture);
    CheckStat mis = make_check(req, "b.mismatch", 1e-8, 3);
    ControlStat mag;
    mag.name = "b.magnitude";
    mag.mode = ControlStat::Mode::MinExceeds;
    mag.threshold = tol_of(req, "b.magnitude", 1e-4);
    const bool nn_zero = f.a->name.rfind("backlund:", 0) == 0;
    sweep3(g, [&](std::array<int, 3> idx, std::array<double, 3> pt) {
        const BCoefficient bc = b_coefficient(f.jets(pt[0], pt[1], pt[2]));
        mis.update(std::abs(bc.mismatch), idx, pt);
        mag.update(std::abs(bc.b_u));
    });
    rep.checks = {mis};
    // on nn = 0 fixtures both expressions vanish identically; the magnitude
    // control only applies to nn != 0 families
    if (!nn_zero) rep.controls = {mag};
    return rep;
}

ResidualReport run_dist_case_b(const VerifyRequest& req, const TargetInfo& info,
                               const std::string& fixture) {
    const DistFixture f = parse_dist_fixture(fixture);
    if (!f.b) throw MalformedInputError(info.id + " requires a caseb:<seed> fixture");
    const Resolved g = resolve(req, info, f.seed->rect(), f.w0, f.w1);
    ResidualReport rep = base_report(req, info, g, fixture);
    CheckStat fit = make_check(req, "caseb.fit_meridian", 1e-7, 3);
    CheckStat fitp = make_check(req, "caseb.fit_parallel", 1e-7, 3);
    ControlStat bmag;
    bmag.name = "caseb.b_magnitude";
    bmag.mode = ControlStat::Mode::MinExceeds;
    bmag.threshold = tol_of(req, "caseb.b_magnitude", 1e-3);
    ControlStat twist;
    twist.name = "caseb.twisted_fit";
    twist.mode = ControlStat::Mode::MaxExceeds;
    twist.threshold = tol_of(req, "caseb.twisted_fit", 1e-3);
    const ConfigB parallel = caseb_fixture(*f.seed, "parallel");
    const ConfigB twisted = caseb_fixture(*f.seed, "twisted");
    bool meridian_parallel = false, parallel_flagged = true;
    sweep3(g, [&](std::array<int, 3> idx, std::array<double, 3> pt) {
        const CaseBRelation r = caseb_b_relation(f.b->jets(pt[0], pt[1], pt[2]));
        fit.update(r.fit_residual, idx, pt);
        bmag.update(std::abs(r.b));
        meridian_parallel = meridian_parallel || r.parallel_wV;
        const CaseBRelation rp = caseb_b_relation(parallel.jets(pt[0], pt[1], pt[2]));
        fitp.update(rp.fit_residual, idx, pt);
        parallel_flagged = parallel_flagged && rp.parallel_wV;
        twist.update(caseb_b_relation(twisted.jets(pt[0], pt[1], pt[2])).fit_residual);
    });
    rep.notes.emplace_back("meridian_parallel_flag", meridian_parallel ? "true" : "false");
    rep.notes.emplace_back("parallel_variant_flagged", parallel_flagged ? "true" : "false");
    rep.checks = {fit, fitp};
    rep.controls = {bmag, twist};
    return rep;
}

// ---------------------------------------------------------------------------

using Runner = std::function<ResidualReport(const VerifyRequest&, const TargetInfo&,
                                            const std::string&)>;

struct Entry {
    TargetInfo info;
    Runner run;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> kEntries = [] {
        std::vector<Entry> e;
        e.push_back({{"alg:eq-fund",
                      "a^T w1 ^ b^T w2 = (a x b)^T (w1 x^ w2) + b^T w1 ^ a^T w2",
                      "random", 32, 16, 0,
                      {"wedge", "cross_wedge", "fund_identity_residual"}},
                     run_alg_eq_fund});
        e.push_back({{"alg:alpha",
                      "alpha(x) y = x cross y; alpha(x cross y) = [alpha(x), alpha(y)]; "
                      "tr(alpha(x)^T alpha(y))/2 = x^T y",
                      "random", 32, 32, 0,
                      {"dot", "cross", "alpha", "alpha_inv"}},
                     run_alg_alpha});
        e.push_back({{"surf:gauss",
                      "(1/2) dN0 x^ dN0 = K |xu x xv| N0 du^dv",
                      "sphere", 16, 16, 0,
                      {"frame", "gauss_identity_residual"}},
                     run_surf_gauss});
        e.push_back({{"surf:pair",
                      "|dx0|^2 = |dx|^2 for the catalog isometric pair",
                      "catenoid:helicoid", 16, 16, 0,
                      {"frame"}},
                     run_surf_pair});
        e.push_back({{"roll:map",
                      "(x, dx) = (R x0 + t, R dx0); dt = -dR x0; R^-1 dR ^ dx0 = 0; "
                      "dx0^T R^-1 dR dx0 = 0; R^-1 dR = alpha(w)",
                      "catenoid:helicoid", 16, 16, 0,
                      {"rolling_map"}},
                     run_roll_map});
        e.push_back({{"roll:eq-om",
                      "d w + (1/2) w x^ w = 0; w x^ dx0 = 0; N0^T w = 0",
                      "catenoid:helicoid", 16, 16, 0,
                      {"connection_form", "flatness_residuals", "exterior_d"}},
                     run_roll_eq_om});
        e.push_back({{"roll:eq-omjk",
                      "w = ((s12 xu - s11 xv) du + (s22 xu - s21 xv) dv)/|xu x xv|, "
                      "s = II(x) - II(x0)",
                      "catenoid:helicoid", 16, 16, 0,
                      {"connection_form"}},
                     run_roll_eq_omjk});
        e.push_back({{"roll:eq-omom",
                      "(1/2) w x^ w = dN0^T ^ w N0",
                      "catenoid:helicoid", 16, 16, 0,
                      {"omom_residual"}},
                     run_roll_eq_omom});
        e.push_back({{"roll:eq-om-prime",
                      "w' = N0 x R'^-1 dR' N0 = -w - 2 N0 x dN0; applying twice returns w",
                      "catenoid:helicoid", 16, 16, 0,
                      {"other_face_form"}},
                     run_roll_eq_om_prime});
        e.push_back({{"roll:eq-aom",
                      "a^T (.) dx0 = 0 implies a^T ^ w = 0 for every flat w and its other face",
                      "catenoid:helicoid", 12, 12, 0,
                      {"sym_prod"}},
                     run_roll_eq_aom});
        e.push_back({{"dist:genericity",
                      "m^T dV/dw != 0 and (m x V) x N0 != 0",
                      "backlund:pseudosphere:sigma=0.7853981633974483", 12, 12, 8,
                      {"genericity_value", "backlund_fixture"}},
                     run_dist_genericity});
        e.push_back({{"dist:pfaffian",
                      "0 = m^T(w x V + d(V+x0) + dV/dw dw); d theta ^ theta = 0 for theta = "
                      "dw - rhs",
                      "backlund:pseudosphere:sigma=0.7853981633974483", 12, 12, 8,
                      {"dw_connection", "integrability_residual"}},
                     run_dist_pfaffian});
        e.push_back({{"dist:abc",
                      "A + B ^ V^T(w x N0 + dN0) + C ^ (N0 x V)^T(w x N0 + dN0) = 0 with A = 0",
                      "backlund:pseudosphere:sigma=0.7853981633974483", 8, 8, 4,
                      {"extract_ABC", "bc_relations_residual"}},
                     run_dist_abc});
        e.push_back({{"dist:n-condition",
                      "nn N0^T[dV/dw x d(V+x0)] ^ dx0^T(N0 x V) = 0",
                      "backlund:pseudosphere:sigma=0.7853981633974483", 12, 12, 8,
                      {"n_condition_residual"}},
                     run_dist_n_condition});
        e.push_back({{"dist:cons",
                      "d(V+x0)^T (I3 - m N0^T/(m^T N0)) (.) [dM dV/dw - dM/dw d(V+x0) + "
                      "2 N0^T[dV/dw x d(V+x0)] (dM ^ d(V+x0))/(N0^T[d(V+x0) x^ d(V+x0)])] = 0",
                      "backlund:pseudosphere:sigma=0.7853981633974483", 12, 12, 8,
                      {"cons_residual", "sym_prod"}},
                     run_dist_cons});
        e.push_back({{"dist:b-coeff",
                      "b = mm nn |N0 x V|^2 / [N0^T(dV/dw x V) + nn V^T dV/dw]^2 "
                      "N0^T[dV/dw x d_j(V+x0)] / (d_j x0^T(N0 x V)) for j = u and j = v",
                      "geodesic:sphere", 6, 6, 4,
                      {"b_coefficient"}},
                     run_dist_b_coeff});
        e.push_back({{"dist:case-b",
                      "mm N0^T[dV/dw x d(V+x0)]/(V^T dV/dw)^2 = b dx0^T(N0 x V)/|N0 x V|^2",
                      "caseb:pseudosphere", 8, 8, 6,
                      {"caseB_b_relation"}},
                     run_dist_case_b});
        return e;
    }();
    return kEntries;
}

}  // namespace

const std::vector<TargetInfo>& list_targets() {
    static const std::vector<TargetInfo> kInfos = [] {
        std::vector<TargetInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return kInfos;
}

const std::vector<std::string>& required_operations() {
    static const std::vector<std::string> kOps = {
        // algebra and forms
        "dot", "cross", "alpha", "alpha_inv", "wedge", "cross_wedge",
        "fund_identity_residual", "sym_prod", "exterior_d",
        // surfaces
        "frame", "gauss_identity_residual",
        // rolling
        "rolling_map", "connection_form", "flatness_residuals", "omom_residual",
        "other_face_form",
        // distributions
        "genericity_value", "integrability_residual", "dw_connection", "extract_ABC",
        "bc_relations_residual", "b_coefficient", "n_condition_residual", "caseB_b_relation",
        "cons_residual", "backlund_fixture"};
    return kOps;
}

ResidualReport run_verify(const VerifyRequest& req) {
    for (const auto& e : entries()) {
        if (e.info.id != req.target) continue;
        const std::string fixture = req.fixture.empty() ? e.info.default_fixture : req.fixture;
        try {
            return e.run(req, e.info, fixture);
        } catch (const MalformedInputError&) {
            throw;  // usage errors propagate
        } catch (const Error& err) {
            // fixture/precondition failure: structured error in the report
            const Resolved g{req.nu > 0 ? req.nu : e.info.default_nu,
                             req.nv > 0 ? req.nv : e.info.default_nv,
                             req.nw > 0 ? req.nw : e.info.default_nw,
                             req.u0, req.u1, req.v0, req.v1, req.w0, req.w1};
            ResidualReport rep = base_report(req, e.info, g, fixture);
            rep.error = err.what();
            return rep;
        }
    }
    std::string names;
    for (const auto& e : entries()) names += "\n  " + e.info.id;
    throw MalformedInputError("unknown target '" + req.target + "'; registered targets:" + names);
}

}  // namespace rollform
