#pragma once

// The rolling map between isometric surfaces and its flat connection form.
// The rotation field is assembled from the moving frames of the two surfaces
// and differentiated analytically through the jets, never by differencing
// across grid cells.

#include <vector>

#include "rollform/forms.hpp"
#include "rollform/rng.hpp"
#include "rollform/surface.hpp"

namespace rollform {

struct RollingJets {
    FrameJets2 f0;        // seed frame
    FrameJets2 fx;        // target frame
    JM2 R;                // rotation jets, order 2
    JV2 t;                // translation jets
    bool normal_flipped;  // normal column sign chosen to force det R = 1
};

/// Builds the rotation/translation jets at one parameter point.  Requires an
/// isometric pair; throws IsometryViolationError otherwise.
RollingJets rolling_map_jets(const SurfacePatch& x0, const SurfacePatch& x, double u, double v,
                             double tol = kDefaultTol);

/// Same construction from frames supplied directly.  If the frames force
/// det R = -1 (an externally flipped normal), the seed normal column is
/// replaced by det(R) N0, which restores det R = 1 and sets normal_flipped.
RollingJets rolling_from_frames(const FrameJets2& f0, const FrameJets2& fx,
                                double tol = kDefaultTol);

struct RollingState {
    CMat3 R;
    CVec3 t;
    Form1<CVec3, 2> omega;      // N0 x R^-1 dR N0
    Form1<CVec3, 2> omega_sff;  // from the difference of the second forms
    bool normal_flipped = false;
};

RollingState rolling_map(const SurfacePatch& x0, const SurfacePatch& x, double u, double v,
                         double tol = kDefaultTol);

/// Connection form with jet coefficients (order 1): omega = N0 x R^-1 dR N0.
Form1<JV2, 2> connection_jets(const RollingJets& rj);

/// Independent route: s = II(x) - II(x0), then
/// omega = ((s12 xu - s11 xv) du + (s22 xu - s21 xv) dv) / W.
Form1<JV2, 2> connection_jets_sff(const RollingJets& rj);

/// Same shape evaluated from a prescribed symmetric tensor field s.
template <int NV>
Form1<Eigen::Vector3<Jet<NV>>, 2> connection_from_s(const Eigen::Vector3<Jet<NV>>& xu,
                                                    const Eigen::Vector3<Jet<NV>>& xv,
                                                    const Jet<NV>& W,
                                                    const SymTensor2<Jet<NV>, 2>& s) {
    const Jet<NV> iw = reciprocal(W);
    Form1<Eigen::Vector3<Jet<NV>>, 2> omega;
    omega[0] = (s(0, 1) * xu - s(0, 0) * xv) * iw;
    omega[1] = (s(1, 1) * xu - s(0, 1) * xv) * iw;
    return omega;
}

struct FlatnessResiduals {
    Form2<CVec3, 2> r1;    // d omega + 1/2 omega x^ omega
    Form2<CVec3, 2> r2;    // omega x^ dx0
    Form1<Complex, 2> r3;  // N0^T omega
    double max_abs() const {
        return std::max({form_max_abs(r1), form_max_abs(r2), form_max_abs(r3)});
    }
};

template <int NV>
FlatnessResiduals flatness_residuals(const Form1<Eigen::Vector3<Jet<NV>>, 2>& omega,
                                     const Eigen::Vector3<Jet<NV>>& xu,
                                     const Eigen::Vector3<Jet<NV>>& xv,
                                     const Eigen::Vector3<Jet<NV>>& n0) {
    FlatnessResiduals r;
    const auto dw = value_of(exterior_d(omega));
    const auto wv = value_of(omega);
    r.r1 = dw + Complex(0.5, 0) * cross_wedge(wv, wv);
    Form1<CVec3, 2> dx0;
    dx0[0] = value_of(xu);
    dx0[1] = value_of(xv);
    r.r2 = cross_wedge(wv, dx0);
    r.r3 = contract(value_of(n0), wv);
    return r;
}

/// Residual of (1/2) omega x^ omega = dN0^T ^ omega N0.
template <int NV>
Form2<CVec3, 2> omom_residual(const Form1<Eigen::Vector3<Jet<NV>>, 2>& omega,
                              const Eigen::Vector3<Jet<NV>>& n0) {
    const auto wv = value_of(omega);
    const CVec3 nu = value_of(d_axis(n0, 0));
    const CVec3 nv = value_of(d_axis(n0, 1));
    const Complex pairing = dot3(nu, wv[1]) - dot3(nv, wv[0]);
    Form2<CVec3, 2> r;
    r[0] = Complex(0.5, 0) * cross_wedge(wv, wv)[0] - CVec3(pairing * value_of(n0));
    return r;
}

/// Connection form of the rolling with the other face:
/// omega' = -omega - 2 N0 x dN0.  Applying it twice is the identity.
template <int NV>
Form1<Eigen::Vector3<Jet<NV>>, 2> other_face_form(const Form1<Eigen::Vector3<Jet<NV>>, 2>& omega,
                                                  const Eigen::Vector3<Jet<NV>>& n0) {
    Form1<Eigen::Vector3<Jet<NV>>, 2> r;
    for (int j = 0; j < 2; ++j)
        r[j] = -omega[j] - Jet<NV>(2.0) * cross3(n0, d_axis(n0, j));
    return r;
}

/// Other-face form recomputed through R' = R (I - 2 N0 N0^T).
Form1<JV2, 2> other_face_via_rprime(const RollingJets& rj);

/// Residuals of the auxiliary identities tying R, t and the frames together.
struct MapResiduals {
    double rot_orthogonality = 0;  // R^T R - I
    double rot_det = 0;            // det R - 1
    double roll_differential = 0;  // R dx0 - dx
    double translation_compat = 0; // dt + dR x0
    double secoi = 0;              // R^-1 dR N0 - (R^-1 dN - dN0)
    double comp_seed = 0;          // R^-1 dR ^ dx0
    double comp_target = 0;        // dR R^-1 ^ dx
    double dx0_quadratic = 0;      // dx0^T R^-1 dR dx0, every slot
    double alpha_link = 0;         // R^-1 dR - alpha(omega)
    double max_abs() const {
        return std::max({rot_orthogonality, rot_det, roll_differential, translation_compat,
                         secoi, comp_seed, comp_target, dx0_quadratic, alpha_link});
    }
};

MapResiduals map_residuals(const RollingJets& rj);

/// Witness 1-forms a with a^T (.) dx0 = 0, sampled from the full family
/// (one tangential parameter plus two free normal components).
std::vector<Form1<CVec3, 2>> annihilator_witnesses(const SurfaceFrame& f, Rng& rng, int count);

/// The pairing a^T ^ omega (du^dv coefficient).
inline Complex aom_pairing(const Form1<CVec3, 2>& a, const Form1<CVec3, 2>& omega) {
    return dot3(a[0], omega[1]) - dot3(a[1], omega[0]);
}

/// First-order flat connection germ at one point of a seed surface, built
/// from an admissible symmetric tensor: the value solves the pointwise Gauss
/// compatibility constraint det(II + s) = det II and the first derivatives
/// solve d omega = -(1/2) omega x^ omega.  Evaluating residuals that involve
/// only the value and first derivatives of a flat connection on such a germ
/// is equivalent to evaluating them on a globally flat field.
struct FlatGerm {
    Form1<JV3, 2> omega;
    Complex s11, s12, s22;
    double normal_defect = 0;  // diagnostic: curl equation normal component
};

FlatGerm flat_germ(const FrameJets3& f0, Complex s11, Complex s12, Rng& rng);

}  // namespace rollform
