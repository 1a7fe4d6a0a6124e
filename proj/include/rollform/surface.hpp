#pragma once

// Parametric surface patches with order-3 analytic jets, the moving-frame
// quantities (unit normal, fundamental forms, Gauss curvature) and the
// fixture catalog used throughout the verification suites.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rollform/complex3.hpp"
#include "rollform/forms.hpp"
#include "rollform/jet.hpp"

namespace rollform {

struct Rect {
    double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
};

class SurfacePatch {
  public:
    SurfacePatch(std::string name, Rect rect) : name_(std::move(name)), rect_(rect) {}
    virtual ~SurfacePatch() = default;

    const std::string& name() const { return name_; }
    const Rect& rect() const { return rect_; }

    /// Order-3 jets of the position map at (u,v).
    virtual JV2 position_jets(double u, double v) const = 0;

    /// Same jets widened to 3 parameters (the patch does not depend on w).
    JV3 position_jets3(double u, double v) const { return promote(position_jets(u, v)); }

  private:
    std::string name_;
    Rect rect_;
};

/// Catalog fixtures: "catenoid", "helicoid", "pseudosphere", "sphere",
/// "plane", "cylinder".  Throws MalformedInputError for unknown names.
std::unique_ptr<SurfacePatch> make_surface(const std::string& name);
std::vector<std::string> surface_catalog_names();

/// Surface defined by a user-supplied map evaluated in jet arithmetic.
class CallableSurface : public SurfacePatch {
  public:
    using Map = std::function<JV2(const Jet2&, const Jet2&)>;
    CallableSurface(std::string name, Rect rect, Map map)
        : SurfacePatch(std::move(name), rect), map_(std::move(map)) {}
    JV2 position_jets(double u, double v) const override {
        return map_(Jet2::variable(u, 0), Jet2::variable(v, 1));
    }

  private:
    Map map_;
};

/// Rigid motion of a patch: x -> Q x + c.
class TransformedPatch : public SurfacePatch {
  public:
    TransformedPatch(const SurfacePatch& base, CMat3 q, CVec3 c)
        : SurfacePatch(base.name() + ":moved", base.rect()), base_(base), q_(std::move(q)),
          c_(std::move(c)) {}
    JV2 position_jets(double u, double v) const override {
        const JV2 x = base_.position_jets(u, v);
        JV2 r;
        for (int i = 0; i < 3; ++i) {
            r(i) = Jet2(c_(i));
            for (int j = 0; j < 3; ++j) r(i) += Jet2(q_(i, j)) * x(j);
        }
        return r;
    }

  private:
    const SurfacePatch& base_;
    CMat3 q_;
    CVec3 c_;
};

/// Reparametrization (u,v) -> (v,u); reverses orientation.
class SwappedPatch : public SurfacePatch {
  public:
    explicit SwappedPatch(const SurfacePatch& base)
        : SurfacePatch(base.name() + ":swapped",
                       Rect{base.rect().v0, base.rect().v1, base.rect().u0, base.rect().u1}),
          base_(base) {}
    JV2 position_jets(double u, double v) const override;

  private:
    const SurfacePatch& base_;
};

/// Position, tangent, normal and area-element jets at one point.
struct FrameJets2 {
    JV2 x;    // order 3
    JV2 xu;   // order 2
    JV2 xv;   // order 2
    JV2 n0;   // order 2
    Jet2 W;   // |xu x xv| with the principal branch, order 2
};

/// Same data widened to 3 parameters (w-independent).
struct FrameJets3 {
    JV3 x, xu, xv, n0;
    Jet3 W;
};

struct SurfaceFrame {
    CVec3 x, xu, xv, n0;
    Complex E, F, G;  // first fundamental form
    Complex L, M, N;  // second fundamental form
    Complex K;        // Gauss curvature, det II / det I
    Complex W;        // area element
};

FrameJets2 frame_jets(const SurfacePatch& s, double u, double v, double tol = kDefaultTol);
FrameJets3 frame_jets3(const SurfacePatch& s, double u, double v, double tol = kDefaultTol);
SurfaceFrame frame(const SurfacePatch& s, double u, double v, double tol = kDefaultTol);

/// Fundamental forms read off a frame-jet block.
SymTensor2<Complex, 2> first_fundamental(const FrameJets2& f);
SymTensor2<Complex, 2> second_fundamental(const FrameJets2& f);

/// du^dv coefficient of (1/2) dN0 x^ dN0 - K |xu x xv| N0; vanishes on any
/// non-degenerate patch.
CVec3 gauss_identity_residual(const SurfacePatch& s, double u, double v);

/// Entrywise difference of the first fundamental forms of two patches at a
/// shared parameter point.
double isometry_residual(const SurfacePatch& a, const SurfacePatch& b, double u, double v);

}  // namespace rollform
