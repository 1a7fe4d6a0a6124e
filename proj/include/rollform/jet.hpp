#pragma once

// Truncated multivariate Taylor arithmetic (forward-mode jets) in 2 or 3
// parameters, complex coefficients, truncation order up to 3.  A Jet stores
// the Taylor coefficients c_a = d^a f / a! of a scalar field at a base point;
// sums, products, quotients and analytic functions propagate them exactly.
// Jets also serve as Eigen scalars, so vector fields are Eigen::Vector3<Jet>.

#include <Eigen/Core>
#include <array>
#include <complex>

#include "rollform/complex3.hpp"
#include "rollform/errors.hpp"

namespace rollform {

namespace detail {

// Coefficient layout: multi-indices grouped by total degree, lexicographic
// within a degree.  N=2 holds 10 coefficients, N=3 holds 20.
template <int N>
struct JetLayout;

template <>
struct JetLayout<2> {
    static constexpr int kCoeffs = 10;
    static constexpr int kExps[kCoeffs][3] = {
        {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {2, 0, 0}, {1, 1, 0},
        {0, 2, 0}, {3, 0, 0}, {2, 1, 0}, {1, 2, 0}, {0, 3, 0}};
    static constexpr int index(int i, int j, int) {
        constexpr int off[5] = {0, 1, 3, 6, 10};
        return off[i + j] + j;
    }
};

template <>
struct JetLayout<3> {
    static constexpr int kCoeffs = 20;
    static constexpr int kExps[kCoeffs][3] = {
        {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0},
        {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2},
        {3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1},
        {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3}};
    static constexpr int index(int i, int j, int k) {
        const int d = i + j + k;
        constexpr int off[5] = {0, 1, 4, 10, 20};
        // within degree d, entries ordered by decreasing i then decreasing j
        int pos = 0;
        for (int ii = d; ii > i; --ii) pos += d - ii + 1;
        pos += d - i - j;
        return off[d] + pos;
    }
};

inline constexpr double kFactorial[4] = {1.0, 1.0, 2.0, 6.0};

}  // namespace detail

template <int N>
class Jet {
    static_assert(N == 2 || N == 3, "jets support 2 or 3 parameters");

  public:
    using Layout = detail::JetLayout<N>;
    static constexpr int kMaxOrder = 3;
    static constexpr int kCoeffs = Layout::kCoeffs;

    Jet() : order_(kMaxOrder) { c_.fill(Complex(0)); }
    Jet(const Complex& v, int order = kMaxOrder) : order_(order) {  // NOLINT(google-explicit-constructor)
        c_.fill(Complex(0));
        c_[0] = v;
    }
    Jet(double v) : Jet(Complex(v)) {}  // NOLINT(google-explicit-constructor)
    Jet(int v) : Jet(Complex(v)) {}     // NOLINT(google-explicit-constructor)

    /// Coordinate jet: value v with unit first derivative along `axis`.
    static Jet variable(const Complex& v, int axis, int order = kMaxOrder) {
        Jet j(v, order);
        if (order >= 1) {
            const int e[3] = {axis == 0, axis == 1, axis == 2};
            j.c_[Layout::index(e[0], e[1], e[2])] = Complex(1);
        }
        return j;
    }

    int order() const { return order_; }
    const Complex& value() const { return c_[0]; }

    /// Taylor coefficient for the multi-index (i,j[,k]).
    const Complex& coeff(int i, int j, int k = 0) const { return c_[Layout::index(i, j, k)]; }
    Complex& coeff(int i, int j, int k = 0) { return c_[Layout::index(i, j, k)]; }

    /// Partial derivative of total order i+j+k (coefficient times factorials).
    Complex partial(int i, int j, int k = 0) const {
        if (i + j + k > order_)
            throw JetOrderError("jet order insufficient for requested partial");
        return c_[Layout::index(i, j, k)] * detail::kFactorial[i] * detail::kFactorial[j] *
               detail::kFactorial[k];
    }

    /// First-derivative jet along `axis`; truncation order drops by one.
    Jet derivative(int axis) const {
        if (order_ == 0) throw JetOrderError("jet order insufficient for derivative");
        Jet r(Complex(0), order_ - 1);
        for (int idx = 0; idx < kCoeffs; ++idx) {
            const int* e = Layout::kExps[idx];
            if (e[0] + e[1] + e[2] > order_ - 1) continue;
            int s[3] = {e[0], e[1], e[2]};
            ++s[axis];
            r.c_[idx] = c_[Layout::index(s[0], s[1], s[2])] * double(s[axis]);
        }
        return r;
    }

    Jet operator-() const {
        Jet r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    Jet& operator+=(const Jet& o) {
        order_ = std::min(order_, o.order_);
        for (int i = 0; i < kCoeffs; ++i) c_[i] += o.c_[i];
        truncate();
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        order_ = std::min(order_, o.order_);
        for (int i = 0; i < kCoeffs; ++i) c_[i] -= o.c_[i];
        truncate();
        return *this;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet& operator/=(const Jet& o) { return *this = *this / o; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(Complex(0), std::min(a.order_, b.order_));
        for (int ia = 0; ia < kCoeffs; ++ia) {
            if (a.c_[ia] == Complex(0)) continue;
            const int* ea = Layout::kExps[ia];
            const int da = ea[0] + ea[1] + ea[2];
            if (da > r.order_) continue;
            for (int ib = 0; ib < kCoeffs; ++ib) {
                if (b.c_[ib] == Complex(0)) continue;
                const int* eb = Layout::kExps[ib];
                if (da + eb[0] + eb[1] + eb[2] > r.order_) continue;
                r.c_[Layout::index(ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])] +=
                    a.c_[ia] * b.c_[ib];
            }
        }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

    /// Composition with an analytic function given by its derivative values
    /// at the jet's base value: phi[k] = f^(k)(value)/k!.
    friend Jet compose(const Jet& g, const std::array<Complex, 4>& phi) {
        Jet u(g);
        u.c_[0] = Complex(0);
        Jet r(phi[0], g.order_);
        Jet p(u);
        r += p * Jet(phi[1], g.order_);
        p = p * u;
        r += p * Jet(phi[2], g.order_);
        p = p * u;
        r += p * Jet(phi[3], g.order_);
        return r;
    }

    friend Jet reciprocal(const Jet& g) {
        const Complex v = g.c_[0];
        if (v == Complex(0)) throw MalformedInputError("jet reciprocal at zero value");
        const Complex iv = Complex(1) / v;
        return compose(g, {iv, -iv * iv, iv * iv * iv, -iv * iv * iv * iv});
    }

    friend bool operator==(const Jet& a, const Jet& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

  private:
    void truncate() {
        for (int i = 0; i < kCoeffs; ++i) {
            const int* e = Layout::kExps[i];
            if (e[0] + e[1] + e[2] > order_) c_[i] = Complex(0);
        }
    }

    int order_;
    std::array<Complex, kCoeffs> c_;
};

/// Principal-branch square root of a jet (branch chosen at the value).
template <int N>
Jet<N> sqrt_jet(const Jet<N>& g) {
    const Complex r = principal_sqrt(g.value());
    const Complex ir = Complex(1) / r;
    const Complex ir3 = ir * ir * ir;
    return compose(g, {r, 0.5 * ir, -0.125 * ir3, 0.0625 * ir3 * ir * ir});
}

template <int N>
Jet<N> sin_jet(const Jet<N>& g) {
    const Complex s = std::sin(g.value()), c = std::cos(g.value());
    return compose(g, {s, c, -s / 2.0, -c / 6.0});
}

template <int N>
Jet<N> cos_jet(const Jet<N>& g) {
    const Complex s = std::sin(g.value()), c = std::cos(g.value());
    return compose(g, {c, -s, -c / 2.0, s / 6.0});
}

template <int N>
Jet<N> sinh_jet(const Jet<N>& g) {
    const Complex s = std::sinh(g.value()), c = std::cosh(g.value());
    return compose(g, {s, c, s / 2.0, c / 6.0});
}

template <int N>
Jet<N> cosh_jet(const Jet<N>& g) {
    const Complex s = std::sinh(g.value()), c = std::cosh(g.value());
    return compose(g, {c, s, c / 2.0, s / 6.0});
}

template <int N>
Jet<N> exp_jet(const Jet<N>& g) {
    const Complex e = std::exp(g.value());
    return compose(g, {e, e, e / 2.0, e / 6.0});
}

using Jet2 = Jet<2>;
using Jet3 = Jet<3>;

/// Widen a 2-parameter jet to 3 parameters; all w-derivatives are zero.
inline Jet3 promote(const Jet2& j) {
    Jet3 r(Complex(0), j.order());
    for (int idx = 0; idx < Jet2::kCoeffs; ++idx) {
        const int* e = detail::JetLayout<2>::kExps[idx];
        r.coeff(e[0], e[1], 0) = j.coeff(e[0], e[1]);
    }
    return r;
}

}  // namespace rollform

namespace Eigen {

template <int N>
struct NumTraits<rollform::Jet<N>> {
    using Real = rollform::Jet<N>;
    using NonInteger = rollform::Jet<N>;
    using Nested = rollform::Jet<N>;
    using Literal = double;
    // IsComplex stays 0: the coefficients are complex, but Eigen must treat a
    // jet as an opaque field scalar (no conjugation paths, and the complex
    // ScalarBinaryOpTraits specialization would collide with Real == Self).
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 20,
        AddCost = 20,
        MulCost = 120
    };
    static Real epsilon() { return Real(NumTraits<double>::epsilon()); }
    static Real dummy_precision() { return Real(1e-12); }
    static int digits10() { return NumTraits<double>::digits10(); }
};

}  // namespace Eigen

namespace rollform {

using JV2 = Eigen::Vector3<Jet2>;
using JV3 = Eigen::Vector3<Jet3>;
using JM2 = Eigen::Matrix3<Jet2>;
using JM3 = Eigen::Matrix3<Jet3>;

template <int N>
CVec3 value_of(const Eigen::Vector3<Jet<N>>& v) {
    return CVec3(v(0).value(), v(1).value(), v(2).value());
}

template <int N>
CMat3 value_of(const Eigen::Matrix3<Jet<N>>& m) {
    CMat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = m(i, j).value();
    return r;
}

template <int N>
Eigen::Vector3<Jet<N>> d_axis(const Eigen::Vector3<Jet<N>>& v, int axis) {
    return {v(0).derivative(axis), v(1).derivative(axis), v(2).derivative(axis)};
}

template <int N>
Eigen::Matrix3<Jet<N>> d_axis(const Eigen::Matrix3<Jet<N>>& m, int axis) {
    Eigen::Matrix3<Jet<N>> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = m(i, j).derivative(axis);
    return r;
}

template <int N>
Eigen::Vector3<Jet<N>> to_jets(const CVec3& v) {
    return {Jet<N>(v(0)), Jet<N>(v(1)), Jet<N>(v(2))};
}

inline JV3 promote(const JV2& v) { return {promote(v(0)), promote(v(1)), promote(v(2))}; }

}  // namespace rollform
