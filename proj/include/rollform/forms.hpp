#pragma once

// Pointwise differential-form algebra over 2 or 3 parameters: scalar- and
// vector-valued 1-forms and 2-forms as coefficient arrays against the fixed
// basis orientation du^dv, du^dw, dv^dw, plus the wedge, cross-wedge and
// symmetric products and the exterior derivative of jet-coefficient forms.

#include <array>
#include <utility>

#include "rollform/complex3.hpp"
#include "rollform/jet.hpp"

namespace rollform {

namespace detail {
// Ordered basis pairs (p,q), p<q, for the 2-form coefficients.
inline constexpr int kPairs3[3][2] = {{0, 1}, {0, 2}, {1, 2}};
template <int NP>
constexpr int n_pairs() { return NP == 2 ? 1 : 3; }
}  // namespace detail

/// 1-form c_0 du + c_1 dv (+ c_2 dw); Coeff may be scalar or vector valued.
template <typename Coeff, int NP>
struct Form1 {
    std::array<Coeff, NP> c{};
    Coeff& operator[](int i) { return c[i]; }
    const Coeff& operator[](int i) const { return c[i]; }
};

/// 2-form against the oriented basis du^dv (+ du^dw, dv^dw in 3 parameters).
template <typename Coeff, int NP>
struct Form2 {
    std::array<Coeff, detail::n_pairs<NP>()> c{};
    Coeff& operator[](int i) { return c[i]; }
    const Coeff& operator[](int i) const { return c[i]; }
};

/// Symmetric 2-tensor s_pq du^p (.) du^q; stores the upper triangle.
template <typename Coeff, int NP>
struct SymTensor2 {
    std::array<Coeff, NP*(NP + 1) / 2> s{};
    static constexpr int flat(int p, int q) {
        if (p > q) std::swap(p, q);
        if constexpr (NP == 2) { constexpr int f[2][2] = {{0, 1}, {1, 2}}; return f[p][q]; }
        else { constexpr int f[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}}; return f[p][q]; }
    }
    Coeff& operator()(int p, int q) { return s[flat(p, q)]; }
    const Coeff& operator()(int p, int q) const { return s[flat(p, q)]; }
};

template <typename C, int NP>
Form1<C, NP> operator+(const Form1<C, NP>& a, const Form1<C, NP>& b) {
    Form1<C, NP> r;
    for (int i = 0; i < NP; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

template <typename C, int NP>
Form1<C, NP> operator-(const Form1<C, NP>& a, const Form1<C, NP>& b) {
    Form1<C, NP> r;
    for (int i = 0; i < NP; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

template <typename C, int NP>
Form1<C, NP> operator-(const Form1<C, NP>& a) {
    Form1<C, NP> r;
    for (int i = 0; i < NP; ++i) r.c[i] = -a.c[i];
    return r;
}

template <typename S, typename C, int NP>
Form1<C, NP> operator*(const S& s, const Form1<C, NP>& a) {
    Form1<C, NP> r;
    for (int i = 0; i < NP; ++i) r.c[i] = s * a.c[i];
    return r;
}

template <typename C, int NP>
Form2<C, NP> operator+(const Form2<C, NP>& a, const Form2<C, NP>& b) {
    Form2<C, NP> r;
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

template <typename C, int NP>
Form2<C, NP> operator-(const Form2<C, NP>& a, const Form2<C, NP>& b) {
    Form2<C, NP> r;
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

template <typename S, typename C, int NP>
Form2<C, NP> operator*(const S& s, const Form2<C, NP>& a) {
    Form2<C, NP> r;
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = s * a.c[i];
    return r;
}

/// Wedge of scalar 1-forms: antisymmetric, coefficient a_p b_q - a_q b_p.
template <typename C, int NP>
Form2<C, NP> wedge(const Form1<C, NP>& a, const Form1<C, NP>& b) {
    Form2<C, NP> r;
    for (int i = 0; i < detail::n_pairs<NP>(); ++i) {
        const int p = detail::kPairs3[i][0], q = detail::kPairs3[i][1];
        r.c[i] = a.c[p] * b.c[q] - a.c[q] * b.c[p];
    }
    return r;
}

/// Cross-wedge of vector-valued 1-forms, symmetric in its arguments:
/// 2 w1 x^ w2 = w1 x w2 + w2 x w1, i.e. coefficient w1_p x w2_q + w2_p x w1_q.
template <typename S, int NP>
Form2<Eigen::Vector3<S>, NP> cross_wedge(const Form1<Eigen::Vector3<S>, NP>& a,
                                         const Form1<Eigen::Vector3<S>, NP>& b) {
    Form2<Eigen::Vector3<S>, NP> r;
    for (int i = 0; i < detail::n_pairs<NP>(); ++i) {
        const int p = detail::kPairs3[i][0], q = detail::kPairs3[i][1];
        r.c[i] = cross3(a.c[p], b.c[q]) + cross3(b.c[p], a.c[q]);
    }
    return r;
}

/// Symmetric product of scalar 1-forms: s_pq = (a_p b_q + a_q b_p)/2.
template <typename C, int NP>
SymTensor2<C, NP> sym_prod(const Form1<C, NP>& a, const Form1<C, NP>& b) {
    SymTensor2<C, NP> r;
    for (int p = 0; p < NP; ++p)
        for (int q = p; q < NP; ++q) r(p, q) = (a.c[p] * b.c[q] + a.c[q] * b.c[p]) * 0.5;
    return r;
}

/// Symmetric product of vector-valued 1-forms with the vector slots
/// contracted: s_pq = (a_p^T b_q + a_q^T b_p)/2.
template <typename S, int NP>
SymTensor2<S, NP> sym_prod_dot(const Form1<Eigen::Vector3<S>, NP>& a,
                               const Form1<Eigen::Vector3<S>, NP>& b) {
    SymTensor2<S, NP> r;
    for (int p = 0; p < NP; ++p)
        for (int q = p; q < NP; ++q)
            r(p, q) = (dot3(a.c[p], b.c[q]) + dot3(a.c[q], b.c[p])) * 0.5;
    return r;
}

/// a^T w contraction of a vector against a vector-valued 1-form.
template <typename S, int NP>
Form1<S, NP> contract(const Eigen::Vector3<S>& a, const Form1<Eigen::Vector3<S>, NP>& w) {
    Form1<S, NP> r;
    for (int i = 0; i < NP; ++i) r.c[i] = dot3(a, w.c[i]);
    return r;
}

/// a^T W contraction of a vector against a vector-valued 2-form.
template <typename S, int NP>
Form2<S, NP> contract(const Eigen::Vector3<S>& a, const Form2<Eigen::Vector3<S>, NP>& w) {
    Form2<S, NP> r;
    for (size_t i = 0; i < w.c.size(); ++i) r.c[i] = dot3(a, w.c[i]);
    return r;
}

/// Cross product applied coefficient-wise: (w x a)_p = w_p x a.
template <typename S, int NP>
Form1<Eigen::Vector3<S>, NP> cross_form(const Form1<Eigen::Vector3<S>, NP>& w,
                                        const Eigen::Vector3<S>& a) {
    Form1<Eigen::Vector3<S>, NP> r;
    for (int i = 0; i < NP; ++i) r.c[i] = cross3(w.c[i], a);
    return r;
}

/// Exterior derivative of a scalar 1-form with jet coefficients; the result
/// coefficients are jets of one order less.  Derivatives are taken along the
/// first NP parameter axes.
template <int NV, int NP>
Form2<Jet<NV>, NP> exterior_d(const Form1<Jet<NV>, NP>& w) {
    Form2<Jet<NV>, NP> r;
    for (int i = 0; i < detail::n_pairs<NP>(); ++i) {
        const int p = detail::kPairs3[i][0], q = detail::kPairs3[i][1];
        r.c[i] = w.c[q].derivative(p) - w.c[p].derivative(q);
    }
    return r;
}

/// Exterior derivative of a vector-valued 1-form with jet coefficients.
template <int NV, int NP>
Form2<Eigen::Vector3<Jet<NV>>, NP> exterior_d(const Form1<Eigen::Vector3<Jet<NV>>, NP>& w) {
    Form2<Eigen::Vector3<Jet<NV>>, NP> r;
    for (int i = 0; i < detail::n_pairs<NP>(); ++i) {
        const int p = detail::kPairs3[i][0], q = detail::kPairs3[i][1];
        r.c[i] = d_axis(w.c[q], p) - d_axis(w.c[p], q);
    }
    return r;
}

/// Differential of a scalar jet as a 1-form over the first NP axes.
template <int NP, int NV>
Form1<Jet<NV>, NP> d_scalar(const Jet<NV>& f) {
    Form1<Jet<NV>, NP> r;
    for (int i = 0; i < NP; ++i) r.c[i] = f.derivative(i);
    return r;
}

/// Differential of a vector jet as a vector-valued 1-form.
template <int NP, int NV>
Form1<Eigen::Vector3<Jet<NV>>, NP> d_vector(const Eigen::Vector3<Jet<NV>>& f) {
    Form1<Eigen::Vector3<Jet<NV>>, NP> r;
    for (int i = 0; i < NP; ++i) r.c[i] = d_axis(f, i);
    return r;
}

/// Residual of the wedge/cross-wedge exchange identity
///   a^T w1 ^ b^T w2 = (a x b)^T (w1 x^ w2) + b^T w1 ^ a^T w2,
/// returned as LHS - RHS; identically zero for all inputs.
template <typename S, int NP>
Form2<S, NP> fund_identity_residual(const Eigen::Vector3<S>& a, const Eigen::Vector3<S>& b,
                                    const Form1<Eigen::Vector3<S>, NP>& w1,
                                    const Form1<Eigen::Vector3<S>, NP>& w2) {
    const Form2<S, NP> lhs = wedge(contract(a, w1), contract(b, w2));
    const Form2<S, NP> rhs =
        contract(Eigen::Vector3<S>(cross3(a, b)), cross_wedge(w1, w2)) +
        wedge(contract(b, w1), contract(a, w2));
    return lhs - rhs;
}

/// Value parts of jet-coefficient forms.
template <int NV, int NP>
Form1<Complex, NP> value_of(const Form1<Jet<NV>, NP>& w) {
    Form1<Complex, NP> r;
    for (int i = 0; i < NP; ++i) r.c[i] = w.c[i].value();
    return r;
}

template <int NV, int NP>
Form1<CVec3, NP> value_of(const Form1<Eigen::Vector3<Jet<NV>>, NP>& w) {
    Form1<CVec3, NP> r;
    for (int i = 0; i < NP; ++i) r.c[i] = value_of(w.c[i]);
    return r;
}

template <int NV, int NP>
Form2<Complex, NP> value_of(const Form2<Jet<NV>, NP>& w) {
    Form2<Complex, NP> r;
    for (size_t i = 0; i < w.c.size(); ++i) r.c[i] = w.c[i].value();
    return r;
}

template <int NV, int NP>
Form2<CVec3, NP> value_of(const Form2<Eigen::Vector3<Jet<NV>>, NP>& w) {
    Form2<CVec3, NP> r;
    for (size_t i = 0; i < w.c.size(); ++i) r.c[i] = value_of(w.c[i]);
    return r;
}

/// Largest coefficient magnitude of a form (for residual reporting).
template <int NP>
double form_max_abs(const Form1<Complex, NP>& w) {
    double r = 0;
    for (const auto& x : w.c) r = std::max(r, std::abs(x));
    return r;
}

template <int NP>
double form_max_abs(const Form2<Complex, NP>& w) {
    double r = 0;
    for (const auto& x : w.c) r = std::max(r, std::abs(x));
    return r;
}

template <int NP>
double form_max_abs(const Form1<CVec3, NP>& w) {
    double r = 0;
    for (const auto& x : w.c) r = std::max(r, max_abs(x));
    return r;
}

template <int NP>
double form_max_abs(const Form2<CVec3, NP>& w) {
    double r = 0;
    for (const auto& x : w.c) r = std::max(r, max_abs(x));
    return r;
}

}  // namespace rollform
