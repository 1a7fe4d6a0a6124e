#pragma once

// Complex 3-vector and 3x3 matrix algebra over the bilinear (non-Hermitian)
// scalar product <x,y> = x^T y.  Eigen's dot/cross/norm members conjugate
// complex entries and compute Hermitian quantities, the wrong metric here;
// use the bilinear free functions below instead.

#include <Eigen/Dense>
#include <complex>

#include "rollform/errors.hpp"

namespace rollform {

using Complex = std::complex<double>;
using CVec3 = Eigen::Vector3<Complex>;
using CMat3 = Eigen::Matrix3<Complex>;

/// Default relative tolerance for algebraic predicates.
inline constexpr double kDefaultTol = 1e-9;

/// Bilinear scalar product x^T y (no conjugation).
template <typename DA, typename DB>
auto dot3(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(DA, 3)
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(DB, 3)
    return a.coeff(0) * b.coeff(0) + a.coeff(1) * b.coeff(1) + a.coeff(2) * b.coeff(2);
}

/// Squared length x^T x under the bilinear metric; may be any complex value.
template <typename D>
auto norm_sq3(const Eigen::MatrixBase<D>& v) {
    return dot3(v, v);
}

/// Bilinear cross product.  Eigen's .cross() conjugates complex results.
template <typename DA, typename DB>
Eigen::Vector3<typename DA::Scalar> cross3(const Eigen::MatrixBase<DA>& a,
                                           const Eigen::MatrixBase<DB>& b) {
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(DA, 3)
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(DB, 3)
    Eigen::Vector3<typename DA::Scalar> r;
    r(0) = a.coeff(1) * b.coeff(2) - a.coeff(2) * b.coeff(1);
    r(1) = a.coeff(2) * b.coeff(0) - a.coeff(0) * b.coeff(2);
    r(2) = a.coeff(0) * b.coeff(1) - a.coeff(1) * b.coeff(0);
    return r;
}

/// Scalar triple product a^T (b x c).
template <typename DA, typename DB, typename DC>
auto triple3(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
             const Eigen::MatrixBase<DC>& c) {
    return dot3(a, cross3(b, c));
}

/// Largest entry magnitude, used to scale relative tolerances.
template <typename D>
double max_abs(const Eigen::MatrixBase<D>& m) {
    double r = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(m.coeff(i, j)));
    return r;
}

/// |z| <= tol * max(1, scale).
inline bool approx_zero(const Complex& z, double scale, double tol = kDefaultTol) {
    return std::abs(z) <= tol * std::max(1.0, scale);
}

/// Isotropy predicate: x^T x = 0 within relative tolerance.
inline bool is_isotropic(const CVec3& x, double tol = kDefaultTol) {
    const double scale = max_abs(x);
    return approx_zero(norm_sq3(x), scale * scale, tol);
}

/// Rotation predicate: R^T R = I and det R = 1 within tolerance.
inline bool is_rotation(const CMat3& R, double tol = kDefaultTol) {
    const CMat3 g = R.transpose() * R - CMat3::Identity();
    const double scale = max_abs(R);
    if (max_abs(g) > tol * std::max(1.0, scale * scale)) return false;
    return std::abs(R.determinant() - Complex(1, 0)) <= tol * std::max(1.0, scale * scale * scale);
}

/// Isometry onto skew-symmetric matrices: alpha(x) y = x cross y.
template <typename S>
Eigen::Matrix3<S> alpha(const Eigen::Vector3<S>& x) {
    Eigen::Matrix3<S> m;
    m(0, 0) = S(0); m(0, 1) = -x(2); m(0, 2) = x(1);
    m(1, 0) = x(2); m(1, 1) = S(0); m(1, 2) = -x(0);
    m(2, 0) = -x(1); m(2, 1) = x(0); m(2, 2) = S(0);
    return m;
}

/// Inverse of alpha.  Requires M skew-symmetric within tolerance.
inline CVec3 alpha_inv(const CMat3& M, double tol = kDefaultTol) {
    const double scale = max_abs(M);
    const CMat3 sym = M + M.transpose();
    if (max_abs(sym) > tol * std::max(1.0, scale))
        throw MalformedInputError("alpha_inv: input matrix is not skew-symmetric");
    return CVec3(M(2, 1), M(0, 2), M(1, 0));
}

/// Scalar product <X,Y> = tr(X^T Y)/2 on 3x3 matrices (alpha is an isometry
/// between it and the bilinear vector product).
inline Complex mat_dot(const CMat3& X, const CMat3& Y) {
    return Complex(0.5, 0.0) * (X.transpose() * Y).trace();
}

/// Principal square root on C \ R_-; hard error on the branch cut.
inline Complex principal_sqrt(const Complex& z) {
    if (z.imag() == 0.0 && z.real() <= 0.0) {
        if (z.real() == 0.0) throw BranchCutError("principal_sqrt: argument is zero");
        throw BranchCutError("principal_sqrt: argument on the negative real axis");
    }
    return std::sqrt(z);
}

/// Cofactor inverse of a 3x3 matrix over any field-like scalar.
template <typename S>
Eigen::Matrix3<S> inverse3(const Eigen::Matrix3<S>& m) {
    Eigen::Matrix3<S> adj;
    adj(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    adj(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
    adj(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    adj(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
    adj(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    adj(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
    adj(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
    adj(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
    adj(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const S det = m(0, 0) * adj(0, 0) + m(0, 1) * adj(1, 0) + m(0, 2) * adj(2, 0);
    return adj * (S(1) / det);
}

template <typename S>
S det3(const Eigen::Matrix3<S>& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

}  // namespace rollform
