// linalg.hpp — Dense complex matrix aliases and the few decompositions used everywhere.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <complex>
#include <stdexcept>

namespace gcs {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;

// Operator (spectral) norm: largest singular value.
inline double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& m, double tol) {
    return max_abs(m - m.adjoint()) <= tol;
}

// exp(K) for skew-Hermitian K, via unitary diagonalization of the Hermitian
// matrix -iK. The result is unitary up to rounding.
inline Matrix exp_skew_hermitian(const Matrix& k) {
    if (k.rows() != k.cols()) {
        throw std::invalid_argument("exp_skew_hermitian: matrix must be square");
    }
    Matrix h = Complex(0.0, -1.0) * k;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("exp_skew_hermitian: eigendecomposition failed");
    }
    const Eigen::VectorXd w = es.eigenvalues();
    const Matrix& v = es.eigenvectors();
    Vector phases(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        phases(i) = std::exp(Complex(0.0, w(i)));
    }
    return v * phases.asDiagonal() * v.adjoint();
}

// Phase that best aligns v to u (maximal-overlap alignment), unit modulus.
// Falls back to 1 when the vectors are orthogonal.
inline Complex aligned_phase(const Vector& u, const Vector& v) {
    const Complex ov = v.dot(u);   // <v|u>
    const double a = std::abs(ov);
    return a > 0.0 ? ov / a : Complex(1.0, 0.0);
}

// || u - e^{i phi} v || minimized over the global phase phi.
inline double phase_aligned_distance(const Vector& u, const Vector& v) {
    return (u - aligned_phase(u, v) * v).norm();
}

}  // namespace gcs
