// fock.hpp — Truncated Fock-space realization of the ladder algebra: creation
// and annihilation, position/momentum, displacement operators, Heisenberg-Weyl
// elements, coherent states, and the resolution-of-identity quadrature.
//
// Truncation convention: the top level N-1 is lossy. Operator identities that
// hold exactly in infinite dimension hold here on levels 0..N-2, with a known
// corner term at (N-1, N-1); accuracy claims on states are made on low levels
// with N chosen so the occupation beyond the truncation is negligible.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcs/linalg.hpp"
#include "gcs/parallel.hpp"
#include "gcs/quadrature.hpp"

namespace gcs {

struct FockSpace {
    int dim = 0;   // levels |0>, ..., |dim-1>
};

inline void require_ladder_dim(const FockSpace& space, const char* who) {
    if (space.dim < 2) {
        throw std::invalid_argument(std::string(who) + ": Fock dimension must be at least 2");
    }
}

// <n-1| a |n> = sqrt(n)
inline Matrix annihilation(const FockSpace& space) {
    require_ladder_dim(space, "annihilation");
    Matrix a = Matrix::Zero(space.dim, space.dim);
    for (int n = 1; n < space.dim; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

inline Matrix creation(const FockSpace& space) {
    return annihilation(space).adjoint();
}

inline Matrix number_operator(const FockSpace& space) {
    require_ladder_dim(space, "number_operator");
    Matrix n = Matrix::Zero(space.dim, space.dim);
    for (int k = 0; k < space.dim; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

// q = (a + a*)/sqrt(2)
inline Matrix position(const FockSpace& space) {
    const Matrix a = annihilation(space);
    return (a + a.adjoint()) / std::sqrt(2.0);
}

// p = i (a* - a)/sqrt(2), the sign that closes [q, p] = i on the bulk levels
inline Matrix momentum(const FockSpace& space) {
    const Matrix a = annihilation(space);
    return Complex(0.0, 1.0) * (a.adjoint() - a) / std::sqrt(2.0);
}

// H = omega a*a + f a* + conj(f) a + beta I. With omega = 1 this is the
// coherent-state-preserving family; f = 0, beta = 1/2 gives the harmonic
// oscillator with spectrum n + 1/2.
inline Matrix hamiltonian(const FockSpace& space, double omega, Complex f, double beta) {
    const Matrix a = annihilation(space);
    const Matrix ad = a.adjoint();
    Matrix h = omega * (ad * a) + f * ad + std::conj(f) * a;
    h += beta * Matrix::Identity(space.dim, space.dim);
    return h;
}

// D(z) = exp(z a* - conj(z) a), unitary by construction.
// Accuracy on low levels needs dim comfortably above |z|^2 (|z|^2 + 8|z| + 10
// is a safe margin).
inline Matrix displacement(const FockSpace& space, Complex z) {
    require_ladder_dim(space, "displacement");
    const Matrix a = annihilation(space);
    return exp_skew_hermitian(z * a.adjoint() - std::conj(z) * a);
}

inline Vector vacuum(const FockSpace& space) {
    if (space.dim < 1) throw std::invalid_argument("vacuum: empty space");
    Vector v = Vector::Zero(space.dim);
    v(0) = 1.0;
    return v;
}

// |z> = D(z)|0>
inline Vector coherent_state(const FockSpace& space, Complex z) {
    return displacement(space, z) * vacuum(space);
}

// ---------------------------------------------------------------------------
// Heisenberg-Weyl elements g(nu, z) = e^{i nu} D(z)
// ---------------------------------------------------------------------------

struct WeylElement {
    double nu = 0.0;   // central phase
    Complex z{0.0, 0.0};
};

// Group law on R^3 in coordinates (nu, x, y), z = x + iy:
// (nu,x,y)∘(nu',x',y') = (nu + nu' + (xy' - yx')/2, x + x', y + y').
inline WeylElement weyl_compose(const WeylElement& g1, const WeylElement& g2) {
    const double x = g1.z.real(), y = g1.z.imag();
    const double xp = g2.z.real(), yp = g2.z.imag();
    return {g1.nu + g2.nu + 0.5 * (x * yp - y * xp), g1.z + g2.z};
}

inline WeylElement weyl_inverse(const WeylElement& g) { return {-g.nu, -g.z}; }

inline Matrix weyl_rep(const FockSpace& space, const WeylElement& g) {
    return std::exp(Complex(0.0, g.nu)) * displacement(space, g.z);
}

// Composition phase of truncated displacements measured on the vacuum column:
// D(z)D(w)|0> = c * D(z+w)|0> with |c| = 1 up to truncation. The BCH value is
// c = exp(i Im(z conj(w))).
inline Complex displacement_composition_phase(const FockSpace& space, Complex z, Complex w) {
    const Vector lhs = displacement(space, z) * (displacement(space, w) * vacuum(space));
    const Vector rhs = coherent_state(space, z + w);
    return aligned_phase(lhs, rhs);
}

// ---------------------------------------------------------------------------
// Resolution of identity: (1/pi) Int_{|z|<=R} |z><z| d^2 z  ->  I
// ---------------------------------------------------------------------------

// Polar quadrature: Gauss–Legendre in t = r^2 on [0, R^2] (the Jacobian r dr
// is absorbed by dt/2) and a uniform angular rule, which is exact for the
// Fourier modes e^{i(n-m)theta} once n_theta exceeds the probed bandwidth.
//
// One displacement per radial node suffices: conjugating the generator by the
// number-phase unitary diag(e^{i n theta}) rotates z by theta exactly, also
// after truncation, so D(r e^{i theta})|0> carries the phases e^{i n theta}
// on top of D(r)|0>.
//
// Each radial node forms one reduction chunk (angles summed in index order
// inside it); chunks combine in a fixed pairwise tree, so the result is
// bit-identical for any worker count.
inline Matrix resolution_of_identity(const FockSpace& space, double R, int n_r, int n_theta) {
    require_ladder_dim(space, "resolution_of_identity");
    if (R <= 0.0) throw std::invalid_argument("resolution_of_identity: radius must be positive");
    if (n_r < 4 || n_theta < 4) {
        throw std::invalid_argument("resolution_of_identity: need at least 4 nodes per direction");
    }

    const QuadratureRule radial = gauss_legendre(n_r, 0.0, R * R);
    const int dim = space.dim;

    return deterministic_reduce<Matrix>(static_cast<std::size_t>(n_r), [&](std::size_t i) {
        const double r = std::sqrt(radial.nodes[i]);
        const Vector radial_state = coherent_state(space, Complex(r, 0.0));
        const double weight = radial.weights[i] / n_theta;
        Matrix chunk = Matrix::Zero(dim, dim);
        Vector v(dim);
        for (int j = 0; j < n_theta; ++j) {
            const double theta = 2.0 * M_PI * j / n_theta;
            for (int n = 0; n < dim; ++n) {
                v(n) = radial_state(n) * std::exp(Complex(0.0, n * theta));
            }
            chunk.noalias() += weight * (v * v.adjoint());
        }
        return chunk;
    });
}

struct QuadratureReport {
    double R = 0.0;
    int n_r = 0;
    int n_theta = 0;
    int probe_dim = 0;
    double max_abs_deviation = 0.0;    // max |C_nm - delta_nm| over the probe block
    std::vector<double> diag;          // Re C_nn, n < probe_dim
};

inline QuadratureReport resolution_report(const FockSpace& space, double R, int n_r, int n_theta,
                                          int probe_dim) {
    if (probe_dim < 1 || probe_dim > space.dim) {
        throw std::invalid_argument("resolution_report: probe dimension out of range");
    }
    const Matrix c = resolution_of_identity(space, R, n_r, n_theta);
    QuadratureReport rep{R, n_r, n_theta, probe_dim, 0.0, {}};
    rep.diag.reserve(probe_dim);
    for (int n = 0; n < probe_dim; ++n) rep.diag.push_back(c(n, n).real());
    rep.max_abs_deviation =
        max_abs(c.topLeftCorner(probe_dim, probe_dim) - Matrix::Identity(probe_dim, probe_dim));
    return rep;
}

}  // namespace gcs
