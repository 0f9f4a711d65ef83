// f_oscillator.hpp — f-deformed oscillators on the truncated Fock space:
// A_f = a f(n_hat), its commutator function, the deformed Hamiltonian and its
// Heisenberg flow, eigenstate-form f-coherent states, and displaced vacua.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcs/fock.hpp"
#include "gcs/linalg.hpp"

namespace gcs {

// Positive sequence f(1), f(2), ..., f(count). Argument 0 never enters any
// formula (it always carries a factor n = 0), so it is not stored.
class DeformationFunction {
public:
    static DeformationFunction from_values(std::vector<double> values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
                throw std::invalid_argument("DeformationFunction: f(" + std::to_string(i + 1) +
                                            ") must be positive and finite");
            }
        }
        return DeformationFunction(std::move(values));
    }

    static DeformationFunction ones(int count) {
        return from_values(std::vector<double>(check_count(count), 1.0));
    }
    // f(n) = sqrt(n)
    static DeformationFunction sqrt_n(int count) {
        std::vector<double> v(check_count(count));
        for (int n = 1; n <= count; ++n) v[n - 1] = std::sqrt(static_cast<double>(n));
        return from_values(std::move(v));
    }
    // f(n) = 1/sqrt(n)
    static DeformationFunction inv_sqrt_n(int count) {
        std::vector<double> v(check_count(count));
        for (int n = 1; n <= count; ++n) v[n - 1] = 1.0 / std::sqrt(static_cast<double>(n));
        return from_values(std::move(v));
    }

    // f(n) for n in 1..max_arg()
    double operator()(int n) const {
        if (n < 1 || n > max_arg()) {
            throw std::out_of_range("DeformationFunction: missing value f(" + std::to_string(n) + ")");
        }
        return values_[n - 1];
    }

    int max_arg() const { return static_cast<int>(values_.size()); }
    const std::vector<double>& values() const { return values_; }

    bool is_identically_one() const {
        for (double v : values_)
            if (v != 1.0) return false;
        return true;
    }

private:
    explicit DeformationFunction(std::vector<double> values) : values_(std::move(values)) {}
    static std::size_t check_count(int count) {
        if (count < 1) throw std::invalid_argument("DeformationFunction: need at least f(1)");
        return static_cast<std::size_t>(count);
    }

    std::vector<double> values_;
};

inline void require_deformation(const FockSpace& space, const DeformationFunction& f, const char* who) {
    require_ladder_dim(space, who);
    if (f.max_arg() < space.dim - 1) {
        throw std::out_of_range(std::string(who) + ": deformation values available up to f(" +
                                std::to_string(f.max_arg()) + "), need f(" +
                                std::to_string(space.dim - 1) + ")");
    }
}

// <n-1| A_f |n> = f(n) sqrt(n); equals a f(n_hat).
inline Matrix deformed_annihilation(const FockSpace& space, const DeformationFunction& f) {
    require_deformation(space, f, "deformed_annihilation");
    Matrix m = Matrix::Zero(space.dim, space.dim);
    for (int n = 1; n < space.dim; ++n) {
        m(n - 1, n) = f(n) * std::sqrt(static_cast<double>(n));
    }
    return m;
}

// f(n_hat) a* = A_f^dagger
inline Matrix deformed_creation(const FockSpace& space, const DeformationFunction& f) {
    return deformed_annihilation(space, f).adjoint();
}

// F = [A_f, A_f*] computed by matrix arithmetic. Diagonal, with entry
// f^2(n+1)(n+1) - f^2(n) n on levels 0..N-2 and -f^2(N-1)(N-1) at the top.
inline Matrix commutator_F(const FockSpace& space, const DeformationFunction& f) {
    const Matrix a = deformed_annihilation(space, f);
    const Matrix ad = a.adjoint();
    return a * ad - ad * a;
}

// h_f = (omega/2)(A_f A_f* + A_f* A_f). Diagonal with entry
// (omega/2)(f^2(n+1)(n+1) + f^2(n) n) on levels 0..N-2 and
// (omega/2) f^2(N-1)(N-1) at the top.
inline Matrix deformed_hamiltonian(const FockSpace& space, const DeformationFunction& f, double omega) {
    const Matrix a = deformed_annihilation(space, f);
    const Matrix ad = a.adjoint();
    return 0.5 * omega * (a * ad + ad * a);
}

// A_f(t) = U(t)^dagger A_f U(t) with U(t) = exp(-i t H_f). H_f is diagonal, so
// the evolution multiplies the entry <n-1|A_f|n> by exp(-i (E_n - E_{n-1}) t):
// the frequency spectrum is the level-gap sequence of the H_f diagonal.
inline Matrix heisenberg_evolved_Af(const FockSpace& space, const DeformationFunction& f,
                                    double omega, double t) {
    const Matrix h = deformed_hamiltonian(space, f, omega);
    const Matrix af = deformed_annihilation(space, f);
    Vector u(space.dim);
    for (int n = 0; n < space.dim; ++n) {
        u(n) = std::exp(Complex(0.0, -t * h(n, n).real()));
    }
    return u.conjugate().asDiagonal() * af * u.asDiagonal();
}

// Level-gap frequencies omega_tilde(n) = E_n - E_{n-1} from the H_f diagonal,
// n = 1..N-1.
inline std::vector<double> level_gap_frequencies(const FockSpace& space, const DeformationFunction& f,
                                                 double omega) {
    const Matrix h = deformed_hamiltonian(space, f, omega);
    std::vector<double> gaps;
    gaps.reserve(space.dim - 1);
    for (int n = 1; n < space.dim; ++n) {
        gaps.push_back(h(n, n).real() - h(n - 1, n - 1).real());
    }
    return gaps;
}

// Normalization constant N_{f,z} of the truncated f-coherent series.
struct FNormalization {
    Complex z{0.0, 0.0};
    double value = 0.0;   // positive; multiplies the raw series to unit norm
};

namespace detail {

// log of the raw series magnitude at level n: n log|z| - log(n!)/2 - log [f(n)]!
// The factorial of f is accumulated in log space whenever the values leave
// [1e-3, 1e3], per the overflow-safety rule; in log space the two paths agree.
inline std::vector<double> f_series_log_magnitudes(const FockSpace& space,
                                                   const DeformationFunction& f, double abs_z) {
    bool log_space = false;
    for (int n = 1; n < space.dim; ++n) {
        const double v = f(n);
        if (v > 1e3 || v < 1e-3) log_space = true;
    }
    std::vector<double> logs(space.dim);
    logs[0] = 0.0;
    double log_ffact = 0.0;
    double ffact = 1.0;
    for (int n = 1; n < space.dim; ++n) {
        if (log_space) {
            log_ffact += std::log(f(n));
        } else {
            ffact *= f(n);
            if (!std::isfinite(ffact) || ffact == 0.0) {
                throw std::overflow_error("f_coherent_state: [f(n)]! overflowed at level " +
                                          std::to_string(n));
            }
            log_ffact = std::log(ffact);
        }
        logs[n] = n * std::log(abs_z) - 0.5 * std::lgamma(n + 1.0) - log_ffact;
    }
    return logs;
}

}  // namespace detail

// |z,f> = N_{f,z} sum_n z^n / (sqrt(n!) [f(n)]!) |n>, truncated and normalized
// on the truncation; [f(0)]! = 1.
inline Vector f_coherent_state(const FockSpace& space, const DeformationFunction& f, Complex z) {
    require_deformation(space, f, "f_coherent_state");
    if (z == Complex(0.0)) return vacuum(space);

    const std::vector<double> logs = detail::f_series_log_magnitudes(space, f, std::abs(z));
    const double log_max = *std::max_element(logs.begin(), logs.end());
    const double arg = std::arg(z);

    Vector state(space.dim);
    for (int n = 0; n < space.dim; ++n) {
        const double mag = std::exp(logs[n] - log_max);
        if (!std::isfinite(mag)) {
            throw std::overflow_error("f_coherent_state: series term not finite at level " +
                                      std::to_string(n));
        }
        state(n) = mag * std::exp(Complex(0.0, n * arg));
    }
    const double norm = state.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw std::underflow_error("f_coherent_state: series underflowed to zero norm");
    }
    return state / norm;
}

inline FNormalization f_normalization(const FockSpace& space, const DeformationFunction& f, Complex z) {
    if (z == Complex(0.0)) return {z, 1.0};
    const std::vector<double> logs = detail::f_series_log_magnitudes(space, f, std::abs(z));
    const double log_max = *std::max_element(logs.begin(), logs.end());
    double sum = 0.0;
    for (double l : logs) {
        const double m = std::exp(l - log_max);
        sum += m * m;
    }
    // N_{f,z} = 1 / sqrt(sum of squared raw magnitudes)
    return {z, std::exp(-log_max) / std::sqrt(sum)};
}

// D_f(z) = exp(z A_f* - conj(z) A_f), unitary; f = 1 recovers D(z) exactly.
inline Matrix deformed_displacement(const FockSpace& space, const DeformationFunction& f, Complex z) {
    const Matrix a = deformed_annihilation(space, f);
    return exp_skew_hermitian(z * a.adjoint() - std::conj(z) * a);
}

// |z_f> = D_f(z)|0>. For non-constant f this is a different family than the
// eigenstates |z,f>.
inline Vector displaced_vacuum(const FockSpace& space, const DeformationFunction& f, Complex z) {
    return deformed_displacement(space, f, z) * vacuum(space);
}

}  // namespace gcs
