// algebra.hpp — The groupoid *-algebra C[G]: finitely supported complex
// functions on morphisms with convolution, involution, the fundamental and
// left regular representations, and the C*-norm pulled back through pi_0.

#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>

#include "gcs/groupoid.hpp"
#include "gcs/linalg.hpp"

namespace gcs {

// Element a = sum_alpha a_alpha alpha. Coefficients are kept in an ordered map
// keyed by morphism id so every iteration (and hence every floating-point
// reduction) is deterministic.
class AlgebraElement {
public:
    using Coeffs = std::map<int, Complex>;

    explicit AlgebraElement(std::shared_ptr<const FiniteGroupoid> g, Coeffs coeffs = {})
        : groupoid_(std::move(g)), coeffs_(std::move(coeffs)) {
        if (!groupoid_) throw std::invalid_argument("AlgebraElement: null groupoid");
        for (const auto& [id, c] : coeffs_) {
            if (id < 0 || id >= groupoid_->morphism_count()) {
                throw std::invalid_argument("AlgebraElement: coefficient on unknown morphism");
            }
        }
    }

    const std::shared_ptr<const FiniteGroupoid>& groupoid() const { return groupoid_; }
    const Coeffs& coeffs() const { return coeffs_; }

    Complex coeff(int morphism_id) const {
        const auto it = coeffs_.find(morphism_id);
        return it == coeffs_.end() ? Complex(0.0) : it->second;
    }

    void set_coeff(int morphism_id, Complex c) {
        if (morphism_id < 0 || morphism_id >= groupoid_->morphism_count()) {
            throw std::invalid_argument("AlgebraElement: coefficient on unknown morphism");
        }
        if (c == Complex(0.0)) {
            coeffs_.erase(morphism_id);
        } else {
            coeffs_[morphism_id] = c;
        }
    }

    // support-normal form: drop coefficients with |c| <= tol
    AlgebraElement pruned(double tol = 0.0) const {
        Coeffs out;
        for (const auto& [id, c] : coeffs_) {
            if (std::abs(c) > tol) out.emplace(id, c);
        }
        return AlgebraElement(groupoid_, std::move(out));
    }

    std::size_t support_size() const { return coeffs_.size(); }

private:
    std::shared_ptr<const FiniteGroupoid> groupoid_;
    Coeffs coeffs_;
};

inline AlgebraElement delta(std::shared_ptr<const FiniteGroupoid> g, int morphism_id) {
    AlgebraElement e(std::move(g));
    e.set_coeff(morphism_id, Complex(1.0));
    return e;
}

// 1 = sum_x 1_x, the two-sided unit of the convolution.
inline AlgebraElement unit_element(std::shared_ptr<const FiniteGroupoid> g) {
    AlgebraElement::Coeffs coeffs;
    for (int x = 0; x < g->object_count(); ++x) {
        coeffs[g->unit_of(x)] += Complex(1.0);
    }
    return AlgebraElement(std::move(g), std::move(coeffs));
}

inline void require_same_groupoid(const AlgebraElement& f, const AlgebraElement& g) {
    if (f.groupoid().get() != g.groupoid().get()) {
        throw std::invalid_argument("algebra: elements live on different groupoids");
    }
}

// (f*g)(gamma) = sum over factorizations beta∘alpha = gamma of f(beta)g(alpha).
// Computed sparsely: walk both supports through the composition table.
inline AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g) {
    require_same_groupoid(f, g);
    const FiniteGroupoid& gpd = *f.groupoid();
    AlgebraElement::Coeffs out;
    for (const auto& [b, fb] : f.coeffs()) {
        for (const auto& [a, ga] : g.coeffs()) {
            const auto c = gpd.compose_ids(b, a);
            if (c) out[*c] += fb * ga;
        }
    }
    return AlgebraElement(f.groupoid(), std::move(out));
}

// f*(alpha) = conj(f(alpha^-1))
inline AlgebraElement involution(const AlgebraElement& f) {
    const FiniteGroupoid& gpd = *f.groupoid();
    AlgebraElement::Coeffs out;
    for (const auto& [a, c] : f.coeffs()) {
        out[gpd.inverse_of(a)] = std::conj(c);
    }
    return AlgebraElement(f.groupoid(), std::move(out));
}

inline AlgebraElement scale(Complex s, const AlgebraElement& f) {
    AlgebraElement::Coeffs out;
    for (const auto& [id, c] : f.coeffs()) out[id] = s * c;
    return AlgebraElement(f.groupoid(), std::move(out));
}

inline AlgebraElement add(const AlgebraElement& f, const AlgebraElement& g) {
    require_same_groupoid(f, g);
    AlgebraElement::Coeffs out = f.coeffs();
    for (const auto& [id, c] : g.coeffs()) out[id] += c;
    return AlgebraElement(f.groupoid(), std::move(out));
}

// Support-normalized coefficient equality with absolute tolerance.
inline bool approx_equal(const AlgebraElement& f, const AlgebraElement& g, double tol = 1e-12) {
    require_same_groupoid(f, g);
    for (const auto& [id, c] : f.coeffs()) {
        if (std::abs(c - g.coeff(id)) > tol) return false;
    }
    for (const auto& [id, c] : g.coeffs()) {
        if (std::abs(c - f.coeff(id)) > tol) return false;
    }
    return true;
}

// Fundamental representation on C^{|Omega|}: pi_0(alpha) = |t(alpha)><s(alpha)|.
inline Matrix fundamental_rep(const AlgebraElement& a) {
    const FiniteGroupoid& g = *a.groupoid();
    Matrix m = Matrix::Zero(g.object_count(), g.object_count());
    for (const auto& [id, c] : a.coeffs()) {
        const Morphism& alpha = g.morphism(id);
        m(alpha.target, alpha.source) += c;
    }
    return m;
}

// ||a|| = ||pi_0(a)||, the operator norm. This satisfies the C* identity
// ||a* a|| = ||a||^2.
inline double cstar_norm(const AlgebraElement& a) {
    return spectral_norm(fundamental_rep(a));
}

// Left regular representation on C^{|G|}:
// (lambda(alpha) psi)(beta) = psi(alpha^-1 ∘ beta) when t(alpha) = t(beta), else 0.
inline Matrix left_regular_rep(const AlgebraElement& a) {
    const FiniteGroupoid& g = *a.groupoid();
    const int n = g.morphism_count();
    Matrix m = Matrix::Zero(n, n);
    for (const auto& [id, c] : a.coeffs()) {
        const int inv = g.inverse_of(id);
        for (int beta = 0; beta < n; ++beta) {
            if (g.target(beta) != g.target(id)) continue;
            const auto col = g.compose_ids(inv, beta);
            if (col) m(beta, *col) += c;
        }
    }
    return m;
}

}  // namespace gcs
