// frame.hpp — Generalized coherent-state machinery over any represented
// symmetry set: a family is a fiducial vector plus weighted samples of unitary
// representation matrices. The module never sees a group, only samples, so the
// same code serves Heisenberg-Weyl grids, finite counting measures, and
// deformed families. Continuous measures enter as quadrature weights.

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "gcs/f_oscillator.hpp"
#include "gcs/fock.hpp"
#include "gcs/linalg.hpp"
#include "gcs/parallel.hpp"

namespace gcs {

// A sampled element's representation matrix, either dense or one of the
// builtin generators materialized on demand (large grid families would be
// prohibitive to store densely).
class SampleRep {
public:
    static SampleRep dense(Matrix u) { return SampleRep(std::move(u)); }
    static SampleRep weyl(Complex z) { return SampleRep(WeylTag{z}); }
    static SampleRep weyl_deformed(DeformationFunction f, Complex z) {
        return SampleRep(DeformedTag{std::move(f), z});
    }
    // Transposition |0> <-> |n| as a permutation matrix; maps the vacuum onto
    // the basis vector |n>.
    static SampleRep basis_swap(int n) {
        if (n < 0) throw std::invalid_argument("SampleRep::basis_swap: negative level");
        return SampleRep(SwapTag{n});
    }

    Matrix matrix(int dim) const {
        if (const Matrix* m = std::get_if<Matrix>(&source_)) {
            if (m->rows() != dim || m->cols() != dim) {
                throw std::invalid_argument("SampleRep: dense matrix dimension mismatch");
            }
            return *m;
        }
        if (const WeylTag* t = std::get_if<WeylTag>(&source_)) {
            return displacement(FockSpace{dim}, t->z);
        }
        if (const DeformedTag* t = std::get_if<DeformedTag>(&source_)) {
            return deformed_displacement(FockSpace{dim}, t->f, t->z);
        }
        const SwapTag& t = std::get<SwapTag>(source_);
        if (t.n >= dim) throw std::invalid_argument("SampleRep: swap level outside dimension");
        Matrix m = Matrix::Identity(dim, dim);
        m(0, 0) = 0.0;
        m(t.n, t.n) = 0.0;
        m(0, t.n) = 1.0;
        m(t.n, 0) = 1.0;
        return m;
    }

    Vector apply(int dim, const Vector& v) const {
        if (v.size() != dim) throw std::invalid_argument("SampleRep::apply: vector dimension mismatch");
        if (const SwapTag* t = std::get_if<SwapTag>(&source_)) {
            if (t->n >= dim) throw std::invalid_argument("SampleRep: swap level outside dimension");
            Vector out = v;
            std::swap(out(0), out(t->n));
            return out;
        }
        return matrix(dim) * v;
    }

    bool is_dense() const { return std::holds_alternative<Matrix>(source_); }
    std::optional<Complex> weyl_parameter() const {
        if (const WeylTag* t = std::get_if<WeylTag>(&source_)) return t->z;
        if (const DeformedTag* t = std::get_if<DeformedTag>(&source_)) return t->z;
        return std::nullopt;
    }

private:
    struct WeylTag { Complex z; };
    struct DeformedTag { DeformationFunction f; Complex z; };
    struct SwapTag { int n; };

    template <class T>
    explicit SampleRep(T&& src) : source_(std::forward<T>(src)) {}

    std::variant<Matrix, WeylTag, DeformedTag, SwapTag> source_;
};

struct GroupSample {
    std::string label;
    double weight = 1.0;   // d mu(m) weight of the sample
    SampleRep rep;
};

// Fiducial |0> plus samples; orbit vectors |m> = rep(m) |0> are cached at
// construction. Builders that know the vectors analytically may hand them in.
class CoherentFamily {
public:
    CoherentFamily(Vector fiducial, std::vector<GroupSample> samples)
        : CoherentFamily(std::move(fiducial), std::move(samples), {}, true) {}

    CoherentFamily(Vector fiducial, std::vector<GroupSample> samples, std::vector<Vector> orbit)
        : CoherentFamily(std::move(fiducial), std::move(samples), std::move(orbit), false) {}

    int dim() const { return static_cast<int>(fiducial_.size()); }
    const Vector& fiducial() const { return fiducial_; }
    std::size_t size() const { return samples_.size(); }
    const GroupSample& sample(std::size_t i) const { return samples_.at(i); }
    const std::vector<GroupSample>& samples() const { return samples_; }
    const Vector& orbit(std::size_t i) const { return orbit_.at(i); }

    std::size_t index_of(const std::string& label) const {
        const auto it = index_.find(label);
        if (it == index_.end()) {
            throw std::invalid_argument("CoherentFamily: unknown label '" + label + "'");
        }
        return it->second;
    }
    bool has_label(const std::string& label) const { return index_.count(label) > 0; }

private:
    CoherentFamily(Vector fiducial, std::vector<GroupSample> samples, std::vector<Vector> orbit,
                   bool compute)
        : fiducial_(std::move(fiducial)), samples_(std::move(samples)), orbit_(std::move(orbit)) {
        if (fiducial_.size() == 0) throw std::invalid_argument("CoherentFamily: empty fiducial");
        if (std::abs(fiducial_.norm() - 1.0) > 1e-12) {
            throw std::invalid_argument("CoherentFamily: fiducial must have unit norm");
        }
        for (const GroupSample& s : samples_) {
            if (!(s.weight > 0.0)) {
                throw std::invalid_argument("CoherentFamily: sample weights must be positive");
            }
        }
        if (compute) {
            orbit_.reserve(samples_.size());
            for (const GroupSample& s : samples_) {
                if (s.rep.is_dense()) {
                    // dense reps are caller-supplied: enforce unitarity here
                    const Matrix u = s.rep.matrix(dim());
                    if (max_abs(u.adjoint() * u - Matrix::Identity(dim(), dim())) > 1e-8) {
                        throw std::invalid_argument("CoherentFamily: sample '" + s.label +
                                                    "' representation is not unitary");
                    }
                    orbit_.push_back(u * fiducial_);
                } else {
                    orbit_.push_back(s.rep.apply(dim(), fiducial_));
                }
            }
        }
        if (orbit_.size() != samples_.size()) {
            throw std::invalid_argument("CoherentFamily: orbit/sample count mismatch");
        }
        for (std::size_t i = 0; i < orbit_.size(); ++i) {
            if (orbit_[i].size() != fiducial_.size()) {
                throw std::invalid_argument("CoherentFamily: orbit vector dimension mismatch");
            }
        }
        for (std::size_t i = 0; i < samples_.size(); ++i) {
            if (!index_.emplace(samples_[i].label, i).second) {
                throw std::invalid_argument("CoherentFamily: duplicate label '" + samples_[i].label + "'");
            }
        }
    }

    Vector fiducial_;
    std::vector<GroupSample> samples_;
    std::vector<Vector> orbit_;
    std::unordered_map<std::string, std::size_t> index_;
};

// |m> = pi(sigma(m)) |0>
inline Vector orbit_vector(const CoherentFamily& family, const GroupSample& sample) {
    return sample.rep.apply(family.dim(), family.fiducial());
}

// C = sum_m w_m |m><m|, Hermitian positive semidefinite. Samples are grouped
// into fixed chunks combined in a fixed pairwise tree (bit-stable output).
inline Matrix frame_operator(const CoherentFamily& family) {
    if (family.size() == 0) throw std::invalid_argument("frame_operator: empty family");
    const int dim = family.dim();
    constexpr std::size_t chunk_size = 64;
    const std::size_t n_chunks = (family.size() + chunk_size - 1) / chunk_size;
    return deterministic_reduce<Matrix>(n_chunks, [&](std::size_t c) {
        Matrix acc = Matrix::Zero(dim, dim);
        const std::size_t lo = c * chunk_size;
        const std::size_t hi = std::min(lo + chunk_size, family.size());
        for (std::size_t i = lo; i < hi; ++i) {
            acc.noalias() += family.sample(i).weight * (family.orbit(i) * family.orbit(i).adjoint());
        }
        return acc;
    });
}

// lambda = <0|C|0>
inline double schur_lambda(const CoherentFamily& family, const Matrix& c) {
    if (c.rows() != family.dim() || c.cols() != family.dim()) {
        throw std::invalid_argument("schur_lambda: frame operator dimension mismatch");
    }
    return (family.fiducial().adjoint() * c * family.fiducial())(0, 0).real();
}

struct FrameReport {
    Matrix C;
    double lambda = 0.0;
    double tightness_deviation = 0.0;   // ||C/lambda - I|| on the probe block
    int probe_dim = 0;
};

// Tightness on the leading probe block: small deviation certifies the family
// acts as a tight frame there (Schur's lemma diagnostic, not a proof).
inline FrameReport tightness(const CoherentFamily& family, int probe_dim) {
    if (probe_dim < 1 || probe_dim > family.dim()) {
        throw std::invalid_argument("tightness: probe dimension out of range");
    }
    FrameReport rep;
    rep.C = frame_operator(family);
    rep.lambda = schur_lambda(family, rep.C);
    rep.probe_dim = probe_dim;
    if (rep.lambda <= 1e-14) {
        throw std::runtime_error("tightness: degenerate family (lambda ~ 0)");
    }
    rep.tightness_deviation = spectral_norm(rep.C.topLeftCorner(probe_dim, probe_dim) / rep.lambda -
                                            Matrix::Identity(probe_dim, probe_dim));
    return rep;
}

// Counting-measure weights on cosets induced from a finite group: each coset
// gets fiber_count / isotropy_order.
inline std::vector<double> induced_measure(int group_order, int isotropy_order,
                                           const std::vector<int>& fiber_counts) {
    if (isotropy_order < 1) throw std::invalid_argument("induced_measure: isotropy order must be >= 1");
    long total = 0;
    std::vector<double> weights;
    weights.reserve(fiber_counts.size());
    for (int fc : fiber_counts) {
        if (fc < 1) throw std::invalid_argument("induced_measure: fiber counts must be positive");
        if (fc % isotropy_order != 0) {
            throw std::invalid_argument("induced_measure: fiber count not divisible by isotropy order");
        }
        total += fc;
        weights.push_back(static_cast<double>(fc) / isotropy_order);
    }
    if (group_order > 0 && total != group_order) {
        throw std::invalid_argument("induced_measure: fiber counts do not cover the group");
    }
    return weights;
}

// Max over relabel pairs (m -> m_t) of || U_t |m> - phase |m_t> || with the
// phase chosen by maximal-overlap alignment (orbit vectors are defined only up
// to a section-dependent phase).
inline double stability_check(const CoherentFamily& family, const Matrix& u_t,
                              const std::unordered_map<std::string, std::string>& relabel) {
    if (u_t.rows() != family.dim() || u_t.cols() != family.dim()) {
        throw std::invalid_argument("stability_check: evolution operator dimension mismatch");
    }
    double worst = 0.0;
    for (const auto& [from, to] : relabel) {
        const std::size_t i = family.index_of(from);
        if (!family.has_label(to)) {
            throw std::invalid_argument("stability_check: relabel target '" + to + "' missing");
        }
        const std::size_t j = family.index_of(to);
        const Vector evolved = u_t * family.orbit(i);
        worst = std::max(worst, phase_aligned_distance(evolved, family.orbit(j)));
    }
    return worst;
}

// k(m, m') = <m|m'> / lambda
inline Complex reproducing_kernel(const CoherentFamily& family, const std::string& m,
                                  const std::string& m2, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("reproducing_kernel: lambda must be positive");
    const Vector& a = family.orbit(family.index_of(m));
    const Vector& b = family.orbit(family.index_of(m2));
    return a.dot(b) / lambda;
}

// <f|g> = sum_{m,m'} conj(f(m)) k(m,m') g(m') w_m w_{m'}
inline Complex kernel_inner_product(const CoherentFamily& family,
                                    const std::unordered_map<std::string, Complex>& fvals,
                                    const std::unordered_map<std::string, Complex>& gvals,
                                    double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("kernel_inner_product: lambda must be positive");
    const int dim = family.dim();
    // sum_m w_m f(m) |m> and sum_{m'} w_{m'} g(m') |m'>, then one inner product
    Vector fv = Vector::Zero(dim);
    Vector gv = Vector::Zero(dim);
    for (std::size_t i = 0; i < family.size(); ++i) {
        const GroupSample& s = family.sample(i);
        const auto itf = fvals.find(s.label);
        if (itf == fvals.end()) {
            throw std::invalid_argument("kernel_inner_product: f missing label '" + s.label + "'");
        }
        const auto itg = gvals.find(s.label);
        if (itg == gvals.end()) {
            throw std::invalid_argument("kernel_inner_product: g missing label '" + s.label + "'");
        }
        fv += s.weight * itf->second * family.orbit(i);
        gv += s.weight * itg->second * family.orbit(i);
    }
    return fv.dot(gv) / lambda;   // conj-linear in fv
}

// (1/lambda) sum_m w_m <m|psi> |m>, the frame reconstruction of psi.
inline Vector reconstruct(const CoherentFamily& family, const Vector& psi, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("reconstruct: lambda must be positive");
    if (psi.size() != family.dim()) throw std::invalid_argument("reconstruct: dimension mismatch");
    Vector out = Vector::Zero(family.dim());
    for (std::size_t i = 0; i < family.size(); ++i) {
        out += family.sample(i).weight * family.orbit(i).dot(psi) * family.orbit(i);
    }
    return out / lambda;
}

}  // namespace gcs
