// families.hpp — Builtin coherent-family generators: Heisenberg-Weyl disk
// grids (optionally angle-truncated), deformed-displacement grids, explicit
// point sets, and the orthonormal-basis family.

#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "gcs/f_oscillator.hpp"
#include "gcs/fock.hpp"
#include "gcs/frame.hpp"
#include "gcs/quadrature.hpp"

namespace gcs {

namespace detail {

inline std::string grid_label(int i, int j) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "r%03d_t%03d", i, j);
    return buf;
}

}  // namespace detail

// Polar grid over the disk |z| <= R against the measure d^2 z / pi:
// Gauss–Legendre in t = r^2, uniform angles over [0, theta_span). The grid
// family with theta_span = 2 pi carries the resolution-of-identity weights;
// smaller spans give deliberately incomplete families.
//
// One displacement per radius: rotating z by theta multiplies level n of the
// displaced vacuum by e^{i n theta} exactly (see fock.hpp), which also holds
// for the deformed displacement since A_f has the same one-superdiagonal shape.
inline CoherentFamily weyl_disk_family(const FockSpace& space, double R, int n_r, int n_theta,
                                       double theta_span = 2.0 * M_PI,
                                       const DeformationFunction* deformation = nullptr) {
    require_ladder_dim(space, "weyl_disk_family");
    if (R <= 0.0) throw std::invalid_argument("weyl_disk_family: radius must be positive");
    if (n_r < 1 || n_theta < 1) throw std::invalid_argument("weyl_disk_family: empty grid");
    if (!(theta_span > 0.0) || theta_span > 2.0 * M_PI + 1e-12) {
        throw std::invalid_argument("weyl_disk_family: angular span must lie in (0, 2 pi]");
    }

    const QuadratureRule radial = gauss_legendre(n_r, 0.0, R * R);
    std::vector<GroupSample> samples;
    std::vector<Vector> orbit;
    samples.reserve(static_cast<std::size_t>(n_r) * n_theta);
    orbit.reserve(samples.capacity());

    for (int i = 0; i < n_r; ++i) {
        const double r = std::sqrt(radial.nodes[i]);
        const Vector radial_state = deformation
                                        ? displaced_vacuum(space, *deformation, Complex(r, 0.0))
                                        : coherent_state(space, Complex(r, 0.0));
        const double weight = radial.weights[i] * theta_span / (2.0 * M_PI * n_theta);
        for (int j = 0; j < n_theta; ++j) {
            const double theta = theta_span * j / n_theta;
            const Complex z = std::polar(r, theta);
            Vector v(space.dim);
            for (int n = 0; n < space.dim; ++n) {
                v(n) = radial_state(n) * std::exp(Complex(0.0, n * theta));
            }
            samples.push_back({detail::grid_label(i, j), weight,
                               deformation ? SampleRep::weyl_deformed(*deformation, z)
                                           : SampleRep::weyl(z)});
            orbit.push_back(std::move(v));
        }
    }
    return CoherentFamily(vacuum(space), std::move(samples), std::move(orbit));
}

// Explicit labeled points with unit weights; intended for stability probes,
// not completeness claims.
inline CoherentFamily weyl_point_family(const FockSpace& space,
                                        const std::vector<std::pair<std::string, Complex>>& points) {
    std::vector<GroupSample> samples;
    samples.reserve(points.size());
    for (const auto& [label, z] : points) {
        samples.push_back({label, 1.0, SampleRep::weyl(z)});
    }
    return CoherentFamily(vacuum(space), std::move(samples));
}

// N samples mapping |0> to each |n> by a basis transposition; the frame
// operator is exactly the identity.
inline CoherentFamily basis_family(const FockSpace& space) {
    if (space.dim < 1) throw std::invalid_argument("basis_family: empty space");
    std::vector<GroupSample> samples;
    samples.reserve(space.dim);
    for (int n = 0; n < space.dim; ++n) {
        samples.push_back({std::to_string(n), 1.0, SampleRep::basis_swap(n)});
    }
    return CoherentFamily(vacuum(space), std::move(samples));
}

}  // namespace gcs
