// Assembles a disconnected groupoid, verifies its axioms, and shows the
// convolution algebra acting through the fundamental representation.

#include <cstdio>
#include <memory>

#include "gcs/algebra.hpp"
#include "gcs/groupoid.hpp"

int main() {
    const auto g = std::make_shared<const gcs::FiniteGroupoid>(
        gcs::disjoint_union(gcs::FiniteGroupoid::pair_groupoid(2), gcs::FiniteGroupoid::pair_groupoid(3)));

    const auto report = gcs::verify_axioms(*g);
    std::printf("objects %d, morphisms %d, axioms %s\n", g->object_count(), g->morphism_count(),
                report.all_pass ? "pass" : "FAIL");
    for (const auto& orbit : gcs::orbits(*g)) {
        std::printf("orbit of size %zu\n", orbit.size());
    }

    // convolve two delta elements and push them through pi_0
    const auto f = gcs::delta(g, 1);
    const auto h = gcs::delta(g, 2);
    const auto fh = gcs::convolve(f, h);
    std::printf("delta_1 * delta_2 support size %zu, ||.|| = %.3f\n", fh.support_size(),
                gcs::cstar_norm(fh));
    return 0;
}
