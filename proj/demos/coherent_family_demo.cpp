// Builds a Heisenberg-Weyl disk family, certifies its tightness on the low
// Fock levels, and prints the reproducing-kernel decay between two samples.

#include <cstdio>

#include "gcs/families.hpp"
#include "gcs/frame.hpp"

int main() {
    const gcs::FockSpace space{60};
    const auto family = gcs::weyl_disk_family(space, 5.0, 32, 64);
    const auto report = gcs::tightness(family, 8);

    std::printf("samples            : %zu\n", family.size());
    std::printf("lambda             : %.12f\n", report.lambda);
    std::printf("tightness deviation: %.3e (probe block %d)\n", report.tightness_deviation,
                report.probe_dim);

    const std::string a = family.sample(0).label;
    const std::string b = family.sample(family.size() / 2).label;
    const auto k = gcs::reproducing_kernel(family, a, b, report.lambda);
    std::printf("|k(%s, %s)| = %.6e\n", a.c_str(), b.c_str(), std::abs(k));
    return 0;
}
