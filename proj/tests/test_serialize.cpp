#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <random>

#include "gcs/serialize.hpp"
#include "oracles.hpp"

using gcs::Complex;
using gcs::json;
using gcs::Matrix;
using gcs::Vector;

TEST_CASE("groupoid json round trip is id-exact") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 8; ++trial) {
        const auto g = oracles::random_union_groupoid(rng);
        const json j = gcs::groupoid_to_json(g);
        const auto back = gcs::groupoid_from_json(j);
        CHECK(gcs::same_tables(g, back));
        CHECK(gcs::groupoid_to_json(back) == j);
    }
    CHECK_THROWS_AS(gcs::groupoid_from_json(json{{"objects", 2}}), std::invalid_argument);
}

TEST_CASE("algebra element json round trip") {
    std::mt19937_64 rng(23);
    const auto g = std::make_shared<const gcs::FiniteGroupoid>(gcs::FiniteGroupoid::pair_groupoid(4));
    const auto f = oracles::random_element(g, rng);
    const auto back = gcs::algebra_from_json(gcs::algebra_to_json(f));
    CHECK(gcs::same_tables(*back.groupoid(), *g));
    REQUIRE(back.support_size() == f.support_size());
    for (const auto& [id, c] : f.coeffs()) {
        CHECK(back.coeff(id) == c);   // doubles survive the json round trip exactly
    }

    // "pairs:<n>" groupoid reference
    const json by_ref{{"groupoid", "pairs:3"}, {"coeffs", json::array({{4, 1.0, -2.0}})}};
    const auto e = gcs::algebra_from_json(by_ref);
    CHECK(e.groupoid()->morphism_count() == 9);
    CHECK(e.coeff(4) == Complex(1.0, -2.0));
    CHECK_THROWS_AS(gcs::groupoid_ref_from_json(json("rings:3")), std::invalid_argument);
}

TEST_CASE("matrix and vector json round trips") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(3, 5);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 5; ++j) m(i, j) = Complex(u(rng), u(rng));
    const Matrix m2 = gcs::matrix_from_json(gcs::matrix_to_json(m));
    CHECK(gcs::max_abs(m - m2) == 0.0);

    Vector v(7);
    for (int i = 0; i < 7; ++i) v(i) = Complex(u(rng), u(rng));
    CHECK((gcs::vector_from_json(gcs::vector_to_json(v)) - v).norm() == 0.0);
}

TEST_CASE("csv export round-trips doubles through 17 significant digits") {
    Matrix m(2, 2);
    m << Complex(1.0 / 3.0, -2.0 / 7.0), Complex(1e-17, 3.0),
         Complex(-123456.789012345678, 0.1), Complex(0.0, -0.0);
    const std::string csv = gcs::matrix_to_csv(m);

    // parse back and compare bit-for-bit
    std::vector<double> values;
    const char* p = csv.c_str();
    char* end = nullptr;
    while (*p) {
        const double x = std::strtod(p, &end);
        if (end == p) {
            ++p;
            continue;
        }
        values.push_back(x);
        p = end;
    }
    REQUIRE(values.size() == 8);
    std::size_t k = 0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            CHECK(values[k++] == m(i, j).real());
            CHECK(values[k++] == m(i, j).imag());
        }
    }
}

TEST_CASE("complex literal parsing") {
    CHECK(gcs::parse_complex_pair("1.5+2i") == Complex(1.5, 2.0));
    CHECK(gcs::parse_complex_pair("-0.25-3e-2j") == Complex(-0.25, -0.03));
    CHECK_THROWS_AS(gcs::parse_complex_pair("banana"), std::invalid_argument);
    CHECK_THROWS_AS(gcs::parse_complex_pair("1.5"), std::invalid_argument);
}

TEST_CASE("deformation specs") {
    CHECK(gcs::deformation_from_json(json("one"), 4).is_identically_one());
    CHECK(gcs::deformation_from_json(json("sqrt"), 4)(4) == 2.0);
    CHECK(gcs::deformation_from_json(json::array({0.5, 0.25}), 2)(2) == 0.25);
    CHECK_THROWS_AS(gcs::deformation_from_json(json("cube"), 4), std::invalid_argument);
    CHECK_THROWS_AS(gcs::deformation_from_json(json(7), 4), std::invalid_argument);
}

TEST_CASE("family specs: builtin grid, explicit samples, rep tags") {
    const json builtin{{"builtin", "weyl_disk"}, {"dim", 24}, {"R", 2.0}, {"n_r", 6}, {"n_theta", 8}};
    const auto disk = gcs::family_from_json(builtin);
    CHECK(disk.size() == 48);
    CHECK(disk.dim() == 24);

    json explicit_family;
    explicit_family["fiducial"] = gcs::vector_to_json(gcs::vacuum(gcs::FockSpace{12}));
    explicit_family["samples"] = json::array();
    explicit_family["samples"].push_back(
        {{"label", "a"}, {"weight", 2.0}, {"rep", gcs::matrix_to_json(Matrix::Identity(12, 12))}});
    explicit_family["samples"].push_back({{"label", "b"}, {"rep", "weyl:z=0.5+0.25i"}});
    const auto fam = gcs::family_from_json(explicit_family);
    REQUIRE(fam.size() == 2);
    CHECK(fam.sample(0).weight == 2.0);
    CHECK((fam.orbit(1) - gcs::coherent_state(gcs::FockSpace{12}, Complex(0.5, 0.25))).norm() <= 1e-14);

    CHECK_THROWS_AS(gcs::family_from_json(json{{"builtin", "moon"}, {"dim", 4}}), std::invalid_argument);
    CHECK_THROWS_AS(gcs::sample_rep_from_json(json("weyl:q=1+2i")), std::invalid_argument);
}

TEST_CASE("quadrature report keys") {
    const auto rep = gcs::resolution_report(gcs::FockSpace{24}, 3.0, 16, 32, 4);
    const json j = gcs::quadrature_report_to_json(rep);
    for (const char* key : {"R", "n_r", "n_theta", "probe_dim", "max_abs_deviation", "diag"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["diag"].size() == 4);
}
