// serialize.hpp — JSON and CSV interchange for groupoids, algebra elements,
// operators/states, coherent families, and the experiment reports.

#pragma once

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gcs/algebra.hpp"
#include "gcs/families.hpp"
#include "gcs/fock.hpp"
#include "gcs/frame.hpp"
#include "gcs/groupoid.hpp"

namespace gcs {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Groupoids: {"objects": n, "morphisms": [[id, source, target], ...],
//             "compose": [[b, a, c], ...], "units": [...], "inverses": [...]}
// ---------------------------------------------------------------------------

inline json groupoid_to_json(const FiniteGroupoid& g) {
    json morphisms = json::array();
    for (const Morphism& m : g.morphisms()) {
        morphisms.push_back({m.id, m.source, m.target});
    }
    json compose = json::array();
    for (const auto& e : g.composition_table()) {
        compose.push_back({e[0], e[1], e[2]});
    }
    return json{{"objects", g.object_count()},
                {"morphisms", std::move(morphisms)},
                {"compose", std::move(compose)},
                {"units", g.unit_table()},
                {"inverses", g.inverse_table()}};
}

inline FiniteGroupoid groupoid_from_json(const json& j) {
    if (!j.is_object() || !j.contains("objects") || !j.contains("morphisms") ||
        !j.contains("compose") || !j.contains("units") || !j.contains("inverses")) {
        throw std::invalid_argument("groupoid_from_json: missing required keys");
    }
    std::vector<Morphism> ms;
    for (const auto& row : j.at("morphisms")) {
        if (!row.is_array() || row.size() != 3) {
            throw std::invalid_argument("groupoid_from_json: morphism rows must be [id, source, target]");
        }
        ms.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<int>()});
    }
    std::vector<std::array<int, 3>> comp;
    for (const auto& row : j.at("compose")) {
        if (!row.is_array() || row.size() != 3) {
            throw std::invalid_argument("groupoid_from_json: compose rows must be [beta, alpha, composite]");
        }
        comp.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<int>()});
    }
    return FiniteGroupoid(j.at("objects").get<int>(), std::move(ms), std::move(comp),
                          j.at("units").get<std::vector<int>>(),
                          j.at("inverses").get<std::vector<int>>());
}

// ---------------------------------------------------------------------------
// Algebra elements: {"groupoid": <inline object or "pairs:<n>">,
//                    "coeffs": [[morphism_id, re, im], ...]}
// ---------------------------------------------------------------------------

inline std::shared_ptr<const FiniteGroupoid> groupoid_ref_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s.rfind("pairs:", 0) == 0) {
            return std::make_shared<const FiniteGroupoid>(
                FiniteGroupoid::pair_groupoid(std::stoi(s.substr(6))));
        }
        throw std::invalid_argument("groupoid ref: unknown tag '" + s + "' (expected \"pairs:<n>\")");
    }
    return std::make_shared<const FiniteGroupoid>(groupoid_from_json(j));
}

inline json algebra_to_json(const AlgebraElement& a) {
    json coeffs = json::array();
    for (const auto& [id, c] : a.coeffs()) {
        coeffs.push_back({json(id), json(c.real()), json(c.imag())});
    }
    return json{{"groupoid", groupoid_to_json(*a.groupoid())}, {"coeffs", std::move(coeffs)}};
}

inline AlgebraElement algebra_from_json(const json& j) {
    auto g = groupoid_ref_from_json(j.at("groupoid"));
    AlgebraElement::Coeffs coeffs;
    for (const auto& row : j.at("coeffs")) {
        if (!row.is_array() || row.size() != 3) {
            throw std::invalid_argument("algebra_from_json: coeff rows must be [id, re, im]");
        }
        coeffs[row[0].get<int>()] = Complex(row[1].get<double>(), row[2].get<double>());
    }
    return AlgebraElement(std::move(g), std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Operators and states: row-major [[re, im], ...] nesting, plus CSV with
// 17 significant digits for exact double round-trips.
// ---------------------------------------------------------------------------

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix_from_json: expected rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j.at(i);
        if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw std::invalid_argument("matrix_from_json: ragged rows");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            m(i, k) = Complex(row.at(k).at(0).get<double>(), row.at(k).at(1).get<double>());
        }
    }
    return m;
}

inline json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
    return out;
}

inline Vector vector_from_json(const json& j) {
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = Complex(j.at(i).at(0).get<double>(), j.at(i).at(1).get<double>());
    }
    return v;
}

inline std::string format_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string matrix_to_csv(const Matrix& m) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_g17(m(i, j).real()) << ',' << format_g17(m(i, j).imag());
        }
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Coherent families:
// {"fiducial": [[re,im],...],
//  "samples": [{"label": ..., "weight": w, "rep": <matrix or "weyl:z=a+bi">}, ...]}
// or a builtin grid: {"builtin": "weyl_disk", "dim": N, "R": ..,
//                     "n_r": .., "n_theta": .., ["f": <spec>]}
// ---------------------------------------------------------------------------

inline Complex parse_complex_pair(const std::string& s) {
    // "a+bi" / "a-bi" with both parts mandatory decimal literals
    double re = 0.0, im = 0.0;
    char tail = '\0';
    if (std::sscanf(s.c_str(), "%lf%lf%c", &re, &im, &tail) != 3 || (tail != 'i' && tail != 'j')) {
        throw std::invalid_argument("parse_complex_pair: expected \"<re>[+-]<im>i\", got '" + s + "'");
    }
    return {re, im};
}

// Deformation spec: "one" | "sqrt" | "inv_sqrt" | explicit array of f(1..count)
inline DeformationFunction deformation_from_json(const json& j, int count) {
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        if (name == "one") return DeformationFunction::ones(count);
        if (name == "sqrt") return DeformationFunction::sqrt_n(count);
        if (name == "inv_sqrt") return DeformationFunction::inv_sqrt_n(count);
        throw std::invalid_argument("deformation_from_json: unknown builtin '" + name + "'");
    }
    if (j.is_array()) {
        return DeformationFunction::from_values(j.get<std::vector<double>>());
    }
    throw std::invalid_argument("deformation_from_json: expected name or array");
}

inline SampleRep sample_rep_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s.rfind("weyl:z=", 0) == 0) return SampleRep::weyl(parse_complex_pair(s.substr(7)));
        throw std::invalid_argument("sample rep: unknown tag '" + s + "' (expected \"weyl:z=a+bi\")");
    }
    return SampleRep::dense(matrix_from_json(j));
}

inline CoherentFamily family_from_json(const json& j) {
    if (j.contains("builtin")) {
        const std::string kind = j.at("builtin").get<std::string>();
        const int dim = j.at("dim").get<int>();
        if (kind == "basis") return basis_family(FockSpace{dim});
        if (kind == "weyl_disk") {
            const double span = j.value("theta_span", 2.0 * M_PI);
            if (j.contains("f")) {
                const DeformationFunction f = deformation_from_json(j.at("f"), dim - 1);
                return weyl_disk_family(FockSpace{dim}, j.at("R").get<double>(),
                                        j.at("n_r").get<int>(), j.at("n_theta").get<int>(), span, &f);
            }
            return weyl_disk_family(FockSpace{dim}, j.at("R").get<double>(), j.at("n_r").get<int>(),
                                    j.at("n_theta").get<int>(), span);
        }
        throw std::invalid_argument("family_from_json: unknown builtin '" + kind + "'");
    }
    Vector fiducial = vector_from_json(j.at("fiducial"));
    std::vector<GroupSample> samples;
    for (const auto& s : j.at("samples")) {
        samples.push_back({s.at("label").get<std::string>(), s.value("weight", 1.0),
                           sample_rep_from_json(s.at("rep"))});
    }
    return CoherentFamily(std::move(fiducial), std::move(samples));
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json quadrature_report_to_json(const QuadratureReport& r) {
    return json{{"R", r.R},
                {"n_r", r.n_r},
                {"n_theta", r.n_theta},
                {"probe_dim", r.probe_dim},
                {"max_abs_deviation", r.max_abs_deviation},
                {"diag", r.diag}};
}

inline json frame_report_to_json(const FrameReport& r) {
    json diag = json::array();
    for (int n = 0; n < r.probe_dim; ++n) diag.push_back(r.C(n, n).real());
    return json{{"lambda", r.lambda},
                {"tightness_deviation", r.tightness_deviation},
                {"probe_dim", r.probe_dim},
                {"diag", std::move(diag)}};
}

inline void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << contents;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace gcs
