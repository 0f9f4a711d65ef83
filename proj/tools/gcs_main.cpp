// gcs — command-line front end: builds groupoids and coherent families from
// configs, runs the verification and quadrature experiments, and writes
// machine-readable reports (json) or plot tables (csv).
//
// Exit codes: 0 success, 1 validation/configuration error, 2 numerical
// tolerance failure (the report then carries a non-empty "violations" array).

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gcs/serialize.hpp"

namespace {

using gcs::Complex;
using gcs::json;
using gcs::Matrix;
using gcs::Vector;

constexpr double kPhaseProbe = 0.37;   // fixed argument for coherent-state probes

// truncated analytic series e^{-|z|^2/2} z^n / sqrt(n!), for the report's
// displacement-vs-series diagnostic
Vector coherent_series(int dim, Complex z) {
    Vector v = Vector::Zero(dim);
    if (z == Complex(0.0)) {
        v(0) = 1.0;
        return v;
    }
    for (int n = 0; n < dim; ++n) {
        const double mag =
            std::exp(-0.5 * std::norm(z) + n * std::log(std::abs(z)) - 0.5 * std::lgamma(n + 1.0));
        v(n) = mag * std::exp(Complex(0.0, n * std::arg(z)));
    }
    return v;
}

gcs::AlgebraElement random_element(std::shared_ptr<const gcs::FiniteGroupoid> g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::bernoulli_distribution keep(0.5);
    gcs::AlgebraElement::Coeffs coeffs;
    for (int id = 0; id < g->morphism_count(); ++id) {
        if (keep(rng)) coeffs[id] = Complex(coeff(rng), coeff(rng));
    }
    if (coeffs.empty()) coeffs[0] = Complex(coeff(rng), coeff(rng));
    return gcs::AlgebraElement(std::move(g), std::move(coeffs));
}

struct CommandResult {
    json report;
    int exit_code = 0;
};

struct TableColumn {
    std::string name;
    std::vector<double> values;
};

// ---------------------------------------------------------------------------
// small helpers
// ---------------------------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read file '" + path + "'");
    json j;
    in >> j;
    return j;
}

// config: {"command": ..., "params": {...}, "output_path": ..., "format": ...}
struct Config {
    std::string command;
    json params = json::object();
    std::string output_path;
    std::string format;
};

Config load_config(const std::string& path) {
    const json j = load_json_file(path);
    if (!j.is_object()) throw std::invalid_argument("config must be a json object");
    static const std::set<std::string> allowed{"command", "params", "output_path", "format"};
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    Config cfg;
    if (j.contains("command")) cfg.command = j.at("command").get<std::string>();
    if (j.contains("params")) {
        if (!j.at("params").is_object()) throw std::invalid_argument("config: params must be an object");
        cfg.params = j.at("params");
    }
    if (j.contains("output_path")) cfg.output_path = j.at("output_path").get<std::string>();
    if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
    return cfg;
}

// Parameter lookup: a flag passed on the command line wins over the config
// value, which wins over the default. Unknown config keys are rejected.
class Params {
public:
    Params(json config_params, std::set<std::string> allowed)
        : config_(std::move(config_params)), allowed_(std::move(allowed)) {
        for (const auto& [key, value] : config_.items()) {
            if (!allowed_.count(key)) {
                throw std::invalid_argument("params: unknown key '" + key + "'");
            }
        }
    }

    template <class T>
    T get(const std::string& key, const T& fallback, const CLI::Option* flag, const T& flag_value) const {
        if (flag != nullptr && flag->count() > 0) return flag_value;
        if (config_.contains(key)) return config_.at(key).get<T>();
        return fallback;
    }

    json raw(const std::string& key) const {
        return config_.contains(key) ? config_.at(key) : json();
    }

private:
    json config_;
    std::set<std::string> allowed_;
};

std::string format_g17(double x) { return gcs::format_g17(x); }

std::string render_csv(const std::vector<TableColumn>& table, const std::string& columns_arg) {
    std::vector<const TableColumn*> selected;
    if (columns_arg.empty()) {
        for (const auto& c : table) selected.push_back(&c);
    } else {
        for (const std::string& name : split(columns_arg, ',')) {
            const TableColumn* found = nullptr;
            for (const auto& c : table) {
                if (c.name == name) found = &c;
            }
            if (!found) throw std::invalid_argument("unknown column '" + name + "'");
            selected.push_back(found);
        }
    }
    if (selected.empty()) throw std::invalid_argument("no columns selected");
    std::ostringstream out;
    for (std::size_t i = 0; i < selected.size(); ++i) {
        if (i) out << ',';
        out << selected[i]->name;
    }
    out << '\n';
    const std::size_t rows = selected[0]->values.size();
    for (const auto* c : selected) {
        if (c->values.size() != rows) throw std::runtime_error("ragged table");
    }
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < selected.size(); ++i) {
            if (i) out << ',';
            out << format_g17(selected[i]->values[r]);
        }
        out << '\n';
    }
    return out.str();
}

gcs::DeformationFunction parse_deformation(const std::string& spec, int count) {
    if (!spec.empty() && spec.front() == '[') {
        return gcs::deformation_from_json(json::parse(spec), count);
    }
    return gcs::deformation_from_json(json(spec), count);
}

// ---------------------------------------------------------------------------
// command implementations
// ---------------------------------------------------------------------------

CommandResult run_groupoid_verify(const Params& params, const CLI::Option* pairs_flag, int pairs_val,
                                  const CLI::Option* union_flag, const std::string& union_val,
                                  const CLI::Option* file_flag, const std::string& file_val) {
    const int pairs = params.get<int>("pairs", 4, pairs_flag, pairs_val);
    const std::string union_spec = params.get<std::string>("union", "", union_flag, union_val);
    const std::string file = params.get<std::string>("file", "", file_flag, file_val);

    gcs::FiniteGroupoid g = [&] {
        if (!file.empty()) return gcs::groupoid_from_json(load_json_file(file));
        if (!union_spec.empty()) {
            const auto sizes = split(union_spec, ',');
            if (sizes.empty()) throw std::invalid_argument("union: empty size list");
            gcs::FiniteGroupoid acc = gcs::FiniteGroupoid::pair_groupoid(std::stoi(sizes[0]));
            for (std::size_t i = 1; i < sizes.size(); ++i) {
                acc = gcs::disjoint_union(acc, gcs::FiniteGroupoid::pair_groupoid(std::stoi(sizes[i])));
            }
            return acc;
        }
        return gcs::FiniteGroupoid::pair_groupoid(pairs);
    }();

    const gcs::AxiomReport report = gcs::verify_axioms(g);
    json axioms = json::array();
    json violations = json::array();
    for (const auto& check : report.checks) {
        axioms.push_back({{"name", check.name}, {"pass", check.pass}, {"witness", check.witness}});
        if (!check.pass) violations.push_back("axiom '" + check.name + "' failed: " + check.witness);
    }
    json orbit_sizes = json::array();
    for (const auto& orbit : gcs::orbits(g)) orbit_sizes.push_back(orbit.size());

    json out{{"command", "groupoid-verify"},
             {"objects", g.object_count()},
             {"morphisms", g.morphism_count()},
             {"axioms", std::move(axioms)},
             {"all_pass", report.all_pass},
             {"orbit_sizes", std::move(orbit_sizes)},
             {"violations", violations}};
    return {std::move(out), report.all_pass ? 0 : 2};
}

CommandResult run_algebra_check(const Params& params, const CLI::Option* pairs_flag, int pairs_val,
                                const CLI::Option* trials_flag, int trials_val,
                                const CLI::Option* seed_flag, int seed_val) {
    const int pairs = params.get<int>("pairs", 6, pairs_flag, pairs_val);
    const int trials = params.get<int>("trials", 100, trials_flag, trials_val);
    const int seed = params.get<int>("seed", 0, seed_flag, seed_val);
    if (pairs < 1 || trials < 1) throw std::invalid_argument("algebra-check: pairs and trials must be positive");

    const auto g = std::make_shared<const gcs::FiniteGroupoid>(gcs::FiniteGroupoid::pair_groupoid(pairs));
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));

    double max_hom = 0.0, max_cstar = 0.0, max_lambda = 0.0;
    for (int t = 0; t < trials; ++t) {
        const auto f = random_element(g, rng);
        const auto h = random_element(g, rng);
        const Matrix pf = gcs::fundamental_rep(f);
        const Matrix ph = gcs::fundamental_rep(h);
        max_hom = std::max(max_hom, gcs::spectral_norm(gcs::fundamental_rep(gcs::convolve(f, h)) - pf * ph));
        const double n = gcs::cstar_norm(f);
        max_cstar = std::max(max_cstar, std::abs(gcs::cstar_norm(gcs::convolve(gcs::involution(f), f)) - n * n));
        max_lambda = std::max(
            max_lambda, gcs::spectral_norm(gcs::left_regular_rep(gcs::convolve(f, h)) -
                                           gcs::left_regular_rep(f) * gcs::left_regular_rep(h)));
    }

    const double hom_tol = 1e-12, cstar_tol = 1e-10, lambda_tol = 1e-12;
    json violations = json::array();
    if (max_hom > hom_tol) violations.push_back("fundamental representation homomorphism residual above 1e-12");
    if (max_cstar > cstar_tol) violations.push_back("C* identity residual above 1e-10");
    if (max_lambda > lambda_tol) violations.push_back("left regular homomorphism residual above 1e-12");

    json out{{"command", "algebra-check"},
             {"pairs", pairs},
             {"trials", trials},
             {"seed", seed},
             {"max_fundamental_residual", max_hom},
             {"max_cstar_residual", max_cstar},
             {"max_left_regular_residual", max_lambda},
             {"violations", violations}};
    return {std::move(out), violations.empty() ? 0 : 2};
}

CommandResult run_oscillator_report(const Params& params, const CLI::Option* dim_flag, int dim_val) {
    const int dim = params.get<int>("dim", 40, dim_flag, dim_val);
    const gcs::FockSpace space{dim};

    const Matrix a = gcs::annihilation(space);
    const Matrix comm = a * a.adjoint() - a.adjoint() * a;
    const int blk = dim - 1;
    const double block_dev = gcs::max_abs(comm.topLeftCorner(blk, blk) - Matrix::Identity(blk, blk));

    json coherent = json::array();
    for (double r : {0.5, 1.0, 2.0}) {
        const Complex z = std::polar(r, kPhaseProbe);
        const Vector state = gcs::coherent_state(space, z);
        const Vector series = coherent_series(dim, z);
        coherent.push_back({{"abs_z", r},
                            {"eigen_residual", (a * state - z * state).norm()},
                            {"series_distance", (state - series).norm()},
                            {"vacuum_overlap_deviation",
                             std::abs(std::norm(state(0)) - std::exp(-r * r))}});
    }

    // composition phase constant: D(z)D(w) = exp(i c Im(z conj w)) D(z+w);
    // fit c from the measured vacuum-column phase for non-degenerate pairs
    json bch = json::array();
    double constant_sum = 0.0;
    int constant_count = 0;
    const std::vector<std::pair<Complex, Complex>> probes{
        {Complex(0.7, 0.0), Complex(0.0, 0.4)},
        {Complex(0.3, 0.5), Complex(-0.2, 0.6)},
        {Complex(1.0, 0.0), Complex(0.0, 1.0)},
    };
    for (const auto& [z, w] : probes) {
        const Complex phase = gcs::displacement_composition_phase(space, z, w);
        const double im = std::imag(z * std::conj(w));
        const double fitted = std::arg(phase) / im;
        constant_sum += fitted;
        ++constant_count;
        bch.push_back({{"z", {z.real(), z.imag()}},
                       {"w", {w.real(), w.imag()}},
                       {"phase", {phase.real(), phase.imag()}},
                       {"fitted_constant", fitted}});
    }

    json out{{"command", "oscillator-report"},
             {"dim", dim},
             {"commutator_corner", comm(dim - 1, dim - 1).real()},
             {"commutator_block_deviation", block_dev},
             {"coherent", std::move(coherent)},
             {"composition_phase_model", "D(z)D(w) = exp(i*c*Im(z*conj(w))) D(z+w)"},
             {"composition_phase_constant", constant_sum / constant_count},
             {"composition_phase_probes", std::move(bch)},
             {"violations", json::array()}};
    return {std::move(out), 0};
}

CommandResult run_resolution(const Params& params, const CLI::Option* r_flag, double r_val,
                             const CLI::Option* nr_flag, int nr_val, const CLI::Option* nt_flag,
                             int nt_val, const CLI::Option* dim_flag, int dim_val,
                             const CLI::Option* probe_flag, int probe_val, const CLI::Option* tol_flag,
                             double tol_val) {
    const double R = params.get<double>("R", 6.0, r_flag, r_val);
    const int n_r = params.get<int>("n_r", 200, nr_flag, nr_val);
    const int n_theta = params.get<int>("n_theta", 256, nt_flag, nt_val);
    const int dim = params.get<int>("dim", 80, dim_flag, dim_val);
    const int probe = params.get<int>("probe", 11, probe_flag, probe_val);
    const double tol = params.get<double>("tol", 1e-4, tol_flag, tol_val);

    const auto report = gcs::resolution_report(gcs::FockSpace{dim}, R, n_r, n_theta, probe);
    json out = gcs::quadrature_report_to_json(report);
    out["command"] = "resolution";
    out["dim"] = dim;
    out["tol"] = tol;
    json violations = json::array();
    if (report.max_abs_deviation > tol) {
        violations.push_back("max_abs_deviation " + format_g17(report.max_abs_deviation) +
                             " exceeds tol " + format_g17(tol));
    }
    out["violations"] = violations;
    return {std::move(out), violations.empty() ? 0 : 2};
}

CommandResult run_f_oscillator_report(const Params& params, const CLI::Option* dim_flag, int dim_val,
                                      const CLI::Option* f_flag, const std::string& f_val,
                                      const CLI::Option* omega_flag, double omega_val) {
    const int dim = params.get<int>("dim", 40, dim_flag, dim_val);
    const std::string f_spec = params.get<std::string>("f", "one", f_flag, f_val);
    const double omega = params.get<double>("omega", 1.0, omega_flag, omega_val);

    const gcs::FockSpace space{dim};
    const auto f = parse_deformation(f_spec, dim - 1);

    const Matrix hf = gcs::deformed_hamiltonian(space, f, omega);
    const Matrix F = gcs::commutator_F(space, f);

    json energies = json::array();
    double closed_form_residual = 0.0;
    for (int n = 0; n < dim; ++n) {
        energies.push_back(hf(n, n).real());
        if (n < dim - 1) {
            const double expected =
                0.5 * omega * (f(n + 1) * f(n + 1) * (n + 1) + (n > 0 ? f(n) * f(n) * n : 0.0));
            closed_form_residual = std::max(closed_form_residual, std::abs(hf(n, n).real() - expected));
        }
    }
    json commutator = json::array();
    for (int n = 0; n < dim; ++n) commutator.push_back(F(n, n).real());

    json out{{"command", "f-oscillator-report"},
             {"dim", dim},
             {"f", f_spec},
             {"omega", omega},
             {"energies", std::move(energies)},
             {"commutator_diag", std::move(commutator)},
             {"closed_form_residual", closed_form_residual},
             {"violations", json::array()}};

    if (f.is_identically_one()) {
        // undeformed limit: compare against the ladder-operator arithmetic
        const Matrix a = gcs::annihilation(space);
        const Matrix href = 0.5 * omega * (a * a.adjoint() + a.adjoint() * a);
        out["undeformed_residual"] = gcs::max_abs(hf - href);
    }
    return {std::move(out), 0};
}

CommandResult run_frame_check(const Params& params, const CLI::Option* family_flag,
                              const std::string& family_val, const CLI::Option* r_flag, double r_val,
                              const CLI::Option* nr_flag, int nr_val, const CLI::Option* nt_flag,
                              int nt_val, const CLI::Option* dim_flag, int dim_val,
                              const CLI::Option* span_flag, double span_val,
                              const CLI::Option* f_flag, const std::string& f_val,
                              const CLI::Option* probe_flag, int probe_val,
                              const CLI::Option* tol_flag, double tol_val) {
    const std::string family_path = params.get<std::string>("family", "", family_flag, family_val);
    const int probe = params.get<int>("probe", 10, probe_flag, probe_val);
    const double tol = params.get<double>("tol", 1e-4, tol_flag, tol_val);

    const gcs::CoherentFamily family = [&] {
        if (!family_path.empty()) return gcs::family_from_json(load_json_file(family_path));
        const double R = params.get<double>("R", 6.0, r_flag, r_val);
        const int n_r = params.get<int>("n_r", 48, nr_flag, nr_val);
        const int n_theta = params.get<int>("n_theta", 96, nt_flag, nt_val);
        const int dim = params.get<int>("dim", 80, dim_flag, dim_val);
        const double span = params.get<double>("theta_span", 2.0 * M_PI, span_flag, span_val);
        const std::string f_spec = params.get<std::string>("f", "", f_flag, f_val);
        if (!f_spec.empty()) {
            const auto f = parse_deformation(f_spec, dim - 1);
            return gcs::weyl_disk_family(gcs::FockSpace{dim}, R, n_r, n_theta, span, &f);
        }
        return gcs::weyl_disk_family(gcs::FockSpace{dim}, R, n_r, n_theta, span);
    }();

    const gcs::FrameReport report = gcs::tightness(family, probe);
    json out = gcs::frame_report_to_json(report);
    out["command"] = "frame-check";
    out["samples"] = family.size();
    out["tol"] = tol;
    json violations = json::array();
    if (report.tightness_deviation > tol) {
        violations.push_back("tightness_deviation " + format_g17(report.tightness_deviation) +
                             " exceeds tol " + format_g17(tol));
    }
    out["violations"] = violations;
    return {std::move(out), violations.empty() ? 0 : 2};
}

CommandResult run_stability(const Params& params, const CLI::Option* dim_flag, int dim_val,
                            const CLI::Option* ts_flag, const std::string& ts_val,
                            const CLI::Option* zs_flag, const std::string& zs_val,
                            const CLI::Option* evo_flag, const std::string& evo_val,
                            const CLI::Option* f_flag, const std::string& f_val,
                            const CLI::Option* omega_flag, double omega_val,
                            const CLI::Option* tol_flag, double tol_val) {
    const int dim = params.get<int>("dim", 60, dim_flag, dim_val);
    const std::string ts_spec = params.get<std::string>("ts", "0.1,1.0", ts_flag, ts_val);
    const std::string zs_spec =
        params.get<std::string>("zs", "0.5+0i;0+1i;1.147+0.966i;0.724-1.864i", zs_flag, zs_val);
    const std::string evolution = params.get<std::string>("evolution", "harmonic", evo_flag, evo_val);
    const std::string f_spec = params.get<std::string>("f", "sqrt", f_flag, f_val);
    const double omega = params.get<double>("omega", 1.0, omega_flag, omega_val);
    const double tol = params.get<double>("tol", -1.0, tol_flag, tol_val);

    if (evolution != "harmonic" && evolution != "deformed") {
        throw std::invalid_argument("stability: evolution must be 'harmonic' or 'deformed'");
    }
    const gcs::FockSpace space{dim};

    std::vector<Complex> base;
    for (const std::string& tok : split(zs_spec, ';')) base.push_back(gcs::parse_complex_pair(tok));
    if (base.empty()) throw std::invalid_argument("stability: no probe points");

    std::vector<double> ts;
    for (const std::string& tok : split(ts_spec, ',')) ts.push_back(std::stod(tok));
    if (ts.empty()) throw std::invalid_argument("stability: no time points");

    // diagonal Hamiltonian of the requested flow
    Vector energies(dim);
    if (evolution == "harmonic") {
        for (int n = 0; n < dim; ++n) energies(n) = omega * n + 0.5;
    } else {
        const auto f = parse_deformation(f_spec, dim - 1);
        const Matrix hf = gcs::deformed_hamiltonian(space, f, omega);
        for (int n = 0; n < dim; ++n) energies(n) = hf(n, n).real();
    }

    json rows = json::array();
    json violations = json::array();
    for (double t : ts) {
        std::vector<std::pair<std::string, Complex>> points;
        std::unordered_map<std::string, std::string> relabel;
        for (std::size_t k = 0; k < base.size(); ++k) {
            const std::string label = "z" + std::to_string(k);
            points.emplace_back(label, base[k]);
            points.emplace_back(label + "_t", std::exp(Complex(0.0, -omega * t)) * base[k]);
            relabel[label] = label + "_t";
        }
        const gcs::CoherentFamily family = gcs::weyl_point_family(space, points);
        Vector phases(dim);
        for (int n = 0; n < dim; ++n) phases(n) = std::exp(Complex(0.0, -t * energies(n).real()));
        const Matrix u_t = phases.asDiagonal();
        const double residual = gcs::stability_check(family, u_t, relabel);
        rows.push_back({{"t", t}, {"max_residual", residual}});
        if (tol >= 0.0 && residual > tol) {
            violations.push_back("max_residual " + format_g17(residual) + " at t " + format_g17(t) +
                                 " exceeds tol " + format_g17(tol));
        }
    }

    json out{{"command", "stability"},
             {"dim", dim},
             {"evolution", evolution},
             {"omega", omega},
             {"rows", std::move(rows)},
             {"violations", violations}};
    if (evolution == "deformed") out["f"] = f_spec;
    return {std::move(out), violations.empty() ? 0 : 2};
}

CommandResult run_algebra(const Params& params, const CLI::Option* action_flag,
                          const std::string& action_val, const CLI::Option* lhs_flag,
                          const std::string& lhs_val, const CLI::Option* rhs_flag,
                          const std::string& rhs_val, const CLI::Option* in_flag,
                          const std::string& in_val, const CLI::Option* rep_flag,
                          const std::string& rep_val) {
    const std::string action = params.get<std::string>("action", "", action_flag, action_val);
    if (action == "convolve") {
        const std::string lhs_path = params.get<std::string>("lhs", "", lhs_flag, lhs_val);
        const std::string rhs_path = params.get<std::string>("rhs", "", rhs_flag, rhs_val);
        if (lhs_path.empty() || rhs_path.empty()) {
            throw std::invalid_argument("algebra convolve: --lhs and --rhs element files required");
        }
        const auto lhs = gcs::algebra_from_json(load_json_file(lhs_path));
        const auto rhs = gcs::algebra_from_json(load_json_file(rhs_path));
        if (!gcs::same_tables(*lhs.groupoid(), *rhs.groupoid())) {
            throw std::invalid_argument("algebra convolve: elements live on different groupoids");
        }
        // rebind onto one groupoid instance so the convolution sees one table
        const gcs::AlgebraElement rebased(lhs.groupoid(), rhs.coeffs());
        json out = gcs::algebra_to_json(gcs::convolve(lhs, rebased).pruned());
        out["command"] = "algebra";
        out["action"] = "convolve";
        out["violations"] = json::array();
        return {std::move(out), 0};
    }
    const std::string in_path = params.get<std::string>("in", "", in_flag, in_val);
    if (in_path.empty()) throw std::invalid_argument("algebra: --in element file required");
    const auto element = gcs::algebra_from_json(load_json_file(in_path));
    if (action == "norm") {
        json out{{"command", "algebra"},
                 {"action", "norm"},
                 {"norm", gcs::cstar_norm(element)},
                 {"violations", json::array()}};
        return {std::move(out), 0};
    }
    if (action == "rep") {
        const std::string kind = params.get<std::string>("rep_kind", "fundamental", rep_flag, rep_val);
        Matrix m;
        if (kind == "fundamental") {
            m = gcs::fundamental_rep(element);
        } else if (kind == "regular") {
            m = gcs::left_regular_rep(element);
        } else {
            throw std::invalid_argument("algebra rep: rep_kind must be 'fundamental' or 'regular'");
        }
        json out{{"command", "algebra"},
                 {"action", "rep"},
                 {"rep_kind", kind},
                 {"matrix", gcs::matrix_to_json(m)},
                 {"violations", json::array()}};
        return {std::move(out), 0};
    }
    throw std::invalid_argument("algebra: action must be convolve, norm, or rep");
}

// ---------------------------------------------------------------------------
// plot tables
// ---------------------------------------------------------------------------

std::vector<TableColumn> plot_table(const json& report) {
    const std::string command = report.value("command", "");
    std::vector<TableColumn> table;
    if (command == "resolution") {
        TableColumn n{"n", {}}, diag{"diag", {}}, dev{"abs_deviation", {}};
        const auto& d = report.at("diag");
        for (std::size_t i = 0; i < d.size(); ++i) {
            n.values.push_back(static_cast<double>(i));
            diag.values.push_back(d[i].get<double>());
            dev.values.push_back(std::abs(d[i].get<double>() - 1.0));
        }
        table = {std::move(n), std::move(diag), std::move(dev)};
    } else if (command == "f-oscillator-report") {
        TableColumn n{"n", {}}, e{"energy", {}}, c{"commutator", {}};
        const auto& energies = report.at("energies");
        const auto& comm = report.at("commutator_diag");
        for (std::size_t i = 0; i < energies.size(); ++i) {
            n.values.push_back(static_cast<double>(i));
            e.values.push_back(energies[i].get<double>());
            c.values.push_back(comm[i].get<double>());
        }
        table = {std::move(n), std::move(e), std::move(c)};
    } else if (command == "stability") {
        TableColumn t{"t", {}}, r{"max_residual", {}};
        for (const auto& row : report.at("rows")) {
            t.values.push_back(row.at("t").get<double>());
            r.values.push_back(row.at("max_residual").get<double>());
        }
        table = {std::move(t), std::move(r)};
    } else if (command == "frame-check") {
        TableColumn n{"n", {}}, diag{"diag", {}};
        const auto& d = report.at("diag");
        for (std::size_t i = 0; i < d.size(); ++i) {
            n.values.push_back(static_cast<double>(i));
            diag.values.push_back(d[i].get<double>());
        }
        table = {std::move(n), std::move(diag)};
    } else if (command == "oscillator-report") {
        TableColumn z{"abs_z", {}}, eig{"eigen_residual", {}}, ser{"series_distance", {}};
        for (const auto& row : report.at("coherent")) {
            z.values.push_back(row.at("abs_z").get<double>());
            eig.values.push_back(row.at("eigen_residual").get<double>());
            ser.values.push_back(row.at("series_distance").get<double>());
        }
        table = {std::move(z), std::move(eig), std::move(ser)};
    } else {
        throw std::invalid_argument("command '" + command + "' has no csv table; use json");
    }
    return table;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"groupoid coherent-state toolkit"};
    app.require_subcommand(0, 1);

    std::string config_path, out_path, format, columns;
    double tol = 0.0;
    int seed = 0;
    app.add_option("--config", config_path, "json experiment config")->expected(1);

    // per-subcommand flags; config supplies defaults, flags override
    struct {
        int pairs = 4;
        std::string union_spec, file;
        CLI::Option *pairs_opt, *union_opt, *file_opt;
    } gv;
    struct {
        int pairs = 6, trials = 100;
        CLI::Option *pairs_opt, *trials_opt;
    } ac;
    struct {
        std::string action, lhs, rhs, in, rep_kind = "fundamental";
        CLI::Option *action_opt, *lhs_opt, *rhs_opt, *in_opt, *rep_opt;
    } al;
    struct {
        int dim = 40;
        CLI::Option* dim_opt;
    } osc;
    struct {
        double R = 6.0;
        int nr = 200, ntheta = 256, dim = 80, probe = 11;
        CLI::Option *R_opt, *nr_opt, *ntheta_opt, *dim_opt, *probe_opt;
    } res;
    struct {
        int dim = 40;
        std::string f = "one";
        double omega = 1.0;
        CLI::Option *dim_opt, *f_opt, *omega_opt;
    } fo;
    struct {
        std::string family, f;
        double R = 6.0, span = 2.0 * M_PI;
        int nr = 48, ntheta = 96, dim = 80, probe = 10;
        CLI::Option *family_opt, *f_opt, *R_opt, *span_opt, *nr_opt, *ntheta_opt, *dim_opt, *probe_opt;
    } fc;
    struct {
        int dim = 60;
        std::string ts = "0.1,1.0", zs, evolution = "harmonic", f = "sqrt";
        double omega = 1.0;
        CLI::Option *dim_opt, *ts_opt, *zs_opt, *evo_opt, *f_opt, *omega_opt;
    } st;

    CLI::Option* tol_opt = app.add_option("--tol", tol, "tolerance gate for exit code 2");
    CLI::Option* seed_opt = app.add_option("--seed", seed, "seed for randomized checks");
    app.add_option("--out", out_path, "write the report to this file");
    app.add_option("--format", format, "json (default) or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--columns", columns, "csv column subset, comma separated");

    CLI::App* cmd_gv = app.add_subcommand("groupoid-verify", "check the groupoid axioms exhaustively");
    cmd_gv->fallthrough();
    gv.pairs_opt = cmd_gv->add_option("--pairs", gv.pairs, "pair groupoid on this many objects");
    gv.union_opt = cmd_gv->add_option("--union", gv.union_spec, "disjoint union of pair groupoids, e.g. 2,3");
    gv.file_opt = cmd_gv->add_option("--file", gv.file, "groupoid json file");

    CLI::App* cmd_ac = app.add_subcommand("algebra-check", "representation and C*-identity residuals");
    cmd_ac->fallthrough();
    ac.pairs_opt = cmd_ac->add_option("--pairs", ac.pairs, "pair groupoid size");
    ac.trials_opt = cmd_ac->add_option("--trials", ac.trials, "random element pairs");

    CLI::App* cmd_al = app.add_subcommand("algebra", "convolve elements, norms, representation matrices");
    cmd_al->fallthrough();
    al.action_opt = cmd_al->add_option("--action", al.action, "convolve | norm | rep");
    al.lhs_opt = cmd_al->add_option("--lhs", al.lhs, "left element json file (convolve)");
    al.rhs_opt = cmd_al->add_option("--rhs", al.rhs, "right element json file (convolve)");
    al.in_opt = cmd_al->add_option("--in", al.in, "element json file (norm, rep)");
    al.rep_opt = cmd_al->add_option("--rep-kind", al.rep_kind, "fundamental | regular");

    CLI::App* cmd_osc = app.add_subcommand("oscillator-report", "ladder, coherent-state, and phase diagnostics");
    cmd_osc->fallthrough();
    osc.dim_opt = cmd_osc->add_option("--dim", osc.dim, "Fock dimension");

    CLI::App* cmd_res = app.add_subcommand("resolution", "coherent-state resolution of identity");
    cmd_res->fallthrough();
    res.R_opt = cmd_res->add_option("--R", res.R, "disk radius");
    res.nr_opt = cmd_res->add_option("--nr", res.nr, "radial nodes");
    res.ntheta_opt = cmd_res->add_option("--ntheta", res.ntheta, "angular nodes");
    res.dim_opt = cmd_res->add_option("--dim", res.dim, "Fock dimension");
    res.probe_opt = cmd_res->add_option("--probe", res.probe, "probe block dimension");

    CLI::App* cmd_fo = app.add_subcommand("f-oscillator-report", "deformed oscillator spectra");
    cmd_fo->fallthrough();
    fo.dim_opt = cmd_fo->add_option("--dim", fo.dim, "Fock dimension");
    fo.f_opt = cmd_fo->add_option("--f", fo.f, "one | sqrt | inv_sqrt | [values...]");
    fo.omega_opt = cmd_fo->add_option("--omega", fo.omega, "frequency");

    CLI::App* cmd_fc = app.add_subcommand("frame-check", "frame operator tightness of a coherent family");
    cmd_fc->fallthrough();
    fc.family_opt = cmd_fc->add_option("--family", fc.family, "family json file");
    fc.R_opt = cmd_fc->add_option("--R", fc.R, "disk radius");
    fc.nr_opt = cmd_fc->add_option("--nr", fc.nr, "radial nodes");
    fc.ntheta_opt = cmd_fc->add_option("--ntheta", fc.ntheta, "angular nodes");
    fc.dim_opt = cmd_fc->add_option("--dim", fc.dim, "Fock dimension");
    fc.span_opt = cmd_fc->add_option("--theta-span", fc.span, "angular span (default 2 pi)");
    fc.f_opt = cmd_fc->add_option("--f", fc.f, "deformation for a deformed grid");
    fc.probe_opt = cmd_fc->add_option("--probe", fc.probe, "probe block dimension");

    CLI::App* cmd_st = app.add_subcommand("stability", "dynamical stability of a coherent family");
    cmd_st->fallthrough();
    st.dim_opt = cmd_st->add_option("--dim", st.dim, "Fock dimension");
    st.ts_opt = cmd_st->add_option("--ts", st.ts, "time points, comma separated");
    st.zs_opt = cmd_st->add_option("--zs", st.zs, "probe points a+bi, semicolon separated");
    st.evo_opt = cmd_st->add_option("--evolution", st.evolution, "harmonic | deformed");
    st.f_opt = cmd_st->add_option("--f", st.f, "deformation for the deformed flow");
    st.omega_opt = cmd_st->add_option("--omega", st.omega, "frequency");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        Config config;
        if (!config_path.empty()) config = load_config(config_path);

        std::string command;
        if (cmd_gv->parsed()) command = "groupoid-verify";
        else if (cmd_ac->parsed()) command = "algebra-check";
        else if (cmd_osc->parsed()) command = "oscillator-report";
        else if (cmd_res->parsed()) command = "resolution";
        else if (cmd_fo->parsed()) command = "f-oscillator-report";
        else if (cmd_fc->parsed()) command = "frame-check";
        else if (cmd_st->parsed()) command = "stability";
        else if (cmd_al->parsed()) command = "algebra";

        if (command.empty()) command = config.command;
        if (command.empty()) {
            std::cerr << "error: no command given (subcommand or config \"command\")\n";
            return 1;
        }
        if (!config.command.empty() && config.command != command) {
            std::cerr << "error: config command '" << config.command << "' does not match '" << command
                      << "'\n";
            return 1;
        }

        CommandResult result;
        if (command == "groupoid-verify") {
            Params p(config.params, {"pairs", "union", "file"});
            result = run_groupoid_verify(p, gv.pairs_opt, gv.pairs, gv.union_opt, gv.union_spec,
                                         gv.file_opt, gv.file);
        } else if (command == "algebra-check") {
            Params p(config.params, {"pairs", "trials", "seed"});
            result = run_algebra_check(p, ac.pairs_opt, ac.pairs, ac.trials_opt, ac.trials, seed_opt, seed);
        } else if (command == "oscillator-report") {
            Params p(config.params, {"dim"});
            result = run_oscillator_report(p, osc.dim_opt, osc.dim);
        } else if (command == "resolution") {
            Params p(config.params, {"R", "n_r", "n_theta", "dim", "probe", "tol"});
            result = run_resolution(p, res.R_opt, res.R, res.nr_opt, res.nr, res.ntheta_opt, res.ntheta,
                                    res.dim_opt, res.dim, res.probe_opt, res.probe, tol_opt, tol);
        } else if (command == "f-oscillator-report") {
            Params p(config.params, {"dim", "f", "omega"});
            result = run_f_oscillator_report(p, fo.dim_opt, fo.dim, fo.f_opt, fo.f, fo.omega_opt, fo.omega);
        } else if (command == "frame-check") {
            Params p(config.params, {"family", "R", "n_r", "n_theta", "dim", "theta_span", "f", "probe", "tol"});
            result = run_frame_check(p, fc.family_opt, fc.family, fc.R_opt, fc.R, fc.nr_opt, fc.nr,
                                     fc.ntheta_opt, fc.ntheta, fc.dim_opt, fc.dim, fc.span_opt, fc.span,
                                     fc.f_opt, fc.f, fc.probe_opt, fc.probe, tol_opt, tol);
        } else if (command == "stability") {
            Params p(config.params, {"dim", "ts", "zs", "evolution", "f", "omega", "tol"});
            result = run_stability(p, st.dim_opt, st.dim, st.ts_opt, st.ts, st.zs_opt, st.zs, st.evo_opt,
                                   st.evolution, st.f_opt, st.f, st.omega_opt, st.omega, tol_opt, tol);
        } else if (command == "algebra") {
            Params p(config.params, {"action", "lhs", "rhs", "in", "rep_kind"});
            result = run_algebra(p, al.action_opt, al.action, al.lhs_opt, al.lhs, al.rhs_opt, al.rhs,
                                 al.in_opt, al.in, al.rep_opt, al.rep_kind);
        } else {
            std::cerr << "error: unknown command '" << command << "'\n";
            return 1;
        }

        const std::string chosen_format = !format.empty() ? format
                                          : !config.format.empty() ? config.format
                                                                   : std::string("json");
        std::string payload;
        if (chosen_format == "csv") {
            payload = render_csv(plot_table(result.report), columns);
        } else if (chosen_format == "json") {
            payload = result.report.dump(2) + "\n";
        } else {
            std::cerr << "error: unknown format '" << chosen_format << "'\n";
            return 1;
        }

        const std::string chosen_out = !out_path.empty() ? out_path : config.output_path;
        if (!chosen_out.empty()) {
            const auto parent = std::filesystem::path(chosen_out).parent_path();
            if (!parent.empty() && !std::filesystem::is_directory(parent)) {
                std::cerr << "error: output directory '" << parent.string() << "' does not exist\n";
                return 1;
            }
            gcs::write_text_file(chosen_out, payload);
        } else {
            std::cout << payload;
        }
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
