// groupoid.hpp — Finite groupoids stored extensionally: a morphism list with
// source/target maps and an explicit partial composition table. Composition
// follows the backwards convention: compose(beta, alpha) = beta∘alpha, defined
// exactly when target(alpha) == source(beta).

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <tuple>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace gcs {

struct Morphism {
    int id = 0;
    int source = 0;
    int target = 0;

    friend bool operator==(const Morphism&, const Morphism&) = default;
};

struct AxiomCheck {
    std::string name;
    bool pass = true;
    std::string witness;   // first counterexample, empty when the axiom holds
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    bool all_pass = true;

    const AxiomCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

class FiniteGroupoid {
public:
    // Tables are taken as-is apart from index-range validation, so structurally
    // well-formed but axiom-violating tables are constructible and can be
    // diagnosed by verify_axioms.
    FiniteGroupoid(int object_count,
                   std::vector<Morphism> morphisms,
                   std::vector<std::array<int, 3>> composition,  // {beta, alpha, beta∘alpha}
                   std::vector<int> unit_of,
                   std::vector<int> inverse_of)
        : object_count_(object_count),
          morphisms_(std::move(morphisms)),
          unit_of_(std::move(unit_of)),
          inverse_of_(std::move(inverse_of)) {
        if (object_count_ < 1) {
            throw std::invalid_argument("FiniteGroupoid: at least one object required");
        }
        const int m = static_cast<int>(morphisms_.size());
        for (int i = 0; i < m; ++i) {
            const Morphism& a = morphisms_[i];
            if (a.id != i) throw std::invalid_argument("FiniteGroupoid: morphism ids must be dense 0..|G|-1");
            if (a.source < 0 || a.source >= object_count_ || a.target < 0 || a.target >= object_count_) {
                throw std::invalid_argument("FiniteGroupoid: morphism endpoint out of range");
            }
        }
        if (static_cast<int>(unit_of_.size()) != object_count_) {
            throw std::invalid_argument("FiniteGroupoid: unit table size must equal object count");
        }
        if (static_cast<int>(inverse_of_.size()) != m) {
            throw std::invalid_argument("FiniteGroupoid: inverse table size must equal morphism count");
        }
        for (int u : unit_of_)
            if (u < 0 || u >= m) throw std::invalid_argument("FiniteGroupoid: unit id out of range");
        for (int v : inverse_of_)
            if (v < 0 || v >= m) throw std::invalid_argument("FiniteGroupoid: inverse id out of range");
        compose_.reserve(composition.size());
        for (const auto& e : composition) {
            if (e[0] < 0 || e[0] >= m || e[1] < 0 || e[1] >= m || e[2] < 0 || e[2] >= m) {
                throw std::invalid_argument("FiniteGroupoid: composition entry out of range");
            }
            compose_[key(e[0], e[1])] = e[2];
        }
    }

    // Groupoid of pairs on n objects: morphism (j,k) : k -> j with id j*n+k,
    // (n,m)∘(m,k) = (n,k), unit (k,k), inverse (j,k)^-1 = (k,j).
    static FiniteGroupoid pair_groupoid(int n) {
        if (n < 1) throw std::invalid_argument("pair_groupoid: empty groupoid (n must be >= 1)");
        std::vector<Morphism> ms;
        ms.reserve(static_cast<std::size_t>(n) * n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                ms.push_back({j * n + k, k, j});
        std::vector<std::array<int, 3>> comp;
        comp.reserve(static_cast<std::size_t>(n) * n * n);
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m)
                for (int k = 0; k < n; ++k)
                    comp.push_back({j * n + m, m * n + k, j * n + k});
        std::vector<int> units(n), invs(static_cast<std::size_t>(n) * n);
        for (int k = 0; k < n; ++k) units[k] = k * n + k;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                invs[j * n + k] = k * n + j;
        return FiniteGroupoid(n, std::move(ms), std::move(comp), std::move(units), std::move(invs));
    }

    int object_count() const { return object_count_; }
    int morphism_count() const { return static_cast<int>(morphisms_.size()); }

    const Morphism& morphism(int id) const {
        check_morphism(id);
        return morphisms_[id];
    }
    const std::vector<Morphism>& morphisms() const { return morphisms_; }

    int source(int id) const { return morphism(id).source; }
    int target(int id) const { return morphism(id).target; }

    int unit_of(int object) const {
        if (object < 0 || object >= object_count_) {
            throw std::invalid_argument("FiniteGroupoid::unit_of: object out of range");
        }
        return unit_of_[object];
    }
    int inverse_of(int id) const {
        check_morphism(id);
        return inverse_of_[id];
    }

    // beta∘alpha, or nullopt when the pair is not composable (the "∅" outcome).
    std::optional<int> compose_ids(int beta, int alpha) const {
        check_morphism(beta);
        check_morphism(alpha);
        const auto it = compose_.find(key(beta, alpha));
        if (it == compose_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<Morphism> compose(const Morphism& beta, const Morphism& alpha) const {
        const auto c = compose_ids(beta.id, alpha.id);
        if (!c) return std::nullopt;
        return morphisms_[*c];
    }

    bool composition_defined(int beta, int alpha) const {
        return compose_.find(key(beta, alpha)) != compose_.end();
    }

    // Raw tables, mainly for serialization; the composition list is sorted by
    // (beta, alpha) so identical groupoids serialize identically.
    std::vector<std::array<int, 3>> composition_table() const {
        std::vector<std::array<int, 3>> out;
        out.reserve(compose_.size());
        for (const auto& [k, c] : compose_) {
            out.push_back({static_cast<int>(k / morphisms_.size()),
                           static_cast<int>(k % morphisms_.size()), c});
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    const std::vector<int>& unit_table() const { return unit_of_; }
    const std::vector<int>& inverse_table() const { return inverse_of_; }

private:
    std::uint64_t key(int beta, int alpha) const {
        return static_cast<std::uint64_t>(beta) * morphisms_.size() + static_cast<std::uint64_t>(alpha);
    }
    void check_morphism(int id) const {
        if (id < 0 || id >= static_cast<int>(morphisms_.size())) {
            throw std::invalid_argument("FiniteGroupoid: morphism id out of range");
        }
    }

    int object_count_;
    std::vector<Morphism> morphisms_;
    std::unordered_map<std::uint64_t, int> compose_;
    std::vector<int> unit_of_;
    std::vector<int> inverse_of_;
};

// ---------------------------------------------------------------------------
// Axiom verification
// ---------------------------------------------------------------------------

namespace detail {
inline std::string morphism_str(const FiniteGroupoid& g, int id) {
    const Morphism& m = g.morphism(id);
    return "#" + std::to_string(id) + "(" + std::to_string(m.source) + "->" + std::to_string(m.target) + ")";
}
}  // namespace detail

// Exhaustive check of the groupoid axioms. Loops run in id order, so the first
// counterexample reported is deterministic.
inline AxiomReport verify_axioms(const FiniteGroupoid& g) {
    AxiomReport report;
    const int n = g.morphism_count();

    auto add = [&](std::string name, bool pass, std::string witness) {
        report.all_pass = report.all_pass && pass;
        report.checks.push_back({std::move(name), pass, std::move(witness)});
    };

    // composition defined iff target(alpha) == source(beta)
    {
        bool pass = true;
        std::string witness;
        for (int b = 0; b < n && pass; ++b) {
            for (int a = 0; a < n && pass; ++a) {
                const bool should = g.target(a) == g.source(b);
                if (g.composition_defined(b, a) != should) {
                    pass = false;
                    witness = "pair beta=" + detail::morphism_str(g, b) + " alpha=" + detail::morphism_str(g, a) +
                              (should ? " missing" : " spurious");
                }
            }
        }
        add("composability-domain", pass, witness);
    }

    // endpoints of composites: beta∘alpha : source(alpha) -> target(beta)
    {
        bool pass = true;
        std::string witness;
        for (int b = 0; b < n && pass; ++b) {
            for (int a = 0; a < n && pass; ++a) {
                const auto c = g.compose_ids(b, a);
                if (c && (g.source(*c) != g.source(a) || g.target(*c) != g.target(b))) {
                    pass = false;
                    witness = "beta=" + detail::morphism_str(g, b) + " alpha=" + detail::morphism_str(g, a) +
                              " composite=" + detail::morphism_str(g, *c);
                }
            }
        }
        add("composite-endpoints", pass, witness);
    }

    // associativity over all composable triples
    {
        bool pass = true;
        std::string witness;
        for (int c = 0; c < n && pass; ++c) {
            for (int b = 0; b < n && pass; ++b) {
                const auto cb = g.compose_ids(c, b);
                if (!cb) continue;
                for (int a = 0; a < n && pass; ++a) {
                    const auto ba = g.compose_ids(b, a);
                    if (!ba) continue;
                    const auto lhs = g.compose_ids(*cb, a);
                    const auto rhs = g.compose_ids(c, *ba);
                    if (!lhs || !rhs || *lhs != *rhs) {
                        pass = false;
                        witness = "triple gamma=" + detail::morphism_str(g, c) + " beta=" + detail::morphism_str(g, b) +
                                  " alpha=" + detail::morphism_str(g, a);
                    }
                }
            }
        }
        add("associativity", pass, witness);
    }

    // unit endpoints: s(1_x) = t(1_x) = x
    {
        bool pass = true;
        std::string witness;
        for (int x = 0; x < g.object_count() && pass; ++x) {
            const Morphism& u = g.morphism(g.unit_of(x));
            if (u.source != x || u.target != x) {
                pass = false;
                witness = "object " + std::to_string(x) + " unit " + detail::morphism_str(g, u.id);
            }
        }
        add("unit-endpoints", pass, witness);
    }

    // unit laws: 1_{t(alpha)}∘alpha = alpha and alpha∘1_{s(alpha)} = alpha
    {
        bool pass = true;
        std::string witness;
        for (int a = 0; a < n && pass; ++a) {
            const auto left = g.compose_ids(g.unit_of(g.target(a)), a);
            const auto right = g.compose_ids(a, g.unit_of(g.source(a)));
            if (!left || *left != a || !right || *right != a) {
                pass = false;
                witness = "alpha=" + detail::morphism_str(g, a);
            }
        }
        add("unit-laws", pass, witness);
    }

    // inverse laws: alpha^-1∘alpha = 1_{s(alpha)}, alpha∘alpha^-1 = 1_{t(alpha)}
    {
        bool pass = true;
        std::string witness;
        for (int a = 0; a < n && pass; ++a) {
            const int inv = g.inverse_of(a);
            const auto l = g.compose_ids(inv, a);
            const auto r = g.compose_ids(a, inv);
            if (!l || *l != g.unit_of(g.source(a)) || !r || *r != g.unit_of(g.target(a))) {
                pass = false;
                witness = "alpha=" + detail::morphism_str(g, a);
            }
        }
        add("inverse-laws", pass, witness);
    }

    return report;
}

// ---------------------------------------------------------------------------
// Orbits, isotropy, coproducts, components
// ---------------------------------------------------------------------------

// Partition of the objects into orbits; y lies in the orbit of x iff some
// morphism x -> y exists. Orbits are listed by ascending smallest member and
// each orbit's objects ascend.
inline std::vector<std::vector<int>> orbits(const FiniteGroupoid& g) {
    const int n = g.object_count();
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Morphism& m : g.morphisms()) {
        const int a = find(m.source), b = find(m.target);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::vector<int>> out;
    std::vector<int> slot(n, -1);
    for (int x = 0; x < n; ++x) {
        const int root = find(x);
        if (slot[root] < 0) {
            slot[root] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[root]].push_back(x);
    }
    return out;
}

// All morphisms x -> x, checked to contain 1_x and to be closed under
// composition and inverse (a corrupt table fails loudly).
inline std::vector<Morphism> isotropy_group(const FiniteGroupoid& g, int x) {
    if (x < 0 || x >= g.object_count()) {
        throw std::invalid_argument("isotropy_group: object out of range");
    }
    std::vector<Morphism> group;
    std::vector<char> member(g.morphism_count(), 0);
    for (const Morphism& m : g.morphisms()) {
        if (m.source == x && m.target == x) {
            group.push_back(m);
            member[m.id] = 1;
        }
    }
    if (!member[g.unit_of(x)]) {
        throw std::runtime_error("isotropy_group: unit missing at object " + std::to_string(x));
    }
    for (const Morphism& a : group) {
        if (!member[g.inverse_of(a.id)]) {
            throw std::runtime_error("isotropy_group: not closed under inverse");
        }
        for (const Morphism& b : group) {
            const auto c = g.compose_ids(b.id, a.id);
            if (!c || !member[*c]) {
                throw std::runtime_error("isotropy_group: not closed under composition");
            }
        }
    }
    return group;
}

// Coproduct: objects and morphisms of g2 are shifted past those of g1;
// no cross compositions exist.
inline FiniteGroupoid disjoint_union(const FiniteGroupoid& g1, const FiniteGroupoid& g2) {
    const int obj_shift = g1.object_count();
    const int mor_shift = g1.morphism_count();

    std::vector<Morphism> ms = g1.morphisms();
    ms.reserve(ms.size() + g2.morphisms().size());
    for (const Morphism& m : g2.morphisms()) {
        ms.push_back({m.id + mor_shift, m.source + obj_shift, m.target + obj_shift});
    }

    std::vector<std::array<int, 3>> comp = g1.composition_table();
    for (const auto& e : g2.composition_table()) {
        comp.push_back({e[0] + mor_shift, e[1] + mor_shift, e[2] + mor_shift});
    }

    std::vector<int> units = g1.unit_table();
    for (int u : g2.unit_table()) units.push_back(u + mor_shift);
    std::vector<int> invs = g1.inverse_table();
    for (int v : g2.inverse_table()) invs.push_back(v + mor_shift);

    return FiniteGroupoid(obj_shift + g2.object_count(), std::move(ms), std::move(comp),
                          std::move(units), std::move(invs));
}

// Restriction of g to one orbit, objects and morphisms relabeled densely in
// ascending original order.
inline FiniteGroupoid restrict_to_objects(const FiniteGroupoid& g, const std::vector<int>& objects) {
    std::vector<int> obj_new(g.object_count(), -1);
    for (std::size_t i = 0; i < objects.size(); ++i) obj_new[objects[i]] = static_cast<int>(i);

    std::vector<int> mor_new(g.morphism_count(), -1);
    std::vector<Morphism> ms;
    for (const Morphism& m : g.morphisms()) {
        if (obj_new[m.source] >= 0 && obj_new[m.target] >= 0) {
            mor_new[m.id] = static_cast<int>(ms.size());
            ms.push_back({mor_new[m.id], obj_new[m.source], obj_new[m.target]});
        }
    }

    std::vector<std::array<int, 3>> comp;
    for (const auto& e : g.composition_table()) {
        if (mor_new[e[0]] >= 0 && mor_new[e[1]] >= 0 && mor_new[e[2]] >= 0) {
            comp.push_back({mor_new[e[0]], mor_new[e[1]], mor_new[e[2]]});
        }
    }
    std::vector<int> units;
    units.reserve(objects.size());
    for (int x : objects) units.push_back(mor_new[g.unit_of(x)]);
    std::vector<int> invs(ms.size());
    for (const Morphism& m : g.morphisms()) {
        if (mor_new[m.id] >= 0) invs[mor_new[m.id]] = mor_new[g.inverse_of(m.id)];
    }
    return FiniteGroupoid(static_cast<int>(objects.size()), std::move(ms), std::move(comp),
                          std::move(units), std::move(invs));
}

inline std::vector<FiniteGroupoid> connected_components(const FiniteGroupoid& g) {
    std::vector<FiniteGroupoid> out;
    for (const auto& orbit : orbits(g)) out.push_back(restrict_to_objects(g, orbit));
    return out;
}

// Canonical relabeling: objects ordered orbit-major (orbits by smallest member,
// members ascending), morphisms sorted by (source, target, id) in the new
// labels. Two groupoids built from the same components in the same relative
// order canonicalize to equal tables.
inline FiniteGroupoid canonicalized(const FiniteGroupoid& g) {
    std::vector<int> obj_order;
    for (const auto& orbit : orbits(g))
        for (int x : orbit) obj_order.push_back(x);
    std::vector<int> obj_new(g.object_count());
    for (std::size_t i = 0; i < obj_order.size(); ++i) obj_new[obj_order[i]] = static_cast<int>(i);

    std::vector<int> mor_order(g.morphism_count());
    for (int i = 0; i < g.morphism_count(); ++i) mor_order[i] = i;
    std::sort(mor_order.begin(), mor_order.end(), [&](int a, int b) {
        const Morphism &ma = g.morphism(a), &mb = g.morphism(b);
        return std::tuple(obj_new[ma.source], obj_new[ma.target], a) <
               std::tuple(obj_new[mb.source], obj_new[mb.target], b);
    });
    std::vector<int> mor_new(g.morphism_count());
    for (std::size_t i = 0; i < mor_order.size(); ++i) mor_new[mor_order[i]] = static_cast<int>(i);

    std::vector<Morphism> ms(g.morphism_count());
    for (const Morphism& m : g.morphisms()) {
        ms[mor_new[m.id]] = {mor_new[m.id], obj_new[m.source], obj_new[m.target]};
    }
    std::vector<std::array<int, 3>> comp;
    for (const auto& e : g.composition_table()) {
        comp.push_back({mor_new[e[0]], mor_new[e[1]], mor_new[e[2]]});
    }
    std::vector<int> units(g.object_count());
    for (int x = 0; x < g.object_count(); ++x) units[obj_new[x]] = mor_new[g.unit_of(x)];
    std::vector<int> invs(g.morphism_count());
    for (int a = 0; a < g.morphism_count(); ++a) invs[mor_new[a]] = mor_new[g.inverse_of(a)];

    return FiniteGroupoid(g.object_count(), std::move(ms), std::move(comp), std::move(units),
                          std::move(invs));
}

// Table-level equality (after canonicalization this is the isomorphism check
// used by the tests).
inline bool same_tables(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    return a.object_count() == b.object_count() && a.morphisms() == b.morphisms() &&
           a.composition_table() == b.composition_table() && a.unit_table() == b.unit_table() &&
           a.inverse_table() == b.inverse_table();
}

}  // namespace gcs
