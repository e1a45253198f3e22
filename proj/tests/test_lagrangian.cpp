#include <catch2/catch.hpp>

#include "qdl/lagrangian.hpp"

#include <map>
#include <set>

using namespace qdl;

TEST_CASE("O_3(d) order, closure, and parity split", "[lagrangian]") {
    const std::map<int, int> expected = {{3, 6}, {5, 12}, {7, 12}, {11, 24}, {13, 24}};
    for (const auto& [d, order] : expected) {
        const PrimeField F(d);
        const auto group = enumerate_O3(d);
        CAPTURE(d);
        REQUIRE(static_cast<int>(group.size()) == order);
        int even = 0;
        std::set<std::array<int, 9>> keys;
        auto key = [](const StochIsometry& o) {
            std::array<int, 9> k{};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) k[3 * i + j] = o.m[i][j];
            return k;
        };
        for (const auto& o : group) {
            keys.insert(key(o));
            if (!o.odd) ++even;
            // orthogonality and stochasticity
            for (int i = 0; i < 3; ++i) {
                int row_sum = 0, col_dot = 0;
                for (int j = 0; j < 3; ++j) row_sum = F.add(row_sum, o.m[i][j]);
                REQUIRE(row_sum == 1);
                for (int j = 0; j < 3; ++j) col_dot = F.add(col_dot, F.mul(o.m[j][i], o.m[j][i]));
                REQUIRE(col_dot == 1);
            }
        }
        REQUIRE(static_cast<int>(keys.size()) == order);
        REQUIRE(even * 2 == order);
        // closed under products
        for (std::size_t i = 0; i < group.size(); i += 3)
            for (std::size_t j = 0; j < group.size(); j += 2)
                REQUIRE(keys.count(key(mul(group[i], group[j], F))) == 1);
        // contains S_3 (6 permutation matrices)
        int perms = 0;
        for (const auto& o : group) {
            bool is_perm = true;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (o.m[i][j] != 0 && o.m[i][j] != 1) is_perm = false;
            if (is_perm) ++perms;
        }
        REQUIRE(perms == 6);
    }
}

TEST_CASE("Sigma(d) cardinalities and defect counts", "[lagrangian]") {
    for (int d : {3, 5, 7, 11, 13}) {
        const SigmaCatalog cat(d);
        CAPTURE(d);
        REQUIRE(cat.size() == static_cast<std::size_t>(2 * d + 2));
        REQUIRE(cat.class_indices(0).size() == static_cast<std::size_t>(d + 1));
        REQUIRE(cat.class_indices(1).size() == static_cast<std::size_t>(d + 1));
        REQUIRE(cat.ns_indices().size() == static_cast<std::size_t>(2 * d - 4));
        const int expected_def = (d == 3) ? 2 : (d % 3 == 1 ? 4 : 0);
        REQUIRE(cat.def_indices().size() == static_cast<std::size_t>(expected_def));
        if (d % 3 == 2) REQUIRE(cat.iso_indices().size() == cat.size());
        // basis columns span honestly distinct subspaces
        std::set<std::pair<int, int>> ids;
        for (const auto& t : cat.all()) ids.insert({t.id.y, t.id.cls});
        REQUIRE(ids.size() == cat.size());
        // every subspace contains 1_6 and every generator satisfies the isotropy
        const PrimeField& F = cat.field();
        for (const auto& t : cat.all()) {
            for (int c = 0; c < 3; ++c) {
                std::int64_t xx = 0, yy = 0;
                for (int r = 0; r < 3; ++r) {
                    xx += static_cast<std::int64_t>(t.basis[r][c]) * t.basis[r][c];
                    yy += static_cast<std::int64_t>(t.basis[3 + r][c]) * t.basis[3 + r][c];
                }
                REQUIRE(F.reduce(xx - yy) == 0);
            }
            REQUIRE(cat.recanonicalize(t.basis) == t.id);
        }
    }
}

TEST_CASE("Delta and the tau_23 subspace have the documented ids", "[lagrangian]") {
    for (int d : {3, 5, 7}) {
        const SigmaCatalog cat(d);
        const auto& delta = cat.delta();
        // r(Delta) is the identity <=> every generator has x = y
        for (int c = 0; c < 3; ++c)
            for (int r = 0; r < 3; ++r) REQUIRE(delta.basis[r][c] == delta.basis[3 + r][c]);
        REQUIRE(delta.id.y == d - 1);
        REQUIRE(delta.id.cls == 0);
        const auto& t23 = cat.at(cat.tau23_id());
        REQUIRE(t23.v == Vec3{0, 1, d - 1});
        REQUIRE(t23.sym);
    }
}

TEST_CASE("intersection dimensions follow the class rule", "[lagrangian]") {
    for (int d : {3, 5, 7}) {
        const SigmaCatalog cat(d);
        for (std::size_t i = 0; i < cat.size(); ++i)
            for (std::size_t j = 0; j < cat.size(); ++j) {
                const int dim = cat.intersection_dim(cat[i], cat[j]);
                int expected;
                if (i == j) expected = 3;
                else if (cat[i].id.cls == cat[j].id.cls) expected = 1;
                else expected = 2;
                CAPTURE(d, i, j);
                REQUIRE(dim == expected);
            }
    }
}

TEST_CASE("cubic characters of subspaces", "[lagrangian]") {
    const SigmaCatalog cat7(7);
    const PrimeField& F7 = cat7.field();
    // T_{v_1} at d=7: v = (1,1,-2), cube sum -6 = 1 mod 7, a cubic residue
    const auto& t1 = cat7.at({1, 1});
    REQUIRE(t1.v == Vec3{1, 1, 5});
    REQUIRE(cat7.sigma_cubic_character(t1) == 0);
    // all defect subspaces carry the character of 3
    for (auto i : cat7.def_indices())
        REQUIRE(cat7.sigma_cubic_character(cat7[i]) == F7.index(3));
    // undefined on T_sym
    REQUIRE_THROWS_AS(cat7.sigma_cubic_character(cat7.delta()), std::domain_error);
    // d = 2 mod 3: all zero by convention
    const SigmaCatalog cat5(5);
    for (auto i : cat5.ns_indices()) REQUIRE(cat5.sigma_cubic_character(cat5[i]) == 0);
}

TEST_CASE("mu counts at d=7 and envelope", "[lagrangian]") {
    // the catalog construction itself cross-checks enumeration against the
    // closed form; here the sum rule and envelope
    for (int d : {7, 13, 19, 31}) {
        const SigmaCatalog cat(d);
        const auto mu = cat.mu_counts();
        CAPTURE(d);
        REQUIRE(mu[0] + mu[1] + mu[2] == 2 * (d - 2));
        for (int j = 0; j < 3; ++j) {
            REQUIRE(mu[j] >= 2.0 * (d - 2) / 3 - 4 * std::sqrt(static_cast<double>(d)) / 3);
            REQUIRE(mu[j] <= 2.0 * (d - 2) / 3 + 4 * std::sqrt(static_cast<double>(d)) / 3);
        }
    }
    REQUIRE_THROWS_AS(SigmaCatalog(5).mu_counts(), std::domain_error);
}

TEST_CASE("group actions: even isometries preserve the class, odd ones swap it", "[lagrangian]") {
    for (int d : {3, 5, 7}) {
        const SigmaCatalog cat(d);
        const auto group = enumerate_O3(d);
        for (const auto& o : group) {
            for (const auto& t : cat.all()) {
                const SigmaId left = cat.left_act(o, t);
                const SigmaId right = cat.right_act(t, o);
                const int expect_cls = o.odd ? 1 - t.id.cls : t.id.cls;
                REQUIRE(left.cls == expect_cls);
                REQUIRE(right.cls == expect_cls);
            }
        }
    }
}

TEST_CASE("cubic character is invariant under the permutation actions", "[lagrangian]") {
    for (int d : {7, 13}) {
        const SigmaCatalog cat(d);
        for (const auto& o : enumerate_O3(d)) {
            bool is_perm = true;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (o.m[i][j] != 0 && o.m[i][j] != 1) is_perm = false;
            if (!is_perm) continue;
            for (auto i : cat.ns_indices()) {
                const auto& t = cat[i];
                REQUIRE(cat.at(cat.left_act(o, t)).cubic_exponent == t.cubic_exponent);
                REQUIRE(cat.at(cat.right_act(t, o)).cubic_exponent == t.cubic_exponent);
            }
        }
    }
}

TEST_CASE("two-sided S_3 orbit of a defect subspace covers all of T_def", "[lagrangian]") {
    for (int d : {3, 7, 13}) {
        const SigmaCatalog cat(d);
        const auto def = cat.def_indices();
        if (def.empty()) continue;
        std::vector<StochIsometry> perms;
        for (const auto& o : enumerate_O3(d)) {
            bool is_perm = true;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (o.m[i][j] != 0 && o.m[i][j] != 1) is_perm = false;
            if (is_perm) perms.push_back(o);
        }
        std::set<std::pair<int, int>> reached;
        for (const auto& o1 : perms)
            for (const auto& o2 : perms) {
                const SigmaId mid = cat.left_act(o1, cat[def[0]]);
                const SigmaId id = cat.right_act(cat.at(mid), o2);
                reached.insert({id.y, id.cls});
            }
        REQUIRE(reached.size() == def.size());
        for (auto i : def) REQUIRE(reached.count({cat[i].id.y, cat[i].id.cls}) == 1);
    }
}

TEST_CASE("nonzero vectors of T in T_ns have at most three zero entries", "[lagrangian]") {
    for (int d : {5, 7}) {
        const SigmaCatalog cat(d);
        for (auto i : cat.ns_indices()) {
            const auto& t = cat[i];
            int max_zeros = 0;
            cat.for_each_vector(t, [&](const std::array<int, 6>& w) {
                int zeros = 0, nonzeros = 0;
                for (int r = 0; r < 6; ++r) (w[r] == 0 ? zeros : nonzeros)++;
                if (nonzeros > 0) max_zeros = std::max(max_zeros, zeros);
            });
            if (t.defect) REQUIRE(max_zeros <= 3);
            else REQUIRE(max_zeros <= 2);
        }
    }
}

TEST_CASE("d=3 defect subspaces match the explicit generators", "[lagrangian]") {
    const SigmaCatalog cat(3);
    // explicit generating matrices of the two defect subspaces
    const std::array<std::array<int, 3>, 6> t0 = {{{1, 0, 1}, {2, 0, 1}, {0, 0, 1}, {1, 1, 0}, {2, 1, 0}, {0, 1, 0}}};
    const std::array<std::array<int, 3>, 6> t1 = {{{1, 0, 1}, {2, 0, 1}, {0, 0, 1}, {2, 1, 0}, {1, 1, 0}, {0, 1, 0}}};
    const SigmaId id0 = cat.recanonicalize(t0);
    const SigmaId id1 = cat.recanonicalize(t1);
    REQUIRE(cat.at(id0).defect);
    REQUIRE(cat.at(id1).defect);
    REQUIRE(id0 != id1);
    // the catalog's T_0-class defect subspace is tilde-T_1, the T_1-class one tilde-T_0
    REQUIRE(id0.cls == 1);
    REQUIRE(id1.cls == 0);
}
