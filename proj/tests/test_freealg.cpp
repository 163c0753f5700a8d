#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ua/freealg.hpp"

using namespace ua;

TEST_CASE("S(uCom, F(1)) dimensions are binary partitions") {
    auto P = com_operad(true, 16);
    UnstableModule f1 = free_module(1, 16);
    FreeAlgebra A(P, f1, 16);
    CHECK(A.dim(0) == 1);  // the unit
    for (int d = 1; d <= 16; ++d)
        CHECK(A.dim(d) == oracles::binary_partitions(d));
}

TEST_CASE("S(P, 0) is the unit part only") {
    auto P = com_operad(true, 8);
    UnstableModule z = zero_module(8);
    FreeAlgebra A(P, z, 8);
    CHECK(A.dim(0) == 1);
    for (int d = 1; d <= 8; ++d)
        CHECK(A.dim(d) == 0);
}

TEST_CASE("S(Lev, Sigma F(0)) dimensions follow the dyadic multiset oracle") {
    auto P = lev_operad(10);
    UnstableModule sf0 = suspend(free_module(0, 9));
    FreeAlgebra A(P, sf0, 10);
    std::vector<int> low;
    for (int d = 1; d <= 5; ++d)
        low.push_back(A.dim(d));
    CHECK(low == std::vector<int>{1, 1, 1, 2, 3});
    for (int d = 1; d <= 10; ++d)
        CHECK(A.dim(d) == oracles::dyadic_multisets(d));
}

TEST_CASE("non-connected module without a unital operad is rejected") {
    auto P = com_operad(false, 6);
    UnstableModule f0 = free_module(0, 6);
    CHECK_THROWS_AS(FreeAlgebra(P, f0, 6), error);
}

TEST_CASE("cartan: Sq^0, the top square and instability") {
    auto P = com_operad(true, 12);
    UnstableModule f1 = free_module(1, 12);
    FreeAlgebra A(P, f1, 12);
    for (int d = 1; d <= 6; ++d) {
        for (int i = 0; i < A.dim(d); ++i) {
            F2Vec u = F2Vec::unit(uint32_t(i));
            CHECK(A.sq(0, d, u) == u);
            if (2 * d <= 12) {
                // Sq_0(mu; x_1..x_k) = (mu; Sq_0 x_1, .., Sq_0 x_k)
                const Monomial& m = A.mono(d, uint32_t(i));
                OpToken tok = m.op;
                std::vector<uint32_t> lbl;
                bool total = true;
                for (uint32_t l : m.labels) {
                    F2Vec top = f1.sq0(label_degree(l), F2Vec::unit(label_index(l)));
                    if (top.weight() != 1) {
                        total = false;
                        break;
                    }
                    lbl.push_back(label_key(2 * label_degree(l), top.s[0]));
                }
                REQUIRE(total);  // F(1) tokens have monomial top squares
                P->canonicalize(tok, lbl);
                auto idx = A.index_of(2 * d, Monomial{tok, lbl});
                REQUIRE(idx.has_value());
                CHECK(A.sq0(d, u) == F2Vec::unit(*idx));
            }
            if (d + d + 1 <= 12)
                CHECK(A.sq(d + 1, d, u).zero());  // instability
        }
    }
}

TEST_CASE("adem compatibility of the cartan action (sampled)") {
    auto P = lev_operad(9);
    UnstableModule f1 = free_module(1, 9);
    FreeAlgebra A(P, f1, 9);
    for (int j = 1; j <= 4; ++j) {
        for (int i = 1; i < 2 * j; ++i) {
            SqElem rhs = adem_normalize({i, j});
            for (int d = 1; d + i + j <= 9; ++d) {
                for (int t = 0; t < A.dim(d); ++t) {
                    F2Vec lhs = A.sq(i, d + j, A.sq(j, d, F2Vec::unit(uint32_t(t))));
                    F2Vec r;
                    for (const SqWord& w : rhs.terms) {
                        F2Vec cur = F2Vec::unit(uint32_t(t));
                        int deg = d;
                        for (size_t h = w.size(); h-- > 0 && !cur.zero();) {
                            cur = A.sq(w[h], deg, cur);
                            deg += w[h];
                        }
                        r += cur;
                    }
                    CHECK(lhs == r);
                }
            }
        }
    }
}

TEST_CASE("algebra composition: units and the commutative square") {
    auto P = com_operad(true, 10);
    UnstableModule f1 = free_module(1, 10);
    FreeAlgebra A(P, f1, 10);
    // mu = unit acts as the identity
    F2Vec gen = A.embed(1, F2Vec{0});
    auto r = A.compose(P->unit(), {{1, gen}});
    REQUIRE(r.has_value());
    CHECK(*r == gen);
    // .(j0, j0) is the square monomial
    OpToken dot{2, {}};
    auto sq = A.compose(dot, {{1, gen}, {1, gen}});
    REQUIRE(sq.has_value());
    CHECK(sq->weight() == 1);
    // star in S(Lev, Sigma F(0)): star(m, m) doubles the degree
    auto L = lev_operad(8);
    UnstableModule sf0 = suspend(free_module(0, 7));
    FreeAlgebra B(L, sf0, 8);
    F2Vec b = B.embed(1, F2Vec{0});
    auto s2 = B.compose(OpToken{2, {1, 1}}, {{1, b}, {1, b}});
    REQUIRE(s2.has_value());
    CHECK(!s2->zero());
}

TEST_CASE("alpha_star is A-linear: Sq^{2i} alpha = alpha Sq^i") {
    auto P = lev_operad(12);
    UnstableModule f1 = free_module(1, 12);
    FreeAlgebra A(P, f1, 12);
    TokenSum star(OpToken{2, {1, 1}});
    for (int d = 1; 2 * d + 2 <= 12; ++d) {
        for (int t = 0; t < A.dim(d); ++t) {
            for (int i = 1; i <= d && 2 * (d + i) <= 12; ++i) {
                F2Vec si = A.sq(i, d, F2Vec::unit(uint32_t(t)));
                F2Vec lhs;
                for (uint32_t u : si.s) {
                    auto a = A.alpha_star(star, d + i, u);
                    REQUIRE(a.has_value());
                    lhs += *a;
                }
                auto am = A.alpha_star(star, d, uint32_t(t));
                REQUIRE(am.has_value());
                F2Vec rhs = A.sq(2 * i, 2 * d, *am);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("orbit dimension against the explicit small-case oracle") {
    UnstableModule f1 = free_module(1, 5);
    UnstableModule m2 = direct_sum(f1, f1);
    for (auto P : {com_operad(true, 5), magcom_operad(5), lev_operad(5)}) {
        FreeAlgebra A(P, m2, 5);
        for (int n = 2; n <= 4; ++n) {
            std::vector<std::vector<uint32_t>> tuples;
            std::vector<uint32_t> cur(n);
            std::function<void(int)> rec = [&](int k) {
                if (k == n) {
                    tuples.push_back(cur);
                    return;
                }
                for (uint32_t v : {label_key(1, 0), label_key(1, 1)}) {
                    cur[k] = v;
                    rec(k + 1);
                }
            };
            rec(0);
            long long orbits = oracles::orbit_count(*P, n, tuples);
            long long count = 0;
            for (int i = 0; i < A.dim(n); ++i)
                if (A.mono(n, uint32_t(i)).op.arity == n)
                    ++count;
            CHECK(count == orbits);
        }
    }
}

TEST_CASE("a submodule inclusion induces an injection of monomial bases") {
    auto P = com_operad(true, 8);
    UnstableModule f1 = free_module(1, 8);
    UnstableModule s = direct_sum(f1, f1);
    FreeAlgebra A(P, f1, 8), B(P, s, 8);
    for (int d = 0; d <= 8; ++d) {
        for (int i = 0; i < A.dim(d); ++i) {
            const Monomial& m = A.mono(d, uint32_t(i));
            auto idx = B.index_of(d, m);  // left summand keeps indices
            CHECK(idx.has_value());
        }
    }
}

TEST_CASE("windowed composite: certified dims and weight blocks") {
    UnaryParams pm{UnaryKind::Dpm, 0, 0, 5, 2};  // internal [-2, 5]
    auto P = compose_with_unary(true, pm, 6);
    UnstableModule f1 = free_module(1, 6);
    FreeAlgebra A(P, f1, 6);
    A.set_certified_window(-2, 2);
    CHECK(A.dim(1) == 8);  // (d^a; iota_1), a in [-2, 5]
    CHECK(A.certified_dim(1) == 5);
    for (int d = 0; d <= 6; ++d) {
        size_t total = 0;
        for (const auto& b : A.blocks(d))
            total += b.end - b.begin;
        CHECK(total == size_t(A.dim(d)));
    }
}
