#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ua/kfunctor.hpp"

using namespace ua;

namespace {

struct Setup {
    std::shared_ptr<const Operad> P;
    UnstableModule M;
    LoopsData loops;
    GradedSection sec;
    TokenSum star;
};

Setup ucom_f1(int cap) {
    Setup s;
    s.P = com_operad(true, cap);
    s.M = free_module(1, cap);
    s.loops = loops_via_cokernel(s.M);
    s.sec = canonical_section(s.loops);
    s.star = TokenSum(OpToken{2, {}});
    return s;
}

Setup lev_f1(int cap) {
    Setup s;
    s.P = lev_operad(cap);
    s.M = free_module(1, cap);
    s.loops = loops_via_cokernel(s.M);
    s.sec = canonical_section(s.loops);
    s.star = TokenSum(OpToken{2, {1, 1}});
    return s;
}

}  // namespace

TEST_CASE("unst ideal on F(1): degree 2 span contains j_1 + iota*iota") {
    Setup s = ucom_f1(8);
    FreeAlgebra A(s.P, s.M, 8);
    QuotientAlgebra K(A, IdealFlavor::Unst, s.star);
    CHECK(K.ideal_rank(1) == 0);  // no squares below degree 2
    CHECK(K.ideal_rank(2) == 1);
    F2Vec gen = A.embed(2, s.M.sq_basis(1, 1, 0));  // j_1
    auto st = A.alpha_star(s.star, 1,
                           *A.index_of(1, make_monomial(*s.P, s.P->unit(), {label_key(1, 0)})));
    REQUIRE(st.has_value());
    CHECK(K.reduce_ambient(2, gen + *st).zero());
}

TEST_CASE("K_uCom(F(1)) is one-dimensional in every degree (RP^infty)") {
    Setup s = ucom_f1(12);
    FreeAlgebra A(s.P, s.M, 12);
    QuotientAlgebra K(A, IdealFlavor::Unst, s.star);
    for (int d = 0; d <= 12; ++d)
        CHECK(K.dim(d) == 1);
    CHECK(K.check_star_instability() == std::nullopt);
}

TEST_CASE("K_Lev(F(1)) matches the dyadic multiset oracle") {
    Setup s = lev_f1(10);
    FreeAlgebra A(s.P, s.M, 10);
    QuotientAlgebra K(A, IdealFlavor::E, s.star, &s.loops, &s.sec);
    std::vector<int> low;
    for (int d = 1; d <= 5; ++d)
        low.push_back(K.dim(d));
    CHECK(low == std::vector<int>{1, 1, 1, 2, 3});
    for (int d = 1; d <= 10; ++d)
        CHECK(K.dim(d) == oracles::dyadic_multisets(d));
    CHECK(K.check_star_instability() == std::nullopt);
}

TEST_CASE("K_uCom(Sigma F(0)) has a trivial square") {
    auto P = com_operad(true, 4);
    UnstableModule sf0 = suspend(free_module(0, 3));
    FreeAlgebra A(P, sf0, 4);
    TokenSum star(OpToken{2, {}});
    QuotientAlgebra K(A, IdealFlavor::Unst, star);
    CHECK(K.dim(1) == 1);
    CHECK(K.dim(2) == 0);  // sigma iota_0 squared = Sq_0 sigma iota_0 = 0
    // the free side S(uCom, Sigma Omega Sigma F(0)) stays one-dimensional
    LoopsData l = loops_via_cokernel(sf0);
    FreeAlgebra B(P, l.space, 4);
    CHECK(B.dim(2) == 1);
    // flavor E refuses the non-reduced module
    GradedSection sec = canonical_section(l);
    CHECK_THROWS_AS(QuotientAlgebra(A, IdealFlavor::E, star, &l, &sec), error);
}

TEST_CASE("ideal equalities X = Unst = E") {
    Setup s = ucom_f1(10);
    FreeAlgebra A(s.P, s.M, 10);
    IdealEqualityReport rep = ideal_equalities_check(A, s.star, s.loops, s.sec);
    CHECK(rep.ok);

    Setup t = lev_f1(9);
    FreeAlgebra B(t.P, t.M, 9);
    CHECK(ideal_equalities_check(B, t.star, t.loops, t.sec).ok);
}

TEST_CASE("negative control: X and Unst spans differ over MagCom") {
    auto P = magcom_operad(8);
    UnstableModule f1 = free_module(1, 8);
    FreeAlgebra A(P, f1, 8);
    TokenSum star(OpToken{2, {-1, 0, 1}});
    QuotientAlgebra qx(A, IdealFlavor::X, star, nullptr, nullptr, true);
    QuotientAlgebra qu(A, IdealFlavor::Unst, star, nullptr, nullptr, true);
    bool differ = false;
    for (int d = 0; d <= 8 && !differ; ++d) {
        if (qx.ideal_rank(d) != qu.ideal_rank(d))
            differ = true;
        for (const F2Vec& v : qx.recorded_spans(d))
            if (!qu.reduce_ambient(d, v).zero())
                differ = true;
    }
    CHECK(differ);
}

TEST_CASE("theorem iso for (uCom, F(1))") {
    Setup s = ucom_f1(12);
    FreeAlgebra A(s.P, s.M, 12);
    QuotientAlgebra K(A, IdealFlavor::E, s.star, &s.loops, &s.sec);
    FreeAlgebra B(s.P, s.loops.space, 12);
    bool central = is_central_on_generators(*s.P, s.star).central;
    REQUIRE(central);
    ThetaIso iso(K, B, s.loops, s.sec, central);
    TheoremReport rep = theorem_dimension_table(K, B);
    CHECK(rep.ok);
    // round trips on every basis element
    for (int d = 0; d <= 12; ++d) {
        for (int i = 0; i < B.dim(d); ++i) {
            F2Vec u = F2Vec::unit(uint32_t(i));
            auto back = iso.phihat(d, iso.psi(d, u));
            REQUIRE(back.has_value());
            CHECK(*back == u);
        }
        for (int p = 0; p < K.dim(d); ++p) {
            F2Vec c = F2Vec::unit(uint32_t(p));
            auto img = iso.phihat(d, c);
            REQUIRE(img.has_value());
            CHECK(iso.psi(d, *img) == c);
        }
    }
    // centrality certificate is mandatory
    CHECK_THROWS_AS(ThetaIso(K, B, s.loops, s.sec, false), error);
}

TEST_CASE("theorem iso for (uCom, F(2)): Serre dimensions") {
    auto P = com_operad(true, 10);
    UnstableModule f2 = free_module(2, 10);
    LoopsData loops = loops_via_cokernel(f2);
    GradedSection sec = canonical_section(loops);
    TokenSum star(OpToken{2, {}});
    FreeAlgebra A(P, f2, 10);
    QuotientAlgebra K(A, IdealFlavor::E, star, &loops, &sec);
    FreeAlgebra B(P, loops.space, 10);
    ThetaIso iso(K, B, loops, sec, true);
    TheoremReport rep = theorem_dimension_table(K, B);
    CHECK(rep.ok);
    // polynomial algebra on generators in degrees 2, 3, 5, 9
    std::vector<std::pair<int, int>> parts{{2, 1}, {3, 1}, {5, 1}, {9, 1}};
    for (int d = 1; d <= 10; ++d)
        CHECK(K.dim(d) == oracles::partitions_with_parts(d, parts));
    for (int d = 0; d <= 10; ++d) {
        for (int i = 0; i < B.dim(d); ++i) {
            F2Vec u = F2Vec::unit(uint32_t(i));
            auto back = iso.phihat(d, iso.psi(d, u));
            REQUIRE(back.has_value());
            CHECK(*back == u);
        }
    }
}

TEST_CASE("psi is a P-algebra map on random pairs") {
    Setup s = lev_f1(9);
    FreeAlgebra A(s.P, s.M, 9);
    QuotientAlgebra K(A, IdealFlavor::E, s.star, &s.loops, &s.sec);
    FreeAlgebra B(s.P, s.loops.space, 9);
    ThetaIso iso(K, B, s.loops, s.sec, true);
    std::mt19937_64 rng(31);
    for (int t = 0; t < 60; ++t) {
        int da = 1 + int(rng() % 4), db = 1 + int(rng() % 4);
        if (da + db > 9 || B.dim(da) == 0 || B.dim(db) == 0)
            continue;
        F2Vec u = F2Vec::unit(uint32_t(rng() % B.dim(da)));
        F2Vec v = F2Vec::unit(uint32_t(rng() % B.dim(db)));
        auto prod = B.compose(s.star, {{da, u}, {db, v}});
        REQUIRE(prod.has_value());
        F2Vec lhs = iso.psi(da + db, *prod);
        auto rhs = K.compose(s.star, {{da, iso.psi(da, u)}, {db, iso.psi(db, v)}});
        REQUIRE(rhs.has_value());
        CHECK(lhs == *rhs);
    }
}

TEST_CASE("transported action: Sq^1 on the fundamental class") {
    Setup s = lev_f1(6);
    FreeAlgebra A(s.P, s.M, 6);
    QuotientAlgebra K(A, IdealFlavor::E, s.star, &s.loops, &s.sec);
    FreeAlgebra B(s.P, s.loops.space, 6);
    ThetaIso iso(K, B, s.loops, s.sec, true);
    // Sq^1 . iota_1 = star(iota_1, iota_1); degree-1 token is sigma iota_0
    F2Vec gen = B.embed(1, F2Vec{0});
    auto r = iso.odot(1, 1, gen);
    REQUIRE(r.has_value());
    auto expect = B.compose(s.star, {{1, gen}, {1, gen}});
    REQUIRE(expect.has_value());
    CHECK(*r == *expect);
    // Sq^0 is the identity
    auto r0 = iso.odot(0, 1, gen);
    REQUIRE(r0.has_value());
    CHECK(*r0 == gen);
}

TEST_CASE("transported action does not commute with the suspension (F(2) example)") {
    auto P = com_operad(true, 10);
    UnstableModule f2 = free_module(2, 10);
    LoopsData loops = loops_via_cokernel(f2);
    GradedSection sec = canonical_section(loops);
    TokenSum star(OpToken{2, {}});
    FreeAlgebra A(P, f2, 10);
    QuotientAlgebra K(A, IdealFlavor::E, star, &loops, &sec);
    FreeAlgebra B(P, loops.space, 10);
    ThetaIso iso(K, B, loops, sec, true);
    // x = sigma(Sq^4 Sq^2 Sq^1 iota_1) spans (Sigma Omega F(2))^9
    REQUIRE(loops.space.dim(9) == 1);
    F2Vec x = B.embed(9, F2Vec{0});
    auto r = iso.odot(1, 9, x);
    REQUIRE(r.has_value());
    // expected: (star; sigma j_2, sigma j_2) with sigma j_2 the degree-5 token
    REQUIRE(loops.space.dim(5) == 1);
    auto expect = B.compose(star, {{5, B.embed(5, F2Vec{0})}, {5, B.embed(5, F2Vec{0})}});
    REQUIRE(expect.has_value());
    CHECK(!r->zero());
    CHECK(*r == *expect);
    // while the suspension action itself kills Sq^1 of the degree-9 class
    UnstableModule sf1 = suspend(free_module(1, 9));
    CHECK(sf1.dim(9) == 1);
    CHECK(sf1.sq(1, 9, F2Vec{0}).zero());
}

TEST_CASE("section independence of the dimension table for F(2)") {
    auto P = com_operad(true, 9);
    UnstableModule f2 = free_module(2, 9);
    LoopsData loops = loops_via_cokernel(f2);
    TokenSum star(OpToken{2, {}});
    FreeAlgebra A(P, f2, 9);
    GradedSection s1 = canonical_section(loops);
    GradedSection s2 = random_section(f2, loops, 20240817);
    REQUIRE(section_is_valid(f2, loops, s2));
    QuotientAlgebra k1(A, IdealFlavor::E, star, &loops, &s1);
    QuotientAlgebra k2(A, IdealFlavor::E, star, &loops, &s2);
    for (int d = 0; d <= 9; ++d)
        CHECK(k1.dim(d) == k2.dim(d));
}

TEST_CASE("induced morphisms") {
    // identity
    Setup s = lev_f1(7);
    FreeAlgebra A(s.P, s.M, 7);
    QuotientAlgebra K(A, IdealFlavor::E, s.star, &s.loops, &s.sec);
    InducedMap idm = induced_morphism(identity_morphism(*s.P), s.star, s.star, K, K);
    for (int d = 0; d <= 7; ++d) {
        CHECK(idm.kernel_dim[d] == 0);
        for (int p = 0; p < K.dim(d); ++p)
            CHECK(idm.columns[d][p] == F2Vec::unit(uint32_t(p)));
    }

    // Lev -> uCom o Dpm realizes K(1) inside K: injective degreewise
    UnaryParams pm{UnaryKind::Dpm, 0, 0, 7, 1};
    auto Q = compose_with_unary(true, pm, 7);
    FreeAlgebra AQ(Q, s.M, 7);
    AQ.set_certified_window(-1, 1);
    QuotientAlgebra KQ(AQ, IdealFlavor::Unst, TokenSum(OpToken{2, {1, 1}}));
    OperadMorphism inc = tuple_inclusion(*s.P, *Q);
    InducedMap m = induced_morphism(inc, s.star, TokenSum(OpToken{2, {1, 1}}), K, KQ);
    for (int d = 0; d <= 7; ++d)
        CHECK(m.kernel_dim[d] == 0);

    // T_2 Lev -> T_1 Lev projection; mismatched stars are rejected
    auto t2 = truncated_lev(2, 7);
    auto t1 = truncated_lev(1, 7);
    FreeAlgebra A2(t2, s.M, 7), A1(t1, s.M, 7);
    TokenSum st(OpToken{2, {1, 1}});
    QuotientAlgebra K2(A2, IdealFlavor::Unst, st), K1(A1, IdealFlavor::Unst, st);
    OperadMorphism proj = tqlev_projection(*t2, *t1, 1);
    InducedMap pm2 = induced_morphism(proj, st, st, K2, K1);
    CHECK(pm2.columns[1][0] == F2Vec::unit(0));
    CHECK_THROWS_AS(induced_morphism(proj, st, TokenSum(OpToken{2, {0, 0}}), K2, K1), error);
}
