#include <doctest.h>

#include "oracles.hpp"
#include "ua/operads.hpp"

using namespace ua;

namespace {

TokenSum gen_star(const Operad& P) {
    auto g = P.generators();
    for (const OpToken& t : g)
        if (t.arity == 2)
            return TokenSum(t);
    return {};
}

}  // namespace

TEST_CASE("com and ucom") {
    auto com = com_operad(false, 6);
    auto ucom = com_operad(true, 6);
    for (int n = 1; n <= 6; ++n) {
        CHECK(com->tokens(n).size() == 1);
        CHECK(ucom->tokens(n).size() == 1);
    }
    CHECK(com->tokens(0).empty());
    CHECK(ucom->tokens(0).size() == 1);
    CHECK(check_operad_axioms(*com, 4) == std::nullopt);
    CHECK(check_operad_axioms(*ucom, 4) == std::nullopt);
}

TEST_CASE("unary operads compose exponents") {
    UnaryParams q3{UnaryKind::QsD, 3, 0, 0, -1};
    auto Q3 = unary_operad(q3);
    OpToken d2{1, {2}};
    TokenSum r = Q3->compose(d2, 0, d2);
    REQUIRE(r.t.size() == 1);
    CHECK(r.t[0].v[0] == 1);  // 4 mod 3

    UnaryParams t2{UnaryKind::TqD, 0, 2, 0, -1};
    auto T2 = unary_operad(t2);
    OpToken d1{1, {1}};
    CHECK(T2->compose(d2, 0, d1).zero());  // d^3 = 0

    UnaryParams dd{UnaryKind::D, 0, 0, 8, -1};
    auto D = unary_operad(dd);
    CHECK(D->unit().v[0] == 0);
    CHECK_THROWS_AS(D->compose(OpToken{1, {8}}, 0, d1), error);
    CHECK(check_operad_axioms(*D, 1) == std::nullopt);
    CHECK(check_operad_axioms(*Q3, 1) == std::nullopt);
    CHECK(check_operad_axioms(*T2, 1) == std::nullopt);
}

TEST_CASE("composite distributive law") {
    UnaryParams dd{UnaryKind::D, 0, 0, 6, -1};
    auto PD = compose_with_unary(true, dd, 6);
    // (.;d,d) o_1 (.;d,d) = (.;d^2,d^2,d) as an ordered tuple
    OpToken star{2, {1, 1}};
    TokenSum r = PD->compose(star, 0, star);
    REQUIRE(r.t.size() == 1);
    CHECK(r.t[0].v == std::vector<int>{2, 2, 1});
    // unit checks
    CHECK(PD->compose(star, 0, PD->unit()) == TokenSum(star));
    CHECK(check_operad_axioms(*PD, 3) == std::nullopt);

    UnaryParams q2{UnaryKind::QsD, 2, 0, 0, -1};
    auto PQ = compose_with_unary(true, q2, 6);
    CHECK(check_operad_axioms(*PQ, 3) == std::nullopt);

    UnaryParams t1{UnaryKind::TqD, 0, 1, 0, -1};
    auto PT = compose_with_unary(true, t1, 6);
    CHECK(check_operad_axioms(*PT, 3) == std::nullopt);

    UnaryParams pm{UnaryKind::Dpm, 0, 0, 4, -1};
    auto PPM = compose_with_unary(true, pm, 6);
    CHECK(check_operad_axioms(*PPM, 3) == std::nullopt);
}

TEST_CASE("lev basis dimensions") {
    auto lev = lev_operad(8);
    CHECK(lev->tokens(1).size() == 1);   // the unit
    CHECK(lev->tokens(2).size() == 1);   // (1,1)
    CHECK(lev->tokens(3).size() == 3);   // orderings of (1,2,2)
    CHECK(lev->tokens(4).size() == 13);  // orderings of (2,2,2,2) and (1,2,3,3)
    CHECK(check_operad_axioms(*lev, 4) == std::nullopt);
    // closure: composing dyadic tuples stays dyadic
    OpToken star{2, {1, 1}};
    TokenSum s3 = lev->compose(star, 1, star);
    for (const OpToken& t : s3.t) {
        long long sum = 0;
        for (int a : t.v)
            sum += 1LL << (10 - a);
        CHECK(sum == (1LL << 10));
    }
    // the level relation star(star,star) = star(star,star).(2 3)
    TokenSum ss = compose_sum(*lev, lev->compose(star, 1, star), 0, TokenSum(star));
    CHECK(act_sum(*lev, ss, perm_transposition(4, 1, 2)) == ss);
}

TEST_CASE("truncated lev") {
    auto t1 = truncated_lev(1, 6);
    CHECK(t1->tokens(2).size() == 1);
    CHECK(t1->tokens(3).empty());  // needs an entry 2
    auto t2 = truncated_lev(2, 6);
    CHECK(t2->tokens(3).size() == 3);
    CHECK(t2->tokens(4).size() == 1);  // only (2,2,2,2)
    CHECK(check_operad_axioms(*t2, 4) == std::nullopt);
    auto t0 = truncated_lev(0, 4);
    CHECK(t0->tokens(1).size() == 1);
    CHECK(t0->tokens(2).empty());
}

TEST_CASE("magcom dimensions match the tree oracle") {
    auto mc = magcom_operad(6);
    CHECK(mc->tokens(1).size() == 1);
    CHECK(mc->tokens(2).size() == 1);
    CHECK(mc->tokens(3).size() == 3);
    CHECK(mc->tokens(4).size() == 15);
    CHECK(mc->tokens(5).size() == 105);  // (2n-3)!!
    CHECK(check_operad_axioms(*mc, 4) == std::nullopt);
}

TEST_CASE("sigma_2n and the normative test sigma_4 = (2 3)") {
    Perm s4 = sigma_2n(2);
    CHECK(s4 == Perm{0, 2, 1, 3});
}

TEST_CASE("centrality verdicts") {
    auto com = com_operad(false, 8);
    CHECK(is_central_on_generators(*com, gen_star(*com)).central);
    CHECK(is_central_exhaustive(*com, gen_star(*com), 4).central);

    auto lev = lev_operad(8);
    OpToken star{2, {1, 1}};
    CHECK(is_central_on_generators(*lev, TokenSum(star)).central);
    CHECK(is_central_exhaustive(*lev, TokenSum(star), 4).central);

    UnaryParams dd{UnaryKind::D, 0, 0, 8, -1};
    auto PD = compose_with_unary(true, dd, 8);
    CHECK(is_central_on_generators(*PD, TokenSum(star)).central);

    UnaryParams pm{UnaryKind::Dpm, 0, 0, 3, -1};
    auto PPM = compose_with_unary(true, pm, 8);
    CHECK(is_central_on_generators(*PPM, TokenSum(star)).central);

    for (int s = 1; s <= 4; ++s) {
        UnaryParams qs{UnaryKind::QsD, s, 0, 0, -1};
        auto PQ = compose_with_unary(true, qs, 8);
        CHECK(is_central_on_generators(*PQ, TokenSum(star)).central);
    }
    for (int q = 0; q <= 3; ++q) {
        auto tq = truncated_lev(q, 8);
        CHECK(is_central_on_generators(*tq, gen_star(*tq)).central);
    }

    auto mc = magcom_operad(6);
    OpToken mstar{2, {-1, 0, 1}};
    CentralityVerdict v = is_central_on_generators(*mc, TokenSum(mstar));
    CHECK(!v.central);
    REQUIRE(v.has_failing);
    CHECK(v.failing == mstar);  // fails already at mu = star
}

TEST_CASE("generator centrality agrees with the exhaustive check up to arity 4") {
    auto lev = lev_operad(6);
    auto com = com_operad(false, 6);
    auto mc = magcom_operad(5);
    UnaryParams dd{UnaryKind::D, 0, 0, 4, -1};
    auto PD = compose_with_unary(true, dd, 5);
    std::vector<std::pair<const Operad*, TokenSum>> cases{
        {lev.get(), gen_star(*lev)},
        {com.get(), gen_star(*com)},
        {mc.get(), gen_star(*mc)},
        {PD.get(), TokenSum(OpToken{2, {1, 1}})},
    };
    for (auto& [P, star] : cases)
        CHECK(is_central_on_generators(*P, star).central ==
              is_central_exhaustive(*P, star, 4).central);
}

TEST_CASE("star not fixed by the transposition is rejected") {
    UnaryParams dd{UnaryKind::D, 0, 0, 4, -1};
    auto PD = compose_with_unary(true, dd, 4);
    OpToken skew{2, {0, 1}};
    CHECK_THROWS_AS(is_central_on_generators(*PD, TokenSum(skew)), error);
}

TEST_CASE("star powers") {
    auto lev = lev_operad(16);
    OpToken star{2, {1, 1}};
    TokenSum s0 = star_power(*lev, TokenSum(star), 0, true);
    CHECK(s0 == TokenSum(lev->unit()));
    TokenSum s1 = star_power(*lev, TokenSum(star), 1, true);
    CHECK(s1 == TokenSum(star));
    TokenSum s2 = star_power(*lev, TokenSum(star), 2, true);
    REQUIRE(s2.t.size() == 1);
    CHECK(s2.t[0].v == std::vector<int>{2, 2, 2, 2});
    TokenSum s3 = star_power(*lev, TokenSum(star), 3, true);
    REQUIRE(s3.t.size() == 1);
    CHECK(s3.t[0].v == std::vector<int>(8, 3));
}

TEST_CASE("morphisms") {
    auto lev = lev_operad(6);
    UnaryParams dd{UnaryKind::D, 0, 0, 6, -1};
    auto comD = compose_with_unary(false, dd, 6);
    OperadMorphism inc = tuple_inclusion(*lev, *comD);
    CHECK(validate_morphism(inc, 4) == std::nullopt);
    // injective on bases within the cap: tokens map to themselves
    for (int n = 1; n <= 4; ++n)
        for (const OpToken& t : lev->tokens(n))
            CHECK(inc.on_token(t) == TokenSum(t));

    auto t2 = truncated_lev(2, 6);
    auto t1 = truncated_lev(1, 6);
    OperadMorphism proj = tqlev_projection(*t2, *t1, 1);
    CHECK(validate_morphism(proj, 4) == std::nullopt);
    CHECK(proj.on_token(OpToken{3, {1, 2, 2}}).zero());
    CHECK(!proj.on_token(OpToken{2, {1, 1}}).zero());

    auto mc = magcom_operad(5);
    OperadMorphism cls = magcom_classifying(*mc, *lev, TokenSum(OpToken{2, {1, 1}}));
    CHECK(validate_morphism(cls, 4) == std::nullopt);

    OperadMorphism id = identity_morphism(*lev);
    CHECK(validate_morphism(id, 4) == std::nullopt);
}

TEST_CASE("orbit counts from the canonicalization hook match explicit orbits") {
    // labels: two distinct degree-1 tokens, all tuples of length n
    for (int n = 2; n <= 4; ++n) {
        std::vector<std::vector<uint32_t>> tuples;
        std::vector<uint32_t> cur(n);
        std::function<void(int)> rec = [&](int k) {
            if (k == n) {
                tuples.push_back(cur);
                return;
            }
            for (uint32_t v : {(1u << 16) | 0u, (1u << 16) | 1u}) {
                cur[k] = v;
                rec(k + 1);
            }
        };
        rec(0);
        for (auto P : {magcom_operad(4), lev_operad(4), com_operad(true, 4)}) {
            // canonical forms
            std::set<std::pair<std::vector<int>, std::vector<uint32_t>>> canon;
            for (const OpToken& t : P->tokens(n)) {
                for (const auto& lab : tuples) {
                    OpToken tok = t;
                    std::vector<uint32_t> l = lab;
                    P->canonicalize(tok, l);
                    canon.insert({tok.v, l});
                }
            }
            CHECK((long long)canon.size() == oracles::orbit_count(*P, n, tuples));
        }
    }
}
