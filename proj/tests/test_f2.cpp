#include <doctest.h>

#include <random>

#include "ua/f2.hpp"

using namespace ua;

TEST_CASE("xor arithmetic") {
    F2Vec a{1, 3, 5}, b{3, 4};
    F2Vec c = a + b;
    CHECK(c == F2Vec{1, 4, 5});
    CHECK((a + a).zero());
    F2Vec d{5, 3, 3, 1};  // duplicate pair cancels on normalize
    CHECK(d == F2Vec{1, 5});
}

TEST_CASE("rank basics") {
    CHECK(f2_rank(4, {}) == 0);
    CHECK(f2_rank(4, {F2Vec{0}, F2Vec{1}, F2Vec{0, 1}}) == 2);
    CHECK(f2_rank(3, {F2Vec{0}, F2Vec{1}, F2Vec{2}}) == 3);
}

TEST_CASE("quotient dimension") {
    CHECK(quotient_dimension(5, {}) == 5);
    CHECK(quotient_dimension(3, {F2Vec{0, 1}}) == 2);
    std::vector<F2Vec> full{F2Vec{0}, F2Vec{1}, F2Vec{2}, F2Vec{3}};
    CHECK(quotient_dimension(4, full) == 0);
}

TEST_CASE("membership with witness") {
    std::vector<F2Vec> span{F2Vec{0}, F2Vec{1}};
    Membership m = solve_membership(4, F2Vec{0, 1}, span);
    REQUIRE(m.member);
    F2Vec sum;
    for (size_t k : m.witness)
        sum += span[k];
    CHECK(sum == F2Vec{0, 1});

    CHECK(!solve_membership(4, F2Vec{2}, span).member);
    CHECK(solve_membership(4, F2Vec{}, {}).member);
}

TEST_CASE("rank is stable under adding a spanned vector") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        size_t dim = 1 + rng() % 20;
        std::vector<F2Vec> vs;
        for (int k = 0; k < 8; ++k) {
            F2Vec v;
            for (size_t i = 0; i < dim; ++i)
                if (rng() & 1)
                    v.toggle(uint32_t(i));
            vs.push_back(v);
        }
        size_t r = f2_rank(dim, vs);
        // random combination of the list
        F2Vec comb;
        for (const F2Vec& v : vs)
            if (rng() & 1)
                comb += v;
        auto vs2 = vs;
        vs2.push_back(comb);
        CHECK(f2_rank(dim, vs2) == r);
    }
}

TEST_CASE("elimination is deterministic and reduced") {
    std::vector<F2Vec> vs{F2Vec{0, 2}, F2Vec{1, 2}, F2Vec{0, 1}};
    Eliminator e1(3), e2(3);
    for (const auto& v : vs) {
        e1.insert(v);
        e2.insert(v);
    }
    CHECK(e1.reduced_rows() == e2.reduced_rows());
    // reduced form: no row's pivot occurs in another row
    auto rows = e1.reduced_rows();
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows.size(); ++j)
            if (i != j)
                CHECK(!rows[j].has(rows[i].lead()));
}

TEST_CASE("out of range index throws") {
    Eliminator e(3);
    CHECK_THROWS_AS(e.insert(F2Vec{5}), error);
}
