#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ua/f2.hpp"
#include "ua/steenrod.hpp"

namespace ua {

// Finite-dimensional-per-degree graded F2 space with named basis tokens and
// an explicit degree cap. Queries above the cap are errors, never silently 0.
struct GradedSpace {
    int cap = 0;
    std::vector<std::vector<std::string>> names;  // names[d] for d <= cap

    int dim(int d) const;
    const std::string& name(int d, uint32_t i) const;
    void check_degree(int d) const;
    std::string show_elem(int d, const F2Vec& v) const;
};

// Graded linear map of a fixed degree shift: columns[d][src] is the image of
// basis token (d, src) in degree d + shift of the target.
struct LinearMap {
    const GradedSpace* source = nullptr;
    const GradedSpace* target = nullptr;
    int shift = 0;
    std::vector<std::vector<F2Vec>> columns;  // per source degree

    F2Vec apply(int d, const F2Vec& v) const;
};

// Unstable module over the mod 2 Steenrod algebra, truncated at `cap`.
// act[i][d] holds the matrix of Sq^i on degree d, for 1 <= i <= d and
// d + i <= cap (instability makes Sq^i zero for i > d, and the action above
// the cap is not stored).
struct UnstableModule {
    GradedSpace space;
    // act[i][d][src] -> F2Vec in degree d+i; empty outer slots where undefined
    std::vector<std::vector<std::vector<F2Vec>>> act;

    int cap() const { return space.cap; }
    int dim(int d) const { return space.dim(d); }
    bool connected() const { return space.dim(0) == 0; }

    // Sq^i on an element of degree d. i == 0 is the identity; i > d gives 0.
    // Requires d + i <= cap.
    F2Vec sq(int i, int d, const F2Vec& v) const;
    F2Vec sq_basis(int i, int d, uint32_t src) const;
    // Sq^I via Adem normalization followed by letter-by-letter action
    F2Vec sq_word(const SqWord& w, int d, const F2Vec& v) const;
    // top square Sq_0 = Sq^{deg}
    F2Vec sq0(int d, const F2Vec& v) const { return sq(d, d, v); }

    void init_storage();  // allocate act to match space dims (zero maps)
};

// free unstable module F(n) on one degree-n generator, basis Sq^I iota_n with
// I admissible of excess <= n
UnstableModule free_module(int n, int cap);

UnstableModule zero_module(int cap);
UnstableModule suspend(const UnstableModule& m);          // degree +1
UnstableModule phi(const UnstableModule& m);              // degree doubling
UnstableModule direct_sum(const UnstableModule& a, const UnstableModule& b);

// lambda_M : Phi M -> M,  Phi x -> Sq_0 x
LinearMap lambda_map(const UnstableModule& m, const UnstableModule& phi_m);

// Sigma Omega M as the cokernel of Sq_0 (= coker lambda), with projection pr.
// Representatives are the non-pivot basis tokens of each degree. M must be
// connected.
struct LoopsData {
    GradedSpace space;                       // Sigma Omega M
    std::vector<std::vector<F2Vec>> pr;      // pr[d][src in M] -> coords in (SOM)^d
    std::vector<std::vector<uint32_t>> reps; // reps[d][j] = M-basis index of token j
};
LoopsData loops_via_cokernel(const UnstableModule& m);

// Degreewise linear section s of pr; values[d][j] is s(b_j) in M^d.
struct GradedSection {
    const LoopsData* loops = nullptr;
    std::vector<std::vector<F2Vec>> values;
};

// the canonical section picking the chosen coset representatives; for F(n)
// this is the classical section sigma(Sq^I iota_{n-1}) -> Sq^I iota_n
GradedSection canonical_section(const LoopsData& l);
// representative + seeded random element of the image of Sq_0
GradedSection random_section(const UnstableModule& m, const LoopsData& l, uint64_t seed);
// check pr . s = id
bool section_is_valid(const UnstableModule& m, const LoopsData& l, const GradedSection& s);

struct ReducedVerdict {
    bool reduced = true;
    int fail_degree = -1;
    F2Vec fail_elem;  // a nonzero kernel element of Sq_0 if not reduced
};
// injectivity of Sq_0 certified for degrees <= cap/2
ReducedVerdict is_reduced(const UnstableModule& m);

// instability + Adem compatibility on every basis token within the cap;
// returns an error description or nullopt if the module certifies
std::optional<std::string> certify_unstable(const UnstableModule& m);

}  // namespace ua
