#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ua/f2.hpp"

namespace ua {

// A word Sq^{i_1}...Sq^{i_k} in the Steenrod algebra; entries are positive,
// the empty word is Sq^0 = 1.
using SqWord = std::vector<int>;

int sq_degree(const SqWord& w);
bool is_admissible(const SqWord& w);
// excess e(I) = i_1 - i_2 - ... - i_k (0 for the empty word)
int excess(const SqWord& w);
std::string show_word(const SqWord& w);  // "Sq^3 Sq^1", "1" for the unit

// binomial coefficient mod 2 by the subset criterion; 0 whenever b < 0,
// b > a or a < 0
int binom_mod2(long long a, long long b);

// Sum of admissible words, canonically sorted. Over F_2 a multiset of words
// with xor-cancellation.
struct SqElem {
    std::vector<SqWord> terms;  // sorted, duplicate-free

    bool zero() const { return terms.empty(); }
    void add(const SqWord& w);   // xor one word in
    SqElem& operator+=(const SqElem& o);
    bool operator==(const SqElem& o) const { return terms == o.terms; }
    std::string show() const;
};

// Adem relation for an inadmissible pair (i < 2j):
//   Sq^i Sq^j = sum_k binom(j-k-1, i-2k) Sq^{i+j-k} Sq^k.
// Every term on the right is admissible. k = 0 yields a single letter.
std::vector<SqWord> adem_pair(int i, int j);

// Admissible normal form of a word, rewriting the leftmost inadmissible pair
// first. strategy_seed != 0 picks a random inadmissible pair instead (the
// normal form is the same either way; used by the confluence test).
SqElem adem_normalize(const SqWord& w, uint64_t strategy_seed = 0);

// All admissible words of the given total degree, ordered lexicographically.
std::vector<SqWord> steenrod_basis(int degree);

// --- independent oracle: the action on F_2[x_1..x_n] -----------------------
//
// Degree-1 generators carry the classical unstable action Sq^0 x = x,
// Sq^1 x = x^2, Sq^j x = 0 (j >= 2), extended by the Cartan formula. Acting
// with a word letter by letter never invokes the Adem relations, so this is
// an independent check on adem_normalize.

struct Poly {
    // monomial = exponent vector; polynomial = set of monomials (F_2)
    std::vector<std::vector<int>> mons;  // sorted, duplicate-free

    bool zero() const { return mons.empty(); }
    void add(std::vector<int> m);
    Poly& operator+=(const Poly& o);
    bool operator==(const Poly& o) const { return mons == o.mons; }
    std::string show() const;
};

Poly poly_monomial(const std::vector<int>& exponents);
// Sq^i on a polynomial, by the Cartan convolution over variables
Poly poly_sq(int i, const Poly& p);
// act letter by letter with the word (rightmost letter first)
Poly poly_action(const SqWord& w, const Poly& p);
// act with a sum of words
Poly poly_action(const SqElem& e, const Poly& p);

}  // namespace ua
