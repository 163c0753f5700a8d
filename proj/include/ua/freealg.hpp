#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ua/operads.hpp"
#include "ua/unstable.hpp"

namespace ua {

// label key packing: (degree << 16) | index within the degree
inline uint32_t label_key(int degree, uint32_t index) { return (uint32_t(degree) << 16) | index; }
inline int label_degree(uint32_t key) { return int(key >> 16); }
inline uint32_t label_index(uint32_t key) { return key & 0xFFFFu; }

// basis monomial of S(P, M): an operad token with one module label per slot,
// stored as the canonical representative of its diagonal orbit
struct Monomial {
    OpToken op;
    std::vector<uint32_t> labels;

    int degree() const;
    bool operator==(const Monomial& o) const { return op == o.op && labels == o.labels; }
};

struct MonomialHash {
    size_t operator()(const Monomial& m) const;
};

// pivot order: label degrees dominate (largest first), so coset
// representatives come out as products of low-degree labels
bool mono_less(const Monomial& a, const Monomial& b);

// The free P-algebra on a graded space of labels, degree by degree. When the
// labels come from an UnstableModule the Steenrod action is available through
// the Cartan formula. Monomials whose operad exponents leave the certified
// window (set only for Z-indexed unary composites) are still stored; the
// window only marks which part of the basis is certified for reporting.
class FreeAlgebra {
public:
    FreeAlgebra(std::shared_ptr<const Operad> P, const UnstableModule& M, int cap);
    FreeAlgebra(std::shared_ptr<const Operad> P, const GradedSpace& labels, int cap);

    const Operad& P() const { return *P_; }
    std::shared_ptr<const Operad> P_ptr() const { return P_; }
    const UnstableModule* module() const { return mod_; }
    const GradedSpace& label_space() const { return *labels_; }
    int cap() const { return cap_; }

    int dim(int d) const;
    const Monomial& mono(int d, uint32_t i) const;
    std::optional<uint32_t> index_of(int d, const Monomial& m) const;  // m canonical
    int degree_of_labels(const std::vector<uint32_t>& labels) const;

    // weight blocks: contiguous [begin, end) ranges of the sorted basis
    struct Block {
        int64_t key;
        uint32_t begin, end;
    };
    const std::vector<Block>& blocks(int d) const;
    size_t block_of(int d, uint32_t index) const;

    // certified window on operad exponents ([lo, hi] on every op.v entry);
    // only meaningful for exponent-tuple operads
    void set_certified_window(int lo, int hi);
    bool certified(const Monomial& m) const;
    int certified_dim(int d) const;

    // embed a module element of degree d as a sum of arity-1 monomials
    F2Vec embed(int d, const F2Vec& module_elem) const;

    // gamma(mu; args), multilinear in each slot; args are (degree, element)
    // pairs of algebra elements. nullopt if a resulting monomial is outside
    // the stored basis (window truncation).
    std::optional<F2Vec> compose(const OpToken& mu, const std::vector<std::pair<int, F2Vec>>& args) const;
    std::optional<F2Vec> compose(const TokenSum& mu, const std::vector<std::pair<int, F2Vec>>& args) const;

    // Sq^i of a basis monomial / element by the Cartan formula (needs a module)
    F2Vec cartan_sq(int i, int d, uint32_t index) const;
    F2Vec sq(int i, int d, const F2Vec& v) const;
    F2Vec sq0(int d, const F2Vec& v) const { return sq(d, d, v); }

    // alpha^star: Phi t -> (star; t, t)
    std::optional<F2Vec> alpha_star(const TokenSum& star, int d, uint32_t index) const;

    // substitute element e (degree de) into slot `pos` of (mu; labels)
    std::optional<F2Vec> substitute(const OpToken& mu, const std::vector<uint32_t>& labels,
                                    size_t pos, int de, const F2Vec& e) const;

    std::string show(int d, const F2Vec& v) const;
    std::string show_mono(const Monomial& m) const;

private:
    std::shared_ptr<const Operad> P_;
    const UnstableModule* mod_ = nullptr;
    const GradedSpace* labels_ = nullptr;
    GradedSpace owned_labels_;  // when constructed from a module
    int cap_;
    bool windowed_ = false;
    int win_lo_ = 0, win_hi_ = 0;

    std::vector<std::vector<Monomial>> basis_;
    std::vector<std::unordered_map<Monomial, uint32_t, MonomialHash>> index_;
    std::vector<std::vector<Block>> blocks_;

    void build();
};

// canonical pair for ad-hoc use
Monomial make_monomial(const Operad& P, OpToken op, std::vector<uint32_t> labels);

// pointed monomials: canonical (token, labels) pairs of total degree d where
// exactly one slot carries the sentinel label of degree `de`; calls
// fn(op, labels, sentinel_slot)
void enumerate_pointed(const FreeAlgebra& A, int d, int de,
                       const std::function<void(const OpToken&, const std::vector<uint32_t>&,
                                                size_t)>& fn);

constexpr uint32_t kSentinelIndex = 0xFFFFu;
inline uint32_t sentinel_key(int degree) { return label_key(degree, kSentinelIndex); }

}  // namespace ua
