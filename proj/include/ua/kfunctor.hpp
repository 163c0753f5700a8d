#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ua/freealg.hpp"
#include "ua/operads.hpp"
#include "ua/unstable.hpp"

namespace ua {

enum class IdealFlavor { X, Unst, E };

std::string flavor_name(IdealFlavor f);

// The degreewise quotient of a free algebra S(P, M) by one of the instability
// ideals. Spans are generated by grafting each ideal generator into every
// slot of every pointed monomial; elimination runs per weight block. Spanning
// vectors that leave the stored exponent window are skipped and counted (they
// only concern uncertified boundary monomials).
class QuotientAlgebra {
public:
    QuotientAlgebra(const FreeAlgebra& A, IdealFlavor flavor, TokenSum star,
                    const LoopsData* loops = nullptr, const GradedSection* section = nullptr,
                    bool record_spans = false);

    const FreeAlgebra& ambient() const { return *A_; }
    IdealFlavor flavor() const { return flavor_; }
    const TokenSum& star() const { return star_; }

    int dim(int d) const { return int(reps_.at(d).size()); }
    int certified_dim(int d) const;
    const std::vector<uint32_t>& reps(int d) const { return reps_.at(d); }
    bool rep_certified(int d, uint32_t pos) const;

    // fully reduce an ambient element modulo the ideal (still in ambient coords)
    F2Vec reduce_ambient(int d, const F2Vec& v) const;
    // coordinates over reps(d)
    F2Vec to_coords(int d, const F2Vec& reduced_ambient) const;
    F2Vec reduce(int d, const F2Vec& ambient) const { return to_coords(d, reduce_ambient(d, ambient)); }
    F2Vec coords_to_ambient(int d, const F2Vec& coords) const;

    // transported structure
    F2Vec sq(int i, int d, const F2Vec& coords) const;
    std::optional<F2Vec> compose(const TokenSum& mu, const std::vector<std::pair<int, F2Vec>>& args) const;

    // Sq_0[t] = star([t],[t]) on every representative with 2d <= cap
    std::optional<std::string> check_star_instability() const;

    size_t ideal_rank(int d) const;
    size_t skipped_spans(int d) const { return skipped_.at(d); }
    const std::vector<F2Vec>& recorded_spans(int d) const;

private:
    const FreeAlgebra* A_;
    IdealFlavor flavor_;
    TokenSum star_;
    std::vector<std::vector<Eliminator>> elims_;   // per degree, per block
    std::vector<std::vector<uint32_t>> reps_;      // ambient indices, ascending
    std::vector<std::vector<int32_t>> rep_pos_;    // ambient index -> coord or -1
    std::vector<size_t> skipped_;
    std::vector<std::vector<F2Vec>> spans_;        // when recorded

    void build(const LoopsData* loops, const GradedSection* section, bool record_spans);
};

struct IdealEqualityReport {
    struct Row {
        int d;
        size_t rank_x, rank_unst, rank_e;
        bool equal;
    };
    std::vector<Row> rows;
    bool ok = true;
};

// Degreewise equality of the spans of the three ideal flavors (mutual
// inclusion of recorded spanning sets). Requires M reduced connected and a
// section for the E flavor.
IdealEqualityReport ideal_equalities_check(const FreeAlgebra& A, const TokenSum& star,
                                           const LoopsData& loops, const GradedSection& section);

// psi_s / phi-hat_s between S(P, Sigma Omega M) and the quotient
class ThetaIso {
public:
    ThetaIso(const QuotientAlgebra& K, const FreeAlgebra& B, const LoopsData& loops,
             const GradedSection& section, bool centrality_certified);

    const QuotientAlgebra& quotient() const { return *K_; }
    const FreeAlgebra& free_side() const { return *B_; }

    // S(P, s): free side -> ambient S(P, M)
    std::optional<F2Vec> lift(int d, const F2Vec& b_elem) const;
    // psi: free side -> quotient coordinates
    F2Vec psi(int d, const F2Vec& b_elem) const;
    // phi-bar on ambient monomials of S(P, M)
    std::optional<F2Vec> phibar(int d, const F2Vec& ambient) const;
    // phi-hat on quotient coordinates
    std::optional<F2Vec> phihat(int d, const F2Vec& coords) const;
    // transported action Sq^i (.) on the free side
    std::optional<F2Vec> odot(int i, int d, const F2Vec& b_elem) const;

    // phi on a module basis token, as an element of the free side
    const F2Vec& phi_token(int d, uint32_t token) const { return phi_tok_.at(d).at(token); }

private:
    const QuotientAlgebra* K_;
    const FreeAlgebra* B_;
    const LoopsData* loops_;
    const GradedSection* sec_;
    std::vector<std::vector<F2Vec>> phi_tok_;  // per module degree, per token
};

struct TheoremReport {
    struct Row {
        int d;
        int quotient, free_dim;
        bool match;
    };
    std::vector<Row> rows;
    bool ok = true;
};

// certified dimension table of quotient vs free side
TheoremReport theorem_dimension_table(const QuotientAlgebra& K, const FreeAlgebra& B);

// induced map K_P(M) -> K_Q(M) from an operad morphism with f(star_P) = star_Q
struct InducedMap {
    std::vector<std::vector<F2Vec>> columns;  // per degree, per source rep: dst coords
    std::vector<int> kernel_dim;              // per degree
};
InducedMap induced_morphism(const OperadMorphism& f, const TokenSum& star_src,
                            const TokenSum& star_dst, const QuotientAlgebra& Ksrc,
                            const QuotientAlgebra& Kdst);

}  // namespace ua
