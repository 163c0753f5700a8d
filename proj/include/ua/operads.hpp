#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ua/f2.hpp"

namespace ua {

// Basis token of an operad in a fixed arity. The payload is family-specific:
// empty for Com/uCom, the exponent tuple for composites with a unary operad,
// a preorder tree encoding for MagCom (-1 = internal node, >= 0 = leaf slot).
struct OpToken {
    int arity = 0;
    std::vector<int> v;

    bool operator==(const OpToken& o) const { return arity == o.arity && v == o.v; }
    bool operator<(const OpToken& o) const {
        if (arity != o.arity)
            return arity < o.arity;
        return v < o.v;
    }
};

// F2 sum of tokens of one arity, kept sorted and cancelled.
struct TokenSum {
    std::vector<OpToken> t;

    TokenSum() = default;
    explicit TokenSum(OpToken tok) : t{std::move(tok)} {}
    bool zero() const { return t.empty(); }
    void add(const OpToken& tok);
    TokenSum& operator+=(const TokenSum& o);
    bool operator==(const TokenSum& o) const { return t == o.t; }
};

// permutation of {0,...,n-1}; p[j] is the image of j. Tokens carry a right
// action: entry at slot j moves to slot p[j].
using Perm = std::vector<int>;

Perm perm_identity(int n);
Perm perm_inverse(const Perm& p);
Perm perm_transposition(int n, int a, int b);
// sigma_{2n}: (1-based) 2i-1 -> i and 2i -> n+i
Perm sigma_2n(int n);

// Symmetric operad over F2 concentrated in degree 0 with a permutation basis.
struct Operad {
    virtual ~Operad() = default;

    virtual std::string name() const = 0;
    virtual int arity_cap() const = 0;
    virtual bool has_nullary() const { return false; }
    virtual OpToken unit() const = 0;

    // right Sigma-action; result is again a basis token
    virtual OpToken act(const OpToken& tok, const Perm& p) const = 0;
    // partial composition mu o_slot nu (slot 0-based); may be 0 (empty sum)
    virtual TokenSum compose(const OpToken& mu, int slot, const OpToken& nu) const = 0;
    // basis enumeration (bounded families / bounded windows only)
    virtual std::vector<OpToken> tokens(int arity) const = 0;
    // canonical representative of the diagonal orbit of (token, labels);
    // labels move together with the token slots
    virtual void canonicalize(OpToken& tok, std::vector<uint32_t>& labels) const = 0;
    // generating tokens (the unit is implicit)
    virtual std::vector<OpToken> generators() const = 0;

    // optional dyadic weight sum 2^{-a_j}, scaled by 2^WEIGHT_SCALE; operads
    // without the grading return 0 for every token
    static constexpr int WEIGHT_SCALE = 30;
    virtual bool graded_by_weight() const { return false; }
    virtual int64_t weight_key(const OpToken&) const { return 0; }

    virtual std::string show(const OpToken& tok) const = 0;

    // enumerate canonical (token, labels) pairs of the given total degree;
    // labels are (degree << 16 | index) keys drawn from `labels`, sorted
    // ascending; arity bounded by max_arity
    using LabelInfo = std::vector<std::pair<uint32_t, int>>;  // (key, degree)
    using MonomialSink = std::function<void(OpToken, std::vector<uint32_t>)>;
    virtual void enum_monomials(int degree, const LabelInfo& labels, int max_arity,
                                const MonomialSink& emit) const = 0;
};

// sum-level helpers
TokenSum compose_sum(const Operad& P, const TokenSum& a, int slot, const TokenSum& b);
TokenSum act_sum(const Operad& P, const TokenSum& a, const Perm& p);
// gamma(mu; args...) with all slots filled
TokenSum full_compose(const Operad& P, const OpToken& mu, const std::vector<TokenSum>& args);

// --- the operad zoo ---------------------------------------------------------

enum class UnaryKind { D, Dpm, QsD, TqD };

struct UnaryParams {
    UnaryKind kind = UnaryKind::D;
    int s = 0;         // modulus for QsD
    int q = 0;         // nilpotence bound for TqD
    int exp_cap = 0;   // enumeration/storage bound for D and Dpm (upper end)
    int exp_neg = -1;  // lower end for Dpm is -exp_neg when >= 0, else -exp_cap
};

std::shared_ptr<Operad> com_operad(bool unital, int arity_cap);
std::shared_ptr<Operad> unary_operad(const UnaryParams& u);
// base o U by the distributive law; base must be Com or uCom. dyadic = true
// carves out the suboperad of tuples with sum 2^{-a_j} = 1 (Lev inside Com o D,
// T_q Lev inside Com o T_q D).
std::shared_ptr<Operad> compose_with_unary(bool unital_base, const UnaryParams& u,
                                           int arity_cap, bool dyadic = false);
std::shared_ptr<Operad> lev_operad(int arity_cap);
std::shared_ptr<Operad> truncated_lev(int q, int arity_cap);
std::shared_ptr<Operad> magcom_operad(int arity_cap);

// --- structure checks -------------------------------------------------------

// unit laws, both associativity axioms and action/composition compatibility,
// exhaustive over arities <= max_arity
std::optional<std::string> check_operad_axioms(const Operad& P, int max_arity);

struct CentralityVerdict {
    bool central = true;
    OpToken failing;  // a generator/token violating the interchange law
    bool has_failing = false;
};
// interchange law star(mu,mu) = (mu(star,...,star)) sigma_{2n} over the given
// tokens; star must be Sigma_2-fixed
CentralityVerdict is_central(const Operad& P, const TokenSum& star,
                             const std::vector<OpToken>& over);
CentralityVerdict is_central_on_generators(const Operad& P, const TokenSum& star);
CentralityVerdict is_central_exhaustive(const Operad& P, const TokenSum& star, int max_arity);

// star_k, with the Sigma_{2^k}-invariance assertion when central = true
TokenSum star_power(const Operad& P, const TokenSum& star, int k, bool assert_invariance);

// --- morphisms ---------------------------------------------------------------

struct OperadMorphism {
    const Operad* source = nullptr;
    const Operad* target = nullptr;
    std::function<TokenSum(const OpToken&)> on_token;

    TokenSum map(const TokenSum& x) const;
};

OperadMorphism identity_morphism(const Operad& P);
// tuple -> same tuple; Lev (or T_q Lev) into a Com/uCom-with-unary composite
OperadMorphism tuple_inclusion(const Operad& src, const Operad& dst);
// T_{q+1} Lev -> T_q Lev, killing tuples with an entry > q
OperadMorphism tqlev_projection(const Operad& src, const Operad& dst, int q);
// MagCom -> P classifying star
OperadMorphism magcom_classifying(const Operad& magcom, const Operad& P, const TokenSum& star);

// unit/composition/action compatibility within the arity limit; on failure
// returns a description naming the violated relation
std::optional<std::string> validate_morphism(const OperadMorphism& f, int max_arity);

}  // namespace ua
