#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ua/f2.hpp"
#include "ua/kfunctor.hpp"
#include "ua/unstable.hpp"

namespace ua {

// Polynomial algebras on degree-1 variables x_i with the shifted action
// Sq^1 x_i = x_{i-1}^2 extended by the Cartan formula.
//   J (Brown-Gitler):   i in [0, hi], x_{-1} = 0; hi = q realizes the
//                        truncation, the direct sum of J(1)..J(2^q) etc.
//   K (Carlsson):        i in [lo, hi]; variables below lo are cut by the
//                        quotient by the ideal (x_j : j < lo), which is
//                        Sq-stable, so the truncation is a genuine module.
//   Ms (Campbell-Selick): i in Z/s, all arithmetic cyclic.
enum class ModelKind { J, K, Ms };

struct ModelSpec {
    ModelKind kind = ModelKind::J;
    int s = 1;           // Ms modulus
    int lo = 0, hi = 0;  // variable window for J/K
};

// monomial: sorted (variable index, exponent > 0)
using PolyMono = std::vector<std::pair<int, int>>;

class PolyModel {
public:
    static constexpr int WEIGHT_SCALE = 30;

    // weight_filter restricts the basis to one weight piece (J(n), K(n));
    // the shifted action preserves weights, so pieces are genuine modules
    PolyModel(ModelSpec spec, int cap, std::optional<int64_t> weight_filter = std::nullopt);

    const ModelSpec& spec() const { return spec_; }
    int cap() const { return cap_; }
    std::optional<int64_t> weight_filter() const { return wfilter_; }

    int dim(int d) const;
    const PolyMono& mono(int d, uint32_t i) const;
    std::optional<uint32_t> index_of(int d, const PolyMono& m) const;
    std::optional<uint32_t> var_index(int i) const;  // degree-1 monomial x_i

    // raw monomial calculus
    static PolyMono mul(const PolyMono& a, const PolyMono& b);
    // d^by (by >= 0 shifts down, by < 0 up); nullopt when a variable leaves
    // the window (J: below 0 the term is zero, reported as empty via sq/shift)
    std::optional<PolyMono> shift(const PolyMono& m, int by) const;
    int64_t weight(const PolyMono& m) const;  // scaled by 2^WEIGHT_SCALE

    // Sq^i as (SA) + Cartan; terms leaving the K window are cut by the
    // quotient, terms under J's floor vanish
    F2Vec sq(int i, int d, const F2Vec& v) const;
    std::vector<PolyMono> sq_raw(int i, const PolyMono& m) const;

    // certified sub-window for reporting (defaults to the full window)
    void set_certified_window(int lo, int hi);
    bool certified(const PolyMono& m) const;
    int certified_dim(int d) const;

    UnstableModule export_module() const;

    // x_i with Sq_0 x_i = x_{i-1}^2 != x_i^2 (none for Ms with s = 1)
    std::optional<int> not_classically_unstable() const;
    // Sq_0 m = d(m)^2 on every monomial with 2 deg <= cap
    std::optional<std::string> star_instability_check() const;
    // level identity (a*b)*(c*d) = (a*c)*(b*d) for the internal product
    // a*b := d(a.b) on all monomial quadruples with total degree <= cap
    std::optional<std::string> check_level_identity() const;

    std::string show(const PolyMono& m) const;
    std::string show(int d, const F2Vec& v) const;

private:
    ModelSpec spec_;
    int cap_;
    std::optional<int64_t> wfilter_;
    int cert_lo_, cert_hi_;
    std::vector<std::vector<PolyMono>> basis_;

    void build();
    int wrap(int i) const;  // index arithmetic (cyclic for Ms)
};

// classifying map from a quotient K_P(F(1)) onto a model (or weight piece):
// iota_1 -> x_gen, operad exponent tuples act as products of shifted images
struct CompareReport {
    struct Row {
        int d = 0;
        int model_dim = 0, quotient_dim = 0;
        size_t rank = 0;
        bool bijective = false, sq_ok = true, prod_ok = true;
    };
    std::vector<Row> rows;
    bool ok = true;
};
CompareReport compare_with_free(const PolyModel& model, const QuotientAlgebra& K, int gen_var,
                                int sample_pairs, uint64_t seed);

// the cofiltration maps d : J(2^{q+1}) -> J(2^q) (x_{q+1} -> x_q, compatible
// with the internal products and the action), plus the stabilization of
// dim J(2^q)^d to dim K(1)^d
struct CofiltrationReport {
    struct MapRow {
        int q;
        bool star_ok = true, sq_ok = true, gen_ok = true;
    };
    struct StabRow {
        int d;
        int k1_dim;
        int stable_from_q;       // provable threshold d-1
        bool stable_at_threshold;
        int j_dim_at_spec_q;     // dim J(2^q)^d at the smallest q with 2^q >= d
        bool spec_threshold_holds;
    };
    std::vector<MapRow> maps;
    std::vector<StabRow> stab;
    bool maps_ok = true, stab_ok = true;
};
CofiltrationReport cofiltration_maps(int q_max, int cap, int stab_degree_cap);

// dimension of the weight piece by direct enumeration (the oracle side of
// the dimension comparisons)
int weight_piece_dim(ModelKind kind, int s, int lo, int hi, int64_t weight_scaled, int degree);

}  // namespace ua
