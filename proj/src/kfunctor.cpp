#include "ua/kfunctor.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ua {

std::string flavor_name(IdealFlavor f) {
    switch (f) {
        case IdealFlavor::X: return "X";
        case IdealFlavor::Unst: return "Unst";
        case IdealFlavor::E: return "E";
    }
    return "?";
}

QuotientAlgebra::QuotientAlgebra(const FreeAlgebra& A, IdealFlavor flavor, TokenSum star,
                                 const LoopsData* loops, const GradedSection* section,
                                 bool record_spans)
    : A_(&A), flavor_(flavor), star_(std::move(star)) {
    build(loops, section, record_spans);
}

void QuotientAlgebra::build(const LoopsData* loops, const GradedSection* section,
                            bool record_spans) {
    const FreeAlgebra& A = *A_;
    const UnstableModule* M = A.module();
    if (!M)
        throw error("QuotientAlgebra: ambient algebra carries no module action");
    int cap = A.cap();

    // ideal generators grouped by degree
    std::map<int, std::vector<F2Vec>> gens;
    auto add_gen = [&](int de, std::optional<F2Vec> e) {
        if (e && !e->zero())
            gens[de].push_back(std::move(*e));
    };

    if (flavor_ == IdealFlavor::Unst) {
        for (int m = 1; 2 * m <= cap; ++m) {
            for (int x = 0; x < M->dim(m); ++x) {
                F2Vec lhs = A.embed(2 * m, M->sq_basis(m, m, uint32_t(x)));
                F2Vec emb = A.embed(m, F2Vec::unit(uint32_t(x)));
                auto rhs = A.compose(star_, {{m, emb}, {m, emb}});
                if (!rhs)
                    continue;  // star lands outside the window; boundary only
                add_gen(2 * m, lhs + *rhs);
            }
        }
    } else if (flavor_ == IdealFlavor::X) {
        for (int m = 1; 2 * m <= cap; ++m) {
            for (int t = 0; t < A.dim(m); ++t) {
                F2Vec lhs = A.sq(m, m, F2Vec::unit(uint32_t(t)));
                auto rhs = A.alpha_star(star_, m, uint32_t(t));
                if (!rhs)
                    continue;
                add_gen(2 * m, lhs + *rhs);
            }
        }
    } else {
        if (!loops || !section)
            throw error("flavor E needs Sigma Omega M and a graded section");
        ReducedVerdict rv = is_reduced(*M);
        if (!rv.reduced)
            throw error("flavor E requires a reduced module (Sq_0 fails in degree " +
                        std::to_string(rv.fail_degree) + ")");
        for (int mb = 1; mb <= cap; ++mb) {
            for (size_t j = 0; j < loops->reps[mb].size(); ++j) {
                const F2Vec& sb = section->values[mb][j];
                F2Vec emb = A.embed(mb, sb);
                F2Vec top = sb;  // Sq_0^k s(b) computed in the module
                for (int k = 1, dk = mb; 2 * dk <= cap; ++k) {
                    top = M->sq(dk, dk, top);
                    dk *= 2;
                    TokenSum sk = star_power(A.P(), star_, k, false);
                    std::vector<std::pair<int, F2Vec>> args(size_t(1) << k, {mb, emb});
                    auto rhs = A.compose(sk, args);
                    if (rhs)
                        add_gen(dk, A.embed(dk, top) + *rhs);
                }
            }
        }
    }

    elims_.resize(cap + 1);
    reps_.resize(cap + 1);
    rep_pos_.assign(cap + 1, {});
    skipped_.assign(cap + 1, 0);
    spans_.resize(cap + 1);

    for (int d = 0; d <= cap; ++d) {
        const auto& blocks = A.blocks(d);
        for (const auto& b : blocks)
            elims_[d].emplace_back(b.end - b.begin);
        auto insert_vec = [&](const F2Vec& v) {
            if (v.zero())
                return;
            size_t bi = A.block_of(d, v.s.front());
            const auto& b = blocks[bi];
            F2Vec local;
            for (uint32_t i : v.s) {
                if (i < b.begin || i >= b.end)
                    throw error("ideal span vector crosses weight blocks");
                local.s.push_back(i - b.begin);
            }
            elims_[d][bi].insert(local);
            if (record_spans)
                spans_[d].push_back(v);
        };
        for (auto& [de, evecs] : gens) {
            if (de > d)
                continue;
            enumerate_pointed(A, d, de,
                              [&](const OpToken& mu, const std::vector<uint32_t>& lbl, size_t pos) {
                                  for (const F2Vec& e : evecs) {
                                      auto v = A.substitute(mu, lbl, pos, de, e);
                                      if (!v) {
                                          ++skipped_[d];
                                          continue;
                                      }
                                      insert_vec(*v);
                                  }
                              });
        }
        // representatives: non-pivot columns, globalized
        rep_pos_[d].assign(A.dim(d), -1);
        for (size_t bi = 0; bi < blocks.size(); ++bi) {
            for (uint32_t loc : elims_[d][bi].free_indices()) {
                rep_pos_[d][blocks[bi].begin + loc] = int32_t(reps_[d].size());
                reps_[d].push_back(blocks[bi].begin + loc);
            }
        }
    }
}

int QuotientAlgebra::certified_dim(int d) const {
    int c = 0;
    for (uint32_t r : reps_.at(d))
        c += A_->certified(A_->mono(d, r)) ? 1 : 0;
    return c;
}

bool QuotientAlgebra::rep_certified(int d, uint32_t pos) const {
    return A_->certified(A_->mono(d, reps_.at(d).at(pos)));
}

F2Vec QuotientAlgebra::reduce_ambient(int d, const F2Vec& v) const {
    const auto& blocks = A_->blocks(d);
    F2Vec out;
    size_t k = 0;
    while (k < v.s.size()) {
        size_t bi = A_->block_of(d, v.s[k]);
        const auto& b = blocks[bi];
        F2Vec local;
        while (k < v.s.size() && v.s[k] < b.end) {
            local.s.push_back(v.s[k] - b.begin);
            ++k;
        }
        F2Vec red = elims_.at(d)[bi].reduce(local);
        for (uint32_t i : red.s)
            out.s.push_back(i + b.begin);
    }
    out.normalize();
    return out;
}

F2Vec QuotientAlgebra::to_coords(int d, const F2Vec& reduced_ambient) const {
    F2Vec out;
    for (uint32_t i : reduced_ambient.s) {
        int32_t p = rep_pos_.at(d).at(i);
        if (p < 0)
            throw error("to_coords: element not reduced");
        out.s.push_back(uint32_t(p));
    }
    out.normalize();
    return out;
}

F2Vec QuotientAlgebra::coords_to_ambient(int d, const F2Vec& coords) const {
    F2Vec out;
    for (uint32_t c : coords.s)
        out.s.push_back(reps_.at(d).at(c));
    out.normalize();
    return out;
}

F2Vec QuotientAlgebra::sq(int i, int d, const F2Vec& coords) const {
    if (i == 0)
        return coords;
    F2Vec ambient = coords_to_ambient(d, coords);
    return reduce(d + i, A_->sq(i, d, ambient));
}

std::optional<F2Vec> QuotientAlgebra::compose(const TokenSum& mu,
                                              const std::vector<std::pair<int, F2Vec>>& args) const {
    std::vector<std::pair<int, F2Vec>> amb;
    int out_deg = 0;
    for (auto& [dg, v] : args) {
        amb.emplace_back(dg, coords_to_ambient(dg, v));
        out_deg += dg;
    }
    auto r = A_->compose(mu, amb);
    if (!r)
        return std::nullopt;
    return reduce(out_deg, *r);
}

std::optional<std::string> QuotientAlgebra::check_star_instability() const {
    for (int d = 1; 2 * d <= A_->cap(); ++d) {
        for (size_t p = 0; p < reps_.at(d).size(); ++p) {
            uint32_t r = reps_[d][p];
            auto st = A_->alpha_star(star_, d, r);
            if (!st)
                continue;  // outside the window: not a certified representative
            F2Vec v = A_->sq(d, d, F2Vec::unit(r)) + *st;
            if (!reduce_ambient(2 * d, v).zero()) {
                return "star-instability fails on " + A_->show_mono(A_->mono(d, r)) +
                       " in degree " + std::to_string(d);
            }
        }
    }
    return std::nullopt;
}

size_t QuotientAlgebra::ideal_rank(int d) const {
    size_t r = 0;
    for (const Eliminator& e : elims_.at(d))
        r += e.rank();
    return r;
}

const std::vector<F2Vec>& QuotientAlgebra::recorded_spans(int d) const {
    return spans_.at(d);
}

IdealEqualityReport ideal_equalities_check(const FreeAlgebra& A, const TokenSum& star,
                                           const LoopsData& loops, const GradedSection& section) {
    QuotientAlgebra qx(A, IdealFlavor::X, star, nullptr, nullptr, true);
    QuotientAlgebra qu(A, IdealFlavor::Unst, star, nullptr, nullptr, true);
    QuotientAlgebra qe(A, IdealFlavor::E, star, &loops, &section, true);
    IdealEqualityReport rep;
    for (int d = 0; d <= A.cap(); ++d) {
        IdealEqualityReport::Row row;
        row.d = d;
        row.rank_x = qx.ideal_rank(d);
        row.rank_unst = qu.ideal_rank(d);
        row.rank_e = qe.ideal_rank(d);
        bool eq = true;
        // cyclic inclusions X <= Unst <= E <= X give equality of the spans
        for (const F2Vec& v : qx.recorded_spans(d))
            eq = eq && qu.reduce_ambient(d, v).zero();
        for (const F2Vec& v : qu.recorded_spans(d))
            eq = eq && qe.reduce_ambient(d, v).zero();
        for (const F2Vec& v : qe.recorded_spans(d))
            eq = eq && qx.reduce_ambient(d, v).zero();
        row.equal = eq && row.rank_x == row.rank_unst && row.rank_unst == row.rank_e;
        rep.ok = rep.ok && row.equal;
        rep.rows.push_back(row);
    }
    return rep;
}

ThetaIso::ThetaIso(const QuotientAlgebra& K, const FreeAlgebra& B, const LoopsData& loops,
                   const GradedSection& section, bool centrality_certified)
    : K_(&K), B_(&B), loops_(&loops), sec_(&section) {
    if (!centrality_certified)
        throw error("theorem_iso: centrality certificate required before construction");
    const FreeAlgebra& A = K.ambient();
    if (A.P_ptr().get() != B.P_ptr().get())
        throw error("theorem_iso: quotient and free side must share the operad");
    const UnstableModule& M = *A.module();
    if (!M.connected())
        throw error("theorem_iso: module must be connected");
    ReducedVerdict rv = is_reduced(M);
    if (!rv.reduced)
        throw error(
            "theorem_iso: module is not reduced (the conclusion can fail there, as for Sigma F(0))");

    // phi on module tokens: solve x = sum Sq_0^k s(b) and map the witnesses to
    // (star_k; b x 2^k)
    int cap = A.cap();
    phi_tok_.assign(cap + 1, {});
    for (int n = 1; n <= cap; ++n) {
        int dn = M.dim(n);
        if (dn == 0)
            continue;
        std::vector<F2Vec> cols;                   // in M^n
        std::vector<F2Vec> images;                 // in B^n
        for (int k = 0, dk = n; dk >= 1; ++k, dk /= 2) {
            if (n % (1 << k) != 0)
                break;
            int mb = n >> k;
            if ((mb << k) != n)
                break;
            for (size_t j = 0; j < loops.reps[mb].size(); ++j) {
                F2Vec v = section.values[mb][j];
                int dg = mb;
                for (int t = 0; t < k; ++t) {
                    v = M.sq(dg, dg, v);
                    dg *= 2;
                }
                if (v.zero())
                    continue;
                TokenSum sk = star_power(B.P(), K.star(), k, false);
                F2Vec bemb = B.embed(mb, F2Vec::unit(uint32_t(j)));
                std::vector<std::pair<int, F2Vec>> args(size_t(1) << k, {mb, bemb});
                auto img = B.compose(sk, args);
                if (!img)
                    throw error("theorem_iso: star_k image outside the stored window");
                cols.push_back(v);
                images.push_back(*img);
            }
        }
        phi_tok_[n].assign(dn, F2Vec{});
        for (int x = 0; x < dn; ++x) {
            Membership mem = solve_membership(size_t(dn), F2Vec::unit(uint32_t(x)), cols);
            if (!mem.member)
                throw error("theorem_iso: module token not spanned by Sq_0^k s(b) in degree " +
                            std::to_string(n));
            F2Vec img;
            for (size_t w : mem.witness)
                img += images[w];
            phi_tok_[n][x] = img;
        }
    }
}

std::optional<F2Vec> ThetaIso::lift(int d, const F2Vec& b_elem) const {
    const FreeAlgebra& A = K_->ambient();
    F2Vec out;
    for (uint32_t bi : b_elem.s) {
        const Monomial& m = B_->mono(d, bi);
        std::vector<std::pair<int, F2Vec>> args;
        for (uint32_t l : m.labels) {
            int dg = label_degree(l);
            args.emplace_back(dg, A.embed(dg, sec_->values[dg][label_index(l)]));
        }
        auto img = A.compose(m.op, args);
        if (!img)
            return std::nullopt;
        out += *img;
    }
    return out;
}

F2Vec ThetaIso::psi(int d, const F2Vec& b_elem) const {
    auto l = lift(d, b_elem);
    if (!l)
        throw error("psi: lift left the stored window");
    return K_->reduce(d, *l);
}

std::optional<F2Vec> ThetaIso::phibar(int d, const F2Vec& ambient) const {
    const FreeAlgebra& A = K_->ambient();
    F2Vec out;
    for (uint32_t ai : ambient.s) {
        const Monomial& m = A.mono(d, ai);
        std::vector<std::pair<int, F2Vec>> args;
        for (uint32_t l : m.labels)
            args.emplace_back(label_degree(l), phi_tok_.at(label_degree(l)).at(label_index(l)));
        auto img = B_->compose(m.op, args);
        if (!img)
            return std::nullopt;
        out += *img;
    }
    return out;
}

std::optional<F2Vec> ThetaIso::phihat(int d, const F2Vec& coords) const {
    return phibar(d, K_->coords_to_ambient(d, coords));
}

std::optional<F2Vec> ThetaIso::odot(int i, int d, const F2Vec& b_elem) const {
    auto l = lift(d, b_elem);
    if (!l)
        return std::nullopt;
    return phibar(d + i, K_->ambient().sq(i, d, *l));
}

TheoremReport theorem_dimension_table(const QuotientAlgebra& K, const FreeAlgebra& B) {
    TheoremReport rep;
    for (int d = 0; d <= B.cap(); ++d) {
        TheoremReport::Row row;
        row.d = d;
        row.quotient = K.certified_dim(d);
        row.free_dim = B.certified_dim(d);
        row.match = (row.quotient == row.free_dim);
        rep.ok = rep.ok && row.match;
        rep.rows.push_back(row);
    }
    return rep;
}

InducedMap induced_morphism(const OperadMorphism& f, const TokenSum& star_src,
                            const TokenSum& star_dst, const QuotientAlgebra& Ksrc,
                            const QuotientAlgebra& Kdst) {
    if (!(f.map(star_src) == star_dst))
        throw error("induced_morphism: f(star_P) != star_Q");
    const FreeAlgebra& A = Ksrc.ambient();
    const FreeAlgebra& B = Kdst.ambient();
    InducedMap out;
    int cap = std::min(A.cap(), B.cap());
    out.columns.assign(cap + 1, {});
    out.kernel_dim.assign(cap + 1, 0);
    for (int d = 0; d <= cap; ++d) {
        Eliminator e(Kdst.dim(d));
        for (size_t p = 0; p < Ksrc.reps(d).size(); ++p) {
            const Monomial& m = A.mono(d, Ksrc.reps(d)[p]);
            TokenSum ts = f.on_token(m.op);
            F2Vec img_ambient;
            for (const OpToken& t : ts.t) {
                OpToken tok = t;
                std::vector<uint32_t> lbl = m.labels;
                B.P().canonicalize(tok, lbl);
                auto idx = B.index_of(d, Monomial{std::move(tok), std::move(lbl)});
                if (!idx)
                    throw error("induced_morphism: image outside the target basis");
                img_ambient.toggle(*idx);
            }
            F2Vec img = Kdst.reduce(d, img_ambient);
            out.columns[d].push_back(img);
            e.insert(img);
        }
        out.kernel_dim[d] = int(Ksrc.reps(d).size() - e.rank());
    }
    return out;
}

}  // namespace ua
