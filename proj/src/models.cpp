#include "ua/models.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "ua/steenrod.hpp"

namespace ua {

PolyModel::PolyModel(ModelSpec spec, int cap, std::optional<int64_t> weight_filter)
    : spec_(spec), cap_(cap), wfilter_(weight_filter) {
    if (spec_.kind == ModelKind::Ms) {
        if (spec_.s < 1)
            throw error("Ms model needs s >= 1");
        spec_.lo = 0;
        spec_.hi = spec_.s - 1;
        if (wfilter_)
            throw error("weight pieces are not defined for Ms");
    }
    if (spec_.kind == ModelKind::J && spec_.lo != 0)
        throw error("J model is indexed from 0");
    cert_lo_ = spec_.lo;
    cert_hi_ = spec_.hi;
    build();
}

int PolyModel::wrap(int i) const {
    if (spec_.kind != ModelKind::Ms)
        return i;
    int s = spec_.s;
    return ((i % s) + s) % s;
}

int64_t PolyModel::weight(const PolyMono& m) const {
    if (spec_.kind == ModelKind::Ms)
        return 0;
    int64_t w = 0;
    for (auto& [i, e] : m) {
        if (WEIGHT_SCALE + i < 0 || WEIGHT_SCALE + i > 61)
            throw error("weight: index out of range");
        w += int64_t(e) << (WEIGHT_SCALE + i);
    }
    return w;
}

void PolyModel::build() {
    basis_.assign(cap_ + 1, {});
    std::vector<std::pair<int, int>> cur;
    for (int d = 0; d <= cap_; ++d) {
        cur.clear();
        std::function<void(int, int)> rec_d = [&](int idx, int rem) {
            if (rem == 0) {
                PolyMono m(cur.begin(), cur.end());
                if (!wfilter_ || weight(m) == *wfilter_)
                    basis_[d].push_back(std::move(m));
                return;
            }
            if (idx > spec_.hi)
                return;
            rec_d(idx + 1, rem);
            for (int e = 1; e <= rem; ++e) {
                cur.emplace_back(idx, e);
                rec_d(idx + 1, rem - e);
                cur.pop_back();
            }
        };
        rec_d(spec_.lo, d);
        std::sort(basis_[d].begin(), basis_[d].end());
    }
}

int PolyModel::dim(int d) const {
    if (d < 0 || d > cap_)
        throw error("PolyModel: degree outside cap");
    return int(basis_[d].size());
}

const PolyMono& PolyModel::mono(int d, uint32_t i) const {
    return basis_.at(d).at(i);
}

std::optional<uint32_t> PolyModel::index_of(int d, const PolyMono& m) const {
    if (d < 0 || d > cap_)
        return std::nullopt;
    auto it = std::lower_bound(basis_[d].begin(), basis_[d].end(), m);
    if (it == basis_[d].end() || *it != m)
        return std::nullopt;
    return uint32_t(it - basis_[d].begin());
}

std::optional<uint32_t> PolyModel::var_index(int i) const {
    return index_of(1, PolyMono{{i, 1}});
}

PolyMono PolyModel::mul(const PolyMono& a, const PolyMono& b) {
    PolyMono out;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
            out.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first)
            out.push_back(b[j++]);
        else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        }
    }
    return out;
}

std::optional<PolyMono> PolyModel::shift(const PolyMono& m, int by) const {
    PolyMono out;
    for (auto [i, e] : m) {
        int j = wrap(i - by);
        if (spec_.kind != ModelKind::Ms) {
            if (j < spec_.lo) {
                if (spec_.kind == ModelKind::J && j < 0)
                    return std::nullopt;  // x_{-1} = 0
                return std::nullopt;      // K: cut by the quotient
            }
            if (j > spec_.hi)
                return std::nullopt;  // shifting up out of the window
        }
        out.emplace_back(j, e);
    }
    std::sort(out.begin(), out.end());
    // merge duplicates (possible for Ms)
    PolyMono merged;
    for (auto& [i, e] : out) {
        if (!merged.empty() && merged.back().first == i)
            merged.back().second += e;
        else
            merged.emplace_back(i, e);
    }
    return merged;
}

std::vector<PolyMono> PolyModel::sq_raw(int i, const PolyMono& m) const {
    // per variable: Sq^t(x_j^e) = C(e,t) x_j^{e-t} x_{j-1}^{2t}
    std::vector<PolyMono> out;
    PolyMono acc;
    std::function<void(size_t, int)> rec = [&](size_t v, int rem) {
        if (v == m.size()) {
            if (rem == 0) {
                PolyMono r = acc;
                std::sort(r.begin(), r.end());
                PolyMono merged;
                for (auto& [idx, e] : r) {
                    if (!merged.empty() && merged.back().first == idx)
                        merged.back().second += e;
                    else
                        merged.emplace_back(idx, e);
                }
                out.push_back(std::move(merged));
            }
            return;
        }
        auto [j, e] = m[v];
        for (int t = 0; t <= std::min(rem, e); ++t) {
            if (!binom_mod2(e, t))
                continue;
            int down = wrap(j - 1);
            bool dead = false;
            if (t > 0 && spec_.kind != ModelKind::Ms) {
                if (j - 1 < spec_.lo || j - 1 > spec_.hi)
                    dead = true;  // J floor / K window quotient
            }
            if (dead)
                continue;
            size_t base = acc.size();
            if (e - t > 0)
                acc.emplace_back(j, e - t);
            if (t > 0)
                acc.emplace_back(down, 2 * t);
            rec(v + 1, rem - t);
            acc.resize(base);
        }
    };
    rec(0, i);
    // cancel duplicate terms over F2
    std::sort(out.begin(), out.end());
    std::vector<PolyMono> reduced;
    for (size_t k = 0; k < out.size();) {
        size_t j = k;
        while (j < out.size() && out[j] == out[k])
            ++j;
        if ((j - k) & 1)
            reduced.push_back(out[k]);
        k = j;
    }
    return reduced;
}

F2Vec PolyModel::sq(int i, int d, const F2Vec& v) const {
    if (i == 0)
        return v;
    if (i > d)
        return {};
    if (d + i > cap_)
        throw error("PolyModel::sq above cap");
    F2Vec out;
    for (uint32_t idx : v.s) {
        for (const PolyMono& t : sq_raw(i, mono(d, idx))) {
            auto ti = index_of(d + i, t);
            if (!ti)
                throw error("PolyModel::sq image outside basis");
            out.toggle(*ti);
        }
    }
    return out;
}

void PolyModel::set_certified_window(int lo, int hi) {
    cert_lo_ = lo;
    cert_hi_ = hi;
}

bool PolyModel::certified(const PolyMono& m) const {
    if (spec_.kind == ModelKind::Ms)
        return true;
    for (auto& [i, e] : m)
        if (i < cert_lo_ || i > cert_hi_)
            return false;
    return true;
}

int PolyModel::certified_dim(int d) const {
    int c = 0;
    for (const PolyMono& m : basis_.at(d))
        c += certified(m) ? 1 : 0;
    return c;
}

UnstableModule PolyModel::export_module() const {
    UnstableModule m;
    m.space.cap = cap_;
    m.space.names.assign(cap_ + 1, {});
    for (int d = 0; d <= cap_; ++d)
        for (const PolyMono& mm : basis_[d])
            m.space.names[d].push_back(show(mm));
    m.init_storage();
    for (int d = 1; d <= cap_; ++d)
        for (int i = 1; i <= d && d + i <= cap_; ++i)
            for (int s = 0; s < dim(d); ++s)
                m.act[i][d][s] = sq(i, d, F2Vec::unit(uint32_t(s)));
    return m;
}

std::optional<int> PolyModel::not_classically_unstable() const {
    if (spec_.kind == ModelKind::Ms && spec_.s == 1)
        return std::nullopt;  // indices mod 1: the classical action
    for (int i = spec_.lo; i <= spec_.hi; ++i) {
        if (2 > cap_)
            break;
        PolyMono xi{{i, 1}};
        auto down = shift(xi, 1);
        PolyMono sq1 = down ? mul(*down, *down) : PolyMono{};
        PolyMono square = mul(xi, xi);
        if (!(sq1 == square))
            return i;
    }
    return std::nullopt;
}

std::optional<std::string> PolyModel::star_instability_check() const {
    for (int d = 1; 2 * d <= cap_; ++d) {
        for (int s = 0; s < dim(d); ++s) {
            const PolyMono& m = mono(d, s);
            F2Vec lhs = sq(d, d, F2Vec::unit(uint32_t(s)));
            F2Vec rhs;
            if (auto dm = shift(m, 1)) {
                auto ti = index_of(2 * d, mul(*dm, *dm));
                if (ti)
                    rhs.toggle(*ti);
            }
            if (!(lhs == rhs))
                return "Sq_0 " + show(m) + " != d(m)^2";
        }
    }
    return std::nullopt;
}

std::optional<std::string> PolyModel::check_level_identity() const {
    // a*b = d(a.b); compare the two bracketings on all quadruples
    auto star = [&](const PolyMono& a, const PolyMono& b) { return shift(mul(a, b), 1); };
    for (int da = 1; da <= cap_; ++da)
        for (int db = da; da + db <= cap_; ++db)
            for (int dc = 1; da + db + dc <= cap_; ++dc)
                for (int dd = dc; da + db + dc + dd <= cap_; ++dd)
                    for (int ia = 0; ia < dim(da); ++ia)
                        for (int ib = 0; ib < dim(db); ++ib)
                            for (int ic = 0; ic < dim(dc); ++ic)
                                for (int id = 0; id < dim(dd); ++id) {
                                    auto ab = star(mono(da, ia), mono(db, ib));
                                    auto cd = star(mono(dc, ic), mono(dd, id));
                                    auto ac = star(mono(da, ia), mono(dc, ic));
                                    auto bd = star(mono(db, ib), mono(dd, id));
                                    std::optional<PolyMono> l, r;
                                    if (ab && cd)
                                        l = star(*ab, *cd);
                                    if (ac && bd)
                                        r = star(*ac, *bd);
                                    bool le = l.has_value(), re = r.has_value();
                                    if (le != re || (le && !(*l == *r)))
                                        return "level identity fails on degrees " +
                                               std::to_string(da) + "," + std::to_string(db) +
                                               "," + std::to_string(dc) + "," +
                                               std::to_string(dd);
                                }
    return std::nullopt;
}

std::string PolyModel::show(const PolyMono& m) const {
    if (m.empty())
        return "1";
    std::ostringstream os;
    for (size_t k = 0; k < m.size(); ++k) {
        if (k)
            os << '*';
        os << "x" << m[k].first;
        if (m[k].second > 1)
            os << "^" << m[k].second;
    }
    return os.str();
}

std::string PolyModel::show(int d, const F2Vec& v) const {
    if (v.zero())
        return "0";
    std::ostringstream os;
    for (size_t k = 0; k < v.s.size(); ++k) {
        if (k)
            os << " + ";
        os << show(mono(d, v.s[k]));
    }
    return os.str();
}

// --- comparison with the free side -------------------------------------------

namespace {

// image of j_k = Sq^{2^{k-1}}...Sq^1 iota_1 under iota_1 -> x_gen
std::vector<F2Vec> generator_images(const PolyModel& model, int gen_var, int cap) {
    std::vector<F2Vec> img;
    auto gi = model.var_index(gen_var);
    if (!gi)
        throw error("compare: generator variable outside the model window");
    img.push_back(F2Vec::unit(*gi));
    for (int k = 1, dg = 1; 2 * dg <= cap; ++k) {
        img.push_back(model.sq(dg, dg, img.back()));
        dg *= 2;
    }
    return img;
}

}  // namespace

CompareReport compare_with_free(const PolyModel& model, const QuotientAlgebra& K, int gen_var,
                                int sample_pairs, uint64_t seed) {
    const FreeAlgebra& A = K.ambient();
    int cap = std::min(model.cap(), A.cap());
    std::vector<F2Vec> jimg = generator_images(model, gen_var, cap);

    // map a quotient representative (exponents; j_{k_1}..j_{k_n}) to
    // prod d^{a_j}(jimg[k_j])
    auto map_rep = [&](int d, uint32_t rep_index) -> std::optional<F2Vec> {
        const Monomial& m = A.mono(d, K.reps(d)[rep_index]);
        std::vector<PolyMono> terms{{}};  // running product, starts at 1
        for (size_t slot = 0; slot < m.labels.size(); ++slot) {
            int a = slot < m.op.v.size() ? m.op.v[slot] : 0;
            int ldeg = label_degree(m.labels[slot]);
            // F(1) label of degree 2^k is j_k
            int k = 0;
            while ((1 << k) < ldeg)
                ++k;
            if ((1 << k) != ldeg || k >= int(jimg.size()))
                throw error("compare: module label is not a j_k");
            std::vector<PolyMono> next;
            for (const PolyMono& t : terms) {
                for (uint32_t mi : jimg[k].s) {
                    auto shifted = model.shift(model.mono(ldeg, mi), a);
                    if (!shifted)
                        return std::nullopt;
                    next.push_back(PolyModel::mul(t, *shifted));
                }
            }
            // F2 cancellation
            std::sort(next.begin(), next.end());
            terms.clear();
            for (size_t p = 0; p < next.size();) {
                size_t q = p;
                while (q < next.size() && next[q] == next[p])
                    ++q;
                if ((q - p) & 1)
                    terms.push_back(next[p]);
                p = q;
            }
        }
        F2Vec out;
        for (const PolyMono& t : terms) {
            auto ti = model.index_of(d, t);
            if (!ti)
                return std::nullopt;
            out.toggle(*ti);
        }
        return out;
    };
    auto map_coords = [&](int d, const F2Vec& coords) -> std::optional<F2Vec> {
        F2Vec out;
        for (uint32_t c : coords.s) {
            auto part = map_rep(d, c);
            if (!part)
                return std::nullopt;
            out += *part;
        }
        return out;
    };

    CompareReport rep;
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::optional<F2Vec>>> images(cap + 1);
    for (int d = 1; d <= cap; ++d) {
        CompareReport::Row row;
        row.d = d;
        row.model_dim = model.certified_dim(d);
        row.quotient_dim = K.certified_dim(d);
        // bijectivity over the certified parts
        Eliminator e(model.dim(d));
        images[d].resize(K.reps(d).size());
        bool all_mapped = true;
        for (size_t p = 0; p < K.reps(d).size(); ++p) {
            images[d][p] = map_rep(d, uint32_t(p));
            if (K.rep_certified(d, uint32_t(p))) {
                if (!images[d][p])
                    all_mapped = false;
                else
                    e.insert(*images[d][p]);
            }
        }
        row.rank = e.rank();
        row.bijective = all_mapped && (row.model_dim == row.quotient_dim) &&
                        (int(row.rank) == row.quotient_dim);
        // Sq commutation on certified representatives, every i within cap
        for (size_t p = 0; p < K.reps(d).size() && row.sq_ok; ++p) {
            if (!K.rep_certified(d, uint32_t(p)) || !images[d][p])
                continue;
            for (int i = 1; d + i <= cap && row.sq_ok; ++i) {
                auto lhs = map_coords(d + i, K.sq(i, d, F2Vec::unit(uint32_t(p))));
                F2Vec rhs = model.sq(i, d, *images[d][p]);
                row.sq_ok = lhs.has_value() && *lhs == rhs;
            }
        }
        rep.ok = rep.ok && row.bijective && row.sq_ok;
        rep.rows.push_back(row);
    }
    // products: star on sampled certified pairs
    bool prod_ok = true;
    const TokenSum& star = K.star();
    for (int t = 0; t < sample_pairs && prod_ok; ++t) {
        int da = 1 + int(rng() % uint64_t(cap - 1));
        int db_max = cap - da;
        int db = 1 + int(rng() % uint64_t(db_max));
        if (K.dim(da) == 0 || K.dim(db) == 0)
            continue;
        uint32_t pa = uint32_t(rng() % uint64_t(K.dim(da)));
        uint32_t pb = uint32_t(rng() % uint64_t(K.dim(db)));
        if (!K.rep_certified(da, pa) || !K.rep_certified(db, pb))
            continue;
        auto prod = K.compose(star, {{da, F2Vec::unit(pa)}, {db, F2Vec::unit(pb)}});
        if (!prod)
            continue;
        auto lhs = map_coords(da + db, *prod);
        auto ia = map_rep(da, pa), ib = map_rep(db, pb);
        if (!lhs || !ia || !ib) {
            prod_ok = false;
            break;
        }
        // model-side star: prod of one-step shifts
        F2Vec rhs;
        bool dead = false;
        for (uint32_t ma : ia->s) {
            for (uint32_t mb : ib->s) {
                auto sa = model.shift(model.mono(da, ma), 1);
                auto sb = model.shift(model.mono(db, mb), 1);
                if (!sa || !sb) {
                    continue;  // term cut by the window/floor: the product is 0 there
                }
                auto ti = model.index_of(da + db, PolyModel::mul(*sa, *sb));
                if (!ti) {
                    dead = true;
                    break;
                }
                rhs.toggle(*ti);
            }
            if (dead)
                break;
        }
        if (dead)
            continue;
        prod_ok = (*lhs == rhs);
    }
    if (!rep.rows.empty())
        rep.rows.back().prod_ok = prod_ok;
    rep.ok = rep.ok && prod_ok;
    return rep;
}

// --- cofiltration -------------------------------------------------------------

int weight_piece_dim(ModelKind kind, int s, int lo, int hi, int64_t weight_scaled, int degree) {
    ModelSpec spec;
    spec.kind = kind;
    spec.s = s;
    spec.lo = lo;
    spec.hi = hi;
    PolyModel piece(spec, degree, weight_scaled);
    return piece.dim(degree);
}

CofiltrationReport cofiltration_maps(int q_max, int cap, int stab_degree_cap) {
    CofiltrationReport rep;
    for (int q = 0; q <= q_max; ++q) {
        CofiltrationReport::MapRow row;
        row.q = q;
        ModelSpec up_spec{ModelKind::J, 1, 0, q + 1};
        ModelSpec dn_spec{ModelKind::J, 1, 0, q};
        PolyModel up(up_spec, cap, int64_t(1) << (PolyModel::WEIGHT_SCALE + q + 1));
        PolyModel dn(dn_spec, cap, int64_t(1) << (PolyModel::WEIGHT_SCALE + q));
        // generator: x_{q+1} -> x_q
        auto gi = up.var_index(q + 1);
        if (gi) {
            auto img = up.shift(up.mono(1, *gi), 1);
            row.gen_ok = img && dn.index_of(1, *img).has_value() &&
                         *img == PolyMono{{q, 1}};
        }
        // the map on a monomial is d = shift by one
        auto map_mono = [&](const PolyMono& m) -> std::optional<PolyMono> {
            return up.shift(m, 1);
        };
        // Sq compatibility: map(Sq^i m) = Sq^i map(m)
        for (int d = 1; d <= cap && row.sq_ok; ++d) {
            for (int mi = 0; mi < up.dim(d) && row.sq_ok; ++mi) {
                for (int i = 1; d + i <= cap && row.sq_ok; ++i) {
                    F2Vec lhs_up = up.sq(i, d, F2Vec::unit(uint32_t(mi)));
                    F2Vec lhs;
                    for (uint32_t t : lhs_up.s) {
                        if (auto mm = map_mono(up.mono(d + i, t))) {
                            auto ti = dn.index_of(d + i, *mm);
                            if (ti)
                                lhs.toggle(*ti);
                        }
                    }
                    F2Vec rhs;
                    if (auto mm = map_mono(up.mono(d, uint32_t(mi)))) {
                        auto ti = dn.index_of(d, *mm);
                        if (ti)
                            rhs = dn.sq(i, d, F2Vec::unit(*ti));
                    }
                    row.sq_ok = (lhs == rhs);
                }
            }
        }
        // star compatibility: map(a*b) = map(a)*map(b)
        for (int da = 1; da <= cap && row.star_ok; ++da) {
            for (int db = da; da + db <= cap && row.star_ok; ++db) {
                for (int ia = 0; ia < up.dim(da) && row.star_ok; ++ia) {
                    for (int ib = 0; ib < up.dim(db) && row.star_ok; ++ib) {
                        auto star_up =
                            up.shift(PolyModel::mul(up.mono(da, ia), up.mono(db, ib)), 1);
                        std::optional<PolyMono> lhs;
                        if (star_up)
                            lhs = map_mono(*star_up);
                        auto ma = map_mono(up.mono(da, ia));
                        auto mb = map_mono(up.mono(db, ib));
                        std::optional<PolyMono> rhs;
                        if (ma && mb)
                            rhs = dn.shift(PolyModel::mul(*ma, *mb), 1);
                        bool le = lhs.has_value(), re = rhs.has_value();
                        row.star_ok = (le == re) && (!le || *lhs == *rhs);
                    }
                }
            }
        }
        rep.maps_ok = rep.maps_ok && row.star_ok && row.sq_ok && row.gen_ok;
        rep.maps.push_back(row);
    }
    // stabilization of dim J(2^q)^d to dim K(1)^d: entries of a size-d dyadic
    // solution are at most d-1, so the threshold is q = d-1
    for (int d = 1; d <= stab_degree_cap; ++d) {
        CofiltrationReport::StabRow row;
        row.d = d;
        row.k1_dim = weight_piece_dim(ModelKind::K, 1, -std::max(1, d), 1,
                                      int64_t(1) << PolyModel::WEIGHT_SCALE, d);
        int qt = std::max(0, d - 1);
        row.stable_from_q = qt;
        int at = weight_piece_dim(ModelKind::J, 1, 0, qt,
                                  int64_t(1) << (PolyModel::WEIGHT_SCALE + qt), d);
        int beyond = weight_piece_dim(ModelKind::J, 1, 0, qt + 1,
                                      int64_t(1) << (PolyModel::WEIGHT_SCALE + qt + 1), d);
        row.stable_at_threshold = (at == row.k1_dim) && (beyond == row.k1_dim);
        int qs = 0;
        while ((1 << qs) < d)
            ++qs;
        row.j_dim_at_spec_q = weight_piece_dim(ModelKind::J, 1, 0, qs,
                                               int64_t(1) << (PolyModel::WEIGHT_SCALE + qs), d);
        row.spec_threshold_holds = (row.j_dim_at_spec_q == row.k1_dim);
        rep.stab_ok = rep.stab_ok && row.stable_at_threshold;
        rep.stab.push_back(row);
    }
    return rep;
}

}  // namespace ua
