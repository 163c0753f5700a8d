#include "ua/freealg.hpp"

#include <algorithm>
#include <sstream>

namespace ua {

int Monomial::degree() const {
    int d = 0;
    for (uint32_t k : labels)
        d += label_degree(k);
    return d;
}

size_t MonomialHash::operator()(const Monomial& m) const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    mix(uint64_t(m.op.arity));
    for (int x : m.op.v)
        mix(uint64_t(uint32_t(x)) + 0x9e3779b9u);
    for (uint32_t l : m.labels)
        mix(l);
    return size_t(h);
}

bool mono_less(const Monomial& a, const Monomial& b) {
    // compare label keys from the largest down; degree sits in the high bits
    size_t na = a.labels.size(), nb = b.labels.size();
    size_t n = std::min(na, nb);
    for (size_t k = 1; k <= n; ++k) {
        uint32_t xa = a.labels[na - k], xb = b.labels[nb - k];
        if (xa != xb)
            return xa < xb;
    }
    if (na != nb)
        return na < nb;
    if (!(a.op == b.op))
        return a.op < b.op;
    return a.labels < b.labels;
}

FreeAlgebra::FreeAlgebra(std::shared_ptr<const Operad> P, const UnstableModule& M, int cap)
    : P_(std::move(P)), mod_(&M), labels_(&M.space), cap_(cap) {
    if (M.cap() < cap)
        throw error("FreeAlgebra: module cap below algebra cap");
    if (M.dim(0) > 0 && !P_->has_nullary())
        throw error("FreeAlgebra: non-connected module over an operad without arity 0");
    build();
}

FreeAlgebra::FreeAlgebra(std::shared_ptr<const Operad> P, const GradedSpace& labels, int cap)
    : P_(std::move(P)), mod_(nullptr), cap_(cap) {
    owned_labels_ = labels;
    labels_ = &owned_labels_;
    if (labels.cap < cap)
        throw error("FreeAlgebra: label space cap below algebra cap");
    build();
}

void FreeAlgebra::build() {
    Operad::LabelInfo universe;
    for (int d = 0; d <= std::min(cap_, labels_->cap); ++d)
        for (uint32_t i = 0; i < uint32_t(labels_->dim(d)); ++i)
            universe.emplace_back(label_key(d, i), d);
    std::sort(universe.begin(), universe.end());

    basis_.assign(cap_ + 1, {});
    index_.assign(cap_ + 1, {});
    blocks_.assign(cap_ + 1, {});
    for (int d = 0; d <= cap_; ++d) {
        std::vector<Monomial> ms;
        P_->enum_monomials(d, universe, cap_, [&](OpToken tok, std::vector<uint32_t> lbl) {
            ms.push_back(Monomial{std::move(tok), std::move(lbl)});
        });
        std::sort(ms.begin(), ms.end(), [&](const Monomial& a, const Monomial& b) {
            int64_t wa = P_->weight_key(a.op), wb = P_->weight_key(b.op);
            if (wa != wb)
                return wa < wb;
            return mono_less(a, b);
        });
        for (uint32_t i = 0; i < ms.size(); ++i)
            index_[d].emplace(ms[i], i);
        if (index_[d].size() != ms.size())
            throw error("FreeAlgebra: duplicate canonical monomials in degree " +
                        std::to_string(d));
        // contiguous weight blocks
        uint32_t start = 0;
        for (uint32_t i = 0; i <= ms.size(); ++i) {
            if (i == ms.size() ||
                (i > start && P_->weight_key(ms[i].op) != P_->weight_key(ms[start].op))) {
                if (i > start)
                    blocks_[d].push_back({P_->weight_key(ms[start].op), start, i});
                start = i;
            }
        }
        basis_[d] = std::move(ms);
    }
}

int FreeAlgebra::dim(int d) const {
    if (d < 0 || d > cap_)
        throw error("FreeAlgebra: degree outside cap");
    return int(basis_[d].size());
}

const Monomial& FreeAlgebra::mono(int d, uint32_t i) const {
    return basis_.at(d).at(i);
}

std::optional<uint32_t> FreeAlgebra::index_of(int d, const Monomial& m) const {
    if (d < 0 || d > cap_)
        throw error("FreeAlgebra: degree outside cap");
    auto it = index_[d].find(m);
    if (it == index_[d].end())
        return std::nullopt;
    return it->second;
}

int FreeAlgebra::degree_of_labels(const std::vector<uint32_t>& labels) const {
    int d = 0;
    for (uint32_t k : labels)
        d += label_degree(k);
    return d;
}

const std::vector<FreeAlgebra::Block>& FreeAlgebra::blocks(int d) const {
    return blocks_.at(d);
}

size_t FreeAlgebra::block_of(int d, uint32_t index) const {
    const auto& bl = blocks_.at(d);
    for (size_t k = 0; k < bl.size(); ++k)
        if (index >= bl[k].begin && index < bl[k].end)
            return k;
    throw error("block_of: index outside basis");
}

void FreeAlgebra::set_certified_window(int lo, int hi) {
    windowed_ = true;
    win_lo_ = lo;
    win_hi_ = hi;
}

bool FreeAlgebra::certified(const Monomial& m) const {
    if (!windowed_)
        return true;
    for (int a : m.op.v)
        if (a < win_lo_ || a > win_hi_)
            return false;
    return true;
}

int FreeAlgebra::certified_dim(int d) const {
    if (!windowed_)
        return dim(d);
    int c = 0;
    for (const Monomial& m : basis_.at(d))
        c += certified(m) ? 1 : 0;
    return c;
}

F2Vec FreeAlgebra::embed(int d, const F2Vec& module_elem) const {
    F2Vec out;
    for (uint32_t i : module_elem.s) {
        Monomial m{P_->unit(), {label_key(d, i)}};
        auto idx = index_of(d, m);
        if (!idx)
            throw error("embed: arity-1 monomial missing from basis");
        out.toggle(*idx);
    }
    return out;
}

std::optional<F2Vec> FreeAlgebra::compose(const OpToken& mu,
                                          const std::vector<std::pair<int, F2Vec>>& args) const {
    if (int(args.size()) != mu.arity)
        throw error("compose: arity mismatch");
    int out_deg = 0;
    for (auto& [dg, v] : args)
        out_deg += dg;
    if (out_deg > cap_)
        throw error("compose: degree above cap");
    F2Vec out;
    // combos of support monomials slot by slot
    std::vector<const Monomial*> picked(args.size());
    bool truncated = false;
    std::function<void(size_t)> rec = [&](size_t slot) {
        if (truncated)
            return;
        if (slot == args.size()) {
            // fold the operad tokens right-to-left, then attach labels
            TokenSum toks(mu);
            for (size_t j = args.size(); j-- > 0;) {
                TokenSum next;
                for (const OpToken& t : toks.t)
                    next += P_->compose(t, int(j), picked[j]->op);
                toks = next;
            }
            for (const OpToken& t : toks.t) {
                std::vector<uint32_t> lbl;
                for (size_t j = 0; j < args.size(); ++j)
                    lbl.insert(lbl.end(), picked[j]->labels.begin(), picked[j]->labels.end());
                OpToken tok = t;
                P_->canonicalize(tok, lbl);
                auto idx = index_of(out_deg, Monomial{std::move(tok), std::move(lbl)});
                if (!idx) {
                    truncated = true;
                    return;
                }
                out.toggle(*idx);
            }
            return;
        }
        for (uint32_t i : args[slot].second.s) {
            picked[slot] = &mono(args[slot].first, i);
            rec(slot + 1);
            if (truncated)
                return;
        }
    };
    rec(0);
    if (truncated)
        return std::nullopt;
    return out;
}

std::optional<F2Vec> FreeAlgebra::compose(const TokenSum& mu,
                                          const std::vector<std::pair<int, F2Vec>>& args) const {
    F2Vec out;
    for (const OpToken& t : mu.t) {
        auto part = compose(t, args);
        if (!part)
            return std::nullopt;
        out += *part;
    }
    return out;
}

F2Vec FreeAlgebra::cartan_sq(int i, int d, uint32_t index) const {
    if (!mod_)
        throw error("cartan_sq: no module action available");
    if (d + i > cap_)
        throw error("cartan_sq: degree above cap");
    const Monomial& m = mono(d, index);
    int n = int(m.labels.size());
    F2Vec out;
    std::vector<F2Vec> slot_val(n);
    std::vector<uint32_t> lbl(n);
    // distribute i over the slots; instability bounds each share by the slot degree
    std::function<void(int, int)> rec = [&](int slot, int rem) {
        if (slot == n) {
            if (rem != 0)
                return;
            OpToken tok = m.op;
            std::vector<uint32_t> labels = lbl;
            P_->canonicalize(tok, labels);
            auto idx = index_of(d + i, Monomial{std::move(tok), std::move(labels)});
            if (!idx)
                throw error("cartan_sq: image monomial missing from basis");
            out.toggle(*idx);
            return;
        }
        int dg = label_degree(m.labels[slot]);
        uint32_t src = label_index(m.labels[slot]);
        for (int share = 0; share <= std::min(rem, dg); ++share) {
            F2Vec img = mod_->sq_basis(share, dg, src);
            for (uint32_t t : img.s) {
                lbl[slot] = label_key(dg + share, t);
                rec(slot + 1, rem - share);
            }
        }
    };
    rec(0, i);
    return out;
}

F2Vec FreeAlgebra::sq(int i, int d, const F2Vec& v) const {
    if (i == 0)
        return v;
    if (i > d)
        return {};
    F2Vec out;
    for (uint32_t idx : v.s)
        out += cartan_sq(i, d, idx);
    return out;
}

std::optional<F2Vec> FreeAlgebra::alpha_star(const TokenSum& star, int d, uint32_t index) const {
    std::vector<std::pair<int, F2Vec>> args{{d, F2Vec::unit(index)}, {d, F2Vec::unit(index)}};
    return compose(star, args);
}

std::optional<F2Vec> FreeAlgebra::substitute(const OpToken& mu, const std::vector<uint32_t>& labels,
                                             size_t pos, int de, const F2Vec& e) const {
    int out_deg = de;
    for (size_t j = 0; j < labels.size(); ++j)
        if (j != pos)
            out_deg += label_degree(labels[j]);
    F2Vec out;
    for (uint32_t ei : e.s) {
        const Monomial& em = mono(de, ei);
        TokenSum ts = P_->compose(mu, int(pos), em.op);
        for (const OpToken& t : ts.t) {
            std::vector<uint32_t> lbl;
            lbl.reserve(labels.size() - 1 + em.labels.size());
            lbl.insert(lbl.end(), labels.begin(), labels.begin() + pos);
            lbl.insert(lbl.end(), em.labels.begin(), em.labels.end());
            lbl.insert(lbl.end(), labels.begin() + pos + 1, labels.end());
            OpToken tok = t;
            P_->canonicalize(tok, lbl);
            auto idx = index_of(out_deg, Monomial{std::move(tok), std::move(lbl)});
            if (!idx)
                return std::nullopt;
            out.toggle(*idx);
        }
    }
    return out;
}

std::string FreeAlgebra::show_mono(const Monomial& m) const {
    std::ostringstream os;
    os << "(" << P_->show(m.op);
    if (!m.labels.empty()) {
        os << ";";
        for (uint32_t l : m.labels)
            os << " " << labels_->name(label_degree(l), label_index(l));
    }
    os << ")";
    return os.str();
}

std::string FreeAlgebra::show(int d, const F2Vec& v) const {
    if (v.zero())
        return "0";
    std::ostringstream os;
    for (size_t k = 0; k < v.s.size(); ++k) {
        if (k)
            os << " + ";
        os << show_mono(mono(d, v.s[k]));
    }
    return os.str();
}

Monomial make_monomial(const Operad& P, OpToken op, std::vector<uint32_t> labels) {
    P.canonicalize(op, labels);
    return Monomial{std::move(op), std::move(labels)};
}

void enumerate_pointed(const FreeAlgebra& A, int d, int de,
                       const std::function<void(const OpToken&, const std::vector<uint32_t>&,
                                                size_t)>& fn) {
    Operad::LabelInfo universe;
    const GradedSpace& L = A.label_space();
    for (int dg = 0; dg <= std::min(A.cap(), L.cap); ++dg)
        for (uint32_t i = 0; i < uint32_t(L.dim(dg)); ++i)
            universe.emplace_back(label_key(dg, i), dg);
    universe.emplace_back(sentinel_key(de), de);
    std::sort(universe.begin(), universe.end());
    A.P().enum_monomials(d, universe, A.cap(), [&](OpToken tok, std::vector<uint32_t> lbl) {
        size_t pos = lbl.size(), count = 0;
        for (size_t j = 0; j < lbl.size(); ++j) {
            if (label_index(lbl[j]) == kSentinelIndex) {
                pos = j;
                ++count;
            }
        }
        if (count == 1)
            fn(tok, lbl, pos);
    });
}

}  // namespace ua
