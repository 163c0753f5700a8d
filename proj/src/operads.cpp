#include "ua/operads.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ua {

void TokenSum::add(const OpToken& tok) {
    auto it = std::lower_bound(t.begin(), t.end(), tok);
    if (it != t.end() && *it == tok)
        t.erase(it);
    else
        t.insert(it, tok);
}

TokenSum& TokenSum::operator+=(const TokenSum& o) {
    for (const OpToken& tok : o.t)
        add(tok);
    return *this;
}

Perm perm_identity(int n) {
    Perm p(n);
    for (int i = 0; i < n; ++i)
        p[i] = i;
    return p;
}

Perm perm_inverse(const Perm& p) {
    Perm q(p.size());
    for (size_t i = 0; i < p.size(); ++i)
        q[p[i]] = int(i);
    return q;
}

Perm perm_transposition(int n, int a, int b) {
    Perm p = perm_identity(n);
    std::swap(p[a], p[b]);
    return p;
}

Perm sigma_2n(int n) {
    Perm p(2 * n);
    for (int i = 1; i <= n; ++i) {
        p[2 * i - 2] = i - 1;      // 2i-1 -> i
        p[2 * i - 1] = n + i - 1;  // 2i  -> n+i
    }
    return p;
}

TokenSum compose_sum(const Operad& P, const TokenSum& a, int slot, const TokenSum& b) {
    TokenSum out;
    for (const OpToken& x : a.t)
        for (const OpToken& y : b.t)
            out += P.compose(x, slot, y);
    return out;
}

TokenSum act_sum(const Operad& P, const TokenSum& a, const Perm& p) {
    TokenSum out;
    for (const OpToken& x : a.t)
        out.add(P.act(x, p));
    return out;
}

TokenSum full_compose(const Operad& P, const OpToken& mu, const std::vector<TokenSum>& args) {
    if (int(args.size()) != mu.arity)
        throw error("full_compose: arity mismatch");
    TokenSum cur(mu);
    for (int slot = mu.arity - 1; slot >= 0; --slot)
        cur = compose_sum(P, cur, slot, args[slot]);
    return cur;
}

// --- Com / uCom --------------------------------------------------------------

namespace {

class ComOperad final : public Operad {
public:
    ComOperad(bool unital, int cap) : unital_(unital), cap_(cap) {}

    std::string name() const override { return unital_ ? "ucom" : "com"; }
    int arity_cap() const override { return cap_; }
    bool has_nullary() const override { return unital_; }
    OpToken unit() const override { return {1, {}}; }

    OpToken act(const OpToken& tok, const Perm&) const override { return tok; }

    TokenSum compose(const OpToken& mu, int slot, const OpToken& nu) const override {
        if (slot < 0 || slot >= mu.arity)
            throw error("compose: bad slot");
        return TokenSum({mu.arity + nu.arity - 1, {}});
    }

    std::vector<OpToken> tokens(int arity) const override {
        if (arity < (unital_ ? 0 : 1) || arity > cap_)
            return {};
        return {OpToken{arity, {}}};
    }

    void canonicalize(OpToken&, std::vector<uint32_t>& labels) const override {
        std::sort(labels.begin(), labels.end());
    }

    std::vector<OpToken> generators() const override {
        std::vector<OpToken> g{{2, {}}};
        if (unital_)
            g.push_back({0, {}});
        return g;
    }

    std::string show(const OpToken& tok) const override {
        return "m" + std::to_string(tok.arity);
    }

    void enum_monomials(int degree, const LabelInfo& labels, int max_arity,
                        const MonomialSink& emit) const override;

private:
    bool unital_;
    int cap_;
};

void ComOperad::enum_monomials(int degree, const LabelInfo& labels, int max_arity,
                               const MonomialSink& emit) const {
    max_arity = std::min(max_arity, cap_);
    if (degree == 0 && unital_)
        emit(OpToken{0, {}}, {});
    std::vector<uint32_t> cur;
    // non-decreasing label sequences summing to `degree`
    std::function<void(size_t, int)> rec = [&](size_t from, int rem) {
        if (rem == 0 && !cur.empty()) {
            emit(OpToken{int(cur.size()), {}}, cur);
            return;
        }
        if (int(cur.size()) >= max_arity)
            return;
        for (size_t k = from; k < labels.size(); ++k) {
            if (labels[k].second > rem)
                continue;
            if (labels[k].second == 0 && rem == 0)
                continue;  // degree-0 labels only grow arity; rem==0 handled above
            if (labels[k].second <= rem) {
                cur.push_back(labels[k].first);
                rec(k, rem - labels[k].second);
                cur.pop_back();
            }
        }
    };
    // allow degree-0 labels (non-connected modules) but bound the arity
    std::function<void(size_t, int)> rec0 = [&](size_t from, int rem) {
        if (!cur.empty() && rem == 0)
            emit(OpToken{int(cur.size()), {}}, cur);
        if (int(cur.size()) >= max_arity)
            return;
        for (size_t k = from; k < labels.size(); ++k) {
            if (labels[k].second > rem)
                continue;
            cur.push_back(labels[k].first);
            rec0(k, rem - labels[k].second);
            cur.pop_back();
        }
    };
    bool has_zero_degree = false;
    for (auto& [key, dg] : labels)
        has_zero_degree |= (dg == 0);
    if (has_zero_degree)
        rec0(0, degree);
    else
        rec(0, degree);
}

// --- unary operads -----------------------------------------------------------

class UnaryOperad final : public Operad {
public:
    explicit UnaryOperad(const UnaryParams& u) : u_(u) {}

    std::string name() const override {
        switch (u_.kind) {
            case UnaryKind::D: return "d";
            case UnaryKind::Dpm: return "dpm";
            case UnaryKind::QsD: return "qsd:" + std::to_string(u_.s);
            case UnaryKind::TqD: return "tqd:" + std::to_string(u_.q);
        }
        return "?";
    }
    int arity_cap() const override { return 1; }
    OpToken unit() const override { return {1, {0}}; }

    OpToken act(const OpToken& tok, const Perm&) const override { return tok; }

    TokenSum compose(const OpToken& mu, int slot, const OpToken& nu) const override {
        if (slot != 0)
            throw error("unary compose: bad slot");
        long long a = mu.v[0] + (long long)nu.v[0];
        switch (u_.kind) {
            case UnaryKind::QsD:
                a = ((a % u_.s) + u_.s) % u_.s;
                break;
            case UnaryKind::TqD:
                if (a > u_.q)
                    return {};
                break;
            case UnaryKind::D:
            case UnaryKind::Dpm: {
                int lo = u_.kind == UnaryKind::D
                             ? 0
                             : -(u_.exp_neg >= 0 ? u_.exp_neg : u_.exp_cap);
                if (a > u_.exp_cap || a < lo)
                    throw window_error("unary operad: exponent " + std::to_string(a) +
                                       " beyond cap " + std::to_string(u_.exp_cap));
                break;
            }
        }
        return TokenSum({1, {int(a)}});
    }

    std::vector<OpToken> tokens(int arity) const override {
        if (arity != 1)
            return {};
        std::vector<OpToken> out;
        int lo = (u_.kind == UnaryKind::Dpm) ? -u_.exp_cap : 0;
        int hi = (u_.kind == UnaryKind::QsD)   ? u_.s - 1
                 : (u_.kind == UnaryKind::TqD) ? u_.q
                                               : u_.exp_cap;
        for (int a = lo; a <= hi; ++a)
            out.push_back({1, {a}});
        return out;
    }

    void canonicalize(OpToken&, std::vector<uint32_t>&) const override {}

    std::vector<OpToken> generators() const override {
        std::vector<OpToken> g{{1, {1}}};
        if (u_.kind == UnaryKind::Dpm)
            g.push_back({1, {-1}});
        return g;
    }

    std::string show(const OpToken& tok) const override {
        return "d^" + std::to_string(tok.v[0]);
    }

    void enum_monomials(int degree, const LabelInfo& labels, int,
                        const MonomialSink& emit) const override {
        for (const OpToken& tok : tokens(1))
            for (auto& [key, dg] : labels)
                if (dg == degree)
                    emit(tok, {key});
    }

private:
    UnaryParams u_;
};

// --- Com/uCom composed with a unary operad -----------------------------------

class CompositeOperad final : public Operad {
public:
    CompositeOperad(bool unital_base, const UnaryParams& u, int cap, bool dyadic)
        : unital_(unital_base && !dyadic && u.kind != UnaryKind::TqD),
          u_(u), cap_(cap), dyadic_(dyadic) {
        switch (u_.kind) {
            case UnaryKind::D:   lo_ = 0;           hi_ = u_.exp_cap; break;
            case UnaryKind::Dpm:
                lo_ = -(u_.exp_neg >= 0 ? u_.exp_neg : u_.exp_cap);
                hi_ = u_.exp_cap;
                break;
            case UnaryKind::QsD: lo_ = 0;           hi_ = u_.s - 1;   break;
            case UnaryKind::TqD: lo_ = 0;           hi_ = u_.q;       break;
        }
    }

    std::string name() const override {
        if (dyadic_) {
            if (u_.kind == UnaryKind::TqD)
                return "tqlev:" + std::to_string(u_.q);
            return "lev";
        }
        return std::string(unital_ ? "ucom." : "com.") + UnaryOperad(u_).name();
    }
    int arity_cap() const override { return cap_; }
    bool has_nullary() const override { return unital_; }
    OpToken unit() const override { return {1, {0}}; }

    OpToken act(const OpToken& tok, const Perm& p) const override {
        OpToken out{tok.arity, std::vector<int>(tok.v.size())};
        for (int j = 0; j < tok.arity; ++j)
            out.v[p[j]] = tok.v[j];
        return out;
    }

    TokenSum compose(const OpToken& mu, int slot, const OpToken& nu) const override {
        if (slot < 0 || slot >= mu.arity)
            throw error("compose: bad slot");
        OpToken out{mu.arity + nu.arity - 1, {}};
        out.v.reserve(out.arity);
        for (int j = 0; j < slot; ++j)
            out.v.push_back(mu.v[j]);
        for (int j = 0; j < nu.arity; ++j) {
            long long a = (long long)nu.v[j] + mu.v[slot];
            if (u_.kind == UnaryKind::QsD)
                a = ((a % u_.s) + u_.s) % u_.s;
            if (u_.kind == UnaryKind::TqD && a > u_.q)
                return {};
            out.v.push_back(int(a));
        }
        for (int j = slot + 1; j < mu.arity; ++j)
            out.v.push_back(mu.v[j]);
        return TokenSum(std::move(out));
    }

    std::vector<OpToken> tokens(int arity) const override;

    void canonicalize(OpToken& tok, std::vector<uint32_t>& labels) const override {
        std::vector<std::pair<int, uint32_t>> pairs(tok.arity);
        for (int j = 0; j < tok.arity; ++j)
            pairs[j] = {tok.v[j], labels[j]};
        std::sort(pairs.begin(), pairs.end());
        for (int j = 0; j < tok.arity; ++j) {
            tok.v[j] = pairs[j].first;
            labels[j] = pairs[j].second;
        }
    }

    std::vector<OpToken> generators() const override {
        std::vector<OpToken> g;
        if (dyadic_) {
            if (!dyadic_entry_ok(1))
                return {};      // T_0 Lev: the unit alone
            g.push_back({2, {1, 1}});
            return g;
        }
        g.push_back({2, {0, 0}});
        g.push_back({1, {1}});
        if (u_.kind == UnaryKind::Dpm)
            g.push_back({1, {-1}});
        if (unital_)
            g.push_back({0, {}});
        return g;
    }

    bool graded_by_weight() const override { return u_.kind != UnaryKind::QsD; }
    int64_t weight_key(const OpToken& tok) const override {
        if (u_.kind == UnaryKind::QsD)
            return 0;
        int64_t w = 0;
        for (int a : tok.v) {
            if (a > WEIGHT_SCALE || a < -(62 - WEIGHT_SCALE))
                throw error("weight_key: exponent out of range");
            w += int64_t(1) << (WEIGHT_SCALE - a);
        }
        return w;
    }

    std::string show(const OpToken& tok) const override {
        std::ostringstream os;
        os << "(m;";
        for (int j = 0; j < tok.arity; ++j)
            os << " d" << tok.v[j];
        os << ")";
        return os.str();
    }

    void enum_monomials(int degree, const LabelInfo& labels, int max_arity,
                        const MonomialSink& emit) const override;

    int exp_lo() const { return lo_; }
    int exp_hi() const { return hi_; }
    bool dyadic() const { return dyadic_; }

private:
    bool unital_;
    UnaryParams u_;
    int cap_;
    bool dyadic_;
    int lo_ = 0, hi_ = 0;

    bool dyadic_entry_ok(int a) const { return a >= lo_ && a <= hi_; }
};

std::vector<OpToken> CompositeOperad::tokens(int arity) const {
    std::vector<OpToken> out;
    if (arity > cap_ || arity < 0)
        return out;
    if (arity == 0) {
        if (unital_)
            out.push_back({0, {}});
        return out;
    }
    if (!dyadic_) {
        OpToken tok{arity, std::vector<int>(arity, lo_)};
        while (true) {
            out.push_back(tok);
            int j = arity - 1;
            while (j >= 0 && tok.v[j] == hi_)
                tok.v[j--] = lo_;
            if (j < 0)
                break;
            ++tok.v[j];
        }
        return out;
    }
    // dyadic tuples: sum 2^{-a_j} = 1; entries of a size-n solution are at
    // most n-1 (pairs of maximal entries merge), and at most hi_ for T_q
    int max_e = std::min(arity == 1 ? 0 : arity - 1, hi_);
    OpToken tok{arity, {}};
    int64_t target = int64_t(1) << WEIGHT_SCALE;
    const int64_t min_term = int64_t(1) << (WEIGHT_SCALE - max_e);
    std::function<void(int, int64_t)> rec = [&](int slots, int64_t rem) {
        if (slots == 0) {
            if (rem == 0)
                out.push_back(tok);
            return;
        }
        if (rem < min_term * slots)
            return;
        for (int a = 0; a <= max_e; ++a) {
            int64_t term = int64_t(1) << (WEIGHT_SCALE - a);
            if (term > rem)
                continue;
            tok.v.push_back(a);
            rec(slots - 1, rem - term);
            tok.v.pop_back();
        }
    };
    rec(arity, target);
    return out;
}

void CompositeOperad::enum_monomials(int degree, const LabelInfo& labels, int max_arity,
                                     const MonomialSink& emit) const {
    max_arity = std::min(max_arity, cap_);
    if (degree == 0 && unital_)
        emit(OpToken{0, {}}, {});
    // slot items (a, label) ordered by (a, label); non-decreasing sequences
    OpToken tok{0, {}};
    std::vector<uint32_t> cur;
    const int64_t target = int64_t(1) << WEIGHT_SCALE;
    // rem_deg > 0 always on entry; dyadic tracks the remaining scaled weight
    std::function<void(int, size_t, int, int64_t)> rec = [&](int a, size_t li, int rem_deg,
                                                             int64_t rem_w) {
        if (rem_deg == 0 && !cur.empty() && (!dyadic_ || rem_w == 0)) {
            OpToken t = tok;
            t.arity = int(cur.size());
            emit(std::move(t), cur);
            return;
        }
        if (int(cur.size()) >= max_arity)
            return;
        for (int e = a; e <= hi_; ++e) {
            size_t start = (e == a) ? li : 0;
            for (size_t k = start; k < labels.size(); ++k) {
                int dg = labels[k].second;
                if (dg > rem_deg)
                    continue;
                if (dg == 0 && rem_deg == 0)
                    continue;
                int64_t term = dyadic_ ? (int64_t(1) << (WEIGHT_SCALE - e)) : 0;
                if (dyadic_ && term > rem_w)
                    continue;
                tok.v.push_back(e);
                cur.push_back(labels[k].first);
                rec(e, k, rem_deg - dg, rem_w - term);
                cur.pop_back();
                tok.v.pop_back();
            }
        }
    };
    rec(lo_, 0, degree, target);
}

}  // namespace

std::shared_ptr<Operad> com_operad(bool unital, int arity_cap) {
    return std::make_shared<ComOperad>(unital, arity_cap);
}

std::shared_ptr<Operad> unary_operad(const UnaryParams& u) {
    return std::make_shared<UnaryOperad>(u);
}

std::shared_ptr<Operad> compose_with_unary(bool unital_base, const UnaryParams& u, int arity_cap,
                                           bool dyadic) {
    return std::make_shared<CompositeOperad>(unital_base, u, arity_cap, dyadic);
}

std::shared_ptr<Operad> lev_operad(int arity_cap) {
    UnaryParams u;
    u.kind = UnaryKind::D;
    u.exp_cap = std::max(1, arity_cap);  // dyadic entries are below the arity anyway
    return std::make_shared<CompositeOperad>(false, u, arity_cap, true);
}

std::shared_ptr<Operad> truncated_lev(int q, int arity_cap) {
    UnaryParams u;
    u.kind = UnaryKind::TqD;
    u.q = q;
    return std::make_shared<CompositeOperad>(false, u, arity_cap, true);
}

// --- MagCom ------------------------------------------------------------------

namespace {

// preorder encodings: -1 opens an internal node (two children follow), other
// values are leaves
struct TreeView {
    const std::vector<int>* enc;
    size_t pos = 0;
    int next() { return (*enc)[pos++]; }
};

// canonical re-encoding of a tree whose leaves are mapped through `leaf_fn`
std::vector<int> tree_canon(TreeView& in, const std::function<int(int)>& leaf_fn) {
    int head = in.next();
    if (head != -1)
        return {leaf_fn(head)};
    std::vector<int> a = tree_canon(in, leaf_fn);
    std::vector<int> b = tree_canon(in, leaf_fn);
    if (b < a)
        std::swap(a, b);
    std::vector<int> out;
    out.reserve(a.size() + b.size() + 1);
    out.push_back(-1);
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

class MagComOperad final : public Operad {
public:
    explicit MagComOperad(int cap) : cap_(cap) {}

    std::string name() const override { return "magcom"; }
    int arity_cap() const override { return cap_; }
    OpToken unit() const override { return {1, {0}}; }

    OpToken act(const OpToken& tok, const Perm& p) const override {
        TreeView in{&tok.v};
        auto enc = tree_canon(in, [&](int leaf) { return p[leaf]; });
        return {tok.arity, std::move(enc)};
    }

    TokenSum compose(const OpToken& mu, int slot, const OpToken& nu) const override {
        int n = nu.arity;
        // relabel mu leaves around the graft, splice nu with shifted leaves
        std::vector<int> out;
        out.reserve(mu.v.size() + nu.v.size());
        for (int x : mu.v) {
            if (x == -1 || x < slot) {
                out.push_back(x);
            } else if (x == slot) {
                for (int y : nu.v)
                    out.push_back(y == -1 ? -1 : y + slot);
            } else {
                out.push_back(x + n - 1);
            }
        }
        TreeView in{&out};
        auto enc = tree_canon(in, [](int leaf) { return leaf; });
        return TokenSum({mu.arity + n - 1, std::move(enc)});
    }

    std::vector<OpToken> tokens(int arity) const override {
        if (arity < 1 || arity > cap_)
            return {};
        std::vector<int> leaves(arity);
        for (int i = 0; i < arity; ++i)
            leaves[i] = i;
        std::set<std::vector<int>> encs = trees_on(leaves);
        std::vector<OpToken> out;
        for (const auto& e : encs)
            out.push_back({arity, e});
        return out;
    }

    void canonicalize(OpToken& tok, std::vector<uint32_t>& labels) const override {
        // annotate leaves with labels, sort, then renumber slots in preorder
        TreeView in{&tok.v};
        auto annotated = tree_canon(in, [&](int leaf) { return int(labels[leaf]); });
        std::vector<uint32_t> new_labels;
        std::vector<int> enc;
        enc.reserve(annotated.size());
        for (int x : annotated) {
            if (x == -1) {
                enc.push_back(-1);
            } else {
                enc.push_back(int(new_labels.size()));
                new_labels.push_back(uint32_t(x));
            }
        }
        tok.v = std::move(enc);
        labels = std::move(new_labels);
    }

    std::vector<OpToken> generators() const override {
        return {{2, {-1, 0, 1}}};
    }

    std::string show(const OpToken& tok) const override {
        std::ostringstream os;
        size_t pos = 0;
        std::function<void()> pr = [&]() {
            int x = tok.v[pos++];
            if (x == -1) {
                os << '(';
                pr();
                os << ' ';
                pr();
                os << ')';
            } else {
                os << x;
            }
        };
        pr();
        return os.str();
    }

    void enum_monomials(int degree, const LabelInfo& labels, int max_arity,
                        const MonomialSink& emit) const override;

private:
    int cap_;

    // all canonical trees over a fixed multiset of leaf values
    static std::set<std::vector<int>> trees_on(const std::vector<int>& leaves) {
        std::set<std::vector<int>> out;
        if (leaves.size() == 1) {
            out.insert({leaves[0]});
            return out;
        }
        // split the (sorted) leaf multiset by index subsets; canonical form
        // dedupes symmetric splits
        size_t n = leaves.size();
        for (uint32_t mask = 1; mask + 1 < (uint32_t(1) << n); ++mask) {
            std::vector<int> a, b;
            for (size_t i = 0; i < n; ++i)
                ((mask >> i) & 1 ? a : b).push_back(leaves[i]);
            for (const auto& ta : trees_on(a)) {
                for (const auto& tb : trees_on(b)) {
                    const auto& lo = std::min(ta, tb);
                    const auto& hi = std::max(ta, tb);
                    std::vector<int> node;
                    node.reserve(lo.size() + hi.size() + 1);
                    node.push_back(-1);
                    node.insert(node.end(), lo.begin(), lo.end());
                    node.insert(node.end(), hi.begin(), hi.end());
                    out.insert(std::move(node));
                }
            }
        }
        return out;
    }
};

void MagComOperad::enum_monomials(int degree, const LabelInfo& labels, int max_arity,
                                  const MonomialSink& emit) const {
    max_arity = std::min(max_arity, cap_);
    // label multisets of total degree, then canonical label-annotated trees
    std::vector<uint32_t> cur;
    std::function<void(size_t, int)> rec = [&](size_t from, int rem) {
        if (rem == 0 && !cur.empty()) {
            std::vector<int> leafvals(cur.begin(), cur.end());
            for (const auto& annotated : trees_on(leafvals)) {
                std::vector<uint32_t> new_labels;
                std::vector<int> enc;
                for (int x : annotated) {
                    if (x == -1) {
                        enc.push_back(-1);
                    } else {
                        enc.push_back(int(new_labels.size()));
                        new_labels.push_back(uint32_t(x));
                    }
                }
                emit(OpToken{int(cur.size()), std::move(enc)}, std::move(new_labels));
            }
            return;
        }
        if (int(cur.size()) >= max_arity)
            return;
        for (size_t k = from; k < labels.size(); ++k) {
            if (labels[k].second > rem || labels[k].second == 0)
                continue;
            cur.push_back(labels[k].first);
            rec(k, rem - labels[k].second);
            cur.pop_back();
        }
    };
    rec(0, degree);
}

}  // namespace

std::shared_ptr<Operad> magcom_operad(int arity_cap) {
    return std::make_shared<MagComOperad>(arity_cap);
}

// --- axioms ------------------------------------------------------------------

std::optional<std::string> check_operad_axioms(const Operad& P, int max_arity) {
    auto fail = [&](const std::string& what) { return std::optional<std::string>(what); };
    std::vector<std::vector<OpToken>> toks(max_arity + 1);
    for (int n = 0; n <= max_arity; ++n)
        toks[n] = P.tokens(n);
    const OpToken one = P.unit();

    // unit laws
    for (int n = 0; n <= max_arity; ++n) {
        for (const OpToken& mu : toks[n]) {
            for (int i = 0; i < n; ++i)
                if (!(P.compose(mu, i, one) == TokenSum(mu)))
                    return fail("unit law mu o_i 1 at arity " + std::to_string(n));
            if (!(P.compose(one, 0, mu) == TokenSum(mu)))
                return fail("unit law 1 o_1 mu at arity " + std::to_string(n));
        }
    }
    // associativity, nested and disjoint; instances that leave a stored
    // exponent window are skipped
    for (int l = 1; l <= max_arity; ++l)
        for (const OpToken& lam : toks[l])
            for (int m = 0; m <= max_arity; ++m)
                for (const OpToken& mu : toks[m])
                    for (int n = 0; n <= max_arity; ++n)
                        for (const OpToken& nu : toks[n]) {
                            if (l + m - 1 > max_arity || l + m + n - 2 > max_arity)
                                continue;
                            for (int i = 0; i < l; ++i) {
                                if (m > 0) {
                                    for (int j = 0; j < m; ++j) {
                                        try {
                                            TokenSum lhs = compose_sum(
                                                P, P.compose(lam, i, mu), i + j, TokenSum(nu));
                                            TokenSum rhs = compose_sum(P, TokenSum(lam), i,
                                                                       P.compose(mu, j, nu));
                                            if (!(lhs == rhs))
                                                return fail("nested associativity");
                                        } catch (const window_error&) {
                                        }
                                    }
                                }
                                for (int j = i + 1; j < l; ++j) {
                                    try {
                                        TokenSum lhs =
                                            compose_sum(P, P.compose(lam, j, nu), i, TokenSum(mu));
                                        TokenSum rhs = compose_sum(P, P.compose(lam, i, mu),
                                                                   j + m - 1, TokenSum(nu));
                                        if (!(lhs == rhs))
                                            return fail("disjoint associativity");
                                    } catch (const window_error&) {
                                    }
                                }
                            }
                        }
    // action/composition compatibility over adjacent transpositions:
    // (mu sigma) o_i nu = (mu o_{sigma^{-1}(i)} nu) rho
    for (int m = 2; m <= max_arity; ++m) {
        for (const OpToken& mu : toks[m]) {
            for (int t = 0; t + 1 < m; ++t) {
                Perm sg = perm_transposition(m, t, t + 1);
                OpToken mus = P.act(mu, sg);
                for (int n = 1; n <= max_arity && m + n - 1 <= max_arity; ++n) {
                    for (const OpToken& nu : toks[n]) {
                        for (int i = 0; i < m; ++i) {
                            int js = sg[i];  // sigma^{-1}(i) for a transposition
                            int N = m + n - 1;
                            Perm rho(N);
                            auto adj = [&](int x) { return x < i ? x : x + n - 1; };
                            for (int p = 0; p < js; ++p)
                                rho[p] = adj(sg[p]);
                            for (int r = 0; r < n; ++r)
                                rho[js + r] = i + r;
                            for (int p = js + 1; p < m; ++p)
                                rho[p + n - 1] = adj(sg[p]);
                            TokenSum lhs = P.compose(mus, i, nu);
                            TokenSum rhs = act_sum(P, P.compose(mu, js, nu), rho);
                            if (!(lhs == rhs))
                                return fail("equivariance at arity " + std::to_string(m));
                        }
                    }
                }
            }
        }
    }
    return std::nullopt;
}

// --- centrality --------------------------------------------------------------

namespace {

bool interchange_holds(const Operad& P, const TokenSum& star, const OpToken& mu) {
    int n = mu.arity;
    // star(mu, mu)
    TokenSum lhs;
    for (const OpToken& s : star.t)
        lhs += compose_sum(P, P.compose(s, 1, mu), 0, TokenSum(mu));
    // (mu(star,...,star)) sigma_{2n}
    TokenSum inner(mu);
    for (int slot = n - 1; slot >= 0; --slot)
        inner = compose_sum(P, inner, slot, star);
    TokenSum rhs = act_sum(P, inner, sigma_2n(n));
    return lhs == rhs;
}

}  // namespace

CentralityVerdict is_central(const Operad& P, const TokenSum& star,
                             const std::vector<OpToken>& over) {
    for (const OpToken& s : star.t) {
        if (s.arity != 2)
            throw error("is_central: star must live in arity 2");
        if (!(P.act(s, perm_transposition(2, 0, 1)) == s)) {
            // a sum can be fixed without each term being fixed
            if (!(act_sum(P, star, perm_transposition(2, 0, 1)) == star))
                throw error("is_central: star is not Sigma_2-fixed");
            break;
        }
    }
    CentralityVerdict v;
    for (const OpToken& mu : over) {
        if (!interchange_holds(P, star, mu)) {
            v.central = false;
            v.failing = mu;
            v.has_failing = true;
            return v;
        }
    }
    return v;
}

CentralityVerdict is_central_on_generators(const Operad& P, const TokenSum& star) {
    return is_central(P, star, P.generators());
}

CentralityVerdict is_central_exhaustive(const Operad& P, const TokenSum& star, int max_arity) {
    std::vector<OpToken> all;
    for (int n = 0; n <= max_arity; ++n)
        for (const OpToken& tok : P.tokens(n))
            all.push_back(tok);
    return is_central(P, star, all);
}

TokenSum star_power(const Operad& P, const TokenSum& star, int k, bool assert_invariance) {
    TokenSum cur(P.unit());
    for (int step = 0; step < k; ++step) {
        TokenSum next;
        for (const OpToken& s : star.t)
            next += compose_sum(P, compose_sum(P, TokenSum(s), 1, cur), 0, cur);
        cur = next;
    }
    if (assert_invariance && k >= 1 && !cur.zero()) {
        int N = 1 << k;
        int half = N / 2;
        std::vector<Perm> gens;
        for (int a = 0; a + 1 < half; ++a)
            gens.push_back(perm_transposition(N, a, a + 1));
        for (int a = half; a + 1 < N; ++a)
            gens.push_back(perm_transposition(N, a, a + 1));
        Perm blockswap(N);
        for (int a = 0; a < N; ++a)
            blockswap[a] = (a + half) % N;
        gens.push_back(blockswap);
        gens.push_back(sigma_2n(half));
        for (const Perm& g : gens)
            if (!(act_sum(P, cur, g) == cur))
                throw error("star_power: star_k is not Sigma-invariant");
    }
    return cur;
}

// --- morphisms ---------------------------------------------------------------

TokenSum OperadMorphism::map(const TokenSum& x) const {
    TokenSum out;
    for (const OpToken& tok : x.t)
        out += on_token(tok);
    return out;
}

OperadMorphism identity_morphism(const Operad& P) {
    OperadMorphism f;
    f.source = &P;
    f.target = &P;
    f.on_token = [](const OpToken& tok) { return TokenSum(tok); };
    return f;
}

OperadMorphism tuple_inclusion(const Operad& src, const Operad& dst) {
    OperadMorphism f;
    f.source = &src;
    f.target = &dst;
    f.on_token = [](const OpToken& tok) { return TokenSum(tok); };
    return f;
}

OperadMorphism tqlev_projection(const Operad& src, const Operad& dst, int q) {
    OperadMorphism f;
    f.source = &src;
    f.target = &dst;
    f.on_token = [q](const OpToken& tok) -> TokenSum {
        for (int a : tok.v)
            if (a > q)
                return {};
        return TokenSum(tok);
    };
    return f;
}

OperadMorphism magcom_classifying(const Operad& magcom, const Operad& P, const TokenSum& star) {
    OperadMorphism f;
    f.source = &magcom;
    f.target = &P;
    const Operad* Pp = &P;
    TokenSum st = star;
    f.on_token = [Pp, st](const OpToken& tok) -> TokenSum {
        // evaluate the tree with star at the nodes, then realign the slots to
        // the leaf labels
        std::vector<int> leaf_order;
        size_t pos = 0;
        std::function<TokenSum()> eval = [&]() -> TokenSum {
            int x = tok.v[pos++];
            if (x != -1) {
                leaf_order.push_back(x);
                return TokenSum(Pp->unit());
            }
            TokenSum l = eval();
            TokenSum r = eval();
            TokenSum out;
            for (const OpToken& s : st.t)
                out += compose_sum(*Pp, compose_sum(*Pp, TokenSum(s), 1, r), 0, l);
            return out;
        };
        TokenSum val = eval();
        Perm pi(leaf_order.size());
        for (size_t j = 0; j < leaf_order.size(); ++j)
            pi[j] = leaf_order[j];
        return act_sum(*Pp, val, pi);
    };
    return f;
}

std::optional<std::string> validate_morphism(const OperadMorphism& f, int max_arity) {
    const Operad& S = *f.source;
    const Operad& T = *f.target;
    if (!(f.on_token(S.unit()) == TokenSum(T.unit())))
        return "morphism does not preserve the unit";
    std::vector<std::vector<OpToken>> toks(max_arity + 1);
    for (int n = 0; n <= max_arity; ++n)
        toks[n] = S.tokens(n);
    for (int m = 1; m <= max_arity; ++m) {
        for (const OpToken& mu : toks[m]) {
            for (int t = 0; t + 1 < m; ++t) {
                Perm sg = perm_transposition(m, t, t + 1);
                if (!(f.on_token(S.act(mu, sg)) == act_sum(T, f.on_token(mu), sg)))
                    return "morphism breaks the Sigma-action at arity " + std::to_string(m) +
                           " on " + S.show(mu);
            }
            for (int n = 0; n <= max_arity && m + n - 1 <= max_arity; ++n) {
                for (const OpToken& nu : toks[n]) {
                    for (int i = 0; i < m; ++i) {
                        TokenSum lhs = f.map(S.compose(mu, i, nu));
                        TokenSum rhs = compose_sum(T, f.on_token(mu), i, f.on_token(nu));
                        if (!(lhs == rhs))
                            return "morphism breaks composition " + S.show(mu) + " o_" +
                                   std::to_string(i + 1) + " " + S.show(nu);
                    }
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace ua
