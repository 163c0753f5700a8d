#include "ua/steenrod.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace ua {

int sq_degree(const SqWord& w) {
    return std::accumulate(w.begin(), w.end(), 0);
}

bool is_admissible(const SqWord& w) {
    for (size_t h = 0; h + 1 < w.size(); ++h)
        if (w[h] < 2 * w[h + 1])
            return false;
    return true;
}

int excess(const SqWord& w) {
    if (w.empty())
        return 0;
    int e = w[0];
    for (size_t h = 1; h < w.size(); ++h)
        e -= w[h];
    return e;
}

std::string show_word(const SqWord& w) {
    if (w.empty())
        return "1";
    std::ostringstream os;
    for (size_t h = 0; h < w.size(); ++h) {
        if (h)
            os << ' ';
        os << "Sq^" << w[h];
    }
    return os.str();
}

int binom_mod2(long long a, long long b) {
    if (b < 0 || a < 0 || b > a)
        return 0;
    return ((a & b) == b) ? 1 : 0;
}

void SqElem::add(const SqWord& w) {
    auto it = std::lower_bound(terms.begin(), terms.end(), w);
    if (it != terms.end() && *it == w)
        terms.erase(it);
    else
        terms.insert(it, w);
}

SqElem& SqElem::operator+=(const SqElem& o) {
    for (const SqWord& w : o.terms)
        add(w);
    return *this;
}

std::string SqElem::show() const {
    if (terms.empty())
        return "0";
    std::ostringstream os;
    for (size_t k = 0; k < terms.size(); ++k) {
        if (k)
            os << " + ";
        os << show_word(terms[k]);
    }
    return os.str();
}

std::vector<SqWord> adem_pair(int i, int j) {
    if (i >= 2 * j)
        throw error("adem_pair on admissible pair");
    std::vector<SqWord> out;
    for (int k = 0; k <= i / 2; ++k) {
        if (binom_mod2(j - k - 1, i - 2 * k)) {
            if (k == 0)
                out.push_back({i + j});
            else
                out.push_back({i + j - k, k});
        }
    }
    return out;
}

namespace {

// moment sum_h h*i_h, a well-founded measure that strictly decreases
// under each Adem rewrite
long long moment(const SqWord& w) {
    long long m = 0;
    for (size_t h = 0; h < w.size(); ++h)
        m += (long long)(h + 1) * w[h];
    return m;
}

int first_inadmissible(const SqWord& w) {
    for (size_t h = 0; h + 1 < w.size(); ++h)
        if (w[h] < 2 * w[h + 1])
            return int(h);
    return -1;
}

}  // namespace

SqElem adem_normalize(const SqWord& w, uint64_t strategy_seed) {
    static std::map<SqWord, SqElem> memo;  // leftmost-strategy results
    const bool leftmost = (strategy_seed == 0);
    if (leftmost) {
        auto it = memo.find(w);
        if (it != memo.end())
            return it->second;
    }
    std::mt19937_64 rng(strategy_seed);

    SqElem out;
    std::vector<SqWord> work{w};
    while (!work.empty()) {
        SqWord cur = std::move(work.back());
        work.pop_back();
        // drop any zero letters (Sq^0 = 1)
        cur.erase(std::remove(cur.begin(), cur.end(), 0), cur.end());
        int h;
        if (leftmost) {
            h = first_inadmissible(cur);
        } else {
            std::vector<int> bad;
            for (size_t p = 0; p + 1 < cur.size(); ++p)
                if (cur[p] < 2 * cur[p + 1])
                    bad.push_back(int(p));
            h = bad.empty() ? -1 : bad[rng() % bad.size()];
        }
        if (h < 0) {
            out.add(cur);
            continue;
        }
        long long m0 = moment(cur);
        for (const SqWord& rep : adem_pair(cur[h], cur[h + 1])) {
            SqWord next;
            next.reserve(cur.size() + 1);
            next.insert(next.end(), cur.begin(), cur.begin() + h);
            next.insert(next.end(), rep.begin(), rep.end());
            next.insert(next.end(), cur.begin() + h + 2, cur.end());
            if (moment(next) >= m0)
                throw error("adem rewrite did not decrease the moment");
            work.push_back(std::move(next));
        }
    }
    if (leftmost)
        memo.emplace(w, out);
    return out;
}

std::vector<SqWord> steenrod_basis(int degree) {
    // admissible words of total degree `degree`; recursion on the first letter
    std::vector<SqWord> out;
    if (degree == 0) {
        out.push_back({});
        return out;
    }
    // collect words (i1,...,ik) with i1 >= 2*i2, sum = degree; build from the
    // last letter up
    struct Rec {
        int degree;
        std::vector<SqWord>& out;
        SqWord cur;  // reversed: cur[0] is the last letter
        void go(int remaining, int min_first) {
            if (remaining == 0) {
                if (!cur.empty()) {
                    SqWord w(cur.rbegin(), cur.rend());
                    out.push_back(std::move(w));
                }
                return;
            }
            for (int i = min_first; i <= remaining; ++i) {
                cur.push_back(i);
                go(remaining - i, 2 * i);
                cur.pop_back();
            }
        }
    } rec{degree, out, {}};
    rec.go(degree, 1);
    std::sort(out.begin(), out.end());
    return out;
}

void Poly::add(std::vector<int> m) {
    while (!m.empty() && m.back() == 0)
        m.pop_back();
    auto it = std::lower_bound(mons.begin(), mons.end(), m);
    if (it != mons.end() && *it == m)
        mons.erase(it);
    else
        mons.insert(it, std::move(m));
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& m : o.mons)
        add(m);
    return *this;
}

std::string Poly::show() const {
    if (mons.empty())
        return "0";
    std::ostringstream os;
    for (size_t k = 0; k < mons.size(); ++k) {
        if (k)
            os << " + ";
        bool any = false;
        for (size_t v = 0; v < mons[k].size(); ++v) {
            if (mons[k][v] == 0)
                continue;
            if (any)
                os << '*';
            os << 'x' << (v + 1);
            if (mons[k][v] > 1)
                os << '^' << mons[k][v];
            any = true;
        }
        if (!any)
            os << '1';
    }
    return os.str();
}

Poly poly_monomial(const std::vector<int>& exponents) {
    Poly p;
    p.add(exponents);
    return p;
}

namespace {

// Sq^t (x^e) = binom(e, t) x^{e+t} for a degree-1 variable x
void sq_monomial(const std::vector<int>& mon, size_t v, int i, std::vector<int>& acc, Poly& out) {
    if (v == mon.size()) {
        if (i == 0)
            out.add(acc);
        return;
    }
    int e = mon[v];
    for (int t = 0; t <= std::min(i, e); ++t) {
        if (!binom_mod2(e, t))
            continue;
        acc.push_back(e + t);
        sq_monomial(mon, v + 1, i - t, acc, out);
        acc.pop_back();
    }
}

}  // namespace

Poly poly_sq(int i, const Poly& p) {
    if (i < 0)
        return {};
    Poly out;
    for (const auto& m : p.mons) {
        std::vector<int> acc;
        acc.reserve(m.size());
        sq_monomial(m, 0, i, acc, out);
    }
    return out;
}

Poly poly_action(const SqWord& w, const Poly& p) {
    Poly cur = p;
    for (size_t h = w.size(); h-- > 0;)
        cur = poly_sq(w[h], cur);
    return cur;
}

Poly poly_action(const SqElem& e, const Poly& p) {
    Poly out;
    for (const SqWord& w : e.terms)
        out += poly_action(w, p);
    return out;
}

}  // namespace ua
