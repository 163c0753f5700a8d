#include "ua/f2.hpp"

#include <algorithm>

namespace ua {

bool F2Vec::has(uint32_t i) const {
    return std::binary_search(s.begin(), s.end(), i);
}

uint32_t F2Vec::lead() const {
    if (s.empty())
        throw error("lead() on zero vector");
    return s.back();
}

void F2Vec::toggle(uint32_t i) {
    auto it = std::lower_bound(s.begin(), s.end(), i);
    if (it != s.end() && *it == i)
        s.erase(it);
    else
        s.insert(it, i);
}

void F2Vec::normalize() {
    std::sort(s.begin(), s.end());
    std::vector<uint32_t> out;
    out.reserve(s.size());
    for (size_t k = 0; k < s.size();) {
        size_t j = k;
        while (j < s.size() && s[j] == s[k])
            ++j;
        if ((j - k) & 1)
            out.push_back(s[k]);
        k = j;
    }
    s.swap(out);
}

F2Vec& F2Vec::operator+=(const F2Vec& o) {
    std::vector<uint32_t> out;
    out.reserve(s.size() + o.s.size());
    std::set_symmetric_difference(s.begin(), s.end(), o.s.begin(), o.s.end(),
                                  std::back_inserter(out));
    s.swap(out);
    return *this;
}

Eliminator::Eliminator(size_t dim)
    : dim_(dim), words_((dim + 63) / 64), pivot_row_(dim, -1) {}

Eliminator::Row Eliminator::to_row(const F2Vec& v) const {
    Row r(words_, 0);
    for (uint32_t i : v.s) {
        if (i >= dim_)
            throw error("vector index " + std::to_string(i) + " out of range (dim " +
                        std::to_string(dim_) + ")");
        r[i >> 6] ^= uint64_t(1) << (i & 63);
    }
    return r;
}

int64_t Eliminator::row_lead(const Row& r) {
    for (size_t w = r.size(); w-- > 0;) {
        if (r[w])
            return int64_t(w) * 64 + (63 - __builtin_clzll(r[w]));
    }
    return -1;
}

bool Eliminator::insert(const F2Vec& v) {
    Row r = to_row(v);
    int64_t lead = row_lead(r);
    while (lead >= 0 && pivot_row_[lead] >= 0) {
        const Row& p = rows_[pivot_row_[lead]];
        for (size_t w = 0; w < words_; ++w)
            r[w] ^= p[w];
        lead = row_lead(r);
    }
    if (lead < 0)
        return false;
    // back-substitute the new pivot out of the existing rows
    size_t word = size_t(lead) >> 6;
    uint64_t bit = uint64_t(1) << (lead & 63);
    for (Row& p : rows_) {
        if (p[word] & bit) {
            for (size_t w = 0; w < words_; ++w)
                p[w] ^= r[w];
        }
    }
    pivot_row_[lead] = int32_t(rows_.size());
    rows_.push_back(std::move(r));
    pivots_.push_back(uint32_t(lead));
    return true;
}

F2Vec Eliminator::reduce(const F2Vec& v) const {
    Row r = to_row(v);
    int64_t lead = row_lead(r);
    while (lead >= 0 && pivot_row_[lead] >= 0) {
        const Row& p = rows_[pivot_row_[lead]];
        for (size_t w = 0; w < words_; ++w)
            r[w] ^= p[w];
        lead = row_lead(r);
    }
    F2Vec out;
    for (size_t w = 0; w < words_; ++w) {
        uint64_t x = r[w];
        while (x) {
            uint32_t b = uint32_t(__builtin_ctzll(x));
            out.s.push_back(uint32_t(w * 64 + b));
            x &= x - 1;
        }
    }
    return out;
}

std::vector<uint32_t> Eliminator::free_indices() const {
    std::vector<uint32_t> out;
    for (uint32_t i = 0; i < dim_; ++i)
        if (pivot_row_[i] < 0)
            out.push_back(i);
    return out;
}

std::vector<F2Vec> Eliminator::reduced_rows() const {
    std::vector<std::pair<uint32_t, size_t>> order;
    for (size_t k = 0; k < rows_.size(); ++k)
        order.emplace_back(pivots_[k], k);
    std::sort(order.begin(), order.end());
    std::vector<F2Vec> out;
    out.reserve(rows_.size());
    for (auto& [piv, k] : order) {
        F2Vec v;
        const Row& r = rows_[k];
        for (size_t w = 0; w < words_; ++w) {
            uint64_t x = r[w];
            while (x) {
                uint32_t b = uint32_t(__builtin_ctzll(x));
                v.s.push_back(uint32_t(w * 64 + b));
                x &= x - 1;
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

size_t f2_rank(size_t dim, const std::vector<F2Vec>& vectors) {
    Eliminator e(dim);
    for (const F2Vec& v : vectors)
        e.insert(v);
    return e.rank();
}

size_t quotient_dimension(size_t ambient_dim, const std::vector<F2Vec>& ideal_vectors) {
    return ambient_dim - f2_rank(ambient_dim, ideal_vectors);
}

Membership solve_membership(size_t dim, const F2Vec& v, const std::vector<F2Vec>& span) {
    // track, for each reduced row, which input vectors it combines
    Eliminator e(dim);
    std::vector<F2Vec> combo;          // combo[k] over positions of `span`
    std::vector<F2Vec> rows;           // mirror of reduced rows, unreduced form
    // we run a plain (non-back-substituting) elimination with combination
    // tracking; adequate for a witness
    std::vector<std::pair<F2Vec, F2Vec>> basis;  // (vector reduced, combination)
    for (size_t k = 0; k < span.size(); ++k) {
        F2Vec cur = span[k];
        F2Vec cmb = F2Vec::unit(uint32_t(k));
        for (auto& [b, c] : basis) {
            if (!cur.zero() && !b.zero() && cur.lead() == b.lead()) {
                cur += b;
                cmb += c;
            }
        }
        // keep basis sorted by decreasing lead so a single pass suffices
        if (!cur.zero()) {
            basis.emplace_back(cur, cmb);
            std::sort(basis.begin(), basis.end(),
                      [](const auto& a, const auto& b) { return a.first.lead() > b.first.lead(); });
        }
    }
    F2Vec cur = v;
    F2Vec cmb;
    bool changed = true;
    while (!cur.zero() && changed) {
        changed = false;
        for (auto& [b, c] : basis) {
            if (!cur.zero() && cur.lead() == b.lead()) {
                cur += b;
                cmb += c;
                changed = true;
            }
        }
    }
    Membership m;
    if (!cur.zero())
        return m;
    m.member = true;
    for (uint32_t k : cmb.s)
        m.witness.push_back(k);
    return m;
}

}  // namespace ua
