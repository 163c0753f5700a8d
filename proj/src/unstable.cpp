#include "ua/unstable.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace ua {

int GradedSpace::dim(int d) const {
    check_degree(d);
    return int(names[d].size());
}

const std::string& GradedSpace::name(int d, uint32_t i) const {
    check_degree(d);
    return names[d].at(i);
}

void GradedSpace::check_degree(int d) const {
    if (d < 0 || d > cap)
        throw error("degree " + std::to_string(d) + " outside cap " + std::to_string(cap));
}

std::string GradedSpace::show_elem(int d, const F2Vec& v) const {
    if (v.zero())
        return "0";
    std::ostringstream os;
    for (size_t k = 0; k < v.s.size(); ++k) {
        if (k)
            os << " + ";
        os << name(d, v.s[k]);
    }
    return os.str();
}

F2Vec LinearMap::apply(int d, const F2Vec& v) const {
    F2Vec out;
    for (uint32_t i : v.s)
        out += columns.at(d).at(i);
    return out;
}

void UnstableModule::init_storage() {
    act.assign(cap() + 1, {});
    for (int i = 1; i <= cap(); ++i) {
        act[i].assign(cap() + 1, {});
        for (int d = i; d + i <= cap(); ++d)
            act[i][d].assign(space.dim(d), F2Vec{});
    }
}

F2Vec UnstableModule::sq_basis(int i, int d, uint32_t src) const {
    space.check_degree(d);
    if (i == 0)
        return F2Vec::unit(src);
    if (i > d)
        return {};
    space.check_degree(d + i);
    return act.at(i).at(d).at(src);
}

F2Vec UnstableModule::sq(int i, int d, const F2Vec& v) const {
    F2Vec out;
    for (uint32_t src : v.s)
        out += sq_basis(i, d, src);
    return out;
}

F2Vec UnstableModule::sq_word(const SqWord& w, int d, const F2Vec& v) const {
    F2Vec out;
    for (const SqWord& adm : adem_normalize(w).terms) {
        F2Vec cur = v;
        int deg = d;
        for (size_t h = adm.size(); h-- > 0 && !cur.zero();) {
            cur = sq(adm[h], deg, cur);
            deg += adm[h];
        }
        out += cur;
    }
    return out;
}

UnstableModule free_module(int n, int cap) {
    if (cap < n)
        throw error("free_module: cap < n");
    UnstableModule m;
    m.space.cap = cap;
    m.space.names.assign(cap + 1, {});
    // basis of degree d: admissible I with e(I) <= n, deg I = d - n
    std::vector<std::vector<SqWord>> basis(cap + 1);
    for (int d = n; d <= cap; ++d) {
        for (const SqWord& w : steenrod_basis(d - n)) {
            if (excess(w) <= n)
                basis[d].push_back(w);
        }
        for (const SqWord& w : basis[d]) {
            std::string nm = (w.empty() ? "" : show_word(w) + " ");
            m.space.names[d].push_back(nm + "i" + std::to_string(n));
        }
    }
    m.init_storage();
    // index lookup per degree
    auto index_of = [&](int d, const SqWord& w) -> uint32_t {
        auto it = std::lower_bound(basis[d].begin(), basis[d].end(), w);
        if (it == basis[d].end() || *it != w)
            throw error("free_module: missing admissible word");
        return uint32_t(it - basis[d].begin());
    };
    for (int d = n; d <= cap; ++d) {
        for (size_t src = 0; src < basis[d].size(); ++src) {
            for (int i = 1; i <= d && d + i <= cap; ++i) {
                SqWord w;
                w.push_back(i);
                w.insert(w.end(), basis[d][src].begin(), basis[d][src].end());
                F2Vec img;
                for (const SqWord& adm : adem_normalize(w).terms) {
                    if (excess(adm) <= n)
                        img.toggle(index_of(d + i, adm));
                }
                m.act[i][d][src] = img;
            }
        }
    }
    return m;
}

UnstableModule zero_module(int cap) {
    UnstableModule m;
    m.space.cap = cap;
    m.space.names.assign(cap + 1, {});
    m.init_storage();
    return m;
}

UnstableModule suspend(const UnstableModule& src) {
    if (src.cap() < 0)
        throw error("suspend: empty module");
    UnstableModule m;
    m.space.cap = src.cap() + 1;
    m.space.names.assign(m.space.cap + 1, {});
    for (int d = 0; d <= src.cap(); ++d)
        for (const std::string& nm : src.space.names[d])
            m.space.names[d + 1].push_back("s(" + nm + ")");
    m.init_storage();
    // Sq^i(sigma x) = sigma(Sq^i x); tokens keep their index
    for (int d = 0; d <= src.cap(); ++d) {
        for (int i = 1; i <= d && d + i <= src.cap(); ++i) {
            for (int s = 0; s < src.dim(d); ++s)
                m.act[i][d + 1][s] = src.act[i][d][s];
        }
    }
    return m;
}

UnstableModule phi(const UnstableModule& src) {
    UnstableModule m;
    m.space.cap = src.cap();
    m.space.names.assign(m.space.cap + 1, {});
    for (int n = 0; 2 * n <= m.space.cap; ++n)
        for (const std::string& nm : src.space.names[n])
            m.space.names[2 * n].push_back("Phi(" + nm + ")");
    m.init_storage();
    // Sq^{2i} Phi x = Phi(Sq^i x); odd squares act by zero
    for (int n = 0; 2 * n <= m.space.cap; ++n) {
        for (int i = 1; i <= n && 2 * (n + i) <= m.space.cap; ++i) {
            if (n + i > src.cap())
                break;
            for (int s = 0; s < src.dim(n); ++s)
                m.act[2 * i][2 * n][s] = src.act[i][n][s];
        }
    }
    return m;
}

UnstableModule direct_sum(const UnstableModule& a, const UnstableModule& b) {
    if (a.cap() != b.cap())
        throw error("direct_sum: mismatched caps");
    UnstableModule m;
    m.space.cap = a.cap();
    m.space.names.assign(m.space.cap + 1, {});
    for (int d = 0; d <= m.space.cap; ++d) {
        for (const std::string& nm : a.space.names[d])
            m.space.names[d].push_back("l." + nm);
        for (const std::string& nm : b.space.names[d])
            m.space.names[d].push_back("r." + nm);
    }
    m.init_storage();
    for (int i = 1; i <= m.cap(); ++i) {
        for (int d = i; d + i <= m.cap(); ++d) {
            int off_src = a.dim(d), off_dst = a.dim(d + i);
            for (int s = 0; s < a.dim(d); ++s)
                m.act[i][d][s] = a.act[i][d][s];
            for (int s = 0; s < b.dim(d); ++s) {
                F2Vec v;
                for (uint32_t t : b.act[i][d][s].s)
                    v.toggle(t + off_dst);
                m.act[i][d][s + off_src] = v;
            }
        }
    }
    return m;
}

LinearMap lambda_map(const UnstableModule& m, const UnstableModule& phi_m) {
    LinearMap l;
    l.source = &phi_m.space;
    l.target = &m.space;
    l.shift = 0;
    l.columns.assign(phi_m.cap() + 1, {});
    for (int n = 0; 2 * n <= phi_m.cap(); ++n) {
        l.columns[2 * n].assign(m.dim(n), F2Vec{});
        for (int s = 0; s < m.dim(n); ++s)
            l.columns[2 * n][s] = m.sq_basis(n, n, uint32_t(s));  // Sq_0
    }
    return l;
}

LoopsData loops_via_cokernel(const UnstableModule& m) {
    if (!m.connected())
        throw error("loops_via_cokernel: module not connected");
    LoopsData out;
    out.space.cap = m.cap();
    out.space.names.assign(m.cap() + 1, {});
    out.pr.assign(m.cap() + 1, {});
    out.reps.assign(m.cap() + 1, {});
    for (int d = 0; d <= m.cap(); ++d) {
        Eliminator e(m.dim(d));
        if (d % 2 == 0 && d > 0) {
            int n = d / 2;
            for (int s = 0; s < m.dim(n); ++s)
                e.insert(m.sq_basis(n, n, uint32_t(s)));
        }
        out.reps[d] = e.free_indices();
        std::vector<int32_t> token_of(m.dim(d), -1);
        for (size_t j = 0; j < out.reps[d].size(); ++j) {
            token_of[out.reps[d][j]] = int32_t(j);
            out.space.names[d].push_back("[" + m.space.name(d, out.reps[d][j]) + "]");
        }
        out.pr[d].assign(m.dim(d), F2Vec{});
        for (int s = 0; s < m.dim(d); ++s) {
            F2Vec red = e.reduce(F2Vec::unit(uint32_t(s)));
            F2Vec img;
            for (uint32_t t : red.s) {
                if (token_of[t] < 0)
                    throw error("cokernel reduction hit a pivot token");
                img.toggle(uint32_t(token_of[t]));
            }
            out.pr[d][s] = img;
        }
    }
    return out;
}

GradedSection canonical_section(const LoopsData& l) {
    GradedSection s;
    s.loops = &l;
    s.values.assign(l.space.cap + 1, {});
    for (int d = 0; d <= l.space.cap; ++d) {
        for (uint32_t rep : l.reps[d])
            s.values[d].push_back(F2Vec::unit(rep));
    }
    return s;
}

GradedSection random_section(const UnstableModule& m, const LoopsData& l, uint64_t seed) {
    std::mt19937_64 rng(seed);
    GradedSection s;
    s.loops = &l;
    s.values.assign(l.space.cap + 1, {});
    for (int d = 0; d <= l.space.cap; ++d) {
        // basis of the image of Sq_0 in degree d
        std::vector<F2Vec> im;
        if (d % 2 == 0 && d > 0) {
            Eliminator e(m.dim(d));
            for (int src = 0; src < m.dim(d / 2); ++src)
                e.insert(m.sq_basis(d / 2, d / 2, uint32_t(src)));
            im = e.reduced_rows();
        }
        for (uint32_t rep : l.reps[d]) {
            F2Vec v = F2Vec::unit(rep);
            for (const F2Vec& b : im)
                if (rng() & 1)
                    v += b;
            s.values[d].push_back(v);
        }
    }
    return s;
}

bool section_is_valid(const UnstableModule& m, const LoopsData& l, const GradedSection& s) {
    for (int d = 0; d <= m.cap(); ++d) {
        for (size_t j = 0; j < l.reps[d].size(); ++j) {
            F2Vec img;
            for (uint32_t t : s.values[d][j].s)
                img += l.pr[d][t];
            if (img != F2Vec::unit(uint32_t(j)))
                return false;
        }
    }
    return true;
}

ReducedVerdict is_reduced(const UnstableModule& m) {
    ReducedVerdict v;
    for (int n = 1; 2 * n <= m.cap(); ++n) {
        // kernel of Sq_0 : M^n -> M^{2n}. Augment each column with its source
        // token at the low indices; since pivots are the largest indices, a
        // reduced row supported entirely in the augmentation block records a
        // vanishing combination of images, i.e. a kernel element.
        int dn = m.dim(n);
        if (dn == 0)
            continue;
        Eliminator e(size_t(dn) + m.dim(2 * n));
        for (int s = 0; s < dn; ++s) {
            F2Vec col = F2Vec::unit(uint32_t(s));
            for (uint32_t t : m.sq_basis(n, n, uint32_t(s)).s)
                col.toggle(uint32_t(dn) + t);
            e.insert(col);
        }
        for (const F2Vec& r : e.reduced_rows()) {
            if (!r.zero() && r.s.back() < uint32_t(dn)) {
                v.reduced = false;
                v.fail_degree = n;
                v.fail_elem = r;
                return v;
            }
        }
    }
    return v;
}

std::optional<std::string> certify_unstable(const UnstableModule& m) {
    // instability is structural (act is only stored for i <= d); check the
    // Adem compatibility of the stored matrices on every inadmissible pair
    for (int j = 1; j <= m.cap(); ++j) {
        for (int i = 1; i < 2 * j; ++i) {
            SqElem rhs = adem_normalize({i, j});
            for (int d = 0; d + i + j <= m.cap(); ++d) {
                for (int s = 0; s < m.dim(d); ++s) {
                    F2Vec lhs = m.sq(i, d + j, m.sq_basis(j, d, uint32_t(s)));
                    F2Vec r;
                    for (const SqWord& w : rhs.terms) {
                        F2Vec cur = F2Vec::unit(uint32_t(s));
                        int deg = d;
                        for (size_t h = w.size(); h-- > 0 && !cur.zero();) {
                            cur = m.sq(w[h], deg, cur);
                            deg += w[h];
                        }
                        r += cur;
                    }
                    if (lhs != r) {
                        std::ostringstream os;
                        os << "Adem failure: Sq^" << i << " Sq^" << j << " on "
                           << m.space.name(d, uint32_t(s));
                        return os.str();
                    }
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace ua
