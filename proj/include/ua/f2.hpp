#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ua {

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// an exponent left the stored window of a Z-indexed family; callers probing
// the representable part may catch and skip
struct window_error : error {
    explicit window_error(const std::string& msg) : error(msg) {}
};

// Vector over F_2 with sparse support: index i is present iff the coefficient
// of basis element i is 1. Support is kept sorted and duplicate-free.
struct F2Vec {
    std::vector<uint32_t> s;

    F2Vec() = default;
    F2Vec(std::initializer_list<uint32_t> l) : s(l) { normalize(); }
    static F2Vec unit(uint32_t i) { return F2Vec{i}; }

    bool zero() const { return s.empty(); }
    size_t weight() const { return s.size(); }
    bool has(uint32_t i) const;
    uint32_t lead() const;  // largest index; vector must be nonzero

    void toggle(uint32_t i);
    void normalize();  // sort + cancel duplicate pairs

    F2Vec& operator+=(const F2Vec& o);
    friend F2Vec operator+(F2Vec a, const F2Vec& b) { a += b; return a; }
    bool operator==(const F2Vec& o) const { return s == o.s; }
    bool operator!=(const F2Vec& o) const { return s != o.s; }
};

// Row-reduced span of F2 vectors inside a space of fixed dimension.
// Rows are dense bit blocks; each inserted pivot is back-substituted so the
// basis stays in reduced form. Pivot of a row is its largest support index,
// which makes the set of non-pivot indices the lexicographically smallest
// choice of coset representatives. Deterministic for a fixed insertion order.
class Eliminator {
public:
    explicit Eliminator(size_t dim);

    // Reduce v against the current basis and insert the remainder if nonzero.
    // Returns true if the rank grew.
    bool insert(const F2Vec& v);
    // Fully reduce v modulo the span.
    F2Vec reduce(const F2Vec& v) const;
    bool contains(const F2Vec& v) const { return reduce(v).zero(); }

    size_t rank() const { return rows_.size(); }
    size_t dim() const { return dim_; }
    bool is_pivot(uint32_t i) const { return pivot_row_[i] >= 0; }
    // Indices that are not pivots, ascending: the coset representatives.
    std::vector<uint32_t> free_indices() const;
    // Reduced basis rows as sparse vectors, ordered by pivot index.
    std::vector<F2Vec> reduced_rows() const;

private:
    using Row = std::vector<uint64_t>;
    size_t dim_, words_;
    std::vector<Row> rows_;          // one per pivot
    std::vector<uint32_t> pivots_;   // pivot index of rows_[k]
    std::vector<int32_t> pivot_row_; // index -> row number or -1

    Row to_row(const F2Vec& v) const;
    static int64_t row_lead(const Row& r);
};

// rank of the span of a set of vectors inside a dim-dimensional space
size_t f2_rank(size_t dim, const std::vector<F2Vec>& vectors);

// ambient_dim minus the rank of the ideal vectors
size_t quotient_dimension(size_t ambient_dim, const std::vector<F2Vec>& ideal_vectors);

// Membership of v in the F2-span of `span`, with a witness: the subset of
// `span` (by position) that sums to v. Returns false and an empty witness if
// v is not in the span.
struct Membership {
    bool member = false;
    std::vector<size_t> witness;  // positions into the input list
};
Membership solve_membership(size_t dim, const F2Vec& v, const std::vector<F2Vec>& span);

}  // namespace ua
