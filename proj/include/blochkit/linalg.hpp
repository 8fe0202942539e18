#ifndef BLOCHKIT_LINALG_HPP
#define BLOCHKIT_LINALG_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace blochkit
{

using Integer = mpz_class;
using Rational = mpq_class;

// Sparse vectors are ordered maps column -> nonzero value. Column order is
// the term order of whatever space the caller indexes; larger column means
// larger term.
using SparseQVec = std::map<int, Rational>;
using SparseZVec = std::map<int, Integer>;

std::string to_string(const Rational &q);

// Reduced row echelon form of a rational row space.
//
// The pivot of every row is its largest column, so reduction eliminates the
// largest terms first and the residual of a vector is the unique
// representative supported on non-pivot columns. Rows are kept as primitive
// integer vectors with a positive pivot and all elimination is fraction-free;
// only the public reduce() result is rational.
class Echelon
{
public:
    Echelon() = default;

    // Adds v to the span. Returns true when the rank grew.
    bool insert(const SparseQVec &v);
    bool insert(SparseZVec v);

    // Inserts a batch, sparsest and smallest-coefficient rows first. The
    // resulting RREF does not depend on the order.
    std::size_t insert_all(const std::vector<SparseQVec> &rows);

    // Canonical residual of v modulo the span.
    SparseQVec reduce(const SparseQVec &v) const;
    bool contains(const SparseQVec &v) const
    {
        return reduce(v).empty();
    }

    std::size_t rank() const
    {
        return m_rows.size();
    }
    bool is_pivot(int col) const
    {
        return m_rows.count(col) != 0;
    }

    // The linear functional v -> reduce(v)[col] as an explicit dual vector.
    // It vanishes on the span. Requires col to be a non-pivot column.
    SparseQVec residual_functional(int col) const;

    // Rows normalized to pivot coefficient one, keyed by pivot column.
    std::map<int, SparseQVec> normalized_rows() const;

private:
    void reduce_in_place(SparseZVec &w, Integer *scale) const;

    std::map<int, SparseZVec> m_rows;
};

// Divides out the content and makes the leading (largest column) entry
// positive. Returns false for the zero vector.
bool make_primitive(SparseZVec &w);

// Clears denominators: returns w and s with v = w / s.
SparseZVec clear_denominators(const SparseQVec &v, Integer &s);

SparseQVec add_scaled(SparseQVec a, const SparseQVec &b, const Rational &c);
Rational dot(const SparseQVec &a, const SparseQVec &b);

// Basis of the kernel of the map e_j -> images[j], as coefficient vectors
// over j. Canonical (RREF with largest index as pivot).
std::vector<SparseQVec> kernel_basis(const std::vector<SparseQVec> &images);

// Solves sum_j c_j images[j] = target. Returns false when target is not in
// the span; otherwise fills coeffs (one particular solution).
bool solve_combination(const std::vector<SparseQVec> &images, const SparseQVec &target,
                       SparseQVec &coeffs);

std::size_t rank_of(const std::vector<SparseQVec> &rows);

} // namespace blochkit

#endif
