#ifndef BLOCHKIT_DENSE_ORACLE_HPP
#define BLOCHKIT_DENSE_ORACLE_HPP

// Brute-force reference for param-free truncated algebras. Shares only the
// Poly and Rational types with the library: the quotient ring, the form
// modules and all linear algebra are rebuilt here with dense matrices, a
// lex column order and first-column pivots.

#include <map>
#include <vector>

#include <blochkit/poly.hpp>

namespace blochkit::oracle
{

using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

// Rank by fraction-free Bareiss elimination.
std::size_t rank(const Matrix &rows);
// Basis of {c : sum_j c_j vectors[j] = 0}.
Matrix nullspace(const Matrix &vectors, std::size_t dim);

// Q[t1..tm]_{<N} modulo the span of the ideal generated by gens and m^N.
class DenseRing
{
public:
    DenseRing(int m, int N, const std::vector<Poly> &gens);

    int m() const
    {
        return m_m;
    }
    int N() const
    {
        return m_N;
    }
    std::size_t dim() const
    {
        return m_basis.size();
    }
    // Exponents of the i-th quotient basis monomial.
    const std::vector<int> &basis_monomial(std::size_t i) const
    {
        return m_monos[m_basis[i]];
    }
    const std::vector<std::vector<int>> &all_monomials() const
    {
        return m_monos;
    }
    // Coordinates on the quotient basis.
    Row coords(const Poly &p) const;
    Row coords_of_monomial(const std::vector<int> &e, const Rational &c = 1) const;

private:
    int m_m;
    int m_N;
    std::vector<std::vector<int>> m_monos;
    std::map<std::vector<int>, int> m_index;
    Matrix m_rref; // pivot = first nonzero column
    std::vector<int> m_pivot_col;
    std::vector<int> m_basis;
    std::vector<int> m_coord; // column -> basis slot or -1
};

// Omega^n of a DenseRing as R^{words} modulo the relations dg ^ Omega^{n-1}.
class DenseForms
{
public:
    DenseForms(const DenseRing &ring, std::vector<Poly> gens);

    const DenseRing &ring() const
    {
        return m_ring;
    }
    std::vector<unsigned> words(int n) const;
    std::size_t ambient(int n) const
    {
        return m_ring.dim() * words(n).size();
    }
    // Rows spanning the relation subspace in the ambient coordinates.
    Matrix relations(int n) const;
    // d applied to each ambient basis vector (b, w).
    Matrix differential(int n) const;
    // Ambient vector of sum c * t^e * dW.
    Row vector(int n, const std::vector<std::tuple<std::vector<int>, unsigned, Rational>> &terms) const;

private:
    const DenseRing &m_ring;
    std::vector<Poly> m_gens;
};

struct OracleReport {
    std::vector<std::size_t> rel_dims;      // dim Omega^n_rel
    std::vector<std::size_t> h_dims;        // dim H^n
    std::vector<std::size_t> quotient_dims; // dim Omega^n_rel / d Omega^(n-1)_rel
};

// Relative to J' = (rel_gens) (J' = (t1..tm) for FULL).
class DenseComplex
{
public:
    DenseComplex(int m, int N, const std::vector<Poly> &gens, const std::vector<Poly> &rel_gens);

    std::size_t ring_dim() const
    {
        return m_ring.dim();
    }
    OracleReport report(int n_max) const;
    // Whether the ambient vector lies in the relative subspace, and in d of it.
    bool is_relative(int n, const Row &v) const;
    bool is_exact(int n, const Row &v) const;
    const DenseForms &forms() const
    {
        return m_forms;
    }

private:
    // Basis of the relative subspace (preimage of the quotient's relations).
    Matrix relative_space(int n) const;
    Matrix exact_space(int n) const;

    std::vector<Poly> m_gens;
    DenseRing m_ring;
    DenseRing m_quot;
    DenseForms m_forms;
    DenseForms m_quot_forms;
};

} // namespace blochkit::oracle

#endif
