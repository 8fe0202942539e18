#ifndef BLOCHKIT_FORMS_HPP
#define BLOCHKIT_FORMS_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <blochkit/algebra.hpp>

namespace blochkit
{

// Strictly increasing wedge of 1-form generators as a bitmask. Bit g is
// dt_{g+1} for g < m and d(param g-m) otherwise.
using Word = std::uint32_t;

int word_degree(Word w);
// Sign of dx_g ^ w relative to the sorted word, 0 if g already occurs.
int insertion_sign(int g, Word w);
// Sign of u ^ v relative to the sorted word u|v, 0 if they overlap.
int wedge_sign(Word u, Word v);

struct TermKey {
    Monomial mono;
    Word word = 0;

    std::strong_ordering operator<=>(const TermKey &o) const;
    bool operator==(const TermKey &o) const = default;
};

// Per-generator degree of a term: exponent plus one for each differential.
using Multidegree = std::vector<int>;
Multidegree multidegree(const TermKey &key);
// Nilpotent part of the multidegree, summed: dt counts as one.
int internal_degree(const TermKey &key);

// A differential form of fixed degree over a truncated algebra, stored as
// its canonical representative: the reduction by the relations
// J*Omega^n + dJ ^ Omega^(n-1) eliminates the largest terms of every
// multidegree block.
class Form
{
public:
    using Terms = std::map<TermKey, Rational>;

    Form() = default;
    Form(AlgebraPtr alg, int degree);

    static Form from_elem(const AlgElem &a);
    static Form differential(const AlgebraPtr &alg, int g);

    const AlgebraPtr &algebra() const
    {
        return m_alg;
    }
    int degree() const
    {
        return m_degree;
    }
    const Terms &terms() const
    {
        return m_terms;
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }

    Form &operator+=(const Form &o);
    Form &operator-=(const Form &o);
    Form &operator*=(const Rational &c);
    friend Form operator+(Form a, const Form &b)
    {
        return a += b;
    }
    friend Form operator-(Form a, const Form &b)
    {
        return a -= b;
    }
    friend Form operator*(Form a, const Rational &c)
    {
        return a *= c;
    }
    Form operator-() const;

    bool operator==(const Form &o) const;

    // Signed sum of "c*mono*dW" terms with dW a ∧-separated wedge word.
    std::string to_string() const;

    // Internal: wraps terms that are already canonical.
    static Form from_canonical(AlgebraPtr alg, int degree, Terms terms);

private:
    AlgebraPtr m_alg;
    int m_degree = 0;
    Terms m_terms;
};

// Canonicalizes raw terms. Throws "mixed degrees" if the words disagree.
Form form_from_terms(const AlgebraPtr &alg, int degree, const Form::Terms &raw);

Form d(const Form &w);
Form wedge(const Form &a, const Form &b);
Form operator*(const AlgElem &f, const Form &w);
Form dlog(const AlgElem &u);

// Contraction with the Euler field t d/dt; single-nilpotent graded mode.
Form euler_homotopy(const Form &w);
Form graded_component(const Form &w, int i);

// Image of a form under the ring map (pushforward of differentials).
Form push_forward(const Form &w, const RingMap &phi);
// Same terms read in another algebra over the same variables.
Form transport(const Form &w, const AlgebraPtr &target);

std::string word_to_string(Word w, const VarLayout &vars);

// Ideals J' inside the augmentation ideal used for relative forms.
struct RelativeSpec {
    enum class Kind { Full, Power, Explicit };
    Kind kind = Kind::Full;
    int power = 1;
    std::vector<Poly> generators;

    static RelativeSpec full()
    {
        return {};
    }
    static RelativeSpec power_of(int k)
    {
        RelativeSpec r;
        r.kind = Kind::Power;
        r.power = k;
        return r;
    }
    static RelativeSpec explicit_ideal(std::vector<Poly> gens)
    {
        RelativeSpec r;
        r.kind = Kind::Explicit;
        r.generators = std::move(gens);
        return r;
    }

    std::string describe(const VarLayout &vars) const;
};

void validate_relative(const AlgebraPtr &alg, const RelativeSpec &rel);
// Whether relative subspaces decompose over multidegree blocks.
bool uses_blocks(const AlgebraPtr &alg, const RelativeSpec &rel);

// Quotient algebra R/J' with the induced variables.
AlgebraPtr quotient_algebra(const AlgebraPtr &alg, const RelativeSpec &rel);

// Parameter exponent box selecting finitely many multidegree blocks.
struct ParamWindow {
    std::vector<int> lo;
    std::vector<int> hi;

    // Exponents in [0, k] ([-k, k] for invertible parameters).
    static ParamWindow box(const AlgebraPtr &alg, int k);
};

// Monomial mode: every multidegree whose parameter part lies in the window.
std::vector<Multidegree> enumerate_blocks(const AlgebraPtr &alg, const ParamWindow &window);
// Multidegree blocks touched by a form.
std::vector<Multidegree> blocks_of(const Form &w);

// Dimension of the quotient Omega^n in one block.
std::size_t block_dimension(const AlgebraPtr &alg, int n, const Multidegree &D);

// Rational basis of Omega^n_{R,J'}, canonical (reduced echelon in term order).
std::vector<Form> relative_basis(const AlgebraPtr &alg, const RelativeSpec &rel, int n,
                                 const ParamWindow &window = {});
std::vector<Form> relative_basis_block(const AlgebraPtr &alg, const RelativeSpec &rel, int n,
                                       const Multidegree &D);
bool is_relative(const Form &w, const RelativeSpec &rel);

// Coordinates of forms on a shared ordered term index.
class TermIndex
{
public:
    void add(const Form &w);
    void add(const TermKey &k);
    void freeze();
    int column(const TermKey &k) const;
    const TermKey &key(int col) const
    {
        return m_keys[col];
    }
    std::size_t size() const
    {
        return m_keys.size();
    }
    SparseQVec vec(const Form &w) const;
    Form::Terms terms(const SparseQVec &v) const;

private:
    std::vector<TermKey> m_keys;
    std::map<TermKey, int> m_cols;
};

} // namespace blochkit

#endif
