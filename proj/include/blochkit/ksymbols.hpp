#ifndef BLOCHKIT_KSYMBOLS_HPP
#define BLOCHKIT_KSYMBOLS_HPP

#include <optional>
#include <string>
#include <vector>

#include <blochkit/derham.hpp>

namespace blochkit
{

// Integer combination of unit tuples {r1, ..., r_{n+1}} of one arity.
class SymbolSum
{
public:
    struct Term {
        Integer coeff;
        std::vector<AlgElem> entries;
    };

    SymbolSum() = default;
    SymbolSum(AlgebraPtr alg, int arity);
    static SymbolSum single(std::vector<AlgElem> entries, const Integer &coeff = 1);

    const AlgebraPtr &algebra() const
    {
        return m_alg;
    }
    int arity() const
    {
        return m_arity;
    }
    const std::vector<Term> &terms() const
    {
        return m_terms;
    }

    // Throws "entry not a unit" or "arity mismatch".
    void add(const Integer &coeff, std::vector<AlgElem> entries);

    SymbolSum &operator+=(const SymbolSum &o);
    SymbolSum &operator-=(const SymbolSum &o);
    friend SymbolSum operator+(SymbolSum a, const SymbolSum &b)
    {
        return a += b;
    }
    friend SymbolSum operator-(SymbolSum a, const SymbolSum &b)
    {
        return a -= b;
    }
    SymbolSum scaled(const Integer &k) const;

    // "k*{e1, e2} + ..." in the expression grammar.
    std::string to_string() const;

private:
    AlgebraPtr m_alg;
    int m_arity = 0;
    std::vector<Term> m_terms;
};

// Applies a ring map entrywise.
SymbolSum map_symbol(const SymbolSum &s, const RingMap &phi);

// Sum of c * dlog(r1) ^ ... ^ dlog(r_{n+1}).
Form dlog_symbol(const SymbolSum &s);

enum class SlotRule { First, Last };

struct BlochClass {
    Form raw;            // the multilinear expansion before passing to the class
    Form representative; // canonical class representative
    SymbolSum base_part; // discarded tensors of units of S

    bool is_zero() const
    {
        return representative.is_zero();
    }
};

// The Bloch map on a symbol: expand each tuple through r = s*(1+x), drop
// sub-tensors with an entry 1, keep the pure-base ones aside and send the rest
// to (-1)^i log(1+x_i) dlog(c_1) ^ ... (omitting slot i), where i is the
// first (or last) nilpotent slot. With a cutoff the class is taken modulo
// forms of internal degree above it.
BlochClass bloch(const SymbolSum &s, SlotRule rule = SlotRule::First, std::optional<int> cutoff = {});

// zeta(a, x) = {a+x, 1-a-x} - {a, 1-a}. Throws "a or 1-a not a unit".
SymbolSum steinberg_element(const AlgElem &a, const AlgElem &x);

// {1 + a*b*t^p, b}. Throws "b not a unit" or "truncation too shallow".
SymbolSum phi_p(const AlgElem &a, const AlgElem &b, int p);

struct Verdict {
    bool holds = false;
    std::string detail;
    ExactnessCertificate certificate;
};

// (i+j) B{1+a t^i, 1+b t^j} = t^(i+j) (i a db - j b da) modulo internal
// degree above i+j, in Q[a,b][t]/t^(i+j+1). Throws "invalid exponents".
Verdict verify_key_identity(int i, int j);

// B{1+a t^i, 1+b t^j} in Q[a,b][t]/t^p. Zero expected for i+j >= p.
ExactnessCertificate filtration_class(int p, int i, int j);
// Throws "i+j < p".
Verdict verify_filtration_vanishing(int p, int i, int j);

// B(zeta(a, x)) = 0 with the exactness certificate of the raw form.
Verdict verify_steinberg(const AlgElem &a, const AlgElem &x);

// B({u,v} + {v,u}) = 0.
Verdict verify_skew(const AlgElem &u, const AlgElem &v);

struct SurjectivityReport {
    int degree = 0;
    std::size_t symbols = 0;
    std::size_t quotient_dim = 0;
    std::size_t rank = 0;

    bool spans() const
    {
        return rank == quotient_dim;
    }
};

// Bloch images of {exp(x r1...rn), r1, ..., rn} with x running over a basis
// of the relative 0-forms and r over 1 + (monomials of I) and the invertible
// parameters, compared by rank against Omega^n_{R,I} / d Omega^(n-1)_{R,I}
// (within the window in parametric mode).
SurjectivityReport surjectivity_witnesses(const AlgebraPtr &alg, int n, const ParamWindow &window = {});

struct SigmaReport {
    int N = 0;
    struct Level {
        int n;
        std::size_t source_dim, target_dim, rank;
        bool bijective;
    };
    std::vector<Level> levels;

    bool ok() const;
};

// sigma: Omega^n of (R_2, (t)) -> Omega^n of (R_N, (t^(N-1))), t -> t^(N-1),
// for n = 0, 1, 2. Parameters (optional) are checked within the window.
SigmaReport verify_sigma(int N, const std::vector<ParamSpec> &params = {}, int param_degree = 1);

} // namespace blochkit

#endif
