#ifndef BLOCHKIT_ALGEBRA_HPP
#define BLOCHKIT_ALGEBRA_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <blochkit/linalg.hpp>
#include <blochkit/poly.hpp>

namespace blochkit
{

namespace detail
{
class FormCache;
std::shared_ptr<FormCache> make_form_cache();
} // namespace detail

struct ParamSpec {
    std::string name;
    bool invertible = false;
};

// R = S[t1..tm]/J with S = Q[params] (Laurent in the invertible ones).
// J must contain (t1..tm)^N. Polynomials in `ideal` use layout().
struct AlgebraSpec {
    int nilpotents = 1;
    int bound = 2;
    std::vector<Poly> ideal;
    bool monomial_ideal = true;
    std::vector<ParamSpec> params;

    VarLayout layout() const;

    // S[t1..tm]/(t1..tm)^N.
    static AlgebraSpec finite_free(int m, int N, std::vector<ParamSpec> params = {});
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// A truncated algebra with its cached reduction engine. Immutable after
// build(); the lazily filled form presentation cache is internally
// synchronized.
class Algebra
{
public:
    static AlgebraPtr build(AlgebraSpec spec);

    const AlgebraSpec &spec() const
    {
        return m_spec;
    }
    const VarLayout &vars() const
    {
        return m_vars;
    }
    int nilpotents() const
    {
        return m_spec.nilpotents;
    }
    int params() const
    {
        return m_vars.params();
    }
    int bound() const
    {
        return m_spec.bound;
    }
    bool monomial_mode() const
    {
        return m_spec.monomial_ideal;
    }
    bool parametric() const
    {
        return params() > 0;
    }
    // One nilpotent variable and a monomial ideal: the graded setting of the
    // Euler homotopy.
    bool single_graded() const
    {
        return nilpotents() == 1 && monomial_mode();
    }

    // Canonical representative modulo the ideal. Throws on malformed input.
    Poly normal_form(const Poly &p) const;

    // Monomial mode: whether t^nil lies in J.
    bool nil_monomial_vanishes(const std::vector<int> &nil) const;

    // Ideal generators including every degree-N monomial.
    const std::vector<Poly> &generators_with_power() const
    {
        return m_generators;
    }

    // Param-free: monomials of nilpotent degree < N that survive reduction,
    // i.e. the quotient basis, in increasing order.
    std::vector<Monomial> standard_monomials() const;
    std::size_t dimension() const
    {
        return standard_monomials().size();
    }

    // Human-readable presentation, e.g. "Q[a,b^+-1][t]/(t^3)".
    std::string describe() const;

    detail::FormCache &form_cache() const
    {
        return *m_forms;
    }

private:
    Algebra() = default;
    void build_general();

    AlgebraSpec m_spec;
    VarLayout m_vars;
    std::vector<Poly> m_generators;
    std::vector<std::vector<int>> m_monomial_gens;

    // General mode: columns are the monomials of degree < N in term order.
    std::vector<Monomial> m_space;
    std::map<Monomial, int> m_column;
    Echelon m_ideal;

    std::shared_ptr<detail::FormCache> m_forms;
};

// An element of a truncated algebra, always in normal form.
class AlgElem
{
public:
    AlgElem() = default;
    AlgElem(AlgebraPtr alg, const Poly &p);

    static AlgElem constant(const AlgebraPtr &alg, const Rational &c);
    static AlgElem variable(const AlgebraPtr &alg, const std::string &name);
    static AlgElem generator(const AlgebraPtr &alg, int g);

    const AlgebraPtr &algebra() const
    {
        return m_alg;
    }
    const Poly &value() const
    {
        return m_value;
    }
    bool is_zero() const
    {
        return m_value.is_zero();
    }

    AlgElem &operator+=(const AlgElem &o);
    AlgElem &operator-=(const AlgElem &o);
    AlgElem &operator*=(const AlgElem &o);
    AlgElem &operator*=(const Rational &c);
    friend AlgElem operator+(AlgElem a, const AlgElem &b)
    {
        return a += b;
    }
    friend AlgElem operator-(AlgElem a, const AlgElem &b)
    {
        return a -= b;
    }
    friend AlgElem operator*(AlgElem a, const AlgElem &b)
    {
        return a *= b;
    }
    friend AlgElem operator*(AlgElem a, const Rational &c)
    {
        return a *= c;
    }
    AlgElem operator-() const;

    bool operator==(const AlgElem &o) const;

    std::string to_string() const;

private:
    AlgebraPtr m_alg;
    Poly m_value;
};

AlgElem reduce(const Poly &p, const AlgebraPtr &alg);
AlgElem mul(const AlgElem &a, const AlgElem &b);
AlgElem pow(const AlgElem &a, int e);

// Nilpotent-degree-zero part.
AlgElem augment(const AlgElem &a);
bool is_nilpotent(const AlgElem &a);
// Whether a Poly over the parameters alone is a unit of S: a nonzero
// rational times a monomial in invertible parameters.
bool is_base_unit(const Poly &s, const VarLayout &vars);
bool is_unit(const AlgElem &u);

AlgElem invert(const AlgElem &u);
AlgElem log1p(const AlgElem &x);
AlgElem exp_nil(const AlgElem &y);

struct UnitSplit {
    AlgElem base; // augment(u), a unit of S
    AlgElem nil;  // u = base * (1 + nil)
};
UnitSplit unit_split(const AlgElem &u);

// A ring homomorphism source -> target given by the images of generators.
// Unlisted variables map to the same-named target variable.
class RingMap
{
public:
    RingMap(AlgebraPtr source, AlgebraPtr target, const std::map<std::string, AlgElem> &images);

    const AlgebraPtr &source() const
    {
        return m_source;
    }
    const AlgebraPtr &target() const
    {
        return m_target;
    }
    // Image of combined generator g.
    const AlgElem &image(int g) const
    {
        return m_images[g];
    }
    AlgElem image_of_monomial(const Monomial &mono) const;
    AlgElem operator()(const AlgElem &a) const;

private:
    AlgebraPtr m_source;
    AlgebraPtr m_target;
    std::vector<AlgElem> m_images;
    std::vector<AlgElem> m_inverse_images;
};

AlgElem substitute(const AlgElem &a, const AlgebraPtr &target, const std::map<std::string, AlgElem> &images);

} // namespace blochkit

#endif
