#ifndef BLOCHKIT_POLY_HPP
#define BLOCHKIT_POLY_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <blochkit/linalg.hpp>

namespace blochkit
{

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A monomial in m nilpotent variables and k parameters. Parameter exponents
// may be negative for invertible parameters; the owning algebra enforces it.
struct Monomial {
    std::vector<int> nil;
    std::vector<int> par;

    Monomial() = default;
    Monomial(std::size_t m, std::size_t k) : nil(m, 0), par(k, 0) {}
    Monomial(std::vector<int> n, std::vector<int> p) : nil(std::move(n)), par(std::move(p)) {}

    int nil_degree() const;
    bool is_one() const;

    Monomial operator*(const Monomial &o) const;

    // Graded-lex on the nilpotent exponents, then lex on the parameters.
    std::strong_ordering operator<=>(const Monomial &o) const;
    bool operator==(const Monomial &o) const = default;
};

// Variable naming and the invertibility of parameters. Nilpotent variables
// are "t" when m == 1 and "t1".."tm" otherwise; parameters are kept sorted by
// name so the term order is lex on parameter names.
class VarLayout
{
public:
    VarLayout() = default;
    VarLayout(int m, std::vector<std::string> params, std::vector<bool> invertible);

    int nilpotents() const
    {
        return m_nil;
    }
    int params() const
    {
        return static_cast<int>(m_params.size());
    }
    int generators() const
    {
        return m_nil + params();
    }

    const std::string &param_name(int j) const
    {
        return m_params[j];
    }
    bool invertible(int j) const
    {
        return m_invertible[j];
    }
    std::string nil_name(int i) const;
    // Name of generator g in the combined order: nilpotents first.
    std::string generator_name(int g) const;

    // Combined index of a variable name, if known.
    std::optional<int> find(const std::string &name) const;

    bool operator==(const VarLayout &o) const = default;

private:
    int m_nil = 0;
    std::vector<std::string> m_params;
    std::vector<bool> m_invertible;
};

std::string monomial_to_string(const Monomial &mono, const VarLayout &vars);

// Sparse polynomial with exact rational coefficients; no zero coefficients
// are stored and terms iterate in increasing term order.
class Poly
{
public:
    using Terms = std::map<Monomial, Rational>;

    Poly() = default;
    explicit Poly(Terms t);

    static Poly constant(const Rational &c, std::size_t m, std::size_t k);
    static Poly monomial(const Monomial &mono, const Rational &c = 1);
    static Poly variable(const VarLayout &vars, int g);

    const Terms &terms() const
    {
        return m_terms;
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }
    std::size_t size() const
    {
        return m_terms.size();
    }

    void add_term(const Monomial &mono, const Rational &c);

    Poly &operator+=(const Poly &o);
    Poly &operator-=(const Poly &o);
    Poly &operator*=(const Rational &c);
    friend Poly operator+(Poly a, const Poly &b)
    {
        return a += b;
    }
    friend Poly operator-(Poly a, const Poly &b)
    {
        return a -= b;
    }
    friend Poly operator*(Poly a, const Rational &c)
    {
        return a *= c;
    }
    friend Poly operator*(const Poly &a, const Poly &b);
    Poly operator-() const;

    // Partial derivative with respect to combined generator g.
    Poly derivative(int g, std::size_t m) const;

    // Part of nilpotent degree exactly d, or below d.
    Poly nil_degree_part(int d) const;
    Poly truncate_below(int d) const;

    int max_nil_degree() const;
    int min_nil_degree() const;

    std::string to_string(const VarLayout &vars) const;

    bool operator==(const Poly &o) const = default;

private:
    Terms m_terms;
};

// All exponent vectors of length m with entries >= 0 and total degree d.
std::vector<std::vector<int>> exponent_vectors(int m, int d);

} // namespace blochkit

#endif
