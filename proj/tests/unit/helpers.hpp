#ifndef BLOCHKIT_TEST_HELPERS_HPP
#define BLOCHKIT_TEST_HELPERS_HPP

#include <random>
#include <string>

#include <blochkit/expr.hpp>

namespace testing
{

using namespace blochkit;

inline AlgebraPtr free_algebra(int m, int N, std::vector<ParamSpec> params = {})
{
    return Algebra::build(AlgebraSpec::finite_free(m, N, std::move(params)));
}

inline AlgElem E(const std::string &text, const AlgebraPtr &alg)
{
    return parse_elem(text, alg);
}

inline Form F(const std::string &text, const AlgebraPtr &alg)
{
    return parse_form(text, alg);
}

// Random element with small integer coefficients on monomials of nilpotent
// degree in [lo, N); parameters get exponents in [0, 1] ([-1, 1] if invertible).
inline AlgElem random_elem(const AlgebraPtr &alg, std::mt19937 &rng, int lo = 0, int terms = 3)
{
    const int m = alg->nilpotents();
    const int k = alg->params();
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> deg(lo, alg->bound() - 1);
    std::uniform_int_distribution<int> var(0, m - 1);
    std::uniform_int_distribution<int> pexp(-1, 1);
    Poly p;
    for (int s = 0; s < terms; ++s) {
        Monomial mono(m, k);
        for (int d = deg(rng); d > 0; --d) {
            ++mono.nil[var(rng)];
        }
        for (int j = 0; j < k; ++j) {
            const int e = pexp(rng);
            mono.par[j] = alg->vars().invertible(j) ? e : std::abs(e);
        }
        const int c = coeff(rng);
        if (c != 0) {
            p.add_term(mono, c);
        }
    }
    return AlgElem(alg, p);
}

inline AlgElem random_nilpotent(const AlgebraPtr &alg, std::mt19937 &rng)
{
    return random_elem(alg, rng, 1);
}

inline AlgElem random_unit(const AlgebraPtr &alg, std::mt19937 &rng)
{
    std::uniform_int_distribution<int> c(1, 4);
    return AlgElem::constant(alg, Rational(c(rng))) * (AlgElem::constant(alg, 1) + random_nilpotent(alg, rng));
}

} // namespace testing

#endif
