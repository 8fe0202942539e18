#include <doctest.h>

#include <blochkit/singularities.hpp>

#include "helpers.hpp"

using namespace testing;

namespace
{

Poly P(const std::string &text)
{
    return parse_poly(text, infer_nilpotent_layout(text));
}

// dim Q[t]/(gens + m^N), computed through the general-mode algebra builder.
std::size_t quotient_dim(const std::vector<Poly> &gens, int m, int N)
{
    AlgebraSpec spec;
    spec.nilpotents = m;
    spec.bound = N;
    spec.monomial_ideal = false;
    spec.ideal = gens;
    for (const auto &e : exponent_vectors(m, N)) {
        spec.ideal.push_back(Poly::monomial(Monomial(e, {})));
    }
    return Algebra::build(spec)->dimension();
}

std::vector<Poly> jacobian(const Poly &f, int m)
{
    std::vector<Poly> out;
    for (int i = 0; i < m; ++i) {
        out.push_back(f.derivative(i, m));
    }
    return out;
}

} // namespace

TEST_CASE("milnor and tyurina numbers")
{
    struct Row {
        const char *f;
        std::size_t mu, tau;
    };
    for (const Row &r : {Row{"t^2", 1, 1}, Row{"t^3", 2, 2}, Row{"t^5", 4, 4}, Row{"t1^2+t2^2", 1, 1},
                         Row{"t1^3+t2^3", 4, 4}, Row{"t1^4+t1*t2^4", 13, 13},
                         Row{"t1^4+t1^2*t2^3+t2^5", 12, 11}}) {
        INFO(r.f);
        CHECK(milnor_number(P(r.f)).dim == r.mu);
        CHECK(tyurina_number(P(r.f)).dim == r.tau);
    }
}

TEST_CASE("singularity reports cross-check with de Rham cohomology")
{
    const auto gk = singularity_report(P("t1^4+t1^2*t2^3+t2^5"));
    CHECK(gk.mu == 12);
    CHECK(gk.tau == 11);
    CHECK(gk.h_dim == 1);
    CHECK(gk.m == 2);
    CHECK(gk.N_used == 7);
    CHECK(gk.stabilization_degree == 5);

    const auto circle = singularity_report(P("t1^2+t2^2"));
    CHECK(circle.mu == 1);
    CHECK(circle.h_dim == 0);

    const auto reiffen = singularity_report(P("t1^4+t1*t2^4"));
    CHECK(reiffen.mu == 13);
    CHECK(reiffen.tau == 13);
    CHECK(reiffen.h_dim == 0);
}

TEST_CASE("stabilization is monotone")
{
    for (const char *text : {"t^4", "t1^3+t2^3", "t1^4+t1^2*t2^3+t2^5"}) {
        INFO(text);
        const Poly f = P(text);
        const int m = infer_nilpotent_layout(text).nilpotents();
        const auto mu = milnor_number(f);
        CHECK(quotient_dim(jacobian(f, m), m, mu.N_used) == mu.dim);
        CHECK(quotient_dim(jacobian(f, m), m, mu.N_used + 1) == mu.dim);
        CHECK(quotient_dim(jacobian(f, m), m, mu.N_used + 3) == mu.dim);

        auto tyurina = jacobian(f, m);
        tyurina.push_back(f);
        const auto tau = tyurina_number(f);
        CHECK(quotient_dim(tyurina, m, tau.N_used + 1) == tau.dim);
        CHECK(tau.dim <= mu.dim);
    }
}

TEST_CASE("singularity errors")
{
    CHECK_THROWS_WITH(milnor_number(P("t1+t2^2")), "origin not critical");
    CHECK_THROWS_WITH(milnor_number(P("1+t^2")), "origin not critical");
    // t1^2 alone is not isolated: the t2 axis is singular.
    CHECK_THROWS_WITH(milnor_number(P("t1^2+0*t2"), 10), "isolated singularity not detected up to N_max");
    CHECK_THROWS_WITH(tyurina_number(P("t1^2*t2^2"), 10), "isolated singularity not detected up to N_max");
}
