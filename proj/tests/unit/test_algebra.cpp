#include <algorithm>

#include <doctest.h>

#include "helpers.hpp"

using namespace testing;

namespace
{

AlgebraPtr gk_jacobian()
{
    AlgebraSpec spec;
    spec.nilpotents = 2;
    spec.bound = 6;
    spec.monomial_ideal = false;
    const VarLayout vars = spec.layout();
    spec.ideal = {parse_poly("4*t1^3+2*t1*t2^3", vars), parse_poly("3*t1^2*t2^2+5*t2^4", vars)};
    for (const auto &e : exponent_vectors(2, 6)) {
        spec.ideal.push_back(Poly::monomial(Monomial(e, {})));
    }
    return Algebra::build(spec);
}

} // namespace

TEST_CASE("build: dual numbers and R_{3,2}")
{
    const auto r2 = free_algebra(1, 2);
    CHECK(r2->standard_monomials().size() == 2);
    const auto r32 = free_algebra(2, 3);
    const auto basis = r32->standard_monomials();
    REQUIRE(basis.size() == 6);
    std::vector<std::string> names;
    for (const auto &mono : basis) {
        names.push_back(monomial_to_string(mono, r32->vars()));
    }
    std::sort(names.begin(), names.end());
    CHECK(names == std::vector<std::string>{"", "t1", "t1*t2", "t1^2", "t2", "t2^2"});
}

TEST_CASE("build: jacobian quotient of t1^4+t1^2*t2^3+t2^5 has the oracle dimension")
{
    const auto alg = gk_jacobian();
    CHECK_FALSE(alg->monomial_mode());
    CHECK(alg->standard_monomials().size() == 12);
    CHECK(E("4*t1^3+2*t1*t2^3", alg).is_zero());
    CHECK(E("3*t1^2*t2^2+5*t2^4", alg).is_zero());
}

TEST_CASE("build: errors")
{
    AlgebraSpec spec;
    spec.nilpotents = 1;
    spec.bound = 3;
    spec.ideal = {Poly::monomial(Monomial(std::vector<int>{4}, std::vector<int>{}))};
    CHECK_THROWS_WITH(Algebra::build(spec), "degree-N monomials do not all vanish");

    AlgebraSpec general;
    general.nilpotents = 1;
    general.bound = 2;
    general.monomial_ideal = false;
    general.params = {{"a", false}};
    general.ideal = {Poly::monomial(Monomial(std::vector<int>{2}, std::vector<int>{0}))};
    CHECK_THROWS_WITH(Algebra::build(general), "parametric mode requires monomial ideal");

    AlgebraSpec loose;
    loose.nilpotents = 2;
    loose.bound = 3;
    loose.monomial_ideal = false;
    loose.ideal = {parse_poly("t1^2-t2^2", loose.layout())};
    CHECK_THROWS_WITH(Algebra::build(loose), "degree-N monomials do not all vanish");
}

TEST_CASE("reduce")
{
    CHECK(E("t^3", free_algebra(1, 2)).is_zero());
    CHECK(E("t1^2*t2", free_algebra(2, 3)).is_zero());
    const auto alg = free_algebra(1, 3);
    CHECK_THROWS_WITH(reduce(parse_poly("s", VarLayout(1, {"s"}, {false})), alg), "unknown variable");
}

TEST_CASE("reduce is idempotent up to nilpotent degree 2N")
{
    std::mt19937 rng(11);
    const auto alg = gk_jacobian();
    for (int k = 0; k < 50; ++k) {
        Poly p;
        std::uniform_int_distribution<int> deg(0, 12);
        std::uniform_int_distribution<int> var(0, 1);
        for (int s = 0; s < 4; ++s) {
            Monomial mono(2, 0);
            for (int d = deg(rng); d > 0; --d) {
                ++mono.nil[var(rng)];
            }
            p.add_term(mono, s + 1);
        }
        const AlgElem once = reduce(p, alg);
        CHECK(reduce(once.value(), alg) == once);
    }
}

TEST_CASE("mul")
{
    const auto r2 = free_algebra(1, 2);
    CHECK(E("(1+t)*(1-t)", r2) == E("1", r2));
    const auto r5 = free_algebra(1, 5);
    CHECK(mul(E("t", r5), E("t^4", r5)).is_zero());
    const auto ab = free_algebra(1, 3, {{"a", false}, {"b", false}});
    CHECK(mul(E("1+a*t", ab), E("1+b*t", ab)) == E("1+(a+b)*t+a*b*t^2", ab));
    CHECK_THROWS_WITH(mul(E("t", r2), E("t", r5)), "algebra mismatch");
}

TEST_CASE("ring laws on random elements")
{
    std::mt19937 rng(5);
    const auto alg = free_algebra(2, 4, {{"a", false}, {"b", true}});
    for (int k = 0; k < 30; ++k) {
        const AlgElem x = random_elem(alg, rng);
        const AlgElem y = random_elem(alg, rng);
        const AlgElem z = random_elem(alg, rng);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x * y == y * x);
    }
}

TEST_CASE("augment")
{
    const auto r = free_algebra(1, 3);
    CHECK(augment(E("3+2*t", r)) == E("3", r));
    const auto ab = free_algebra(1, 3, {{"a", false}, {"b", false}});
    CHECK(augment(E("a+a*b*t^2", ab)) == E("a", ab));
    CHECK(augment(E("t1*t2", free_algebra(2, 3))).is_zero());
}

TEST_CASE("invert")
{
    const auto r3 = free_algebra(1, 3);
    CHECK(invert(E("1+t", r3)) == E("1-t+t^2", r3));
    CHECK(invert(E("2", r3)) == E("1/2", r3));
    const auto ab = free_algebra(1, 2, {{"a", false}, {"b", true}});
    CHECK(invert(E("b*(1+a*t)", ab)) == E("b^-1*(1-a*t)", ab));
    CHECK_THROWS_WITH(invert(E("t", r3)), "augmentation not a unit");
    CHECK_THROWS_WITH(invert(E("a+t", ab)), "augmentation not a unit");
}

TEST_CASE("invert is a two-sided inverse on random units")
{
    std::mt19937 rng(7);
    for (int k = 0; k < 100; ++k) {
        const auto alg = free_algebra(1 + k % 3, 2 + k % 4, {{"b", true}});
        const AlgElem u = random_unit(alg, rng) * E("b^" + std::to_string(k % 3 - 1), alg);
        const AlgElem one = E("1", alg);
        CHECK(u * invert(u) == one);
        CHECK(invert(u) * u == one);
    }
}

TEST_CASE("log1p and exp_nil")
{
    const auto r4 = free_algebra(1, 4);
    CHECK(log1p(E("t", r4)) == E("t-1/2*t^2+1/3*t^3", r4));
    CHECK(log1p(E("0", r4)).is_zero());
    const auto a5 = free_algebra(1, 5, {{"a", false}});
    CHECK(log1p(E("a*t^2", a5)) == E("a*t^2-1/2*a^2*t^4", a5));
    CHECK(exp_nil(E("0", r4)) == E("1", r4));
    const auto r3 = free_algebra(1, 3);
    CHECK(exp_nil(E("t", r3)) == E("1+t+1/2*t^2", r3));
    const auto r5 = free_algebra(1, 5);
    CHECK(exp_nil(log1p(E("t", r5))) == E("1+t", r5));
    CHECK_THROWS_WITH(log1p(E("1+t", r4)), "argument not nilpotent");
    CHECK_THROWS_WITH(exp_nil(E("2", r4)), "argument not nilpotent");
}

TEST_CASE("log and exp are inverse and log turns products into sums")
{
    std::mt19937 rng(13);
    for (int k = 0; k < 100; ++k) {
        const auto alg = free_algebra(1 + k % 2, 2 + k % 5, {{"a", false}});
        const AlgElem x = random_nilpotent(alg, rng);
        const AlgElem y = random_nilpotent(alg, rng);
        const AlgElem one = E("1", alg);
        CHECK(exp_nil(log1p(x)) == one + x);
        CHECK(log1p(exp_nil(y) - one) == y);
        CHECK(log1p((one + x) * (one + y) - one) == log1p(x) + log1p(y));
    }
}

TEST_CASE("substitute")
{
    const auto src = free_algebra(1, 5, {{"x", false}});
    const auto t5 = free_algebra(1, 5);
    CHECK(substitute(E("x*t", src), t5, {{"x", E("t^2", t5)}}) == E("t^3", t5));

    const auto t7 = free_algebra(1, 7);
    CHECK(substitute(E("1+t", t7), t7, {{"t", E("t^3", t7)}}) == E("1+t^3", t7));

    const auto r2 = free_algebra(1, 2);
    const auto r4 = free_algebra(1, 4);
    CHECK(substitute(E("t", r2), r4, {{"t", E("t^3", r4)}}) == E("t^3", r4));

    CHECK_THROWS_WITH(substitute(E("t", r2), r4, {{"t", E("1+t", r4)}}),
                      doctest::Contains("substitution violates nilpotency/unit constraints"));
    // t -> t is not well defined from Q[t]/t^2 to Q[t]/t^4.
    CHECK_THROWS(substitute(E("t", r2), r4, {{"t", E("t", r4)}}));
}

TEST_CASE("substitute is multiplicative")
{
    std::mt19937 rng(17);
    const auto src = free_algebra(2, 3, {{"a", false}});
    const auto dst = free_algebra(1, 6, {{"a", false}});
    const RingMap phi(src, dst, {{"t1", E("t^2", dst)}, {"t2", E("a*t^3+t^2", dst)}});
    for (int k = 0; k < 30; ++k) {
        const AlgElem x = random_elem(src, rng);
        const AlgElem y = random_elem(src, rng);
        CHECK(phi(x * y) == phi(x) * phi(y));
        CHECK(phi(x + y) == phi(x) + phi(y));
    }
}

TEST_CASE("unit_split")
{
    const auto r = free_algebra(1, 3);
    auto s = unit_split(E("2+2*t", r));
    CHECK(s.base == E("2", r));
    CHECK(s.nil == E("t", r));
    const auto r32 = free_algebra(2, 3);
    s = unit_split(E("1+t1*t2", r32));
    CHECK(s.base == E("1", r32));
    CHECK(s.nil == E("t1*t2", r32));
    const auto ab = free_algebra(1, 3, {{"a", false}, {"b", true}});
    s = unit_split(E("b+a*b*t", ab));
    CHECK(s.base == E("b", ab));
    CHECK(s.nil == E("a*t", ab));
    CHECK_THROWS_WITH(unit_split(E("t", r)), "augmentation not a unit");
}
