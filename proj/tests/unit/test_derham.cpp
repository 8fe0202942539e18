#include <doctest.h>

#include <compare.hpp>

#include "helpers.hpp"

using namespace testing;

namespace
{

const char *const gk = "t1^4+t1^2*t2^3+t2^5";

// Q[t1,t2]/(df/dt1, df/dt2, m^6).
AlgebraPtr gk_jacobian()
{
    return oracle::make_algebra(2, 6, {"4*t1^3+2*t1*t2^3", "3*t1^2*t2^2+5*t2^4"});
}

std::vector<std::size_t> h_dims(const CohomologyReport &r)
{
    std::vector<std::size_t> out;
    for (const auto &row : r.rows) {
        out.push_back(row.dim_h);
    }
    return out;
}

} // namespace

TEST_CASE("cohomology of R_{N,m} vanishes")
{
    for (auto [m, N] : {std::pair{1, 2}, {2, 4}, {1, 6}, {3, 3}}) {
        const auto r = cohomology(free_algebra(m, N), RelativeSpec::full());
        CHECK(r.all_zero());
        CHECK_FALSE(r.rows.empty());
    }
    const auto ab = free_algebra(1, 4, {{"a", false}, {"b", true}});
    CHECK(cohomology(ab, RelativeSpec::full(), 2, ParamWindow::box(ab, 1)).all_zero());
}

TEST_CASE("cohomology of the jacobian quotient and of R' = Q[t]/(f, m^7)")
{
    const auto jac = gk_jacobian();
    CHECK(h_dims(cohomology(jac, RelativeSpec::full(), 2)) == std::vector<std::size_t>{1, 0, 0});

    const auto rprime = oracle::make_algebra(2, 7, {gk});
    const auto r = cohomology(rprime, RelativeSpec::full(), 2);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[1].dim_h == 1);
    CHECK(r.rows[0].dim_h == 0);
}

TEST_CASE("is_exact")
{
    const auto r2 = free_algebra(1, 2);
    auto c = is_exact(Form(r2, 1), RelativeSpec::full());
    CHECK(c.exact);
    CHECK(c.primitive.is_zero());

    c = is_exact(F("dt", r2), RelativeSpec::full());
    CHECK(c.exact);
    CHECK(c.primitive == F("t", r2));
    CHECK(verify_certificate(c, RelativeSpec::full()));

    const auto jac = gk_jacobian();
    const Form f = F(gk, jac);
    REQUIRE_FALSE(f.is_zero());
    CHECK(d(f).is_zero());
    c = is_exact(f, RelativeSpec::full());
    CHECK_FALSE(c.exact);
    CHECK_FALSE(c.witness.empty());
    CHECK(verify_certificate(c, RelativeSpec::full()));

    CHECK_THROWS_WITH(is_exact(F("1", r2), RelativeSpec::full()), "form not relative");
    const auto r4 = free_algebra(1, 4);
    CHECK_THROWS_WITH(is_exact(F("t*dt", r4), RelativeSpec::power_of(3)), "form not relative");
}

TEST_CASE("is_exact with a cutoff")
{
    const auto r4 = free_algebra(1, 4);
    // t^2 dt is exact, dt + t^2 dt too; cutting above degree 2 leaves dt.
    const auto c = is_exact(F("dt + t^2*dt", r4), RelativeSpec::full(), 2);
    CHECK(c.exact);
    CHECK(c.target == F("dt", r4));
    CHECK(verify_certificate(c, RelativeSpec::full()));
    CHECK(truncate_internal(F("dt + t*dt + t^2*dt", r4), 1) == F("dt", r4));
}

TEST_CASE("certificates re-verify on random relative forms")
{
    std::mt19937 rng(21);
    for (const auto &alg : {free_algebra(2, 4), free_algebra(1, 5, {{"a", false}}), gk_jacobian()}) {
        for (int k = 0; k < 10; ++k) {
            const int n = 1 + k % 2;
            const auto basis = relative_basis(alg, RelativeSpec::full(), n, ParamWindow::box(alg, 1));
            Form w(alg, n);
            std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
            for (int s = 0; s < 3; ++s) {
                w += basis[pick(rng)] * Rational(s + 1);
            }
            const auto c = is_exact(w, RelativeSpec::full());
            CHECK(verify_certificate(c, RelativeSpec::full()));
            if (c.exact) {
                CHECK(d(c.primitive) == w);
                CHECK(quotient_class(w, RelativeSpec::full()).is_zero());
            } else {
                CHECK_FALSE(quotient_class(w, RelativeSpec::full()).is_zero());
            }
        }
    }
}

TEST_CASE("quotient_class")
{
    const auto r3 = free_algebra(1, 3);
    CHECK(quotient_class(F("2*t*dt", r3), RelativeSpec::full()).is_zero());

    const auto a2 = free_algebra(1, 2, {{"a", false}});
    const Form w = F("t*da", a2);
    const Form q = quotient_class(w, RelativeSpec::full());
    CHECK_FALSE(q.is_zero());
    CHECK(quotient_class(q, RelativeSpec::full()) == q);
    // a dt and t da differ by d(a t).
    CHECK(quotient_class(F("-a*dt", a2), RelativeSpec::full()) == q);

    const auto r5 = free_algebra(1, 5, {{"a", false}});
    const Form u = F("t*da + a*t^2*dt", r5);
    CHECK(quotient_class(u + d(F("t^3", r5)), RelativeSpec::full()) == quotient_class(u, RelativeSpec::full()));
    CHECK_THROWS_WITH(quotient_class(F("da", r5), RelativeSpec::full()), "form not relative");
}

TEST_CASE("quotient_class is invariant under exact perturbations")
{
    std::mt19937 rng(22);
    const auto alg = free_algebra(1, 5, {{"a", false}, {"b", true}});
    const auto ones = relative_basis(alg, RelativeSpec::full(), 1, ParamWindow::box(alg, 1));
    const auto zeros = relative_basis(alg, RelativeSpec::full(), 0, ParamWindow::box(alg, 1));
    std::uniform_int_distribution<std::size_t> p1(0, ones.size() - 1), p0(0, zeros.size() - 1);
    for (int k = 0; k < 30; ++k) {
        const Form w = ones[p1(rng)] + ones[p1(rng)];
        const Form eta = zeros[p0(rng)] * Rational(k + 1);
        CHECK(quotient_class(w + d(eta), RelativeSpec::full()) == quotient_class(w, RelativeSpec::full()));
    }
}

TEST_CASE("quotient dimensions")
{
    // dt = d(t) in the dual numbers, but t da survives over Q[a].
    CHECK(quotient_dimension(free_algebra(1, 2), RelativeSpec::full(), 1) == 0);
    const auto a2 = free_algebra(1, 2, {{"a", false}});
    CHECK(quotient_dimension(a2, RelativeSpec::full(), 1, ParamWindow::box(a2, 1)) == 1);
    CHECK(quotient_dimension(free_algebra(1, 4), RelativeSpec::full(), 0) == 3);
    // dt, t dt, t^2 dt modulo d(t), d(t^2), d(t^3): nothing left.
    CHECK(quotient_dimension(free_algebra(1, 4), RelativeSpec::full(), 1) == 0);
}

TEST_CASE("forms sequence")
{
    for (int N = 3; N <= 5; ++N) {
        const auto alg = free_algebra(1, N);
        for (int n = 0; n <= 2; ++n) {
            const auto rep = verify_forms_sequence(alg, RelativeSpec::power_of(N - 1), RelativeSpec::full(), n);
            CHECK(rep.ok());
            CHECK(rep.h_prev_quotient == 0);
        }
    }
    const auto r32 = free_algebra(2, 3);
    const auto same = verify_forms_sequence(r32, RelativeSpec::full(), RelativeSpec::full(), 1);
    CHECK(same.ok());
    CHECK(same.q_J == same.q_I);
    CHECK(same.rank_incl == same.q_I);
    CHECK(same.q_quotient == 0);

    const auto big = free_algebra(2, 6);
    const auto J = RelativeSpec::explicit_ideal(
        {parse_poly("4*t1^3+2*t1*t2^3", big->vars()), parse_poly("3*t1^2*t2^2+5*t2^4", big->vars())});
    const auto rep = verify_forms_sequence(big, J, RelativeSpec::full(), 1);
    CHECK(rep.ok());
    CHECK(rep.h_prev_quotient == 1);
    CHECK(rep.alpha_injective);

    CHECK_THROWS_WITH(verify_forms_sequence(free_algebra(1, 3), RelativeSpec::full(), RelativeSpec::power_of(2), 1),
                      "not nested ideals");
}

TEST_CASE("sparse engine agrees with the dense oracle")
{
    const auto cases = oracle::corpus();
    int checked = 0;
    for (std::size_t i = 0; i < cases.size(); i += 5) {
        const auto cmp = oracle::compare(cases[i], 77 + static_cast<std::uint32_t>(i), 2);
        INFO(cases[i].label);
        CHECK(cmp.ok());
        ++checked;
    }
    CHECK(checked >= 7);
}
