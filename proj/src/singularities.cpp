#include <blochkit/singularities.hpp>

#include <algorithm>

#include <blochkit/derham.hpp>

namespace blochkit
{

namespace
{

int nilpotents_of(const Poly &f)
{
    if (f.is_zero()) {
        throw Error("origin not critical");
    }
    const Monomial &mono = f.terms().begin()->first;
    if (!mono.par.empty()) {
        throw Error("singularity input must not involve parameters");
    }
    return static_cast<int>(mono.nil.size());
}

// Zero constant term and vanishing gradient at the origin.
void check_critical(const Poly &f)
{
    if (f.min_nil_degree() < 2) {
        throw Error("origin not critical");
    }
}

std::vector<Poly> jacobian(const Poly &f, int m)
{
    std::vector<Poly> out;
    for (int i = 0; i < m; ++i) {
        Poly g = f.derivative(i, m);
        if (!g.is_zero()) {
            out.push_back(std::move(g));
        }
    }
    return out;
}

AlgebraPtr truncated_quotient(const std::vector<Poly> &gens, int m, int N)
{
    AlgebraSpec spec;
    spec.nilpotents = m;
    spec.bound = N;
    spec.monomial_ideal = false;
    spec.ideal = gens;
    for (const auto &e : exponent_vectors(m, N)) {
        spec.ideal.push_back(Poly::monomial(Monomial(e, {})));
    }
    return Algebra::build(std::move(spec));
}

StableDimension stable_dimension(const Poly &f, const std::vector<Poly> &gens, int N_max)
{
    const int m = nilpotents_of(f);
    check_critical(f);
    const int start = std::max(f.max_nil_degree() + 2, 4);
    for (int N = start; N <= N_max; ++N) {
        AlgebraPtr q = truncated_quotient(gens, m, N);
        const auto basis = q->standard_monomials();
        std::vector<bool> survives(N, false);
        for (const auto &mono : basis) {
            survives[mono.nil_degree()] = true;
        }
        for (int d = 1; d < N; ++d) {
            if (!survives[d]) {
                return {basis.size(), N, d};
            }
        }
    }
    throw Error("isolated singularity not detected up to N_max");
}

} // namespace

StableDimension milnor_number(const Poly &f, int N_max)
{
    const int m = nilpotents_of(f);
    return stable_dimension(f, jacobian(f, m), N_max);
}

StableDimension tyurina_number(const Poly &f, int N_max)
{
    const int m = nilpotents_of(f);
    std::vector<Poly> gens = jacobian(f, m);
    gens.insert(gens.begin(), f);
    return stable_dimension(f, gens, N_max);
}

std::size_t singularity_cohomology(const Poly &f, int N)
{
    const int m = nilpotents_of(f);
    AlgebraPtr r = truncated_quotient({f}, m, N);
    const CohomologyReport rep = cohomology(r, RelativeSpec::full(), m - 1);
    return rep.rows.at(m - 1).dim_h;
}

SingularityReport singularity_report(const Poly &f, int N_max)
{
    SingularityReport rep;
    rep.f = f;
    rep.m = nilpotents_of(f);
    const StableDimension mu = milnor_number(f, N_max);
    const StableDimension tau = tyurina_number(f, N_max);
    rep.mu = mu.dim;
    rep.tau = tau.dim;
    rep.N_used = mu.N_used;
    rep.stabilization_degree = mu.stabilization_degree;
    rep.tau_N_used = tau.N_used;
    rep.tau_stabilization_degree = tau.stabilization_degree;
    rep.h_dim = singularity_cohomology(f, std::max(mu.N_used, tau.N_used));
    if (rep.tau > rep.mu || rep.h_dim != rep.mu - rep.tau) {
        throw Error("de Rham cross-check failed");
    }
    return rep;
}

} // namespace blochkit
