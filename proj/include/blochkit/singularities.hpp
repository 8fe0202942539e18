#ifndef BLOCHKIT_SINGULARITIES_HPP
#define BLOCHKIT_SINGULARITIES_HPP

#include <vector>

#include <blochkit/algebra.hpp>

namespace blochkit
{

constexpr int default_singularity_bound = 24;

// dim Q[t]/(ideal + m^N) once certified stable: all monomials of some degree
// d < N reduce to zero, so the quotient is the same for every larger N.
struct StableDimension {
    std::size_t dim = 0;
    int N_used = 0;
    int stabilization_degree = 0;
};

// Smallest N tried is max(deg f + 2, 4). f is a polynomial in m nilpotent
// variables without parameters. Throws "origin not critical" or
// "isolated singularity not detected up to N_max".
StableDimension milnor_number(const Poly &f, int N_max = default_singularity_bound);
StableDimension tyurina_number(const Poly &f, int N_max = default_singularity_bound);

struct SingularityReport {
    Poly f;
    int m = 0;
    std::size_t mu = 0;
    std::size_t tau = 0;
    std::size_t h_dim = 0; // dim H^{m-1} of (Q[t]/(f, m^N), (t))
    int N_used = 0;
    int stabilization_degree = 0;
    int tau_N_used = 0;
    int tau_stabilization_degree = 0;
};

// Throws "de Rham cross-check failed" if h_dim differs from mu - tau.
SingularityReport singularity_report(const Poly &f, int N_max = default_singularity_bound);

// dim H^{m-1} for R' = Q[t]/(f, m^N).
std::size_t singularity_cohomology(const Poly &f, int N);

} // namespace blochkit

#endif
