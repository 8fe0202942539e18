#ifndef BLOCHKIT_DERHAM_HPP
#define BLOCHKIT_DERHAM_HPP

#include <optional>
#include <string>
#include <vector>

#include <blochkit/forms.hpp>

namespace blochkit
{

struct DegreeRow {
    int degree = 0;
    std::size_t dim_rel = 0; // dim of the relative forms
    std::size_t dim_ker = 0;
    std::size_t dim_im = 0; // image of d from degree - 1
    std::size_t dim_h = 0;
};

struct BlockRow {
    Multidegree block;
    DegreeRow row;
};

struct CohomologyReport {
    std::string algebra;
    std::string relative;
    bool parametric = false;
    ParamWindow window;
    // Param-free: the whole space. Parametric: summed over the window blocks.
    std::vector<DegreeRow> rows;
    // Parametric mode: every block with a nonzero relative form.
    std::vector<BlockRow> blocks;

    bool all_zero() const;
};

// Relative de Rham cohomology for degrees 0..n_max (default: every degree
// with possibly nonzero forms). Parametric algebras need a window; an empty
// one means ParamWindow::box(alg, 1).
CohomologyReport cohomology(const AlgebraPtr &alg, const RelativeSpec &rel, int n_max = -1,
                            const ParamWindow &window = {});

// Result of solving d(eta) = omega inside the relative complex.
struct ExactnessCertificate {
    bool exact = false;
    std::optional<int> cutoff;
    Form target;    // omega, with components above the cutoff dropped
    Form primitive; // eta with d(eta) = target, when exact
    // Otherwise a dual vector on term coordinates that vanishes on every
    // d(eta) in the blocks of the target but not on the target itself.
    Form::Terms witness;
};

// Drops the components of internal degree above cutoff (graded mode only).
Form truncate_internal(const Form &w, int cutoff);

// Throws "form not relative".
ExactnessCertificate is_exact(const Form &w, const RelativeSpec &rel, std::optional<int> cutoff = {});
// Re-checks a certificate from scratch.
bool verify_certificate(const ExactnessCertificate &cert, const RelativeSpec &rel);

// Canonical representative of w modulo d of the relative (n-1)-forms.
Form quotient_class(const Form &w, const RelativeSpec &rel, std::optional<int> cutoff = {});

// Dimension of Omega^n_rel / d Omega^(n-1)_rel (param-free or within a window).
std::size_t quotient_dimension(const AlgebraPtr &alg, const RelativeSpec &rel, int n,
                               const ParamWindow &window = {});

// The ideal I' = I/J in R' = R/J, as a relative spec for quotient_algebra(alg, J).
RelativeSpec induced_relative(const AlgebraPtr &alg, const RelativeSpec &J, const RelativeSpec &I);
// Whether J is contained in I (both ideals of alg).
bool ideal_contained(const AlgebraPtr &alg, const RelativeSpec &J, const RelativeSpec &I);

struct SequenceReport {
    int degree = 0;
    std::string quotient; // R' = R/J
    // H^{n-1}(R,I) -beta-> H^{n-1}(R',I') -alpha-> Q_J -> Q_I -> Q_{R',I'} -> 0
    // with Q = Omega^n / d Omega^(n-1).
    std::size_t h_prev = 0;
    std::size_t h_prev_quotient = 0;
    std::size_t q_J = 0;
    std::size_t q_I = 0;
    std::size_t q_quotient = 0;
    std::size_t rank_beta = 0;
    std::size_t rank_alpha = 0;
    std::size_t rank_incl = 0;
    std::size_t rank_proj = 0;
    bool alpha_injective = false;
    // Degreewise dims of 0 -> Omega^k_J -> Omega^k_I -> Omega^k_{R',I'} -> 0.
    struct Level {
        int k;
        std::size_t J, I, quotient;
    };
    std::vector<Level> levels;
    std::vector<std::string> failures;

    bool ok() const
    {
        return failures.empty();
    }
};

// Param-free. Throws "not nested ideals" unless J is contained in I.
SequenceReport verify_forms_sequence(const AlgebraPtr &alg, const RelativeSpec &J, const RelativeSpec &I, int n);

struct HomotopyReport {
    std::size_t checked = 0;
    std::vector<std::string> failures;

    bool ok() const
    {
        return failures.empty();
    }
};

// (dh + hd)(w) = i w on every relative basis form of internal degree i in
// degrees 0..n_max (single-nilpotent graded mode).
HomotopyReport verify_homotopy(const AlgebraPtr &alg, int n_max, const ParamWindow &window = {});

// Ranks of form families, computed on a shared term index.
std::size_t rank_of_forms(const std::vector<Form> &forms);
// rank(base + extra) - rank(base).
std::size_t rank_modulo(const std::vector<Form> &base, const std::vector<Form> &extra);

} // namespace blochkit

#endif
