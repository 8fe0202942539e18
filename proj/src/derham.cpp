#include <blochkit/derham.hpp>

#include <algorithm>

#include <blochkit/parallel.hpp>

namespace blochkit
{

namespace
{

struct ImageSet {
    std::vector<Form> sources;
    std::vector<Form> images;
};

// d of a basis of the relative (n-1)-forms, restricted to block D when the
// relative spec decomposes over blocks.
ImageSet exact_images(const AlgebraPtr &alg, const RelativeSpec &rel, int n, const Multidegree *D)
{
    ImageSet out;
    if (n < 1) {
        return out;
    }
    out.sources = D ? relative_basis_block(alg, rel, n - 1, *D) : relative_basis(alg, rel, n - 1);
    for (const auto &s : out.sources) {
        out.images.push_back(d(s));
    }
    return out;
}

// Splits a form by block (or returns it whole when blocks do not apply).
std::vector<std::pair<Multidegree, Form>> split_blocks(const Form &w, bool blocked)
{
    std::vector<std::pair<Multidegree, Form>> out;
    if (!blocked) {
        if (!w.is_zero()) {
            out.emplace_back(Multidegree{}, w);
        }
        return out;
    }
    std::map<Multidegree, Form::Terms> groups;
    for (const auto &[k, c] : w.terms()) {
        groups[multidegree(k)].emplace(k, c);
    }
    for (auto &[D, t] : groups) {
        out.emplace_back(D, Form::from_canonical(w.algebra(), w.degree(), std::move(t)));
    }
    return out;
}

TermIndex index_of(const std::vector<Form> &forms, const Form *extra = nullptr)
{
    TermIndex idx;
    for (const auto &f : forms) {
        idx.add(f);
    }
    if (extra) {
        idx.add(*extra);
    }
    idx.freeze();
    return idx;
}

std::vector<SparseQVec> vecs_of(const TermIndex &idx, const std::vector<Form> &forms)
{
    std::vector<SparseQVec> out;
    out.reserve(forms.size());
    for (const auto &f : forms) {
        out.push_back(idx.vec(f));
    }
    return out;
}

std::size_t d_rank(const std::vector<Form> &basis)
{
    std::vector<Form> images;
    images.reserve(basis.size());
    for (const auto &b : basis) {
        images.push_back(d(b));
    }
    return rank_of_forms(images);
}

ParamWindow effective_window(const AlgebraPtr &alg, const ParamWindow &window)
{
    if (!window.lo.empty() || !alg->parametric()) {
        return window.lo.empty() ? ParamWindow::box(alg, 0) : window;
    }
    return ParamWindow::box(alg, 1);
}

Form pick_terms(const AlgebraPtr &alg, int n, const Form::Terms &t)
{
    return Form::from_canonical(alg, n, t);
}

} // namespace

std::size_t rank_of_forms(const std::vector<Form> &forms)
{
    TermIndex idx = index_of(forms);
    return rank_of(vecs_of(idx, forms));
}

std::size_t rank_modulo(const std::vector<Form> &base, const std::vector<Form> &extra)
{
    std::vector<Form> all = base;
    all.insert(all.end(), extra.begin(), extra.end());
    TermIndex idx = index_of(all);
    return rank_of(vecs_of(idx, all)) - rank_of(vecs_of(idx, base));
}

bool CohomologyReport::all_zero() const
{
    return std::all_of(rows.begin(), rows.end(), [](const DegreeRow &r) { return r.dim_h == 0; });
}

CohomologyReport cohomology(const AlgebraPtr &alg, const RelativeSpec &rel, int n_max, const ParamWindow &window)
{
    validate_relative(alg, rel);
    const int top = alg->vars().generators();
    if (n_max < 0 || n_max > top) {
        n_max = top;
    }
    CohomologyReport report;
    report.algebra = alg->describe();
    report.relative = rel.describe(alg->vars());
    report.parametric = alg->parametric();
    report.window = effective_window(alg, window);

    auto fill = [&](const std::vector<std::vector<Form>> &bases, std::vector<DegreeRow> &rows) {
        // bases[n] for n = 0..n_max+1
        std::vector<std::size_t> rank(bases.size(), 0);
        for (std::size_t n = 0; n < bases.size(); ++n) {
            rank[n] = d_rank(bases[n]);
        }
        rows.clear();
        for (int n = 0; n <= n_max; ++n) {
            DegreeRow r;
            r.degree = n;
            r.dim_rel = bases[n].size();
            r.dim_ker = r.dim_rel - rank[n];
            r.dim_im = n > 0 ? rank[n - 1] : 0;
            r.dim_h = r.dim_ker - r.dim_im;
            rows.push_back(r);
        }
    };

    if (!uses_blocks(alg, rel)) {
        std::vector<std::vector<Form>> bases;
        for (int n = 0; n <= n_max; ++n) {
            bases.push_back(relative_basis(alg, rel, n));
        }
        fill(bases, report.rows);
        return report;
    }

    const std::vector<Multidegree> blocks = enumerate_blocks(alg, report.window);
    std::vector<std::vector<DegreeRow>> per_block(blocks.size());
    parallel_for(blocks.size(), [&](std::size_t b) {
        std::vector<std::vector<Form>> bases;
        for (int n = 0; n <= n_max; ++n) {
            bases.push_back(relative_basis_block(alg, rel, n, blocks[b]));
        }
        fill(bases, per_block[b]);
    });
    report.rows.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        report.rows[n].degree = n;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        bool nonzero = false;
        for (int n = 0; n <= n_max; ++n) {
            const DegreeRow &r = per_block[b][n];
            DegreeRow &acc = report.rows[n];
            acc.dim_rel += r.dim_rel;
            acc.dim_ker += r.dim_ker;
            acc.dim_im += r.dim_im;
            acc.dim_h += r.dim_h;
            nonzero = nonzero || r.dim_rel > 0;
        }
        if (report.parametric && nonzero) {
            for (int n = 0; n <= n_max; ++n) {
                report.blocks.push_back({blocks[b], per_block[b][n]});
            }
        }
    }
    return report;
}

Form truncate_internal(const Form &w, int cutoff)
{
    if (!w.algebra()->monomial_mode()) {
        throw Error("degree cutoff requires graded mode");
    }
    Form::Terms t;
    for (const auto &[k, c] : w.terms()) {
        if (internal_degree(k) <= cutoff) {
            t.emplace(k, c);
        }
    }
    return Form::from_canonical(w.algebra(), w.degree(), std::move(t));
}

ExactnessCertificate is_exact(const Form &w, const RelativeSpec &rel, std::optional<int> cutoff)
{
    const AlgebraPtr &alg = w.algebra();
    if (!is_relative(w, rel)) {
        throw Error("form not relative");
    }
    ExactnessCertificate cert;
    cert.cutoff = cutoff;
    cert.target = cutoff ? truncate_internal(w, *cutoff) : w;
    cert.primitive = Form(alg, std::max(0, w.degree() - 1));
    cert.exact = true;
    const bool blocked = uses_blocks(alg, rel);
    for (const auto &[D, part] : split_blocks(cert.target, blocked)) {
        ImageSet set = exact_images(alg, rel, w.degree(), blocked ? &D : nullptr);
        TermIndex idx = index_of(set.images, &part);
        const std::vector<SparseQVec> vecs = vecs_of(idx, set.images);
        const SparseQVec target = idx.vec(part);
        SparseQVec coeffs;
        if (solve_combination(vecs, target, coeffs)) {
            for (const auto &[j, c] : coeffs) {
                cert.primitive += set.sources[j] * c;
            }
            continue;
        }
        cert.exact = false;
        Echelon span;
        span.insert_all(vecs);
        const SparseQVec residual = span.reduce(target);
        const int col = residual.rbegin()->first;
        cert.witness = idx.terms(span.residual_functional(col));
        cert.primitive = Form(alg, cert.primitive.degree());
        break;
    }
    return cert;
}

bool verify_certificate(const ExactnessCertificate &cert, const RelativeSpec &rel)
{
    const Form &w = cert.target;
    const AlgebraPtr &alg = w.algebra();
    if (cert.exact) {
        if (w.degree() == 0) {
            return w.is_zero();
        }
        return is_relative(cert.primitive, rel) && d(cert.primitive) == w;
    }
    if (cert.witness.empty()) {
        return false;
    }
    auto pair_with = [&](const Form &f) {
        Rational s = 0;
        for (const auto &[k, c] : f.terms()) {
            auto it = cert.witness.find(k);
            if (it != cert.witness.end()) {
                s += c * it->second;
            }
        }
        return s;
    };
    if (sgn(pair_with(w)) == 0) {
        return false;
    }
    const bool blocked = uses_blocks(alg, rel);
    std::vector<Multidegree> blocks;
    if (blocked) {
        for (const auto &[k, c] : cert.witness) {
            blocks.push_back(multidegree(k));
        }
        std::sort(blocks.begin(), blocks.end());
        blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    } else {
        blocks.emplace_back();
    }
    for (const auto &D : blocks) {
        for (const auto &img : exact_images(alg, rel, w.degree(), blocked ? &D : nullptr).images) {
            if (sgn(pair_with(img)) != 0) {
                return false;
            }
        }
    }
    return true;
}

Form quotient_class(const Form &w, const RelativeSpec &rel, std::optional<int> cutoff)
{
    const AlgebraPtr &alg = w.algebra();
    if (!is_relative(w, rel)) {
        throw Error("form not relative");
    }
    const Form target = cutoff ? truncate_internal(w, *cutoff) : w;
    const bool blocked = uses_blocks(alg, rel);
    Form::Terms out;
    for (const auto &[D, part] : split_blocks(target, blocked)) {
        ImageSet set = exact_images(alg, rel, w.degree(), blocked ? &D : nullptr);
        TermIndex idx = index_of(set.images, &part);
        Echelon span;
        span.insert_all(vecs_of(idx, set.images));
        for (auto &[k, c] : idx.terms(span.reduce(idx.vec(part)))) {
            out.emplace(k, c);
        }
    }
    return pick_terms(alg, w.degree(), out);
}

std::size_t quotient_dimension(const AlgebraPtr &alg, const RelativeSpec &rel, int n, const ParamWindow &window)
{
    validate_relative(alg, rel);
    if (!uses_blocks(alg, rel)) {
        const auto basis = relative_basis(alg, rel, n);
        return basis.size() - (n > 0 ? d_rank(relative_basis(alg, rel, n - 1)) : 0);
    }
    std::size_t total = 0;
    for (const auto &D : enumerate_blocks(alg, effective_window(alg, window))) {
        const auto basis = relative_basis_block(alg, rel, n, D);
        if (basis.empty()) {
            continue;
        }
        total += basis.size() - (n > 0 ? d_rank(relative_basis_block(alg, rel, n - 1, D)) : 0);
    }
    return total;
}

namespace
{

std::vector<Poly> ideal_generators(const AlgebraPtr &alg, const RelativeSpec &rel)
{
    const VarLayout &vars = alg->vars();
    std::vector<Poly> out;
    switch (rel.kind) {
    case RelativeSpec::Kind::Full:
        for (int i = 0; i < alg->nilpotents(); ++i) {
            out.push_back(Poly::variable(vars, i));
        }
        break;
    case RelativeSpec::Kind::Power: {
        Monomial mono(alg->nilpotents(), alg->params());
        mono.nil[0] = rel.power;
        out.push_back(Poly::monomial(mono));
        break;
    }
    case RelativeSpec::Kind::Explicit:
        out = rel.generators;
        break;
    }
    return out;
}

} // namespace

bool ideal_contained(const AlgebraPtr &alg, const RelativeSpec &J, const RelativeSpec &I)
{
    AlgebraPtr q = quotient_algebra(alg, I);
    for (const auto &g : ideal_generators(alg, J)) {
        if (!reduce(g, q).is_zero()) {
            return false;
        }
    }
    return true;
}

RelativeSpec induced_relative(const AlgebraPtr &alg, const RelativeSpec &J, const RelativeSpec &I)
{
    AlgebraPtr q = quotient_algebra(alg, J);
    switch (I.kind) {
    case RelativeSpec::Kind::Full:
        return RelativeSpec::full();
    case RelativeSpec::Kind::Power:
        if (q->single_graded() && I.power <= q->bound()) {
            return RelativeSpec::power_of(I.power);
        }
        break;
    case RelativeSpec::Kind::Explicit:
        break;
    }
    if (q->parametric()) {
        throw Error("invalid relative spec");
    }
    return RelativeSpec::explicit_ideal(ideal_generators(alg, I));
}

SequenceReport verify_forms_sequence(const AlgebraPtr &alg, const RelativeSpec &J, const RelativeSpec &I, int n)
{
    if (alg->parametric()) {
        throw Error("sequence checks require param-free mode");
    }
    validate_relative(alg, J);
    validate_relative(alg, I);
    if (!ideal_contained(alg, J, I)) {
        throw Error("not nested ideals");
    }
    if (n < 0) {
        throw Error("degree must be non-negative");
    }
    const AlgebraPtr q = quotient_algebra(alg, J);
    const RelativeSpec Iq = induced_relative(alg, J, I);

    SequenceReport rep;
    rep.degree = n;
    rep.quotient = q->describe();

    auto basis = [](const AlgebraPtr &a, const RelativeSpec &r, int k) {
        return k < 0 ? std::vector<Form>{} : relative_basis(a, r, k);
    };
    auto transported = [&](const std::vector<Form> &fs) {
        std::vector<Form> out;
        for (const auto &f : fs) {
            out.push_back(transport(f, q));
        }
        return out;
    };
    auto ds = [](const std::vector<Form> &fs) {
        std::vector<Form> out;
        for (const auto &f : fs) {
            out.push_back(d(f));
        }
        return out;
    };
    auto closed = [&](const AlgebraPtr &a, const std::vector<Form> &fs) {
        std::vector<Form> images = ds(fs);
        TermIndex idx = index_of(images);
        std::vector<Form> out;
        for (const auto &coeffs : kernel_basis(vecs_of(idx, images))) {
            Form z(a, fs.empty() ? 0 : fs.front().degree());
            for (const auto &[j, c] : coeffs) {
                z += fs[j] * c;
            }
            out.push_back(z);
        }
        return out;
    };
    auto fail = [&](const std::string &msg) { rep.failures.push_back(msg); };

    // Degreewise short exactness of the relative complexes.
    for (int k = 0; k <= n; ++k) {
        const auto bJ = basis(alg, J, k);
        const auto bI = basis(alg, I, k);
        const auto bq = basis(q, Iq, k);
        rep.levels.push_back({k, bJ.size(), bI.size(), bq.size()});
        if (bI.size() != bJ.size() + bq.size()) {
            fail("degree " + std::to_string(k) + ": forms not additive");
        }
        if (rank_of_forms(transported(bI)) != bq.size()) {
            fail("degree " + std::to_string(k) + ": projection not surjective");
        }
        for (const auto &f : transported(bJ)) {
            if (!f.is_zero()) {
                fail("degree " + std::to_string(k) + ": J-forms survive in the quotient");
                break;
            }
        }
        if (rank_modulo(bJ, bI) + bJ.size() != bI.size() || rank_of_forms(bJ) != bJ.size()) {
            fail("degree " + std::to_string(k) + ": J-forms not inside I-forms");
        }
    }

    const auto bJn = basis(alg, J, n), bJp = basis(alg, J, n - 1);
    const auto bIn = basis(alg, I, n), bIp = basis(alg, I, n - 1), bIpp = basis(alg, I, n - 2);
    const auto bqn = basis(q, Iq, n), bqp = basis(q, Iq, n - 1), bqpp = basis(q, Iq, n - 2);
    const auto dJp = ds(bJp), dIp = ds(bIp), dqp = ds(bqp);

    rep.q_J = bJn.size() - rank_of_forms(dJp);
    rep.q_I = bIn.size() - rank_of_forms(dIp);
    rep.q_quotient = bqn.size() - rank_of_forms(dqp);

    const auto zI = closed(alg, bIp);
    const auto zq = closed(q, bqp);
    const auto dIpp = ds(bIpp), dqpp = ds(bqpp);
    rep.h_prev = zI.size() - rank_of_forms(dIpp);
    rep.h_prev_quotient = zq.size() - rank_of_forms(dqpp);

    rep.rank_incl = rank_modulo(dIp, bJn);
    rep.rank_proj = rank_modulo(dqp, transported(bIn));
    rep.rank_beta = rank_modulo(dqpp, transported(zI));

    // Connecting map: lift a closed relative form of R' to R and apply d.
    const auto lifts_of = transported(bIp);
    std::vector<Form> alpha_images;
    for (const auto &z : zq) {
        TermIndex idx;
        for (const auto &f : lifts_of) {
            idx.add(f);
        }
        idx.add(z);
        idx.freeze();
        SparseQVec coeffs;
        if (!solve_combination(vecs_of(idx, lifts_of), idx.vec(z), coeffs)) {
            fail("closed quotient form has no relative lift");
            continue;
        }
        Form lift(alg, n - 1);
        for (const auto &[j, c] : coeffs) {
            lift += bIp[j] * c;
        }
        const Form dl = d(lift);
        if (!transport(dl, q).is_zero() || rank_modulo(bJn, {dl}) != 0) {
            fail("connecting map leaves the J-forms");
        }
        alpha_images.push_back(dl);
    }
    rep.rank_alpha = rank_modulo(dJp, alpha_images);
    rep.alpha_injective = rep.rank_alpha == rep.h_prev_quotient;

    if (rep.rank_proj != rep.q_quotient) {
        fail("projection onto the quotient term is not surjective");
    }
    if (rep.q_I - rep.rank_proj != rep.rank_incl) {
        fail("not exact at the I term");
    }
    if (rep.q_J - rep.rank_incl != rep.rank_alpha) {
        fail("not exact at the J term");
    }
    if (rep.h_prev_quotient - rep.rank_alpha != rep.rank_beta) {
        fail("not exact at the cohomology term");
    }
    return rep;
}

HomotopyReport verify_homotopy(const AlgebraPtr &alg, int n_max, const ParamWindow &window)
{
    if (!alg->single_graded()) {
        throw Error("homotopy requires single-nilpotent graded mode");
    }
    const ParamWindow win = window.lo.empty() ? ParamWindow::box(alg, alg->spec().params.empty() ? 0 : 1) : window;
    HomotopyReport out;
    for (int n = 0; n <= n_max; ++n) {
        for (const Form &w : relative_basis(alg, RelativeSpec::full(), n, win)) {
            const int i = internal_degree(w.terms().begin()->first);
            Form lhs(alg, n);
            if (n > 0) {
                lhs += d(euler_homotopy(w));
            }
            if (n < alg->nilpotents() + static_cast<int>(alg->spec().params.size())) {
                lhs += euler_homotopy(d(w));
            }
            Form rhs = w;
            rhs *= Rational(i);
            ++out.checked;
            if (!(lhs == rhs)) {
                out.failures.push_back("(dh+hd)(" + w.to_string() + ") = " + lhs.to_string());
            }
        }
    }
    return out;
}

} // namespace blochkit
