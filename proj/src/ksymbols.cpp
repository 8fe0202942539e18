#include <blochkit/ksymbols.hpp>

#include <algorithm>
#include <bit>

namespace blochkit
{

SymbolSum::SymbolSum(AlgebraPtr alg, int arity) : m_alg(std::move(alg)), m_arity(arity)
{
    if (arity < 1) {
        throw Error("symbol arity must be positive");
    }
}

SymbolSum SymbolSum::single(std::vector<AlgElem> entries, const Integer &coeff)
{
    if (entries.empty()) {
        throw Error("symbol arity must be positive");
    }
    SymbolSum s(entries.front().algebra(), static_cast<int>(entries.size()));
    s.add(coeff, std::move(entries));
    return s;
}

void SymbolSum::add(const Integer &coeff, std::vector<AlgElem> entries)
{
    if (static_cast<int>(entries.size()) != m_arity) {
        throw Error("arity mismatch");
    }
    for (const auto &e : entries) {
        if (e.algebra() != m_alg) {
            throw Error("algebra mismatch");
        }
        if (!is_unit(e)) {
            throw Error("entry not a unit");
        }
    }
    if (coeff == 0) {
        return;
    }
    m_terms.push_back({coeff, std::move(entries)});
}

SymbolSum &SymbolSum::operator+=(const SymbolSum &o)
{
    if (o.m_terms.empty()) {
        return *this;
    }
    if (!m_alg) {
        *this = o;
        return *this;
    }
    if (o.m_alg != m_alg) {
        throw Error("algebra mismatch");
    }
    if (o.m_arity != m_arity) {
        throw Error("arity mismatch");
    }
    m_terms.insert(m_terms.end(), o.m_terms.begin(), o.m_terms.end());
    return *this;
}

SymbolSum &SymbolSum::operator-=(const SymbolSum &o)
{
    return *this += o.scaled(-1);
}

SymbolSum SymbolSum::scaled(const Integer &k) const
{
    SymbolSum r(*this);
    if (k == 0) {
        r.m_terms.clear();
        return r;
    }
    for (auto &t : r.m_terms) {
        t.coeff *= k;
    }
    return r;
}

std::string SymbolSum::to_string() const
{
    if (m_terms.empty()) {
        return "0";
    }
    std::string out;
    for (std::size_t i = 0; i < m_terms.size(); ++i) {
        const Term &t = m_terms[i];
        const bool neg = t.coeff < 0;
        const Integer a = abs(t.coeff);
        if (i == 0) {
            out += neg ? "-" : "";
        } else {
            out += neg ? " - " : " + ";
        }
        if (a != 1) {
            out += a.get_str() + "*";
        }
        out += "{";
        for (std::size_t k = 0; k < t.entries.size(); ++k) {
            out += (k ? ", " : "") + t.entries[k].to_string();
        }
        out += "}";
    }
    return out;
}

SymbolSum map_symbol(const SymbolSum &s, const RingMap &phi)
{
    if (s.algebra() != phi.source()) {
        throw Error("algebra mismatch");
    }
    SymbolSum out(phi.target(), s.arity());
    for (const auto &t : s.terms()) {
        std::vector<AlgElem> e;
        for (const auto &r : t.entries) {
            e.push_back(phi(r));
        }
        out.add(t.coeff, std::move(e));
    }
    return out;
}

Form dlog_symbol(const SymbolSum &s)
{
    Form acc(s.algebra(), s.arity());
    for (const auto &t : s.terms()) {
        Form w = dlog(t.entries.front());
        for (std::size_t k = 1; k < t.entries.size(); ++k) {
            w = wedge(w, dlog(t.entries[k]));
        }
        acc += w * Rational(t.coeff);
    }
    return acc;
}

BlochClass bloch(const SymbolSum &s, SlotRule rule, std::optional<int> cutoff)
{
    const AlgebraPtr &alg = s.algebra();
    const int n1 = s.arity();
    const int n = n1 - 1;
    const AlgElem one = AlgElem::constant(alg, 1);
    BlochClass out;
    out.raw = Form(alg, n);
    out.base_part = SymbolSum(alg, n1);
    for (const auto &t : s.terms()) {
        std::vector<AlgElem> base, nilp;
        for (const auto &r : t.entries) {
            UnitSplit sp = unit_split(r);
            base.push_back(sp.base);
            nilp.push_back(sp.nil);
        }
        // Lazily computed dlog factors per slot.
        std::vector<std::optional<Form>> dlb(n1), dln(n1);
        for (unsigned mask = 0; mask < (1u << n1); ++mask) {
            bool vanishes = false;
            for (int k = 0; k < n1 && !vanishes; ++k) {
                vanishes = (mask >> k) & 1 ? nilp[k].is_zero() : base[k] == one;
            }
            if (vanishes) {
                continue;
            }
            if (mask == 0) {
                out.base_part.add(t.coeff, base);
                continue;
            }
            const int slot = rule == SlotRule::First ? std::countr_zero(mask) : 31 - std::countl_zero(mask);
            Form w = Form::from_elem(log1p(nilp[slot]));
            for (int k = 0; k < n1; ++k) {
                if (k == slot) {
                    continue;
                }
                std::optional<Form> &cached = ((mask >> k) & 1) ? dln[k] : dlb[k];
                if (!cached) {
                    cached = dlog(((mask >> k) & 1) ? one + nilp[k] : base[k]);
                }
                w = wedge(w, *cached);
            }
            Rational c(t.coeff);
            if (slot % 2) {
                c = -c;
            }
            out.raw += w * c;
        }
    }
    out.representative = quotient_class(out.raw, RelativeSpec::full(), cutoff);
    return out;
}

SymbolSum steinberg_element(const AlgElem &a, const AlgElem &x)
{
    const AlgebraPtr &alg = a.algebra();
    const AlgElem one = AlgElem::constant(alg, 1);
    if (!is_unit(a) || !is_unit(one - a)) {
        throw Error("a or 1-a not a unit");
    }
    if (!is_nilpotent(x)) {
        throw Error("argument not nilpotent");
    }
    SymbolSum s(alg, 2);
    s.add(1, {a + x, one - a - x});
    s.add(-1, {a, one - a});
    return s;
}

SymbolSum phi_p(const AlgElem &a, const AlgElem &b, int p)
{
    const AlgebraPtr &alg = a.algebra();
    if (alg->nilpotents() != 1) {
        throw Error("phi_p requires a single nilpotent variable");
    }
    if (p < 1 || alg->bound() <= p) {
        throw Error("truncation too shallow");
    }
    if (!is_unit(b)) {
        throw Error("b not a unit");
    }
    const AlgElem t = AlgElem::generator(alg, 0);
    const AlgElem one = AlgElem::constant(alg, 1);
    return SymbolSum::single({one + a * b * pow(t, p), b});
}

namespace
{

AlgebraPtr ab_algebra(int N)
{
    return Algebra::build(AlgebraSpec::finite_free(1, N, {{"a", false}, {"b", false}}));
}

SymbolSum pair_symbol(const AlgebraPtr &alg, int i, int j)
{
    const AlgElem one = AlgElem::constant(alg, 1);
    const AlgElem t = AlgElem::variable(alg, "t");
    const AlgElem a = AlgElem::variable(alg, "a");
    const AlgElem b = AlgElem::variable(alg, "b");
    return SymbolSum::single({one + a * pow(t, i), one + b * pow(t, j)});
}

std::string t_power(int k)
{
    return k == 1 ? "t" : "t^" + std::to_string(k);
}

std::string scaled(int k, const std::string &s)
{
    return k == 1 ? s : std::to_string(k) + "*" + s;
}

std::string pair_text(int i, int j)
{
    return "B{1+a*" + t_power(i) + ", 1+b*" + t_power(j) + "}";
}

} // namespace

Verdict verify_key_identity(int i, int j)
{
    if (i < 1 || j < 1) {
        throw Error("invalid exponents");
    }
    const int p = i + j;
    AlgebraPtr alg = ab_algebra(p + 1);
    const BlochClass lhs = bloch(pair_symbol(alg, i, j));
    const AlgElem t = AlgElem::variable(alg, "t");
    const AlgElem a = AlgElem::variable(alg, "a");
    const AlgElem b = AlgElem::variable(alg, "b");
    const Form da = d(Form::from_elem(a)), db = d(Form::from_elem(b));
    const Form rhs = pow(t, p) * (a * db * Rational(i) - b * da * Rational(j));
    const Form diff = lhs.raw * Rational(p) - rhs;
    Verdict v;
    v.certificate = is_exact(diff, RelativeSpec::full(), p);
    v.holds = v.certificate.exact && verify_certificate(v.certificate, RelativeSpec::full());
    v.detail = scaled(p, pair_text(i, j)) + " = " + t_power(p) + "*(" + scaled(i, "a*db") + " - "
               + scaled(j, "b*da") + ") mod internal degree > " + std::to_string(p);
    return v;
}

ExactnessCertificate filtration_class(int p, int i, int j)
{
    if (p < 1 || i < 1 || j < 1) {
        throw Error("invalid exponents");
    }
    AlgebraPtr alg = ab_algebra(p);
    const BlochClass c = bloch(pair_symbol(alg, i, j));
    return is_exact(c.raw, RelativeSpec::full());
}

Verdict verify_filtration_vanishing(int p, int i, int j)
{
    if (i + j < p) {
        throw Error("i+j < p");
    }
    Verdict v;
    v.certificate = filtration_class(p, i, j);
    v.holds = v.certificate.exact && verify_certificate(v.certificate, RelativeSpec::full());
    v.detail = pair_text(i, j) + " = 0 in Q[a,b][t]/" + t_power(p);
    return v;
}

Verdict verify_skew(const AlgElem &u, const AlgElem &v)
{
    SymbolSum s = SymbolSum::single({u, v}) + SymbolSum::single({v, u});
    const BlochClass c = bloch(s);
    Verdict out;
    out.certificate = is_exact(c.raw, RelativeSpec::full());
    out.holds = out.certificate.exact && verify_certificate(out.certificate, RelativeSpec::full());
    out.detail = "B({u,v} + {v,u}) = 0 for u = " + u.to_string() + ", v = " + v.to_string();
    return out;
}

Verdict verify_steinberg(const AlgElem &a, const AlgElem &x)
{
    const BlochClass c = bloch(steinberg_element(a, x));
    Verdict out;
    out.certificate = is_exact(c.raw, RelativeSpec::full());
    out.holds = out.certificate.exact && verify_certificate(out.certificate, RelativeSpec::full());
    out.detail = "B(zeta(a, x)) = 0 for a = " + a.to_string() + ", x = " + x.to_string();
    return out;
}

namespace
{

bool in_window(const Multidegree &D, int m, const ParamWindow &w)
{
    for (std::size_t j = 0; j < w.lo.size(); ++j) {
        if (D[m + j] < w.lo[j] || D[m + j] > w.hi[j]) {
            return false;
        }
    }
    return true;
}

} // namespace

SurjectivityReport surjectivity_witnesses(const AlgebraPtr &alg, int n, const ParamWindow &window)
{
    const RelativeSpec full = RelativeSpec::full();
    SurjectivityReport rep;
    rep.degree = n;
    const int m = alg->nilpotents();
    ParamWindow win = window;
    if (alg->parametric() && win.lo.empty()) {
        win = ParamWindow::box(alg, 1);
    }
    // x runs over a wider box so that x*dr1^...^drn reaches every window block.
    ParamWindow wide = win;
    for (int j = 0; j < alg->params(); ++j) {
        wide.lo[j] = alg->vars().invertible(j) ? win.lo[j] - n : 0;
        wide.hi[j] = win.hi[j] + n;
    }
    std::vector<AlgElem> xs;
    for (const auto &f : relative_basis(alg, full, 0, wide)) {
        Poly p;
        for (const auto &[k, c] : f.terms()) {
            p.add_term(k.mono, c);
        }
        xs.push_back(reduce(p, alg));
    }
    const AlgElem one = AlgElem::constant(alg, 1);
    std::vector<AlgElem> rs;
    for (int g = 0; g < alg->vars().generators(); ++g) {
        if (g >= m && alg->vars().invertible(g - m)) {
            rs.push_back(AlgElem::generator(alg, g));
        }
    }
    if (!alg->parametric()) {
        for (const auto &mono : alg->standard_monomials()) {
            if (mono.nil_degree() > 0) {
                rs.push_back(one + reduce(Poly::monomial(mono), alg));
            }
        }
    } else {
        for (int i = 0; i < m; ++i) {
            rs.push_back(one + AlgElem::generator(alg, i));
        }
    }

    std::vector<Form> classes;
    std::vector<std::size_t> pick(n, 0);
    for (const auto &x : xs) {
        // All n-tuples of r (with repetition; repeated entries give zero).
        std::fill(pick.begin(), pick.end(), 0);
        for (;;) {
            AlgElem prod = x;
            std::vector<AlgElem> entries;
            for (int k = 0; k < n; ++k) {
                prod *= rs[pick[k]];
            }
            entries.push_back(exp_nil(prod));
            for (int k = 0; k < n; ++k) {
                entries.push_back(rs[pick[k]]);
            }
            ++rep.symbols;
            const Form rep_form = bloch(SymbolSum::single(entries)).representative;
            Form::Terms kept;
            for (const auto &[key, c] : rep_form.terms()) {
                if (!alg->monomial_mode() || in_window(multidegree(key), m, win)) {
                    kept.emplace(key, c);
                }
            }
            classes.push_back(Form::from_canonical(alg, n, std::move(kept)));
            int k = n - 1;
            while (k >= 0 && pick[k] + 1 == rs.size()) {
                pick[k] = 0;
                --k;
            }
            if (k < 0) {
                break;
            }
            ++pick[k];
        }
    }
    rep.rank = rank_of_forms(classes);
    rep.quotient_dim = quotient_dimension(alg, full, n, win);
    return rep;
}

bool SigmaReport::ok() const
{
    return !levels.empty()
           && std::all_of(levels.begin(), levels.end(), [](const Level &l) { return l.bijective; });
}

SigmaReport verify_sigma(int N, const std::vector<ParamSpec> &params, int param_degree)
{
    if (N < 2) {
        throw Error("sigma requires N >= 2");
    }
    AlgebraPtr src = Algebra::build(AlgebraSpec::finite_free(1, 2, params));
    AlgebraPtr dst = Algebra::build(AlgebraSpec::finite_free(1, N, params));
    const AlgElem t = AlgElem::variable(dst, "t");
    RingMap sigma(src, dst, {{"t", pow(t, N - 1)}});
    const ParamWindow win = ParamWindow::box(src, param_degree);
    SigmaReport rep;
    rep.N = N;
    for (int n = 0; n <= 2; ++n) {
        const auto source = relative_basis(src, RelativeSpec::full(), n, win);
        const auto target = relative_basis(dst, RelativeSpec::power_of(N - 1), n, win);
        std::vector<Form> images;
        for (const auto &f : source) {
            images.push_back(push_forward(f, sigma));
        }
        const std::size_t r = rank_of_forms(images);
        // Images must land in the target span.
        const bool inside = rank_modulo(target, images) == 0;
        rep.levels.push_back({n, source.size(), target.size(), r,
                              inside && r == source.size() && r == target.size()});
    }
    return rep;
}

} // namespace blochkit
