#include <blochkit/algebra.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace blochkit
{

VarLayout AlgebraSpec::layout() const
{
    std::vector<std::string> names;
    std::vector<bool> inv;
    for (const auto &p : params) {
        names.push_back(p.name);
        inv.push_back(p.invertible);
    }
    return VarLayout(nilpotents, names, inv);
}

AlgebraSpec AlgebraSpec::finite_free(int m, int N, std::vector<ParamSpec> params)
{
    AlgebraSpec spec;
    spec.nilpotents = m;
    spec.bound = N;
    spec.params = std::move(params);
    spec.monomial_ideal = true;
    const std::size_t k = spec.params.size();
    for (const auto &e : exponent_vectors(m, N)) {
        spec.ideal.push_back(Poly::monomial(Monomial(e, std::vector<int>(k, 0))));
    }
    return spec;
}

namespace
{

bool divides(const std::vector<int> &a, const std::vector<int> &b)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
    }
    return true;
}

void check_shape(const Poly &p, const VarLayout &vars)
{
    for (const auto &[mono, c] : p.terms()) {
        if (mono.nil.size() != static_cast<std::size_t>(vars.nilpotents())
            || mono.par.size() != static_cast<std::size_t>(vars.params())) {
            throw Error("unknown variable");
        }
        for (int i = 0; i < vars.nilpotents(); ++i) {
            if (mono.nil[i] < 0) {
                throw Error("negative exponent on non-invertible variable " + vars.nil_name(i));
            }
        }
        for (int j = 0; j < vars.params(); ++j) {
            if (mono.par[j] < 0 && !vars.invertible(j)) {
                throw Error("negative exponent on non-invertible variable " + vars.param_name(j));
            }
        }
    }
}

std::vector<Monomial> monomials_below(int m, int N)
{
    std::vector<Monomial> out;
    for (int d = 0; d < N; ++d) {
        for (auto &e : exponent_vectors(m, d)) {
            out.emplace_back(std::move(e), std::vector<int>{});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

AlgebraPtr Algebra::build(AlgebraSpec spec)
{
    if (spec.nilpotents < 1) {
        throw Error("at least one nilpotent generator is required");
    }
    if (spec.bound < 1) {
        throw Error("nilpotency bound must be positive");
    }
    if (!spec.params.empty() && !spec.monomial_ideal) {
        throw Error("parametric mode requires monomial ideal");
    }
    std::shared_ptr<Algebra> alg(new Algebra());
    alg->m_vars = spec.layout();
    const int m = spec.nilpotents;
    const std::size_t k = spec.params.size();

    for (const auto &g : spec.ideal) {
        check_shape(g, alg->m_vars);
        if (g.is_zero()) {
            continue;
        }
        for (const auto &[mono, c] : g.terms()) {
            if (std::any_of(mono.par.begin(), mono.par.end(), [](int e) { return e != 0; })) {
                throw Error("ideal generators must involve nilpotent variables only");
            }
            if (mono.nil_degree() == 0) {
                throw Error("ideal generators must have zero constant term");
            }
        }
        if (spec.monomial_ideal) {
            if (g.size() != 1) {
                throw Error("monomial ideal generator is not a monomial");
            }
            alg->m_monomial_gens.push_back(g.terms().begin()->first.nil);
        }
    }

    alg->m_generators = spec.ideal;
    std::vector<std::vector<int>> top = exponent_vectors(m, spec.bound);
    for (const auto &e : top) {
        alg->m_generators.push_back(Poly::monomial(Monomial(e, std::vector<int>(k, 0))));
    }

    alg->m_spec = std::move(spec);
    if (alg->m_spec.monomial_ideal) {
        for (const auto &e : top) {
            bool hit = false;
            for (const auto &g : alg->m_monomial_gens) {
                if (divides(g, e)) {
                    hit = true;
                    break;
                }
            }
            if (!hit) {
                throw Error("degree-N monomials do not all vanish");
            }
        }
    } else {
        alg->build_general();
    }
    alg->m_forms = detail::make_form_cache();
    return alg;
}

void Algebra::build_general()
{
    const int m = nilpotents();
    const int N = bound();

    // Sound membership check for (t)^N in J: look for each degree-N monomial
    // in the span of the untruncated products g * u with total degree <= D.
    std::vector<std::vector<int>> top = exponent_vectors(m, N);
    auto literal = [&](const std::vector<int> &e) {
        for (const auto &g : m_spec.ideal) {
            if (g.size() == 1 && divides(g.terms().begin()->first.nil, e)) {
                return true;
            }
        }
        return false;
    };
    if (!std::all_of(top.begin(), top.end(), literal)) {
        int gmax = 0;
        for (const auto &g : m_spec.ideal) {
            gmax = std::max(gmax, g.max_nil_degree());
        }
        const int D = N + gmax;
        std::vector<Monomial> big = monomials_below(m, D + 1);
        std::map<Monomial, int> col;
        for (std::size_t i = 0; i < big.size(); ++i) {
            col.emplace(big[i], static_cast<int>(i));
        }
        std::vector<SparseQVec> rows;
        for (const auto &g : m_spec.ideal) {
            const int gd = g.max_nil_degree();
            for (const auto &u : big) {
                if (u.nil_degree() + gd > D) {
                    continue;
                }
                SparseQVec row;
                const Poly gu = g * Poly::monomial(u);
                for (const auto &[mono, c] : gu.terms()) {
                    row.emplace(col.at(mono), c);
                }
                rows.push_back(std::move(row));
            }
        }
        Echelon span;
        span.insert_all(rows);
        for (const auto &e : top) {
            SparseQVec v{{col.at(Monomial(e, {})), Rational(1)}};
            if (!span.contains(v)) {
                throw Error("degree-N monomials do not all vanish");
            }
        }
    }

    m_space = monomials_below(m, N);
    for (std::size_t i = 0; i < m_space.size(); ++i) {
        m_column.emplace(m_space[i], static_cast<int>(i));
    }
    std::vector<SparseQVec> rows;
    for (const auto &g : m_spec.ideal) {
        for (const auto &u : m_space) {
            SparseQVec row;
            const Poly gu = g * Poly::monomial(u);
            for (const auto &[mono, c] : gu.terms()) {
                if (mono.nil_degree() < N) {
                    row.emplace(m_column.at(mono), c);
                }
            }
            if (!row.empty()) {
                rows.push_back(std::move(row));
            }
        }
    }
    m_ideal.insert_all(rows);
}

bool Algebra::nil_monomial_vanishes(const std::vector<int> &nil) const
{
    int deg = 0;
    for (int e : nil) {
        deg += e;
    }
    if (deg >= bound()) {
        return true;
    }
    for (const auto &g : m_monomial_gens) {
        if (divides(g, nil)) {
            return true;
        }
    }
    return false;
}

Poly Algebra::normal_form(const Poly &p) const
{
    check_shape(p, m_vars);
    if (monomial_mode()) {
        Poly::Terms out;
        for (const auto &[mono, c] : p.terms()) {
            if (!nil_monomial_vanishes(mono.nil)) {
                out.emplace(mono, c);
            }
        }
        return Poly(std::move(out));
    }
    SparseQVec v;
    for (const auto &[mono, c] : p.terms()) {
        if (mono.nil_degree() < bound()) {
            v.emplace(m_column.at(mono), c);
        }
    }
    Poly::Terms out;
    for (const auto &[col, c] : m_ideal.reduce(v)) {
        out.emplace(m_space[col], c);
    }
    return Poly(std::move(out));
}

std::vector<Monomial> Algebra::standard_monomials() const
{
    if (parametric()) {
        throw Error("standard monomials are only finite in param-free mode");
    }
    std::vector<Monomial> out;
    if (monomial_mode()) {
        for (const auto &mono : monomials_below(nilpotents(), bound())) {
            if (!nil_monomial_vanishes(mono.nil)) {
                out.push_back(mono);
            }
        }
        return out;
    }
    for (std::size_t i = 0; i < m_space.size(); ++i) {
        if (!m_ideal.is_pivot(static_cast<int>(i))) {
            out.push_back(m_space[i]);
        }
    }
    return out;
}

std::string Algebra::describe() const
{
    std::ostringstream os;
    os << "Q";
    if (parametric()) {
        os << "[";
        for (int j = 0; j < params(); ++j) {
            os << (j ? "," : "") << m_vars.param_name(j) << (m_vars.invertible(j) ? "^+-1" : "");
        }
        os << "]";
    }
    os << "[";
    for (int i = 0; i < nilpotents(); ++i) {
        os << (i ? "," : "") << m_vars.nil_name(i);
    }
    // General mode always contains m^N; its monomials are not listed.
    std::vector<std::string> gens;
    for (const auto &g : m_spec.ideal) {
        const bool top = !monomial_mode() && g.terms().size() == 1
                         && g.terms().begin()->first.nil_degree() == bound();
        if (!top) {
            gens.push_back(g.to_string(m_vars));
        }
    }
    os << "]/";
    if (!gens.empty()) {
        os << "(";
        for (std::size_t i = 0; i < gens.size(); ++i) {
            os << (i ? ", " : "") << gens[i];
        }
        os << ")";
    }
    if (!monomial_mode()) {
        os << (gens.empty() ? "" : " + ") << "m^" << bound();
    }
    return os.str();
}

AlgElem::AlgElem(AlgebraPtr alg, const Poly &p) : m_alg(std::move(alg))
{
    if (!m_alg) {
        throw Error("element without algebra");
    }
    m_value = m_alg->normal_form(p);
}

AlgElem AlgElem::constant(const AlgebraPtr &alg, const Rational &c)
{
    return AlgElem(alg, Poly::constant(c, alg->nilpotents(), alg->params()));
}

AlgElem AlgElem::generator(const AlgebraPtr &alg, int g)
{
    return AlgElem(alg, Poly::variable(alg->vars(), g));
}

AlgElem AlgElem::variable(const AlgebraPtr &alg, const std::string &name)
{
    auto g = alg->vars().find(name);
    if (!g) {
        throw Error("unknown variable " + name);
    }
    return generator(alg, *g);
}

namespace
{

void same_algebra(const AlgElem &a, const AlgElem &b)
{
    if (a.algebra() != b.algebra()) {
        throw Error("algebra mismatch");
    }
}

} // namespace

AlgElem &AlgElem::operator+=(const AlgElem &o)
{
    same_algebra(*this, o);
    m_value += o.m_value;
    return *this;
}

AlgElem &AlgElem::operator-=(const AlgElem &o)
{
    same_algebra(*this, o);
    m_value -= o.m_value;
    return *this;
}

AlgElem &AlgElem::operator*=(const AlgElem &o)
{
    same_algebra(*this, o);
    if (m_alg->monomial_mode()) {
        // Skip products that vanish before building them.
        Poly r;
        for (const auto &[ma, ca] : m_value.terms()) {
            for (const auto &[mb, cb] : o.m_value.terms()) {
                Monomial prod = ma * mb;
                if (!m_alg->nil_monomial_vanishes(prod.nil)) {
                    r.add_term(prod, ca * cb);
                }
            }
        }
        m_value = std::move(r);
    } else {
        m_value = m_alg->normal_form(m_value * o.m_value);
    }
    return *this;
}

AlgElem &AlgElem::operator*=(const Rational &c)
{
    m_value *= c;
    return *this;
}

AlgElem AlgElem::operator-() const
{
    AlgElem r = *this;
    r.m_value = -m_value;
    return r;
}

bool AlgElem::operator==(const AlgElem &o) const
{
    return m_alg == o.m_alg && m_value == o.m_value;
}

std::string AlgElem::to_string() const
{
    return m_value.to_string(m_alg->vars());
}

AlgElem reduce(const Poly &p, const AlgebraPtr &alg)
{
    return AlgElem(alg, p);
}

AlgElem mul(const AlgElem &a, const AlgElem &b)
{
    return a * b;
}

AlgElem pow(const AlgElem &a, int e)
{
    if (e < 0) {
        return pow(invert(a), -e);
    }
    AlgElem result = AlgElem::constant(a.algebra(), 1);
    AlgElem base = a;
    while (e > 0) {
        if (e & 1) {
            result *= base;
        }
        e >>= 1;
        if (e > 0) {
            base *= base;
        }
    }
    return result;
}

AlgElem augment(const AlgElem &a)
{
    return AlgElem(a.algebra(), a.value().nil_degree_part(0));
}

bool is_nilpotent(const AlgElem &a)
{
    return a.value().nil_degree_part(0).is_zero();
}

bool is_base_unit(const Poly &s, const VarLayout &vars)
{
    if (s.size() != 1) {
        return false;
    }
    const Monomial &mono = s.terms().begin()->first;
    if (mono.nil_degree() != 0) {
        return false;
    }
    for (int j = 0; j < vars.params(); ++j) {
        if (mono.par[j] != 0 && !vars.invertible(j)) {
            return false;
        }
    }
    return true;
}

bool is_unit(const AlgElem &u)
{
    return is_base_unit(u.value().nil_degree_part(0), u.algebra()->vars());
}

namespace
{

AlgElem base_inverse(const AlgElem &s)
{
    if (!is_base_unit(s.value(), s.algebra()->vars())) {
        throw Error("augmentation not a unit");
    }
    const auto &[mono, c] = *s.value().terms().begin();
    Monomial inv = mono;
    for (auto &e : inv.par) {
        e = -e;
    }
    return AlgElem(s.algebra(), Poly::monomial(inv, 1 / c));
}

void require_nilpotent(const AlgElem &x)
{
    if (!is_nilpotent(x)) {
        throw Error("argument not nilpotent");
    }
}

} // namespace

UnitSplit unit_split(const AlgElem &u)
{
    AlgElem s = augment(u);
    AlgElem s_inv = base_inverse(s);
    AlgElem x = s_inv * u - AlgElem::constant(u.algebra(), 1);
    return {std::move(s), std::move(x)};
}

AlgElem invert(const AlgElem &u)
{
    auto [s, x] = unit_split(u);
    // (1 + x)^{-1} = sum_{k < N} (-x)^k, finite since x^N = 0.
    AlgElem sum = AlgElem::constant(u.algebra(), 1);
    AlgElem power = sum;
    const AlgElem neg = -x;
    for (int k = 1; k < u.algebra()->bound() && !power.is_zero(); ++k) {
        power *= neg;
        sum += power;
    }
    return base_inverse(s) * sum;
}

AlgElem log1p(const AlgElem &x)
{
    require_nilpotent(x);
    AlgElem sum = AlgElem::constant(x.algebra(), 0);
    AlgElem power = AlgElem::constant(x.algebra(), 1);
    for (int k = 1; k < x.algebra()->bound(); ++k) {
        power *= x;
        if (power.is_zero()) {
            break;
        }
        sum += power * Rational(k % 2 == 1 ? 1 : -1, k);
    }
    return sum;
}

AlgElem exp_nil(const AlgElem &y)
{
    require_nilpotent(y);
    AlgElem sum = AlgElem::constant(y.algebra(), 1);
    AlgElem term = sum;
    for (int k = 1; k < y.algebra()->bound(); ++k) {
        term *= y;
        if (term.is_zero()) {
            break;
        }
        term *= Rational(1, k);
        sum += term;
    }
    return sum;
}

RingMap::RingMap(AlgebraPtr source, AlgebraPtr target, const std::map<std::string, AlgElem> &images)
    : m_source(std::move(source)), m_target(std::move(target))
{
    const VarLayout &sv = m_source->vars();
    for (const auto &[name, img] : images) {
        if (!sv.find(name)) {
            throw Error("unknown variable " + name);
        }
        if (img.algebra() != m_target) {
            throw Error("algebra mismatch");
        }
    }
    for (int g = 0; g < sv.generators(); ++g) {
        const std::string name = sv.generator_name(g);
        auto it = images.find(name);
        AlgElem img = it != images.end() ? it->second : AlgElem::variable(m_target, name);
        const bool is_nil = g < sv.nilpotents();
        if (is_nil && !is_nilpotent(img)) {
            throw Error("substitution violates nilpotency/unit constraints: " + name + " must map to a nilpotent");
        }
        if (!is_nil && sv.invertible(g - sv.nilpotents())) {
            if (!is_unit(img)) {
                throw Error("substitution violates nilpotency/unit constraints: " + name + " must map to a unit");
            }
            m_inverse_images.push_back(invert(img));
        } else {
            m_inverse_images.emplace_back();
        }
        m_images.push_back(std::move(img));
    }
    // J must map into the target ideal.
    for (const auto &g : m_source->generators_with_power()) {
        AlgElem acc = AlgElem::constant(m_target, 0);
        for (const auto &[mono, c] : g.terms()) {
            acc += image_of_monomial(mono) * c;
        }
        if (!acc.is_zero()) {
            throw Error("substitution does not respect the ideal");
        }
    }
}

AlgElem RingMap::image_of_monomial(const Monomial &mono) const
{
    const int m = m_source->nilpotents();
    AlgElem r = AlgElem::constant(m_target, 1);
    for (int i = 0; i < m; ++i) {
        if (mono.nil[i] > 0) {
            r *= pow(m_images[i], mono.nil[i]);
        }
    }
    for (std::size_t j = 0; j < mono.par.size(); ++j) {
        const int e = mono.par[j];
        if (e > 0) {
            r *= pow(m_images[m + j], e);
        } else if (e < 0) {
            r *= pow(m_inverse_images[m + j], -e);
        }
    }
    return r;
}

AlgElem RingMap::operator()(const AlgElem &a) const
{
    if (a.algebra() != m_source) {
        throw Error("algebra mismatch");
    }
    AlgElem acc = AlgElem::constant(m_target, 0);
    for (const auto &[mono, c] : a.value().terms()) {
        acc += image_of_monomial(mono) * c;
    }
    return acc;
}

AlgElem substitute(const AlgElem &a, const AlgebraPtr &target, const std::map<std::string, AlgElem> &images)
{
    return RingMap(a.algebra(), target, images)(a);
}

} // namespace blochkit
