#include <blochkit/forms.hpp>

#include <algorithm>
#include <bit>
#include <mutex>
#include <shared_mutex>
#include <sstream>

namespace blochkit
{

int word_degree(Word w)
{
    return std::popcount(w);
}

int insertion_sign(int g, Word w)
{
    if (w & (Word(1) << g)) {
        return 0;
    }
    const Word below = w & ((Word(1) << g) - 1);
    return std::popcount(below) % 2 == 0 ? 1 : -1;
}

int wedge_sign(Word u, Word v)
{
    if (u & v) {
        return 0;
    }
    int swaps = 0;
    for (Word rest = v; rest; rest &= rest - 1) {
        const int b = std::countr_zero(rest);
        swaps += std::popcount(u >> (b + 1));
    }
    return swaps % 2 == 0 ? 1 : -1;
}

std::strong_ordering TermKey::operator<=>(const TermKey &o) const
{
    if (auto c = mono <=> o.mono; c != 0) {
        return c;
    }
    return word <=> o.word;
}

Multidegree multidegree(const TermKey &key)
{
    const std::size_t m = key.mono.nil.size();
    Multidegree D(m + key.mono.par.size());
    for (std::size_t i = 0; i < m; ++i) {
        D[i] = key.mono.nil[i] + ((key.word >> i) & 1);
    }
    for (std::size_t j = 0; j < key.mono.par.size(); ++j) {
        D[m + j] = key.mono.par[j] + ((key.word >> (m + j)) & 1);
    }
    return D;
}

int internal_degree(const TermKey &key)
{
    const std::size_t m = key.mono.nil.size();
    const Word nil_mask = (Word(1) << m) - 1;
    return key.mono.nil_degree() + std::popcount(key.word & nil_mask);
}

std::string word_to_string(Word w, const VarLayout &vars)
{
    std::string out;
    for (int g = 0; g < vars.generators(); ++g) {
        if (w & (Word(1) << g)) {
            if (!out.empty()) {
                out += "∧";
            }
            out += "d" + vars.generator_name(g);
        }
    }
    return out;
}

namespace detail
{

struct FormBlock {
    std::vector<TermKey> terms;
    std::map<TermKey, int> column;
    Echelon relations;
};

class FormCache
{
public:
    using Key = std::pair<int, Multidegree>;

    std::shared_ptr<const FormBlock> find(const Key &key) const
    {
        std::shared_lock lock(m_mutex);
        auto it = m_blocks.find(key);
        return it == m_blocks.end() ? nullptr : it->second;
    }

    std::shared_ptr<const FormBlock> publish(const Key &key, std::shared_ptr<const FormBlock> block)
    {
        std::unique_lock lock(m_mutex);
        auto [it, inserted] = m_blocks.emplace(key, std::move(block));
        return it->second;
    }

private:
    mutable std::shared_mutex m_mutex;
    std::map<Key, std::shared_ptr<const FormBlock>> m_blocks;
};

std::shared_ptr<FormCache> make_form_cache()
{
    return std::make_shared<FormCache>();
}

} // namespace detail

namespace
{

using detail::FormBlock;

std::vector<Word> words_of_degree(int generators, int n)
{
    std::vector<Word> out;
    if (n < 0 || n > generators) {
        return out;
    }
    for (Word w = 0; w < (Word(1) << generators); ++w) {
        if (std::popcount(w) == n) {
            out.push_back(w);
        }
    }
    return out;
}

bool admissible(const Algebra &alg, const Monomial &mono)
{
    for (int e : mono.nil) {
        if (e < 0) {
            return false;
        }
    }
    for (int j = 0; j < alg.params(); ++j) {
        if (mono.par[j] < 0 && !alg.vars().invertible(j)) {
            return false;
        }
    }
    return true;
}

// Monomial with exponents D minus the indicator of w, or nullopt.
std::optional<Monomial> monomial_for(const Algebra &alg, const Multidegree &D, Word w)
{
    const int m = alg.nilpotents();
    Monomial mono(m, alg.params());
    for (int i = 0; i < m; ++i) {
        mono.nil[i] = D[i] - static_cast<int>((w >> i) & 1);
    }
    for (int j = 0; j < alg.params(); ++j) {
        mono.par[j] = D[m + j] - static_cast<int>((w >> (m + j)) & 1);
    }
    if (!admissible(alg, mono)) {
        return std::nullopt;
    }
    return mono;
}

std::shared_ptr<const FormBlock> build_monomial_block(const Algebra &alg, int n, const Multidegree &D)
{
    auto block = std::make_shared<FormBlock>();
    const int G = alg.vars().generators();
    const int m = alg.nilpotents();
    for (Word w : words_of_degree(G, n)) {
        auto mono = monomial_for(alg, D, w);
        if (mono && !alg.nil_monomial_vanishes(mono->nil)) {
            block->terms.push_back({std::move(*mono), w});
        }
    }
    std::sort(block->terms.begin(), block->terms.end());
    for (std::size_t i = 0; i < block->terms.size(); ++i) {
        block->column.emplace(block->terms[i], static_cast<int>(i));
    }
    if (block->terms.empty() || n == 0) {
        return block;
    }
    // Relations u * dg ^ w' for monomial generators g = t^alpha.
    std::vector<SparseQVec> rows;
    for (const auto &g : alg.generators_with_power()) {
        const std::vector<int> &alpha = g.terms().begin()->first.nil;
        for (Word wp : words_of_degree(G, n - 1)) {
            Multidegree rest = D;
            for (int i = 0; i < m; ++i) {
                rest[i] -= alpha[i];
            }
            auto u = monomial_for(alg, rest, wp);
            if (!u) {
                continue;
            }
            SparseQVec row;
            for (int i = 0; i < m; ++i) {
                if (alpha[i] == 0) {
                    continue;
                }
                const int s = insertion_sign(i, wp);
                if (s == 0) {
                    continue;
                }
                TermKey key{*u, wp | (Word(1) << i)};
                for (int l = 0; l < m; ++l) {
                    key.mono.nil[l] += alpha[l] - (l == i ? 1 : 0);
                }
                auto it = block->column.find(key);
                if (it == block->column.end()) {
                    continue; // the monomial lies in J
                }
                row.emplace(it->second, Rational(s * alpha[i]));
            }
            if (!row.empty()) {
                rows.push_back(std::move(row));
            }
        }
    }
    block->relations.insert_all(rows);
    return block;
}

std::shared_ptr<const FormBlock> build_general_block(const Algebra &alg, int n)
{
    auto block = std::make_shared<FormBlock>();
    const int m = alg.nilpotents();
    const int N = alg.bound();
    std::vector<Monomial> space;
    for (int deg = 0; deg < N; ++deg) {
        for (auto &e : exponent_vectors(m, deg)) {
            space.emplace_back(std::move(e), std::vector<int>{});
        }
    }
    for (Word w : words_of_degree(m, n)) {
        for (const auto &mono : space) {
            block->terms.push_back({mono, w});
        }
    }
    std::sort(block->terms.begin(), block->terms.end());
    for (std::size_t i = 0; i < block->terms.size(); ++i) {
        block->column.emplace(block->terms[i], static_cast<int>(i));
    }
    std::vector<SparseQVec> rows;
    auto add_row = [&](const Form::Terms &raw) {
        SparseQVec row;
        for (const auto &[key, c] : raw) {
            if (key.mono.nil_degree() >= N) {
                continue;
            }
            auto [pos, inserted] = row.try_emplace(block->column.at(key), 0);
            pos->second += c;
            if (sgn(pos->second) == 0) {
                row.erase(pos);
            }
        }
        if (!row.empty()) {
            rows.push_back(std::move(row));
        }
    };
    for (const auto &g : alg.generators_with_power()) {
        for (const auto &u : space) {
            const Poly gu = g * Poly::monomial(u);
            // g * u * w
            for (Word w : words_of_degree(m, n)) {
                Form::Terms raw;
                for (const auto &[mono, c] : gu.terms()) {
                    raw.emplace(TermKey{mono, w}, c);
                }
                add_row(raw);
            }
            // u * dg ^ w'
            for (Word wp : words_of_degree(m, n - 1)) {
                Form::Terms raw;
                for (int i = 0; i < m; ++i) {
                    const int s = insertion_sign(i, wp);
                    if (s == 0) {
                        continue;
                    }
                    const Poly dgu = g.derivative(i, m) * Poly::monomial(u);
                    for (const auto &[mono, c] : dgu.terms()) {
                        TermKey key{mono, wp | (Word(1) << i)};
                        auto [pos, inserted] = raw.try_emplace(key, 0);
                        pos->second += c * s;
                    }
                }
                add_row(raw);
            }
        }
    }
    block->relations.insert_all(rows);
    return block;
}

std::shared_ptr<const FormBlock> get_block(const Algebra &alg, int n, const Multidegree &D)
{
    detail::FormCache::Key key{n, alg.monomial_mode() ? D : Multidegree{}};
    auto &cache = alg.form_cache();
    if (auto found = cache.find(key)) {
        return found;
    }
    auto built = alg.monomial_mode() ? build_monomial_block(alg, n, D) : build_general_block(alg, n);
    return cache.publish(key, std::move(built));
}

Multidegree block_key(const Algebra &alg, const TermKey &key)
{
    return alg.monomial_mode() ? multidegree(key) : Multidegree{};
}

Form::Terms canonicalize(const Algebra &alg, int n, const Form::Terms &raw)
{
    std::map<Multidegree, std::vector<const std::pair<const TermKey, Rational> *>> groups;
    for (const auto &entry : raw) {
        if (sgn(entry.second) == 0) {
            continue;
        }
        if (word_degree(entry.first.word) != n) {
            throw Error("mixed degrees");
        }
        groups[block_key(alg, entry.first)].push_back(&entry);
    }
    Form::Terms out;
    for (const auto &[D, entries] : groups) {
        auto block = get_block(alg, n, D);
        SparseQVec v;
        for (const auto *entry : entries) {
            auto it = block->column.find(entry->first);
            if (it == block->column.end()) {
                const Monomial &mono = entry->first.mono;
                if (!admissible(alg, mono)) {
                    throw Error("negative exponent on non-invertible variable");
                }
                continue; // the monomial lies in J (or has degree >= N)
            }
            auto [pos, inserted] = v.try_emplace(it->second, 0);
            pos->second += entry->second;
            if (sgn(pos->second) == 0) {
                v.erase(pos);
            }
        }
        for (const auto &[col, c] : block->relations.reduce(v)) {
            out.emplace(block->terms[col], c);
        }
    }
    return out;
}

void check_same(const Form &a, const Form &b)
{
    if (a.algebra() != b.algebra()) {
        throw Error("algebra mismatch");
    }
}

} // namespace

Form::Form(AlgebraPtr alg, int degree) : m_alg(std::move(alg)), m_degree(degree) {}

Form Form::from_canonical(AlgebraPtr alg, int degree, Terms terms)
{
    Form f(std::move(alg), degree);
    f.m_terms = std::move(terms);
    return f;
}

Form form_from_terms(const AlgebraPtr &alg, int degree, const Form::Terms &raw)
{
    return Form::from_canonical(alg, degree, canonicalize(*alg, degree, raw));
}

Form Form::from_elem(const AlgElem &a)
{
    Terms t;
    for (const auto &[mono, c] : a.value().terms()) {
        t.emplace(TermKey{mono, 0}, c);
    }
    return from_canonical(a.algebra(), 0, std::move(t));
}

Form Form::differential(const AlgebraPtr &alg, int g)
{
    Terms raw;
    raw.emplace(TermKey{Monomial(alg->nilpotents(), alg->params()), Word(1) << g}, Rational(1));
    return form_from_terms(alg, 1, raw);
}

Form &Form::operator+=(const Form &o)
{
    check_same(*this, o);
    if (m_degree != o.m_degree) {
        throw Error("mixed degrees");
    }
    // Canonical representatives form a linear subspace per block, so the
    // sum of canonical forms is canonical.
    for (const auto &[k, c] : o.m_terms) {
        auto [pos, inserted] = m_terms.try_emplace(k, 0);
        pos->second += c;
        if (sgn(pos->second) == 0) {
            m_terms.erase(pos);
        }
    }
    return *this;
}

Form &Form::operator-=(const Form &o)
{
    return *this += -o;
}

Form &Form::operator*=(const Rational &c)
{
    if (sgn(c) == 0) {
        m_terms.clear();
        return *this;
    }
    for (auto &[k, v] : m_terms) {
        v *= c;
    }
    return *this;
}

Form Form::operator-() const
{
    Form r = *this;
    for (auto &[k, v] : r.m_terms) {
        v = -v;
    }
    return r;
}

bool Form::operator==(const Form &o) const
{
    return m_alg == o.m_alg && m_degree == o.m_degree && m_terms == o.m_terms;
}

std::string Form::to_string() const
{
    if (m_terms.empty()) {
        return "0";
    }
    const VarLayout &vars = m_alg->vars();
    std::string out;
    bool first = true;
    for (const auto &[key, c] : m_terms) {
        std::string body;
        const std::string mono = monomial_to_string(key.mono, vars);
        const std::string word = word_to_string(key.word, vars);
        const Rational a = abs(c);
        std::vector<std::string> parts;
        if (a != 1 || (mono.empty() && word.empty())) {
            parts.push_back(a.get_str());
        }
        if (!mono.empty()) {
            parts.push_back(mono);
        }
        if (!word.empty()) {
            parts.push_back(word);
        }
        for (std::size_t i = 0; i < parts.size(); ++i) {
            body += (i ? "*" : "") + parts[i];
        }
        const bool neg = sgn(c) < 0;
        if (first) {
            out += neg ? "-" + body : body;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
        first = false;
    }
    return out;
}

Form d(const Form &w)
{
    const AlgebraPtr &alg = w.algebra();
    const int G = alg->vars().generators();
    const int m = alg->nilpotents();
    Form::Terms raw;
    for (const auto &[key, c] : w.terms()) {
        for (int g = 0; g < G; ++g) {
            const int e = g < m ? key.mono.nil[g] : key.mono.par[g - m];
            if (e == 0) {
                continue;
            }
            const int s = insertion_sign(g, key.word);
            if (s == 0) {
                continue;
            }
            TermKey nk{key.mono, key.word | (Word(1) << g)};
            if (g < m) {
                nk.mono.nil[g] -= 1;
            } else {
                nk.mono.par[g - m] -= 1;
            }
            auto [pos, inserted] = raw.try_emplace(nk, 0);
            pos->second += c * (s * e);
        }
    }
    return form_from_terms(alg, w.degree() + 1, raw);
}

Form wedge(const Form &a, const Form &b)
{
    check_same(a, b);
    const AlgebraPtr &alg = a.algebra();
    Form::Terms raw;
    for (const auto &[ka, ca] : a.terms()) {
        for (const auto &[kb, cb] : b.terms()) {
            const int s = wedge_sign(ka.word, kb.word);
            if (s == 0) {
                continue;
            }
            TermKey nk{ka.mono * kb.mono, ka.word | kb.word};
            if (alg->monomial_mode() && alg->nil_monomial_vanishes(nk.mono.nil)) {
                continue;
            }
            auto [pos, inserted] = raw.try_emplace(nk, 0);
            pos->second += ca * cb * s;
        }
    }
    return form_from_terms(alg, a.degree() + b.degree(), raw);
}

Form operator*(const AlgElem &f, const Form &w)
{
    return wedge(Form::from_elem(f), w);
}

Form dlog(const AlgElem &u)
{
    if (!is_unit(u)) {
        throw Error("not a unit");
    }
    return wedge(Form::from_elem(invert(u)), d(Form::from_elem(u)));
}

Form euler_homotopy(const Form &w)
{
    const AlgebraPtr &alg = w.algebra();
    if (!alg->single_graded()) {
        throw Error("homotopy requires single-nilpotent graded mode");
    }
    Form::Terms raw;
    for (const auto &[key, c] : w.terms()) {
        if (!(key.word & 1)) {
            continue;
        }
        // h(t^e dt ^ eta) = t^(e+1) eta
        TermKey nk{key.mono, key.word & ~Word(1)};
        nk.mono.nil[0] += 1;
        raw.emplace(nk, c);
    }
    return form_from_terms(alg, std::max(0, w.degree() - 1), raw);
}

Form graded_component(const Form &w, int i)
{
    if (!w.algebra()->monomial_mode()) {
        throw Error("graded components require a monomial ideal");
    }
    Form::Terms out;
    for (const auto &[key, c] : w.terms()) {
        if (internal_degree(key) == i) {
            out.emplace(key, c);
        }
    }
    return Form::from_canonical(w.algebra(), w.degree(), std::move(out));
}

Form push_forward(const Form &w, const RingMap &phi)
{
    if (w.algebra() != phi.source()) {
        throw Error("algebra mismatch");
    }
    const AlgebraPtr &target = phi.target();
    const int G = phi.source()->vars().generators();
    std::vector<Form> dimg;
    for (int g = 0; g < G; ++g) {
        dimg.push_back(d(Form::from_elem(phi.image(g))));
    }
    Form acc(target, w.degree());
    for (const auto &[key, c] : w.terms()) {
        Form term = Form::from_elem(phi.image_of_monomial(key.mono) * c);
        for (int g = 0; g < G; ++g) {
            if (key.word & (Word(1) << g)) {
                term = wedge(term, dimg[g]);
            }
        }
        acc += term;
    }
    return acc;
}

Form transport(const Form &w, const AlgebraPtr &target)
{
    if (!(w.algebra()->vars() == target->vars())) {
        throw Error("algebra mismatch");
    }
    return form_from_terms(target, w.degree(), w.terms());
}

std::string RelativeSpec::describe(const VarLayout &vars) const
{
    switch (kind) {
    case Kind::Full:
        return "FULL";
    case Kind::Power:
        return "POWER(" + std::to_string(power) + ")";
    case Kind::Explicit: {
        std::string out = "EXPLICIT(";
        for (std::size_t i = 0; i < generators.size(); ++i) {
            out += (i ? ", " : "") + generators[i].to_string(vars);
        }
        return out + ")";
    }
    }
    return "?";
}

void validate_relative(const AlgebraPtr &alg, const RelativeSpec &rel)
{
    switch (rel.kind) {
    case RelativeSpec::Kind::Full:
        return;
    case RelativeSpec::Kind::Power:
        if (!alg->single_graded() || rel.power < 1 || rel.power > alg->bound()) {
            throw Error("invalid relative spec");
        }
        return;
    case RelativeSpec::Kind::Explicit:
        if (alg->parametric()) {
            throw Error("invalid relative spec");
        }
        for (const auto &g : rel.generators) {
            if (!g.nil_degree_part(0).is_zero()) {
                throw Error("invalid relative spec");
            }
            for (const auto &[mono, c] : g.terms()) {
                if (mono.nil.size() != static_cast<std::size_t>(alg->nilpotents()) || !mono.par.empty()) {
                    throw Error("invalid relative spec");
                }
            }
        }
        return;
    }
}

bool uses_blocks(const AlgebraPtr &alg, const RelativeSpec &rel)
{
    return alg->monomial_mode() && rel.kind != RelativeSpec::Kind::Explicit;
}

AlgebraPtr quotient_algebra(const AlgebraPtr &alg, const RelativeSpec &rel)
{
    validate_relative(alg, rel);
    const AlgebraSpec &spec = alg->spec();
    switch (rel.kind) {
    case RelativeSpec::Kind::Full:
        return Algebra::build(AlgebraSpec::finite_free(spec.nilpotents, 1, spec.params));
    case RelativeSpec::Kind::Power:
        return Algebra::build(AlgebraSpec::finite_free(1, rel.power, spec.params));
    case RelativeSpec::Kind::Explicit: {
        AlgebraSpec q;
        q.nilpotents = spec.nilpotents;
        q.bound = spec.bound;
        q.monomial_ideal = false;
        q.ideal = alg->generators_with_power();
        for (const auto &g : rel.generators) {
            q.ideal.push_back(g);
        }
        return Algebra::build(std::move(q));
    }
    }
    return nullptr;
}

ParamWindow ParamWindow::box(const AlgebraPtr &alg, int k)
{
    ParamWindow w;
    for (int j = 0; j < alg->params(); ++j) {
        w.lo.push_back(alg->vars().invertible(j) ? -k : 0);
        w.hi.push_back(k);
    }
    return w;
}

std::vector<Multidegree> enumerate_blocks(const AlgebraPtr &alg, const ParamWindow &window)
{
    if (!alg->monomial_mode()) {
        throw Error("multidegree blocks require a monomial ideal");
    }
    const int m = alg->nilpotents();
    const int k = alg->params();
    if (static_cast<int>(window.lo.size()) != k || static_cast<int>(window.hi.size()) != k) {
        throw Error("parameter window does not match the algebra");
    }
    std::vector<Multidegree> out;
    std::vector<std::vector<int>> nil_parts;
    for (int deg = 0; deg <= alg->bound() + m - 1; ++deg) {
        for (auto &e : exponent_vectors(m, deg)) {
            nil_parts.push_back(std::move(e));
        }
    }
    std::vector<int> par(window.lo);
    for (;;) {
        for (const auto &nil : nil_parts) {
            Multidegree D = nil;
            D.insert(D.end(), par.begin(), par.end());
            out.push_back(std::move(D));
        }
        int j = k - 1;
        while (j >= 0 && par[j] == window.hi[j]) {
            par[j] = window.lo[j];
            --j;
        }
        if (j < 0) {
            break;
        }
        ++par[j];
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Multidegree> blocks_of(const Form &w)
{
    std::vector<Multidegree> out;
    for (const auto &[key, c] : w.terms()) {
        out.push_back(block_key(*w.algebra(), key));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t block_dimension(const AlgebraPtr &alg, int n, const Multidegree &D)
{
    auto block = get_block(*alg, n, D);
    return block->terms.size() - block->relations.rank();
}

namespace
{

std::vector<Form> quotient_basis(const AlgebraPtr &alg, int n, const Multidegree &D)
{
    auto block = get_block(*alg, n, D);
    std::vector<Form> out;
    for (std::size_t i = 0; i < block->terms.size(); ++i) {
        if (!block->relations.is_pivot(static_cast<int>(i))) {
            Form::Terms t;
            t.emplace(block->terms[i], Rational(1));
            out.push_back(Form::from_canonical(alg, n, std::move(t)));
        }
    }
    return out;
}

int min_internal(const RelativeSpec &rel)
{
    return rel.kind == RelativeSpec::Kind::Power ? rel.power : 1;
}

std::vector<Form> full_basis(const AlgebraPtr &alg, int n)
{
    std::vector<Form> out;
    if (alg->monomial_mode()) {
        for (const auto &D : enumerate_blocks(alg, ParamWindow::box(alg, 0))) {
            auto part = quotient_basis(alg, n, D);
            out.insert(out.end(), part.begin(), part.end());
        }
    } else {
        out = quotient_basis(alg, n, {});
    }
    std::sort(out.begin(), out.end(), [](const Form &a, const Form &b) {
        return a.terms().begin()->first < b.terms().begin()->first;
    });
    return out;
}

} // namespace

std::vector<Form> relative_basis_block(const AlgebraPtr &alg, const RelativeSpec &rel, int n, const Multidegree &D)
{
    validate_relative(alg, rel);
    if (!uses_blocks(alg, rel)) {
        throw Error("invalid relative spec");
    }
    int internal = 0;
    for (int i = 0; i < alg->nilpotents(); ++i) {
        internal += D[i];
    }
    if (internal < min_internal(rel)) {
        return {};
    }
    return quotient_basis(alg, n, D);
}

std::vector<Form> relative_basis(const AlgebraPtr &alg, const RelativeSpec &rel, int n, const ParamWindow &window)
{
    validate_relative(alg, rel);
    if (n < 0 || n > alg->vars().generators()) {
        return {};
    }
    if (uses_blocks(alg, rel)) {
        std::vector<Form> out;
        ParamWindow win = window;
        if (win.lo.empty() && alg->parametric()) {
            throw Error("parametric mode needs a parameter window");
        }
        for (const auto &D : enumerate_blocks(alg, win)) {
            auto part = relative_basis_block(alg, rel, n, D);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    if (rel.kind == RelativeSpec::Kind::Full) {
        // General mode has S = Q: Omega^n_Q = 0 for n >= 1, and Q for n = 0.
        std::vector<Form> out = full_basis(alg, n);
        if (n == 0) {
            std::erase_if(out, [](const Form &f) { return f.terms().begin()->first.mono.nil_degree() == 0; });
        }
        return out;
    }
    // Explicit ideal: kernel of Omega^n_R -> Omega^n_{R/J'}.
    AlgebraPtr q = quotient_algebra(alg, rel);
    std::vector<Form> basis = full_basis(alg, n);
    TermIndex target;
    std::vector<Form> images;
    for (const auto &b : basis) {
        images.push_back(transport(b, q));
        target.add(images.back());
    }
    target.freeze();
    std::vector<SparseQVec> vecs;
    for (const auto &img : images) {
        vecs.push_back(target.vec(img));
    }
    std::vector<Form> out;
    for (const auto &coeffs : kernel_basis(vecs)) {
        Form::Terms t;
        for (const auto &[j, c] : coeffs) {
            t.emplace(basis[j].terms().begin()->first, c);
        }
        out.push_back(Form::from_canonical(alg, n, std::move(t)));
    }
    return out;
}

bool is_relative(const Form &w, const RelativeSpec &rel)
{
    const AlgebraPtr &alg = w.algebra();
    validate_relative(alg, rel);
    if (uses_blocks(alg, rel)) {
        const int lo = min_internal(rel);
        return std::all_of(w.terms().begin(), w.terms().end(),
                           [&](const auto &e) { return internal_degree(e.first) >= lo; });
    }
    if (rel.kind == RelativeSpec::Kind::Full) {
        return w.degree() > 0
               || std::all_of(w.terms().begin(), w.terms().end(),
                              [](const auto &e) { return e.first.mono.nil_degree() > 0; });
    }
    if (w.is_zero()) {
        return true;
    }
    return transport(w, quotient_algebra(alg, rel)).is_zero();
}

void TermIndex::add(const Form &w)
{
    for (const auto &[k, c] : w.terms()) {
        add(k);
    }
}

void TermIndex::add(const TermKey &k)
{
    m_cols.emplace(k, -1);
}

void TermIndex::freeze()
{
    m_keys.clear();
    int i = 0;
    for (auto &[k, col] : m_cols) {
        col = i++;
        m_keys.push_back(k);
    }
}

int TermIndex::column(const TermKey &k) const
{
    auto it = m_cols.find(k);
    if (it == m_cols.end() || it->second < 0) {
        throw Error("term outside the index");
    }
    return it->second;
}

SparseQVec TermIndex::vec(const Form &w) const
{
    SparseQVec v;
    for (const auto &[k, c] : w.terms()) {
        v.emplace(column(k), c);
    }
    return v;
}

Form::Terms TermIndex::terms(const SparseQVec &v) const
{
    Form::Terms t;
    for (const auto &[col, c] : v) {
        t.emplace(m_keys[col], c);
    }
    return t;
}

} // namespace blochkit
