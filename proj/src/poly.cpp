#include <blochkit/poly.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace blochkit
{

int Monomial::nil_degree() const
{
    return std::accumulate(nil.begin(), nil.end(), 0);
}

bool Monomial::is_one() const
{
    return std::all_of(nil.begin(), nil.end(), [](int e) { return e == 0; })
           && std::all_of(par.begin(), par.end(), [](int e) { return e == 0; });
}

Monomial Monomial::operator*(const Monomial &o) const
{
    Monomial r = *this;
    for (std::size_t i = 0; i < nil.size(); ++i) {
        r.nil[i] += o.nil[i];
    }
    for (std::size_t j = 0; j < par.size(); ++j) {
        r.par[j] += o.par[j];
    }
    return r;
}

std::strong_ordering Monomial::operator<=>(const Monomial &o) const
{
    if (auto c = nil_degree() <=> o.nil_degree(); c != 0) {
        return c;
    }
    if (auto c = nil <=> o.nil; c != 0) {
        return c;
    }
    return par <=> o.par;
}

VarLayout::VarLayout(int m, std::vector<std::string> params, std::vector<bool> invertible) : m_nil(m)
{
    if (params.size() != invertible.size()) {
        throw Error("parameter flags mismatch");
    }
    std::vector<std::size_t> idx(params.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return params[a] < params[b]; });
    for (std::size_t i : idx) {
        m_params.push_back(params[i]);
        m_invertible.push_back(invertible[i]);
    }
    for (std::size_t i = 1; i < m_params.size(); ++i) {
        if (m_params[i] == m_params[i - 1]) {
            throw Error("duplicate parameter name: " + m_params[i]);
        }
    }
    for (const auto &p : m_params) {
        if (p.empty() || !(std::isalpha(static_cast<unsigned char>(p[0])) || p[0] == '_')) {
            throw Error("invalid parameter name: " + p);
        }
        for (int i = 0; i < m_nil; ++i) {
            if (p == nil_name(i)) {
                throw Error("parameter name clashes with a nilpotent variable: " + p);
            }
        }
        if (p == "exp" || p == "log" || p == "d") {
            throw Error("reserved parameter name: " + p);
        }
    }
}

std::string VarLayout::nil_name(int i) const
{
    if (m_nil == 1) {
        return "t";
    }
    return "t" + std::to_string(i + 1);
}

std::string VarLayout::generator_name(int g) const
{
    return g < m_nil ? nil_name(g) : m_params[g - m_nil];
}

std::optional<int> VarLayout::find(const std::string &name) const
{
    for (int i = 0; i < m_nil; ++i) {
        if (name == nil_name(i)) {
            return i;
        }
    }
    for (int j = 0; j < params(); ++j) {
        if (name == m_params[j]) {
            return m_nil + j;
        }
    }
    return std::nullopt;
}

std::string monomial_to_string(const Monomial &mono, const VarLayout &vars)
{
    std::string out;
    auto emit = [&](const std::string &name, int e) {
        if (e == 0) {
            return;
        }
        if (!out.empty()) {
            out += '*';
        }
        out += name;
        if (e != 1) {
            out += '^' + std::to_string(e);
        }
    };
    // Parameters first, then nilpotents: "a*b^2*t^3".
    for (int j = 0; j < vars.params(); ++j) {
        emit(vars.param_name(j), mono.par[j]);
    }
    for (int i = 0; i < vars.nilpotents(); ++i) {
        emit(vars.nil_name(i), mono.nil[i]);
    }
    return out;
}

Poly::Poly(Terms t) : m_terms(std::move(t))
{
    for (auto it = m_terms.begin(); it != m_terms.end();) {
        if (sgn(it->second) == 0) {
            it = m_terms.erase(it);
        } else {
            ++it;
        }
    }
}

Poly Poly::constant(const Rational &c, std::size_t m, std::size_t k)
{
    Poly p;
    p.add_term(Monomial(m, k), c);
    return p;
}

Poly Poly::monomial(const Monomial &mono, const Rational &c)
{
    Poly p;
    p.add_term(mono, c);
    return p;
}

Poly Poly::variable(const VarLayout &vars, int g)
{
    Monomial mono(vars.nilpotents(), vars.params());
    if (g < vars.nilpotents()) {
        mono.nil[g] = 1;
    } else {
        mono.par[g - vars.nilpotents()] = 1;
    }
    return monomial(mono);
}

void Poly::add_term(const Monomial &mono, const Rational &c)
{
    if (sgn(c) == 0) {
        return;
    }
    auto [it, inserted] = m_terms.try_emplace(mono, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) {
            m_terms.erase(it);
        }
    }
}

Poly &Poly::operator+=(const Poly &o)
{
    for (const auto &[mono, c] : o.m_terms) {
        add_term(mono, c);
    }
    return *this;
}

Poly &Poly::operator-=(const Poly &o)
{
    for (const auto &[mono, c] : o.m_terms) {
        add_term(mono, -c);
    }
    return *this;
}

Poly &Poly::operator*=(const Rational &c)
{
    if (sgn(c) == 0) {
        m_terms.clear();
        return *this;
    }
    for (auto &[mono, v] : m_terms) {
        v *= c;
    }
    return *this;
}

Poly operator*(const Poly &a, const Poly &b)
{
    Poly r;
    for (const auto &[ma, ca] : a.m_terms) {
        for (const auto &[mb, cb] : b.m_terms) {
            r.add_term(ma * mb, ca * cb);
        }
    }
    return r;
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto &[mono, v] : r.m_terms) {
        v = -v;
    }
    return r;
}

Poly Poly::derivative(int g, std::size_t m) const
{
    Poly r;
    for (const auto &[mono, c] : m_terms) {
        const int e = static_cast<std::size_t>(g) < m ? mono.nil[g] : mono.par[g - m];
        if (e == 0) {
            continue;
        }
        Monomial d = mono;
        if (static_cast<std::size_t>(g) < m) {
            d.nil[g] -= 1;
        } else {
            d.par[g - m] -= 1;
        }
        r.add_term(d, c * e);
    }
    return r;
}

Poly Poly::nil_degree_part(int d) const
{
    Poly r;
    for (const auto &[mono, c] : m_terms) {
        if (mono.nil_degree() == d) {
            r.m_terms.emplace(mono, c);
        }
    }
    return r;
}

Poly Poly::truncate_below(int d) const
{
    Poly r;
    for (const auto &[mono, c] : m_terms) {
        if (mono.nil_degree() < d) {
            r.m_terms.emplace(mono, c);
        }
    }
    return r;
}

int Poly::max_nil_degree() const
{
    int d = -1;
    for (const auto &[mono, c] : m_terms) {
        d = std::max(d, mono.nil_degree());
    }
    return d;
}

int Poly::min_nil_degree() const
{
    int d = -1;
    for (const auto &[mono, c] : m_terms) {
        d = d < 0 ? mono.nil_degree() : std::min(d, mono.nil_degree());
    }
    return d;
}

namespace
{

// "c*mono" with the sign handled by the caller.
std::string term_body(const Rational &abs_c, const std::string &mono)
{
    if (mono.empty()) {
        return abs_c.get_str();
    }
    if (abs_c == 1) {
        return mono;
    }
    return abs_c.get_str() + "*" + mono;
}

} // namespace

std::string Poly::to_string(const VarLayout &vars) const
{
    if (m_terms.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &[mono, c] : m_terms) {
        const bool neg = sgn(c) < 0;
        const std::string body = term_body(abs(c), monomial_to_string(mono, vars));
        if (first) {
            out += neg ? "-" + body : body;
        } else {
            out += neg ? " - " : " + ";
            out += body;
        }
        first = false;
    }
    return out;
}

std::vector<std::vector<int>> exponent_vectors(int m, int d)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(m, 0);
    if (m == 0) {
        if (d == 0) {
            out.push_back(cur);
        }
        return out;
    }
    // Enumerate in decreasing lex order of the first coordinate.
    auto rec = [&](auto &&self, int i, int left) -> void {
        if (i == m - 1) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[i] = e;
            self(self, i + 1, left - e);
        }
    };
    rec(rec, 0, d);
    return out;
}

} // namespace blochkit
