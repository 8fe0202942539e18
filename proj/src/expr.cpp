#include <blochkit/expr.hpp>

#include <algorithm>
#include <cctype>
#include <functional>

namespace blochkit
{

namespace
{

struct Token {
    enum class Kind { Number, Ident, Op, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1;
    int col = 1;
};

constexpr std::string_view wedge_utf8 = "\xE2\x88\xA7";

class Lexer
{
public:
    explicit Lexer(std::string_view text) : m_text(text)
    {
        advance();
    }

    const Token &peek() const
    {
        return m_tok;
    }

    Token take()
    {
        Token t = m_tok;
        advance();
        return t;
    }

private:
    void bump(std::size_t n = 1)
    {
        for (std::size_t i = 0; i < n && m_pos < m_text.size(); ++i) {
            if (m_text[m_pos] == '\n') {
                ++m_line;
                m_col = 1;
            } else if ((static_cast<unsigned char>(m_text[m_pos]) & 0xC0) != 0x80) {
                ++m_col;
            }
            ++m_pos;
        }
    }

    void advance()
    {
        while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
            bump();
        }
        m_tok = Token{};
        m_tok.line = m_line;
        m_tok.col = m_col;
        if (m_pos >= m_text.size()) {
            m_tok.kind = Token::Kind::End;
            return;
        }
        const char c = m_text[m_pos];
        const std::size_t start = m_pos;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
                bump();
            }
            if (m_pos + 1 < m_text.size() && m_text[m_pos] == '/'
                && std::isdigit(static_cast<unsigned char>(m_text[m_pos + 1]))) {
                bump();
                while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
                    bump();
                }
            }
            m_tok.kind = Token::Kind::Number;
            m_tok.text = std::string(m_text.substr(start, m_pos - start));
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (m_pos < m_text.size()
                   && (std::isalnum(static_cast<unsigned char>(m_text[m_pos])) || m_text[m_pos] == '_')) {
                bump();
            }
            m_tok.kind = Token::Kind::Ident;
            m_tok.text = std::string(m_text.substr(start, m_pos - start));
            return;
        }
        if (m_text.substr(m_pos, wedge_utf8.size()) == wedge_utf8) {
            bump(wedge_utf8.size());
            m_tok.kind = Token::Kind::Op;
            m_tok.text = "&";
            return;
        }
        if (std::string_view("+-*^(){},&").find(c) != std::string_view::npos) {
            bump();
            m_tok.kind = Token::Kind::Op;
            m_tok.text = std::string(1, c);
            return;
        }
        throw Error(position(m_line, m_col) + " (unexpected character '" + std::string(1, c) + "')");
    }

public:
    static std::string position(int line, int col)
    {
        return "syntax error at " + std::to_string(line) + ":" + std::to_string(col);
    }

private:
    std::string_view m_text;
    std::size_t m_pos = 0;
    int m_line = 1;
    int m_col = 1;
    Token m_tok;
};

std::shared_ptr<Expr> node(Expr::Kind k, const Token &at)
{
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->line = at.line;
    e->col = at.col;
    return e;
}

class Parser
{
public:
    explicit Parser(std::string_view text) : m_lex(text) {}

    ExprPtr parse()
    {
        ExprPtr e = expr();
        if (m_lex.peek().kind != Token::Kind::End) {
            fail("unexpected '" + m_lex.peek().text + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string &what) const
    {
        const Token &t = m_lex.peek();
        throw Error(Lexer::position(t.line, t.col) + " (" + what + ")");
    }

    bool is_op(const char *op) const
    {
        return m_lex.peek().kind == Token::Kind::Op && m_lex.peek().text == op;
    }

    void expect(const char *op)
    {
        if (!is_op(op)) {
            fail(std::string("expected '") + op + "'");
        }
        m_lex.take();
    }

    ExprPtr expr()
    {
        ExprPtr lhs = term();
        while (is_op("+") || is_op("-")) {
            const Token op = m_lex.take();
            auto e = node(op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub, op);
            e->args = {lhs, term()};
            lhs = e;
        }
        return lhs;
    }

    ExprPtr term()
    {
        ExprPtr lhs = factor();
        while (is_op("*") || is_op("&")) {
            const Token op = m_lex.take();
            auto e = node(op.text == "*" ? Expr::Kind::Mul : Expr::Kind::Wedge, op);
            e->args = {lhs, factor()};
            lhs = e;
        }
        return lhs;
    }

    ExprPtr factor()
    {
        if (is_op("-")) {
            const Token op = m_lex.take();
            auto e = node(Expr::Kind::Neg, op);
            e->args = {factor()};
            return e;
        }
        ExprPtr base = atom();
        if (is_op("^")) {
            const Token op = m_lex.take();
            bool neg = false;
            if (is_op("-")) {
                m_lex.take();
                neg = true;
            }
            if (m_lex.peek().kind != Token::Kind::Number || m_lex.peek().text.find('/') != std::string::npos) {
                fail("expected an integer exponent");
            }
            const std::string digits = m_lex.take().text;
            if (digits.size() > 6) {
                throw Error(Lexer::position(op.line, op.col) + " (exponent too large)");
            }
            auto e = node(Expr::Kind::Pow, op);
            e->exponent = std::stoi(digits) * (neg ? -1 : 1);
            e->args = {base};
            return e;
        }
        return base;
    }

    ExprPtr atom()
    {
        const Token t = m_lex.peek();
        if (t.kind == Token::Kind::Number) {
            m_lex.take();
            auto e = node(Expr::Kind::Number, t);
            e->value = Rational(t.text, 10);
            if (e->value.get_den() == 0) {
                throw Error(Lexer::position(t.line, t.col) + " (zero denominator)");
            }
            e->value.canonicalize();
            return e;
        }
        if (t.kind == Token::Kind::Ident) {
            m_lex.take();
            if (is_op("(") && (t.text == "exp" || t.text == "log" || t.text == "d")) {
                m_lex.take();
                const Expr::Kind k = t.text == "exp" ? Expr::Kind::Exp
                                     : t.text == "log" ? Expr::Kind::Log
                                                       : Expr::Kind::D;
                auto e = node(k, t);
                e->args = {expr()};
                expect(")");
                return e;
            }
            if (t.text == "exp" || t.text == "log") {
                fail("expected '(' after " + t.text);
            }
            auto e = node(Expr::Kind::Var, t);
            e->name = t.text;
            return e;
        }
        if (is_op("(")) {
            m_lex.take();
            ExprPtr e = expr();
            expect(")");
            return e;
        }
        if (is_op("{")) {
            m_lex.take();
            auto e = node(Expr::Kind::Tuple, t);
            e->args.push_back(expr());
            while (is_op(",")) {
                m_lex.take();
                e->args.push_back(expr());
            }
            expect("}");
            return e;
        }
        if (t.kind == Token::Kind::End) {
            fail("unexpected end of input");
        }
        fail("unexpected '" + t.text + "'");
    }

    Lexer m_lex;
};

int precedence(const Expr &e)
{
    switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
        return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Wedge:
        return 2;
    case Expr::Kind::Neg:
        return 3;
    case Expr::Kind::Pow:
        return 4;
    case Expr::Kind::Number:
        return sgn(e.value) < 0 ? 3 : (e.value.get_den() != 1 ? 4 : 5);
    default:
        return 5;
    }
}

std::string wrap(const Expr &e, int min_prec)
{
    const std::string s = print_expr(e);
    return precedence(e) < min_prec ? "(" + s + ")" : s;
}

[[noreturn]] void eval_error(const Expr &e, const std::string &what)
{
    throw Error(what + " at " + std::to_string(e.line) + ":" + std::to_string(e.col));
}

} // namespace

ExprPtr parse_expr(std::string_view text)
{
    return Parser(text).parse();
}

std::string print_expr(const Expr &e)
{
    switch (e.kind) {
    case Expr::Kind::Number:
        return e.value.get_str();
    case Expr::Kind::Var:
        return e.name;
    case Expr::Kind::Diff:
        return "d" + e.name;
    case Expr::Kind::Add:
        return wrap(*e.args[0], 1) + " + " + wrap(*e.args[1], 2);
    case Expr::Kind::Sub:
        return wrap(*e.args[0], 1) + " - " + wrap(*e.args[1], 2);
    case Expr::Kind::Mul:
        return wrap(*e.args[0], 2) + "*" + wrap(*e.args[1], 3);
    case Expr::Kind::Wedge:
        return wrap(*e.args[0], 2) + "∧" + wrap(*e.args[1], 3);
    case Expr::Kind::Neg:
        return "-" + wrap(*e.args[0], 3);
    case Expr::Kind::Pow:
        // A fraction base prints as p/q and reparses as the same literal.
        return wrap(*e.args[0], 4) + "^" + std::to_string(e.exponent);
    case Expr::Kind::Exp:
        return "exp(" + print_expr(*e.args[0]) + ")";
    case Expr::Kind::Log:
        return "log(" + print_expr(*e.args[0]) + ")";
    case Expr::Kind::D:
        return "d(" + print_expr(*e.args[0]) + ")";
    case Expr::Kind::Tuple: {
        std::string s = "{";
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            s += (i ? ", " : "") + print_expr(*e.args[i]);
        }
        return s + "}";
    }
    }
    return "";
}

namespace
{

// Resolves a bare identifier: a variable, or dX for a known variable X.
std::variant<int, std::pair<int, bool>> resolve(const Expr &e, const VarLayout &vars)
{
    if (auto g = vars.find(e.name)) {
        return *g;
    }
    if (e.name.size() > 1 && e.name[0] == 'd') {
        if (auto g = vars.find(e.name.substr(1))) {
            return std::make_pair(*g, true);
        }
    }
    eval_error(e, "unknown variable " + e.name);
}

bool invertible_generator(const VarLayout &vars, int g)
{
    return g >= vars.nilpotents() && vars.invertible(g - vars.nilpotents());
}

} // namespace

Poly eval_poly(const Expr &e, const VarLayout &vars)
{
    const std::size_t m = vars.nilpotents();
    const std::size_t k = vars.params();
    switch (e.kind) {
    case Expr::Kind::Number:
        return Poly::constant(e.value, m, k);
    case Expr::Kind::Var: {
        auto r = resolve(e, vars);
        if (!std::holds_alternative<int>(r)) {
            eval_error(e, "differentials are not allowed in a polynomial");
        }
        return Poly::variable(vars, std::get<int>(r));
    }
    case Expr::Kind::Add:
        return eval_poly(*e.args[0], vars) + eval_poly(*e.args[1], vars);
    case Expr::Kind::Sub:
        return eval_poly(*e.args[0], vars) - eval_poly(*e.args[1], vars);
    case Expr::Kind::Mul:
        return eval_poly(*e.args[0], vars) * eval_poly(*e.args[1], vars);
    case Expr::Kind::Neg:
        return -eval_poly(*e.args[0], vars);
    case Expr::Kind::Pow: {
        const Expr &base = *e.args[0];
        if (e.exponent < 0) {
            if (base.kind != Expr::Kind::Var) {
                eval_error(e, "negative exponent on non-invertible variable");
            }
            auto r = resolve(base, vars);
            if (!std::holds_alternative<int>(r) || !invertible_generator(vars, std::get<int>(r))) {
                eval_error(e, "negative exponent on non-invertible variable");
            }
            Monomial mono(m, k);
            mono.par[std::get<int>(r) - m] = e.exponent;
            return Poly::monomial(mono);
        }
        const Poly b = eval_poly(base, vars);
        Poly acc = Poly::constant(1, m, k);
        for (int i = 0; i < e.exponent; ++i) {
            acc = acc * b;
        }
        return acc;
    }
    default:
        eval_error(e, "expression not allowed in a polynomial");
    }
}

Poly parse_poly(std::string_view text, const VarLayout &vars)
{
    return eval_poly(*parse_expr(text), vars);
}

VarLayout infer_nilpotent_layout(std::string_view text)
{
    ExprPtr e = parse_expr(text);
    bool bare = false;
    int top = 0;
    std::function<void(const Expr &)> walk = [&](const Expr &x) {
        if (x.kind == Expr::Kind::Var) {
            if (x.name == "t") {
                bare = true;
            } else if (x.name.size() > 1 && x.name[0] == 't'
                       && std::all_of(x.name.begin() + 1, x.name.end(),
                                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })
                       && x.name[1] != '0' && x.name.size() < 4) {
                top = std::max(top, std::stoi(x.name.substr(1)));
            } else {
                eval_error(x, "unknown variable " + x.name);
            }
        }
        for (const auto &a : x.args) {
            walk(*a);
        }
    };
    walk(*e);
    if (bare && top > 0) {
        throw Error("cannot mix t with t1, t2, ...");
    }
    return VarLayout(bare ? 1 : std::max(top, 1), {}, {});
}

namespace
{

Form as_form(const Value &v)
{
    if (const auto *a = std::get_if<AlgElem>(&v)) {
        return Form::from_elem(*a);
    }
    if (const auto *f = std::get_if<Form>(&v)) {
        return *f;
    }
    throw Error("a symbol cannot be used as a form");
}

const AlgElem &as_elem(const Value &v, const Expr &at)
{
    if (const auto *a = std::get_if<AlgElem>(&v)) {
        return *a;
    }
    eval_error(at, "expected an algebra element");
}

// Integer scalar from a constant element, for k*{...}.
Integer as_integer(const Value &v, const Expr &at)
{
    const AlgElem &a = as_elem(v, at);
    const auto &terms = a.value().terms();
    if (terms.empty()) {
        return 0;
    }
    if (terms.size() != 1 || !terms.begin()->first.is_one() || terms.begin()->second.get_den() != 1) {
        eval_error(at, "symbol coefficients must be integers");
    }
    return terms.begin()->second.get_num();
}

Value combine(const Value &a, const Value &b, int sign, const Expr &at)
{
    if (std::holds_alternative<SymbolSum>(a) || std::holds_alternative<SymbolSum>(b)) {
        if (!std::holds_alternative<SymbolSum>(a) || !std::holds_alternative<SymbolSum>(b)) {
            eval_error(at, "cannot add a symbol and a non-symbol");
        }
        const auto &sa = std::get<SymbolSum>(a);
        const auto &sb = std::get<SymbolSum>(b);
        return sign > 0 ? sa + sb : sa - sb;
    }
    if (std::holds_alternative<AlgElem>(a) && std::holds_alternative<AlgElem>(b)) {
        const auto &ea = std::get<AlgElem>(a);
        const auto &eb = std::get<AlgElem>(b);
        return sign > 0 ? ea + eb : ea - eb;
    }
    const Form fa = as_form(a), fb = as_form(b);
    if (fa.degree() != fb.degree()) {
        eval_error(at, "mixed degrees");
    }
    return sign > 0 ? fa + fb : fa - fb;
}

Value eval(const Expr &e, const AlgebraPtr &alg)
{
    const VarLayout &vars = alg->vars();
    switch (e.kind) {
    case Expr::Kind::Number:
        return AlgElem::constant(alg, e.value);
    case Expr::Kind::Var: {
        auto r = resolve(e, vars);
        if (std::holds_alternative<int>(r)) {
            return AlgElem::generator(alg, std::get<int>(r));
        }
        return Form::differential(alg, std::get<std::pair<int, bool>>(r).first);
    }
    case Expr::Kind::Diff:
        if (auto g = vars.find(e.name)) {
            return Form::differential(alg, *g);
        }
        eval_error(e, "unknown variable " + e.name);
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
        return combine(eval(*e.args[0], alg), eval(*e.args[1], alg), e.kind == Expr::Kind::Add ? 1 : -1, e);
    case Expr::Kind::Mul:
    case Expr::Kind::Wedge: {
        const Value a = eval(*e.args[0], alg);
        const Value b = eval(*e.args[1], alg);
        if (std::holds_alternative<SymbolSum>(b) && e.kind == Expr::Kind::Mul) {
            return std::get<SymbolSum>(b).scaled(as_integer(a, *e.args[0]));
        }
        if (std::holds_alternative<SymbolSum>(a) && e.kind == Expr::Kind::Mul) {
            return std::get<SymbolSum>(a).scaled(as_integer(b, *e.args[1]));
        }
        if (e.kind == Expr::Kind::Mul && std::holds_alternative<AlgElem>(a) && std::holds_alternative<AlgElem>(b)) {
            return std::get<AlgElem>(a) * std::get<AlgElem>(b);
        }
        return wedge(as_form(a), as_form(b));
    }
    case Expr::Kind::Neg: {
        const Value a = eval(*e.args[0], alg);
        if (const auto *s = std::get_if<SymbolSum>(&a)) {
            return s->scaled(-1);
        }
        if (const auto *x = std::get_if<AlgElem>(&a)) {
            return -*x;
        }
        return -std::get<Form>(a);
    }
    case Expr::Kind::Pow: {
        const Expr &base = *e.args[0];
        if (e.exponent < 0) {
            bool ok = base.kind == Expr::Kind::Var;
            if (ok) {
                auto r = resolve(base, vars);
                ok = std::holds_alternative<int>(r) && invertible_generator(vars, std::get<int>(r));
            }
            if (!ok) {
                eval_error(e, "negative exponent on non-invertible variable");
            }
        }
        return pow(as_elem(eval(base, alg), base), e.exponent);
    }
    case Expr::Kind::Exp:
        return exp_nil(as_elem(eval(*e.args[0], alg), *e.args[0]));
    case Expr::Kind::Log: {
        const AlgElem r = as_elem(eval(*e.args[0], alg), *e.args[0]);
        const AlgElem one = AlgElem::constant(alg, 1);
        if (!(augment(r) == one)) {
            eval_error(e, "log needs an argument in 1 + I");
        }
        return log1p(r - one);
    }
    case Expr::Kind::D:
        return d(as_form(eval(*e.args[0], alg)));
    case Expr::Kind::Tuple: {
        std::vector<AlgElem> entries;
        for (const auto &a : e.args) {
            entries.push_back(as_elem(eval(*a, alg), *a));
        }
        return SymbolSum::single(std::move(entries));
    }
    }
    eval_error(e, "unsupported expression");
}

} // namespace

Value evaluate(const Expr &e, const AlgebraPtr &alg)
{
    return eval(e, alg);
}

AlgElem parse_elem(std::string_view text, const AlgebraPtr &alg)
{
    ExprPtr e = parse_expr(text);
    return as_elem(eval(*e, alg), *e);
}

Form parse_form(std::string_view text, const AlgebraPtr &alg)
{
    return as_form(eval(*parse_expr(text), alg));
}

SymbolSum parse_symbol(std::string_view text, const AlgebraPtr &alg)
{
    ExprPtr e = parse_expr(text);
    Value v = eval(*e, alg);
    if (auto *s = std::get_if<SymbolSum>(&v)) {
        return *s;
    }
    eval_error(*e, "expected a symbol");
}

} // namespace blochkit
