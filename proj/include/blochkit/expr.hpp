#ifndef BLOCHKIT_EXPR_HPP
#define BLOCHKIT_EXPR_HPP

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <blochkit/ksymbols.hpp>

namespace blochkit
{

// Grammar (whitespace-insensitive):
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '∧' | '&') factor)*
//   factor := '-' factor | atom ('^' ['-'] int)?
//   atom   := rational | ident | dIDENT | '(' expr ')'
//           | ('exp' | 'log' | 'd') '(' expr ')' | '{' expr (',' expr)* '}'
// A rational literal is an integer or "p/q". dX is the differential of the
// variable X (when X is known and dX is not itself a variable).
struct Expr {
    enum class Kind { Number, Var, Diff, Add, Sub, Mul, Wedge, Neg, Pow, Exp, Log, D, Tuple };

    Kind kind = Kind::Number;
    Rational value;   // Number
    std::string name; // Var, Diff
    int exponent = 0; // Pow
    std::vector<std::shared_ptr<const Expr>> args;
    int line = 1;
    int col = 1;
};
using ExprPtr = std::shared_ptr<const Expr>;

// Throws "syntax error at line:col ...".
ExprPtr parse_expr(std::string_view text);
// Canonical text; parse_expr(print_expr(e)) prints identically.
std::string print_expr(const Expr &e);

// Evaluates into the free polynomial ring of a layout (no truncation, no
// exp/log/forms/symbols). Throws "unknown variable" and
// "negative exponent on non-invertible variable".
Poly eval_poly(const Expr &e, const VarLayout &vars);
Poly parse_poly(std::string_view text, const VarLayout &vars);

// Nilpotent layout implied by the names in a parameter-free polynomial:
// "t" alone gives m = 1, otherwise m is the largest index of t1, t2, ...
VarLayout infer_nilpotent_layout(std::string_view text);

using Value = std::variant<AlgElem, Form, SymbolSum>;

Value evaluate(const Expr &e, const AlgebraPtr &alg);
AlgElem parse_elem(std::string_view text, const AlgebraPtr &alg);
Form parse_form(std::string_view text, const AlgebraPtr &alg);
SymbolSum parse_symbol(std::string_view text, const AlgebraPtr &alg);

} // namespace blochkit

#endif
