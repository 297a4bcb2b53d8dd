#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "tangent/ratfunc.hpp"

namespace tangent {

// Immutable single-variable expression tree over exact rational constants.
// Trees are shared via ExprPtr and never mutated after construction.
class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind { Const, Var, Add, Sub, Mul, Div, Neg, IntPow, Root, Ln };

class Expr {
  public:
    ExprKind kind;
    BigRational value;      // Const
    std::string name;       // Var
    ExprPtr a, b;           // operands (a only for unary)
    long exponent = 0;      // IntPow (negative allowed)
    unsigned long index = 0;  // Root (>= 2)

    // Smart constructors produce canonical trees: constant subexpressions of
    // the arithmetic operators are folded, trivial identities (e + 0, e * 1,
    // e^1, ...) are collapsed.
    static ExprPtr constant(BigRational v);
    static ExprPtr variable(std::string name = "x");
    static ExprPtr add(ExprPtr lhs, ExprPtr rhs);
    static ExprPtr sub(ExprPtr lhs, ExprPtr rhs);
    static ExprPtr mul(ExprPtr lhs, ExprPtr rhs);
    static ExprPtr div(ExprPtr lhs, ExprPtr rhs);
    static ExprPtr neg(ExprPtr operand);
    static ExprPtr int_pow(ExprPtr base, long exponent);
    static ExprPtr root(ExprPtr base, unsigned long index);
    static ExprPtr sqrt(ExprPtr base) { return root(std::move(base), 2); }
    static ExprPtr ln(ExprPtr operand);

    bool is_const() const { return kind == ExprKind::Const; }
    bool is_const(const BigRational& v) const { return kind == ExprKind::Const && value == v; }
};

bool expr_equal(const ExprPtr& lhs, const ExprPtr& rhs);
bool contains_variable(const ExprPtr& e);
// Name of the variable used in e ("x" if none appears).
std::string variable_name(const ExprPtr& e);

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (offset " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

struct EvalDomainError : std::runtime_error {
    explicit EvalDomainError(const std::string& what) : std::runtime_error(what) {}
};

// Grammar (documented in docs/grammar.md):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | atom ['^' integer]
//   atom   := number | identifier | '(' expr ')' | function '(' args ')'
// with functions sqrt(e), root(k, e), ln(e). '^' binds tighter than unary
// minus. Throws ParseError (with offset) on syntax errors, a second distinct
// variable name, or a zero literal denominator.
ExprPtr parse_expr(std::string_view text);

// Canonical rendering; parse_expr(print_expr(e)) reproduces e for canonical
// trees.
std::string print_expr(const ExprPtr& e);

// Exact symbolic derivative. Root is differentiated through its fractional
// power, Ln through 1/u.
ExprPtr differentiate(const ExprPtr& e);

// IEEE double evaluation with explicit domain checks: even roots of negative
// values, ln of non-positive values and division by zero throw
// EvalDomainError instead of propagating NaN.
double eval_numeric(const ExprPtr& e, double x);

// Exact rational value when one exists (no Root of an imperfect power, no Ln
// except ln 1). Division by zero throws EvalDomainError.
std::optional<BigRational> eval_exact(const ExprPtr& e, const BigRational& x);

// Replaces the variable with a constant subexpression (which must itself be
// variable-free).
ExprPtr substitute_constant(const ExprPtr& e, const ExprPtr& constant_expr);

struct NotRational {
    std::string node;    // "Root" or "Ln"
    std::string detail;  // offending subexpression
};
using LowerResult = std::variant<RationalFunction, NotRational>;

// Lowers e to a canonical rational function. Perfect-power roots of constants
// are folded; any other Root/Ln makes the expression non-rational.
LowerResult lower_to_rational(const ExprPtr& e);

bool is_rational_expr(const ExprPtr& e);

}  // namespace tangent
