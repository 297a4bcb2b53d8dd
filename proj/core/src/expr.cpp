#include "tangent/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace tangent {

namespace {

ExprPtr make_node(Expr e) {
    return std::make_shared<const Expr>(std::move(e));
}

}  // namespace

ExprPtr Expr::constant(BigRational v) {
    Expr e;
    e.kind = ExprKind::Const;
    e.value = std::move(v);
    return make_node(std::move(e));
}

ExprPtr Expr::variable(std::string name) {
    Expr e;
    e.kind = ExprKind::Var;
    e.name = std::move(name);
    return make_node(std::move(e));
}

ExprPtr Expr::add(ExprPtr lhs, ExprPtr rhs) {
    if (lhs->is_const() && rhs->is_const()) return constant(lhs->value + rhs->value);
    if (lhs->is_const(BigRational(0))) return rhs;
    if (rhs->is_const(BigRational(0))) return lhs;
    Expr e;
    e.kind = ExprKind::Add;
    e.a = std::move(lhs);
    e.b = std::move(rhs);
    return make_node(std::move(e));
}

ExprPtr Expr::sub(ExprPtr lhs, ExprPtr rhs) {
    if (lhs->is_const() && rhs->is_const()) return constant(lhs->value - rhs->value);
    if (rhs->is_const(BigRational(0))) return lhs;
    if (lhs->is_const(BigRational(0))) return neg(std::move(rhs));
    Expr e;
    e.kind = ExprKind::Sub;
    e.a = std::move(lhs);
    e.b = std::move(rhs);
    return make_node(std::move(e));
}

ExprPtr Expr::mul(ExprPtr lhs, ExprPtr rhs) {
    if (lhs->is_const() && rhs->is_const()) return constant(lhs->value * rhs->value);
    if (lhs->is_const(BigRational(0)) || rhs->is_const(BigRational(0)))
        return constant(BigRational(0));
    if (lhs->is_const(BigRational(1))) return rhs;
    if (rhs->is_const(BigRational(1))) return lhs;
    Expr e;
    e.kind = ExprKind::Mul;
    e.a = std::move(lhs);
    e.b = std::move(rhs);
    return make_node(std::move(e));
}

ExprPtr Expr::div(ExprPtr lhs, ExprPtr rhs) {
    if (rhs->is_const()) {
        if (rhs->value == 0) throw EvalDomainError("division by zero constant");
        if (lhs->is_const()) return constant(lhs->value / rhs->value);
        if (rhs->value == 1) return lhs;
    }
    if (lhs->is_const(BigRational(0))) return lhs;
    Expr e;
    e.kind = ExprKind::Div;
    e.a = std::move(lhs);
    e.b = std::move(rhs);
    return make_node(std::move(e));
}

ExprPtr Expr::neg(ExprPtr operand) {
    if (operand->is_const()) return constant(-operand->value);
    Expr e;
    e.kind = ExprKind::Neg;
    e.a = std::move(operand);
    return make_node(std::move(e));
}

ExprPtr Expr::int_pow(ExprPtr base, long exponent) {
    if (exponent == 1) return base;
    if (exponent == 0) return constant(BigRational(1));
    if (base->is_const()) {
        if (base->value == 0 && exponent < 0)
            throw EvalDomainError("zero raised to a negative power");
        return constant(pow(base->value, exponent));
    }
    Expr e;
    e.kind = ExprKind::IntPow;
    e.a = std::move(base);
    e.exponent = exponent;
    return make_node(std::move(e));
}

ExprPtr Expr::root(ExprPtr base, unsigned long index) {
    if (index < 2) throw std::invalid_argument("root index must be >= 2");
    Expr e;
    e.kind = ExprKind::Root;
    e.a = std::move(base);
    e.index = index;
    return make_node(std::move(e));
}

ExprPtr Expr::ln(ExprPtr operand) {
    Expr e;
    e.kind = ExprKind::Ln;
    e.a = std::move(operand);
    return make_node(std::move(e));
}

bool expr_equal(const ExprPtr& lhs, const ExprPtr& rhs) {
    if (lhs == rhs) return true;
    if (lhs->kind != rhs->kind) return false;
    switch (lhs->kind) {
        case ExprKind::Const: return lhs->value == rhs->value;
        case ExprKind::Var: return lhs->name == rhs->name;
        case ExprKind::Neg:
        case ExprKind::Ln: return expr_equal(lhs->a, rhs->a);
        case ExprKind::IntPow:
            return lhs->exponent == rhs->exponent && expr_equal(lhs->a, rhs->a);
        case ExprKind::Root: return lhs->index == rhs->index && expr_equal(lhs->a, rhs->a);
        default: return expr_equal(lhs->a, rhs->a) && expr_equal(lhs->b, rhs->b);
    }
}

bool contains_variable(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Const: return false;
        case ExprKind::Var: return true;
        case ExprKind::Neg:
        case ExprKind::Ln:
        case ExprKind::IntPow:
        case ExprKind::Root: return contains_variable(e->a);
        default: return contains_variable(e->a) || contains_variable(e->b);
    }
}

std::string variable_name(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Const: return "x";
        case ExprKind::Var: return e->name;
        case ExprKind::Neg:
        case ExprKind::Ln:
        case ExprKind::IntPow:
        case ExprKind::Root: return variable_name(e->a);
        default: {
            if (contains_variable(e->a)) return variable_name(e->a);
            return variable_name(e->b);
        }
    }
}

// ---------------------------------------------------------------------------
// parser

namespace {

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr run() {
        ExprPtr e = parse_expression();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr parse_expression() {
        ExprPtr lhs = parse_term();
        for (;;) {
            if (eat('+'))
                lhs = Expr::add(lhs, parse_term());
            else if (eat('-'))
                lhs = Expr::sub(lhs, parse_term());
            else
                return lhs;
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        for (;;) {
            if (eat('*')) {
                lhs = Expr::mul(lhs, parse_factor());
            } else if (eat('/')) {
                std::size_t at = pos_;
                ExprPtr rhs = parse_factor();
                if (rhs->is_const(BigRational(0))) throw ParseError("zero denominator", at);
                lhs = Expr::div(lhs, rhs);
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_factor() {
        if (eat('-')) return Expr::neg(parse_factor());
        ExprPtr base = parse_atom();
        if (eat('^')) {
            long e = parse_integer();
            if (base->is_const(BigRational(0)) && e < 0)
                fail("zero raised to a negative power");
            return Expr::int_pow(base, e);
        }
        return base;
    }

    long parse_integer() {
        skip_ws();
        std::size_t start = pos_;
        bool neg = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("expected integer exponent", start);
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1000000) throw ParseError("exponent too large", start);
            ++pos_;
        }
        return neg ? -v : v;
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_expression();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        fail("expected number, variable, function or '('");
    }

    ExprPtr parse_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("expected digits after decimal point", pos_);
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        auto q = parse_rational(text_.substr(start, pos_ - start));
        if (!q) throw ParseError("malformed number", start);
        return Expr::constant(*q);
    }

    ExprPtr parse_identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (name == "sqrt" || name == "root" || name == "ln") return parse_function(name, start);
        if (!seen_variable_.empty() && seen_variable_ != name)
            throw ParseError("more than one variable name ('" + seen_variable_ + "' and '" + name +
                                 "')",
                             start);
        seen_variable_ = name;
        return Expr::variable(name);
    }

    ExprPtr parse_function(const std::string& name, std::size_t start) {
        if (!eat('(')) throw ParseError("expected '(' after '" + name + "'", pos_);
        if (name == "root") {
            skip_ws();
            std::size_t at = pos_;
            long k = parse_integer();
            if (k < 2) throw ParseError("root index must be >= 2", at);
            if (!eat(',')) fail("expected ',' in root(k, ...)");
            ExprPtr arg = parse_expression();
            if (!eat(')')) fail("expected ')'");
            return Expr::root(arg, static_cast<unsigned long>(k));
        }
        ExprPtr arg = parse_expression();
        if (!eat(')')) fail("expected ')'");
        if (name == "sqrt") return Expr::sqrt(arg);
        (void)start;
        return Expr::ln(arg);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::string seen_variable_;
};

}  // namespace

ExprPtr parse_expr(std::string_view text) {
    return Parser(text).run();
}

// ---------------------------------------------------------------------------
// printing

namespace {

int precedence(ExprKind k) {
    switch (k) {
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Mul:
        case ExprKind::Div: return 2;
        case ExprKind::Neg: return 3;
        case ExprKind::IntPow: return 4;
        default: return 5;  // atoms
    }
}

void print_node(std::ostringstream& out, const ExprPtr& e);

void print_child(std::ostringstream& out, const ExprPtr& child, int min_prec) {
    bool parens = precedence(child->kind) < min_prec;
    // a rational constant prints as "p/q" and a negative one as "-p", both of
    // which need parens anywhere a bare atom is required
    if (child->kind == ExprKind::Const && min_prec > 2 &&
        (child->value < 0 || child->value.get_den() != 1))
        parens = true;
    if (child->kind == ExprKind::Const && min_prec == 2 && child->value < 0) parens = true;
    if (parens) out << "(";
    print_node(out, child);
    if (parens) out << ")";
}

void print_node(std::ostringstream& out, const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Const: out << to_string(e->value); break;
        case ExprKind::Var: out << e->name; break;
        case ExprKind::Add:
            print_child(out, e->a, 1);
            out << " + ";
            print_child(out, e->b, 2);
            break;
        case ExprKind::Sub:
            print_child(out, e->a, 1);
            out << " - ";
            print_child(out, e->b, 2);
            break;
        case ExprKind::Mul:
            print_child(out, e->a, 2);
            out << "*";
            print_child(out, e->b, 3);
            break;
        case ExprKind::Div:
            print_child(out, e->a, 2);
            out << "/";
            print_child(out, e->b, 4);
            break;
        case ExprKind::Neg:
            out << "-";
            print_child(out, e->a, 3);
            break;
        case ExprKind::IntPow:
            print_child(out, e->a, 5);
            out << "^" << e->exponent;
            break;
        case ExprKind::Root:
            if (e->index == 2) {
                out << "sqrt(";
            } else {
                out << "root(" << e->index << ", ";
            }
            print_node(out, e->a);
            out << ")";
            break;
        case ExprKind::Ln:
            out << "ln(";
            print_node(out, e->a);
            out << ")";
            break;
    }
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
    std::ostringstream out;
    print_node(out, e);
    return out.str();
}

// ---------------------------------------------------------------------------
// calculus and evaluation

ExprPtr differentiate(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Const: return Expr::constant(BigRational(0));
        case ExprKind::Var: return Expr::constant(BigRational(1));
        case ExprKind::Add: return Expr::add(differentiate(e->a), differentiate(e->b));
        case ExprKind::Sub: return Expr::sub(differentiate(e->a), differentiate(e->b));
        case ExprKind::Mul:
            return Expr::add(Expr::mul(differentiate(e->a), e->b),
                             Expr::mul(e->a, differentiate(e->b)));
        case ExprKind::Div:
            return Expr::div(Expr::sub(Expr::mul(differentiate(e->a), e->b),
                                       Expr::mul(e->a, differentiate(e->b))),
                             Expr::int_pow(e->b, 2));
        case ExprKind::Neg: return Expr::neg(differentiate(e->a));
        case ExprKind::IntPow:
            return Expr::mul(
                Expr::mul(Expr::constant(BigRational(e->exponent)), Expr::int_pow(e->a, e->exponent - 1)),
                differentiate(e->a));
        case ExprKind::Root: {
            // (u^{1/k})' = u' / (k * (u^{1/k})^{k-1})
            ExprPtr self = Expr::root(e->a, e->index);
            ExprPtr den = Expr::mul(Expr::constant(BigRational(static_cast<long>(e->index))),
                                    Expr::int_pow(self, static_cast<long>(e->index) - 1));
            return Expr::div(differentiate(e->a), den);
        }
        case ExprKind::Ln: return Expr::div(differentiate(e->a), e->a);
    }
    throw std::logic_error("differentiate: unknown node");
}

double eval_numeric(const ExprPtr& e, double x) {
    switch (e->kind) {
        case ExprKind::Const: return to_double(e->value);
        case ExprKind::Var: return x;
        case ExprKind::Add: return eval_numeric(e->a, x) + eval_numeric(e->b, x);
        case ExprKind::Sub: return eval_numeric(e->a, x) - eval_numeric(e->b, x);
        case ExprKind::Mul: return eval_numeric(e->a, x) * eval_numeric(e->b, x);
        case ExprKind::Div: {
            double den = eval_numeric(e->b, x);
            if (den == 0.0) throw EvalDomainError("division by zero at x = " + std::to_string(x));
            return eval_numeric(e->a, x) / den;
        }
        case ExprKind::Neg: return -eval_numeric(e->a, x);
        case ExprKind::IntPow: {
            double base = eval_numeric(e->a, x);
            if (base == 0.0 && e->exponent < 0)
                throw EvalDomainError("zero base with negative exponent at x = " + std::to_string(x));
            return std::pow(base, static_cast<double>(e->exponent));
        }
        case ExprKind::Root: {
            double base = eval_numeric(e->a, x);
            if (e->index % 2 == 0) {
                if (base < 0.0)
                    throw EvalDomainError("even root of negative value at x = " + std::to_string(x));
                return std::pow(base, 1.0 / static_cast<double>(e->index));
            }
            double mag = std::pow(std::fabs(base), 1.0 / static_cast<double>(e->index));
            return base < 0.0 ? -mag : mag;
        }
        case ExprKind::Ln: {
            double base = eval_numeric(e->a, x);
            if (base <= 0.0)
                throw EvalDomainError("ln of non-positive value at x = " + std::to_string(x));
            return std::log(base);
        }
    }
    throw std::logic_error("eval_numeric: unknown node");
}

std::optional<BigRational> eval_exact(const ExprPtr& e, const BigRational& x) {
    switch (e->kind) {
        case ExprKind::Const: return e->value;
        case ExprKind::Var: return x;
        case ExprKind::Add: {
            auto l = eval_exact(e->a, x), r = eval_exact(e->b, x);
            if (!l || !r) return std::nullopt;
            return *l + *r;
        }
        case ExprKind::Sub: {
            auto l = eval_exact(e->a, x), r = eval_exact(e->b, x);
            if (!l || !r) return std::nullopt;
            return *l - *r;
        }
        case ExprKind::Mul: {
            auto l = eval_exact(e->a, x), r = eval_exact(e->b, x);
            if (!l || !r) return std::nullopt;
            return *l * *r;
        }
        case ExprKind::Div: {
            auto l = eval_exact(e->a, x), r = eval_exact(e->b, x);
            if (!l || !r) return std::nullopt;
            if (*r == 0) throw EvalDomainError("division by zero at x = " + to_string(x));
            return *l / *r;
        }
        case ExprKind::Neg: {
            auto v = eval_exact(e->a, x);
            if (!v) return std::nullopt;
            return -*v;
        }
        case ExprKind::IntPow: {
            auto v = eval_exact(e->a, x);
            if (!v) return std::nullopt;
            if (*v == 0 && e->exponent < 0)
                throw EvalDomainError("zero base with negative exponent at x = " + to_string(x));
            return pow(*v, e->exponent);
        }
        case ExprKind::Root: {
            auto v = eval_exact(e->a, x);
            if (!v) return std::nullopt;
            if (*v < 0 && e->index % 2 == 0)
                throw EvalDomainError("even root of negative value at x = " + to_string(x));
            return exact_root(*v, e->index);
        }
        case ExprKind::Ln: {
            auto v = eval_exact(e->a, x);
            if (!v) return std::nullopt;
            if (*v <= 0) throw EvalDomainError("ln of non-positive value at x = " + to_string(x));
            if (*v == 1) return BigRational(0);
            return std::nullopt;
        }
    }
    throw std::logic_error("eval_exact: unknown node");
}

ExprPtr substitute_constant(const ExprPtr& e, const ExprPtr& constant_expr) {
    switch (e->kind) {
        case ExprKind::Const: return e;
        case ExprKind::Var: return constant_expr;
        case ExprKind::Add:
            return Expr::add(substitute_constant(e->a, constant_expr),
                             substitute_constant(e->b, constant_expr));
        case ExprKind::Sub:
            return Expr::sub(substitute_constant(e->a, constant_expr),
                             substitute_constant(e->b, constant_expr));
        case ExprKind::Mul:
            return Expr::mul(substitute_constant(e->a, constant_expr),
                             substitute_constant(e->b, constant_expr));
        case ExprKind::Div:
            return Expr::div(substitute_constant(e->a, constant_expr),
                             substitute_constant(e->b, constant_expr));
        case ExprKind::Neg: return Expr::neg(substitute_constant(e->a, constant_expr));
        case ExprKind::IntPow:
            return Expr::int_pow(substitute_constant(e->a, constant_expr), e->exponent);
        case ExprKind::Root: return Expr::root(substitute_constant(e->a, constant_expr), e->index);
        case ExprKind::Ln: return Expr::ln(substitute_constant(e->a, constant_expr));
    }
    throw std::logic_error("substitute_constant: unknown node");
}

LowerResult lower_to_rational(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Const: return RationalFunction::constant(e->value);
        case ExprKind::Var:
            return RationalFunction::from_poly(Polynomial({BigRational(0), BigRational(1)}));
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul:
        case ExprKind::Div: {
            auto l = lower_to_rational(e->a);
            if (std::holds_alternative<NotRational>(l)) return l;
            auto r = lower_to_rational(e->b);
            if (std::holds_alternative<NotRational>(r)) return r;
            const auto& lf = std::get<RationalFunction>(l);
            const auto& rf = std::get<RationalFunction>(r);
            switch (e->kind) {
                case ExprKind::Add: return lf + rf;
                case ExprKind::Sub: return lf - rf;
                case ExprKind::Mul: return lf * rf;
                default:
                    if (rf.is_zero())
                        return NotRational{"Div", "division by an identically zero expression"};
                    return lf / rf;
            }
        }
        case ExprKind::Neg: {
            auto v = lower_to_rational(e->a);
            if (std::holds_alternative<NotRational>(v)) return v;
            return -std::get<RationalFunction>(v);
        }
        case ExprKind::IntPow: {
            auto v = lower_to_rational(e->a);
            if (std::holds_alternative<NotRational>(v)) return v;
            RationalFunction base = std::get<RationalFunction>(v);
            long k = e->exponent;
            if (k < 0) {
                if (base.is_zero())
                    return NotRational{"IntPow", "zero base with negative exponent"};
                base = RationalFunction::constant(BigRational(1)) / base;
                k = -k;
            }
            RationalFunction out = RationalFunction::constant(BigRational(1));
            for (long i = 0; i < k; ++i) out = out * base;
            return out;
        }
        case ExprKind::Root: {
            // fold exact constant roots, e.g. sqrt(4); anything else is not rational
            if (!contains_variable(e->a)) {
                auto v = lower_to_rational(e->a);
                if (std::holds_alternative<RationalFunction>(v)) {
                    const auto& rf = std::get<RationalFunction>(v);
                    if (rf.is_polynomial() && rf.num().degree() <= 0) {
                        BigRational c = rf.num().is_zero() ? BigRational(0)
                                                           : rf.num().coeff(0) / rf.den().coeff(0);
                        if (auto r = exact_root(c, e->index))
                            return RationalFunction::constant(*r);
                    }
                }
            }
            return NotRational{"Root", print_expr(e)};
        }
        case ExprKind::Ln: return NotRational{"Ln", print_expr(e)};
    }
    throw std::logic_error("lower_to_rational: unknown node");
}

bool is_rational_expr(const ExprPtr& e) {
    return std::holds_alternative<RationalFunction>(lower_to_rational(e));
}

}  // namespace tangent
