#include "tangent/ratfunc.hpp"

#include <sstream>

namespace tangent {

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("RationalFunction: zero denominator");
    if (num_.is_zero()) {
        den_ = Polynomial::constant(BigRational(1));
        return;
    }
    Polynomial g = poly_gcd(num_, den_);
    if (g.degree() > 0 || g.coeff(0) != 1) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
    }
    // canonical scale: integer coefficients with joint content 1
    BigInt den_lcm(1);
    for (const Polynomial* p : {&num_, &den_})
        for (const auto& c : p->coeffs()) {
            BigInt l;
            mpz_lcm(l.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
            den_lcm = l;
        }
    num_ = num_ * BigRational(den_lcm);
    den_ = den_ * BigRational(den_lcm);
    BigInt content(0);
    for (const Polynomial* p : {&num_, &den_})
        for (const auto& c : p->coeffs()) {
            BigInt g2;
            mpz_gcd(g2.get_mpz_t(), content.get_mpz_t(), c.get_num().get_mpz_t());
            content = g2;
        }
    if (content > 1) {
        BigRational inv = rational(BigInt(1), content);
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
    if (den_.leading() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

RationalFunction RationalFunction::from_poly(Polynomial p) {
    return RationalFunction(std::move(p), Polynomial::constant(BigRational(1)));
}

RationalFunction RationalFunction::constant(const BigRational& c) {
    return from_poly(Polynomial::constant(c));
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out;
    out.num_ = -num_;
    out.den_ = den_;
    return out;
}

RationalFunction RationalFunction::operator+(const RationalFunction& rhs) const {
    return RationalFunction(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& rhs) const {
    return RationalFunction(num_ * rhs.den_ - rhs.num_ * den_, den_ * rhs.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& rhs) const {
    return RationalFunction(num_ * rhs.num_, den_ * rhs.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& rhs) const {
    if (rhs.is_zero()) throw std::invalid_argument("RationalFunction: division by zero");
    return RationalFunction(num_ * rhs.den_, den_ * rhs.num_);
}

RationalFunction RationalFunction::derivative() const {
    // (N'D - ND') / D^2; the constructor reduces.
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

BigRational RationalFunction::operator()(const BigRational& x) const {
    BigRational d = den_(x);
    if (d == 0) throw std::domain_error("RationalFunction: pole at evaluation point");
    return num_(x) / d;
}

double RationalFunction::eval_double(double x) const {
    return num_.eval_double(x) / den_.eval_double(x);
}

std::string RationalFunction::to_string(const std::string& var) const {
    if (is_polynomial()) {
        if (den_.coeff(0) == 1) return num_.to_string(var);
        std::ostringstream out;
        out << "(" << num_.to_string(var) << ")/" << tangent::to_string(den_.coeff(0));
        return out.str();
    }
    std::ostringstream out;
    out << "(" << num_.to_string(var) << ")/(" << den_.to_string(var) << ")";
    return out.str();
}

DoubleRootFactorization double_root_factor(const RationalFunction& f, const RationalFunction& g,
                                           const BigRational& x0) {
    if (!f.defined_at(x0))
        throw PoleAtTouchPoint("f has a pole at x0 = " + to_string(x0));
    if (!g.defined_at(x0))
        throw PoleAtTouchPoint("g has a pole at x0 = " + to_string(x0));
    BigRational fv = f(x0), gv = g(x0);
    if (fv != gv)
        throw TangencyViolation("value mismatch at x0 = " + to_string(x0) + ": f = " +
                                to_string(fv) + ", g = " + to_string(gv));
    BigRational fd = f.derivative()(x0), gd = g.derivative()(x0);
    if (fd != gd)
        throw TangencyViolation("derivative mismatch at x0 = " + to_string(x0) + ": f' = " +
                                to_string(fd) + ", g' = " + to_string(gd));

    RationalFunction h = f - g;
    DoubleRootFactorization out;
    out.x0 = x0;
    out.denominator = h.den();
    if (h.is_zero()) {
        out.cofactor = Polynomial::zero();
        return out;
    }
    Polynomial square = Polynomial::linear_root(x0) * Polynomial::linear_root(x0);
    ExactDivision div = poly_divide_exact(h.num(), square);
    if (!div.exact)
        throw TangencyViolation("numerator of f - g lacks the (x - x0)^2 factor at x0 = " +
                                to_string(x0));
    out.cofactor = div.quotient;
    return out;
}

}  // namespace tangent
