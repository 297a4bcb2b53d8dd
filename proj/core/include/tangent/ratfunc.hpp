#pragma once

#include <stdexcept>
#include <string>

#include "tangent/polynomial.hpp"

namespace tangent {

// P/Q in canonical form: gcd(P, Q) = 1, leading coefficient of Q positive.
class RationalFunction {
  public:
    RationalFunction() : num_(), den_(Polynomial::constant(BigRational(1))) {}
    RationalFunction(Polynomial num, Polynomial den);
    static RationalFunction from_poly(Polynomial p);
    static RationalFunction constant(const BigRational& c);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RationalFunction operator-() const;
    RationalFunction operator+(const RationalFunction& rhs) const;
    RationalFunction operator-(const RationalFunction& rhs) const;
    RationalFunction operator*(const RationalFunction& rhs) const;
    RationalFunction operator/(const RationalFunction& rhs) const;
    bool operator==(const RationalFunction& rhs) const = default;

    RationalFunction derivative() const;

    bool defined_at(const BigRational& x) const { return den_(x) != 0; }
    BigRational operator()(const BigRational& x) const;
    double eval_double(double x) const;

    std::string to_string(const std::string& var = "x") const;

  private:
    Polynomial num_, den_;
};

struct TangencyViolation : std::runtime_error {
    explicit TangencyViolation(const std::string& what) : std::runtime_error(what) {}
};

struct PoleAtTouchPoint : std::runtime_error {
    explicit PoleAtTouchPoint(const std::string& what) : std::runtime_error(what) {}
};

struct DoubleRootFactorization {
    BigRational x0;
    Polynomial cofactor;     // T
    Polynomial denominator;  // Qden: canonical denominator of f - g
};

// Tangency factorization: given f(x0) = g(x0) and f'(x0) = g'(x0) (checked
// exactly), writes f - g = (x - x0)^2 T / Qden identically. Exactly the
// (x - x0)^2 factor is extracted; further multiplicity stays inside T.
DoubleRootFactorization double_root_factor(const RationalFunction& f, const RationalFunction& g,
                                           const BigRational& x0);

}  // namespace tangent
