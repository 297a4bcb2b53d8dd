#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "tangent/rational.hpp"

namespace tangent {

// Dense univariate polynomial over BigRational, coefficient index = degree.
// Invariant: no trailing zero coefficients; the zero polynomial has an empty
// coefficient vector and degree() == -1.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<BigRational> coeffs);
    Polynomial(std::initializer_list<BigRational> coeffs);

    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(const BigRational& c);
    static Polynomial monomial(const BigRational& c, std::size_t degree);
    // x - r
    static Polynomial linear_root(const BigRational& r);

    bool is_zero() const { return coeffs_.empty(); }
    // -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<BigRational>& coeffs() const { return coeffs_; }
    const BigRational& coeff(std::size_t i) const;
    const BigRational& leading() const;

    BigRational operator()(const BigRational& x) const;
    double eval_double(double x) const;
    // Exact range enclosure of p over [lo, hi] by interval Horner.
    std::pair<BigRational, BigRational> enclose(const BigRational& lo, const BigRational& hi) const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(const BigRational& c) const;
    bool operator==(const Polynomial& rhs) const = default;

    Polynomial derivative() const;

    // Quotient and remainder of exact rational-coefficient division.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

    // Multiplies by the positive rational that makes the coefficients
    // coprime integers; the sign of the leading coefficient is preserved.
    Polynomial primitive_part() const;

    // All real roots lie strictly inside (-B, B).
    BigRational cauchy_root_bound() const;

    std::string to_string(const std::string& var = "x") const;

  private:
    void trim();
    std::vector<BigRational> coeffs_;
};

// Coefficients c with p(x) = sum c_k (x - x0)^k, exact (Horner / repeated
// synthetic division). c[0] = p(x0), c[1] = p'(x0).
std::vector<BigRational> taylor_shift(const Polynomial& p, const BigRational& x0);

// Inverse of taylor_shift: rebuild p from its coefficients around x0.
Polynomial expand_around(const std::vector<BigRational>& shifted, const BigRational& x0);

struct ExactDivision {
    bool exact = false;
    Polynomial quotient;   // valid when exact
    Polynomial remainder;  // nonzero failure evidence otherwise
};

ExactDivision poly_divide_exact(const Polynomial& num, const Polynomial& divisor);

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

// Product of distinct irreducible factors (p / gcd(p, p')), primitive.
Polynomial squarefree_part(const Polynomial& p);

// Product of the factors of odd multiplicity: the part that carries every
// sign change of p. p = odd_part * (square), up to a positive constant.
Polynomial odd_multiplicity_part(const Polynomial& p);

// Rational roots of p (exact, via the rational root theorem on the
// primitive integer form).
std::vector<BigRational> rational_roots(const Polynomial& p);

}  // namespace tangent
