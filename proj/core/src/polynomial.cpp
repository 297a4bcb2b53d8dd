#include "tangent/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tangent {

Polynomial::Polynomial(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

Polynomial::Polynomial(std::initializer_list<BigRational> coeffs) : coeffs_(coeffs) {
    trim();
}

Polynomial Polynomial::constant(const BigRational& c) {
    return c == 0 ? Polynomial() : Polynomial({c});
}

Polynomial Polynomial::monomial(const BigRational& c, std::size_t degree) {
    if (c == 0) return Polynomial();
    std::vector<BigRational> v(degree + 1, BigRational(0));
    v[degree] = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::linear_root(const BigRational& r) {
    return Polynomial({-r, BigRational(1)});
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const BigRational& Polynomial::coeff(std::size_t i) const {
    static const BigRational kZero(0);
    return i < coeffs_.size() ? coeffs_[i] : kZero;
}

const BigRational& Polynomial::leading() const {
    if (coeffs_.empty()) throw std::logic_error("leading() of zero polynomial");
    return coeffs_.back();
}

BigRational Polynomial::operator()(const BigRational& x) const {
    BigRational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Polynomial::eval_double(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

std::pair<BigRational, BigRational> Polynomial::enclose(const BigRational& lo,
                                                        const BigRational& hi) const {
    if (lo > hi) throw std::invalid_argument("enclose: lo > hi");
    BigRational alo(0), ahi(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        // [alo, ahi] * [lo, hi] + c
        BigRational p1 = alo * lo, p2 = alo * hi, p3 = ahi * lo, p4 = ahi * hi;
        alo = std::min(std::min(p1, p2), std::min(p3, p4)) + *it;
        ahi = std::max(std::max(p1, p2), std::max(p3, p4)) + *it;
    }
    return {alo, ahi};
}

Polynomial Polynomial::operator-() const {
    std::vector<BigRational> v(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = -coeffs_[i];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    std::vector<BigRational> v(std::max(coeffs_.size(), rhs.coeffs_.size()), BigRational(0));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + rhs.coeff(i);
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    std::vector<BigRational> v(std::max(coeffs_.size(), rhs.coeffs_.size()), BigRational(0));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) - rhs.coeff(i);
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (is_zero() || rhs.is_zero()) return Polynomial();
    std::vector<BigRational> v(coeffs_.size() + rhs.coeffs_.size() - 1, BigRational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * rhs.coeffs_[j];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const BigRational& c) const {
    if (c == 0) return Polynomial();
    std::vector<BigRational> v(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = coeffs_[i] * c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<BigRational> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * BigRational(static_cast<long>(i));
    return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("divmod: division by zero polynomial");
    Polynomial rem = *this;
    if (rem.degree() < divisor.degree()) return {Polynomial(), rem};
    std::vector<BigRational> q(rem.degree() - divisor.degree() + 1, BigRational(0));
    while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
        long shift = rem.degree() - divisor.degree();
        BigRational factor = rem.leading() / divisor.leading();
        q[shift] = factor;
        rem = rem - divisor * Polynomial::monomial(factor, shift);
    }
    return {Polynomial(std::move(q)), rem};
}

Polynomial Polynomial::primitive_part() const {
    if (is_zero()) return *this;
    BigInt den_lcm(1);
    for (const auto& c : coeffs_) {
        BigInt l;
        mpz_lcm(l.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        den_lcm = l;
    }
    BigInt num_gcd(0);
    std::vector<BigInt> ints(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        BigRational scaled = coeffs_[i] * den_lcm;
        ints[i] = scaled.get_num();
        BigInt g;
        mpz_gcd(g.get_mpz_t(), num_gcd.get_mpz_t(), ints[i].get_mpz_t());
        num_gcd = g;
    }
    std::vector<BigRational> v(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = rational(ints[i], num_gcd);
    return Polynomial(std::move(v));
}

BigRational Polynomial::cauchy_root_bound() const {
    if (is_zero()) return BigRational(1);
    BigRational m(0);
    for (std::size_t i = 0; i + 1 < coeffs_.size(); ++i) {
        BigRational ratio = abs(BigRational(coeffs_[i] / leading()));
        if (ratio > m) m = ratio;
    }
    return BigRational(m + 1);
}

std::string Polynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (long d = degree(); d >= 0; --d) {
        const BigRational& c = coeff(static_cast<std::size_t>(d));
        if (c == 0) continue;
        BigRational a = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool unit = (a == 1);
        if (d == 0) {
            out << tangent::to_string(a);
        } else {
            if (!unit) out << tangent::to_string(a) << "*";
            out << var;
            if (d > 1) out << "^" << d;
        }
    }
    return out.str();
}

std::vector<BigRational> taylor_shift(const Polynomial& p, const BigRational& x0) {
    if (p.is_zero()) return {BigRational(0)};
    std::vector<BigRational> work = p.coeffs();
    std::vector<BigRational> out(work.size(), BigRational(0));
    // repeated synthetic division by (x - x0)
    for (std::size_t k = 0; k < out.size(); ++k) {
        BigRational carry(0);
        for (std::size_t i = work.size(); i-- > k;) {
            work[i] += carry;
            carry = work[i] * x0;
        }
        out[k] = work[k];
        // after extracting remainder at index k, the quotient occupies [k+1, n]
    }
    return out;
}

Polynomial expand_around(const std::vector<BigRational>& shifted, const BigRational& x0) {
    Polynomial base({-x0, BigRational(1)});
    Polynomial acc;
    for (auto it = shifted.rbegin(); it != shifted.rend(); ++it)
        acc = acc * base + Polynomial::constant(*it);
    return acc;
}

ExactDivision poly_divide_exact(const Polynomial& num, const Polynomial& divisor) {
    auto [q, r] = num.divmod(divisor);
    ExactDivision out;
    out.exact = r.is_zero();
    if (out.exact)
        out.quotient = std::move(q);
    else
        out.remainder = std::move(r);
    return out;
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a.primitive_part(), y = b.primitive_part();
    if (x.is_zero()) return y.is_zero() ? y : y * (BigRational(1) / y.leading());
    while (!y.is_zero()) {
        Polynomial r = x.divmod(y).second.primitive_part();
        x = std::move(y);
        y = std::move(r);
    }
    if (x.leading() < 0) x = -x;
    return x;
}

Polynomial squarefree_part(const Polynomial& p) {
    if (p.is_zero()) return p;
    if (p.degree() == 0) return Polynomial::constant(BigRational(sign(p.coeff(0))));
    Polynomial g = poly_gcd(p, p.derivative());
    Polynomial rad = p.divmod(g).first.primitive_part();
    return rad;
}

Polynomial odd_multiplicity_part(const Polynomial& p) {
    if (p.is_zero()) return p;
    if (p.degree() == 0) return Polynomial::constant(BigRational(sign(p.coeff(0))));
    // Yun's squarefree decomposition, keeping the odd-index factors.
    Polynomial a0 = poly_gcd(p, p.derivative());
    Polynomial b = poly_divide_exact(p, a0).quotient;
    Polynomial c = poly_divide_exact(p.derivative(), a0).quotient;
    Polynomial d = c - b.derivative();
    Polynomial odd = Polynomial::constant(BigRational(1));
    int multiplicity = 1;
    while (b.degree() > 0) {
        Polynomial ai = poly_gcd(b, d);
        if (multiplicity % 2 == 1 && ai.degree() > 0) odd = odd * ai;
        b = poly_divide_exact(b, ai).quotient;
        c = poly_divide_exact(d, ai).quotient;
        d = c - b.derivative();
        ++multiplicity;
    }
    odd = odd.primitive_part();
    if (sign(odd.leading()) != sign(p.leading())) odd = -odd;
    return odd;
}

namespace {

std::vector<BigInt> divisors_up_to_limit(BigInt n) {
    std::vector<BigInt> out;
    if (n < 0) n = -n;
    if (n == 0 || n > BigInt(1000000000)) return out;  // caller falls back to brackets
    unsigned long v = n.get_ui();
    for (unsigned long d = 1; d * d <= v; ++d) {
        if (v % d == 0) {
            out.emplace_back(d);
            out.emplace_back(v / d);
        }
    }
    return out;
}

}  // namespace

std::vector<BigRational> rational_roots(const Polynomial& p) {
    std::vector<BigRational> roots;
    if (p.is_zero() || p.degree() == 0) return roots;
    Polynomial q = p.primitive_part();
    // strip x^k
    std::size_t low = 0;
    while (low < q.coeffs().size() && q.coeffs()[low] == 0) ++low;
    if (low > 0) {
        roots.emplace_back(0);
        std::vector<BigRational> v(q.coeffs().begin() + low, q.coeffs().end());
        q = Polynomial(std::move(v));
    }
    if (q.degree() <= 0) return roots;
    auto ps = divisors_up_to_limit(q.coeff(0).get_num());
    auto qs = divisors_up_to_limit(q.leading().get_num());
    for (const auto& pn : ps) {
        for (const auto& qd : qs) {
            BigRational cand = rational(pn, qd);
            for (const BigRational& signed_cand : {cand, BigRational(-cand)}) {
                if (q(signed_cand) == 0 &&
                    std::find(roots.begin(), roots.end(), signed_cand) == roots.end())
                    roots.push_back(signed_cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace tangent
