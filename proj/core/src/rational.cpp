#include "tangent/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace tangent {

BigRational rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

BigRational rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

std::optional<BigRational> parse_rational(std::string_view text) {
    // strip surrounding whitespace
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;

    std::string s(text);
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) return std::nullopt;
        BigInt d(den, 10);
        if (d == 0) return std::nullopt;
        return rational(BigInt(num, 10), d);
    }

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
        if (ip.empty() && fp.empty()) return std::nullopt;
        for (char c : ip + fp)
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        BigInt scaled(ip.empty() ? std::string("0") + fp : ip + fp, 10);
        BigInt den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        BigRational q = rational(scaled, den);
        return neg ? BigRational(-q) : q;
    }

    if (!is_int(s)) return std::nullopt;
    return BigRational(BigInt(s, 10));
}

std::string to_string(const BigRational& q) {
    return q.get_str();
}

double to_double(const BigRational& q) {
    return q.get_d();
}

BigRational exact_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("exact_from_double: non-finite");
    BigRational q(x);
    q.canonicalize();
    return q;
}

BigRational abs(const BigRational& q) {
    return q < 0 ? BigRational(-q) : q;
}

int sign(const BigRational& q) {
    return sgn(q);
}

BigRational pow(const BigRational& q, long e) {
    if (e == 0) return BigRational(1);
    bool inv = e < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    if (inv && q == 0) throw std::domain_error("pow: 0 to negative exponent");
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), k);
    return inv ? rational(den, num) : rational(num, den);
}

std::optional<BigRational> exact_root(const BigRational& q, unsigned long k) {
    if (k == 0) return std::nullopt;
    if (k == 1) return q;
    if (q < 0 && k % 2 == 0) return std::nullopt;
    BigInt num = q.get_num(), den = q.get_den();
    bool neg = num < 0;
    if (neg) num = -num;
    BigInt rn, rd;
    bool exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k) != 0;
    bool exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k) != 0;
    if (!exact_n || !exact_d) return std::nullopt;
    if (neg) rn = -rn;
    return rational(rn, rd);
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigRational floor_to_multiple(const BigRational& q, long denominator) {
    BigRational scaled = q * denominator;
    return rational(floor_div(scaled.get_num(), scaled.get_den()), BigInt(denominator));
}

BigRational ceil_to_multiple(const BigRational& q, long denominator) {
    return -floor_to_multiple(-q, denominator);
}

BigRational simplest_rational_between(const BigRational& lo, const BigRational& hi) {
    if (lo > hi) throw std::invalid_argument("simplest_rational_between: empty interval");
    if (lo == hi) return lo;
    if (lo <= 0 && hi >= 0) return BigRational(0);
    if (hi < 0) return -simplest_rational_between(-hi, -lo);

    // 0 < lo < hi: continued-fraction descent.
    BigInt a = floor_div(lo.get_num(), lo.get_den());
    if (BigRational(a) >= lo) return BigRational(a);  // lo integral
    if (BigRational(a + 1) <= hi) return BigRational(a + 1);
    BigRational flo = lo - a, fhi = hi - a;  // both in (0, 1)
    BigRational inner = simplest_rational_between(rational(fhi.get_den(), fhi.get_num()),
                                                  rational(flo.get_den(), flo.get_num()));
    return BigRational(a) + rational(inner.get_den(), inner.get_num());
}

std::optional<BigRational> reconstruct_rational(double x, double eps, const BigInt& max_den) {
    if (!std::isfinite(x)) return std::nullopt;
    BigRational lo = exact_from_double(x - eps);
    BigRational hi = exact_from_double(x + eps);
    BigRational best = simplest_rational_between(lo, hi);
    if (best.get_den() > max_den) return std::nullopt;
    return best;
}

}  // namespace tangent
