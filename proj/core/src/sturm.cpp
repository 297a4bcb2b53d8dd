#include "tangent/sturm.hpp"

#include <algorithm>
#include <stdexcept>

namespace tangent {

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("sturm_chain: zero polynomial");
    Polynomial s = squarefree_part(p);
    std::vector<Polynomial> chain;
    chain.push_back(s);
    if (s.degree() <= 0) return chain;
    chain.push_back(s.derivative().primitive_part());
    while (chain.back().degree() > 0) {
        const Polynomial& a = chain[chain.size() - 2];
        const Polynomial& b = chain.back();
        Polynomial r = a.divmod(b).second;
        if (r.is_zero()) break;  // cannot happen for a square-free s
        chain.push_back((-r).primitive_part());
    }
    return chain;
}

int sign_variations(const std::vector<Polynomial>& chain, const BigRational& x) {
    int variations = 0, prev = 0;
    for (const Polynomial& q : chain) {
        int s = q.is_zero() ? 0 : sign(q(x));
        if (s != 0) {
            if (prev != 0 && s != prev) ++variations;
            prev = s;
        }
    }
    return variations;
}

namespace {

struct PreparedInterval {
    Polynomial s;   // square-free, divided by endpoint roots
    BigRational a, b;
    int boundary_roots = 0;  // roots at closed endpoints
    bool empty = false;
    bool point = false;
};

// Square-free reduction plus endpoint normalization shared by the counting
// and isolation routines.
PreparedInterval prepare(const Polynomial& p, const Interval& iv) {
    if (p.is_zero()) throw std::invalid_argument("count_real_roots: zero polynomial");
    validate(iv);
    PreparedInterval out;
    out.s = squarefree_part(p);
    if (out.s.degree() <= 0) {
        out.empty = true;
        return out;
    }
    if (iv.is_point()) {
        out.point = true;
        out.a = out.b = *iv.lo;
        out.boundary_roots = (out.s(*iv.lo) == 0) ? 1 : 0;
        return out;
    }
    BigRational bound = out.s.cauchy_root_bound() + 1;
    out.a = iv.lo ? *iv.lo : -bound;
    out.b = iv.hi ? *iv.hi : bound;
    if (out.a >= out.b) {
        // roots all lie inside (-bound, bound): an interval beyond the bound
        // on one side holds none
        out.empty = true;
        return out;
    }
    if (iv.lo && out.s(out.a) == 0) {
        if (!iv.lo_open) ++out.boundary_roots;
        out.s = out.s.divmod(Polynomial::linear_root(out.a)).first;
    }
    if (iv.hi && out.s(out.b) == 0) {
        if (!iv.hi_open) ++out.boundary_roots;
        out.s = out.s.divmod(Polynomial::linear_root(out.b)).first;
    }
    if (out.s.degree() <= 0) out.empty = true;
    return out;
}

std::vector<Polynomial> chain_of_squarefree(const Polynomial& s) {
    std::vector<Polynomial> chain;
    chain.push_back(s);
    if (s.degree() <= 0) return chain;
    chain.push_back(s.derivative().primitive_part());
    while (chain.back().degree() > 0) {
        Polynomial r = chain[chain.size() - 2].divmod(chain.back()).second;
        if (r.is_zero()) break;
        chain.push_back((-r).primitive_part());
    }
    return chain;
}

void isolate_recursive(const Polynomial& s, const std::vector<Polynomial>& chain,
                       const BigRational& a, int va, const BigRational& b, int vb,
                       std::vector<RootBracket>& out) {
    int count = va - vb;
    if (count <= 0) return;
    if (count == 1) {
        RootBracket bracket;
        bracket.lo = a;
        bracket.hi = b;
        out.push_back(bracket);
        return;
    }
    BigRational mid = (a + b) / 2;
    if (s(mid) == 0) {
        // exact hit: record and isolate the two open sides against s/(x-mid)
        Polynomial reduced = s.divmod(Polynomial::linear_root(mid)).first;
        RootBracket exact;
        exact.exact = true;
        exact.point = mid;
        std::vector<RootBracket> left, right;
        if (reduced.degree() > 0) {
            auto rchain = chain_of_squarefree(reduced);
            isolate_recursive(reduced, rchain, a, sign_variations(rchain, a), mid,
                              sign_variations(rchain, mid), left);
            isolate_recursive(reduced, rchain, mid, sign_variations(rchain, mid), b,
                              sign_variations(rchain, b), right);
        }
        out.insert(out.end(), left.begin(), left.end());
        out.push_back(exact);
        out.insert(out.end(), right.begin(), right.end());
        return;
    }
    int vm = sign_variations(chain, mid);
    isolate_recursive(s, chain, a, va, mid, vm, out);
    isolate_recursive(s, chain, mid, vm, b, vb, out);
}

}  // namespace

int count_real_roots(const Polynomial& p, const Interval& iv) {
    PreparedInterval prep = prepare(p, iv);
    if (prep.point || prep.empty) return prep.boundary_roots;
    auto chain = chain_of_squarefree(prep.s);
    int interior = sign_variations(chain, prep.a) - sign_variations(chain, prep.b);
    return interior + prep.boundary_roots;
}

std::vector<RootBracket> isolate_roots(const Polynomial& p, const Interval& iv) {
    PreparedInterval prep = prepare(p, iv);
    std::vector<RootBracket> out;
    auto push_exact = [&out](const BigRational& x) {
        RootBracket b;
        b.exact = true;
        b.point = x;
        out.push_back(b);
    };
    if (prep.point) {
        if (prep.boundary_roots > 0) push_exact(prep.a);
        return out;
    }
    // closed-endpoint roots first (divided out by prepare)
    Polynomial s0 = squarefree_part(p);
    bool lo_root = iv.lo && !iv.lo_open && s0(*iv.lo) == 0;
    bool hi_root = iv.hi && !iv.hi_open && s0(*iv.hi) == 0;
    if (lo_root) push_exact(*iv.lo);
    if (!prep.empty) {
        auto chain = chain_of_squarefree(prep.s);
        isolate_recursive(prep.s, chain, prep.a, sign_variations(chain, prep.a), prep.b,
                          sign_variations(chain, prep.b), out);
    }
    if (hi_root) push_exact(*iv.hi);
    return out;
}

void refine_bracket(const Polynomial& squarefree, RootBracket& bracket, const BigRational& width) {
    if (bracket.exact) return;
    int sign_lo = sign(squarefree(bracket.lo));
    if (sign_lo == 0) {
        bracket.exact = true;
        bracket.point = bracket.lo;
        return;
    }
    while (bracket.hi - bracket.lo > width) {
        BigRational mid = (bracket.lo + bracket.hi) / 2;
        int sm = sign(squarefree(mid));
        if (sm == 0) {
            bracket.exact = true;
            bracket.point = mid;
            return;
        }
        if (sm == sign_lo)
            bracket.lo = mid;
        else
            bracket.hi = mid;
    }
}

std::string to_string(SignVerdict v) {
    switch (v) {
        case SignVerdict::NonNegative: return "NonNegative";
        case SignVerdict::NonPositive: return "NonPositive";
        default: return "Indefinite";
    }
}

namespace {

// An interior rational point of iv where p does not vanish; p has finitely
// many roots, so probing a spread of interior points succeeds.
std::optional<BigRational> strict_interior_sample(const Polynomial& p, const Interval& iv) {
    BigRational bound = p.cauchy_root_bound() + 1;
    BigRational a = iv.lo ? *iv.lo : -bound;
    BigRational b = iv.hi ? *iv.hi : bound;
    if (!iv.lo && a >= b) a = b - 1;
    if (!iv.hi && b <= a) b = a + 1;
    if (a >= b) return std::nullopt;
    long degree_guard = std::max(p.degree(), 1L) + 2;
    BigRational span = b - a;
    for (long k = 1; k <= degree_guard + 1; ++k) {
        // distinct interior points a + span/(prime-ish denominators)
        BigRational t = a + span * rational(1, 2 * k + 1);
        if (p(t) != 0) return t;
    }
    return std::nullopt;
}

}  // namespace

SignCertificate certify_sign(const Polynomial& p, const Interval& iv) {
    validate(iv);
    SignCertificate cert;
    if (p.is_zero()) {
        // identically zero: vacuously nonnegative (and nonpositive)
        cert.verdict = SignVerdict::NonNegative;
        cert.sample_point = iv.lo ? *iv.lo + 1 : BigRational(0);
        cert.sample_value = BigRational(0);
        return cert;
    }
    if (iv.is_point()) {
        BigRational v = p(*iv.lo);
        cert.verdict = v >= 0 ? SignVerdict::NonNegative : SignVerdict::NonPositive;
        cert.sample_point = *iv.lo;
        cert.sample_value = v;
        if (v == 0) {
            cert.root_count = 1;
            RootBracket b;
            b.exact = true;
            b.point = *iv.lo;
            cert.root_brackets.push_back(b);
        }
        return cert;
    }

    cert.root_count = count_real_roots(p, iv);
    cert.root_brackets = isolate_roots(p, iv);

    Polynomial odd = odd_multiplicity_part(p);
    int interior_changes = odd.degree() > 0 ? count_real_roots(odd, iv.interior()) : 0;

    if (interior_changes == 0) {
        auto sample = strict_interior_sample(p, iv);
        if (!sample) throw std::logic_error("certify_sign: no strict sample found");
        BigRational v = p(*sample);
        cert.verdict = v > 0 ? SignVerdict::NonNegative : SignVerdict::NonPositive;
        cert.sample_point = *sample;
        cert.sample_value = v;
        return cert;
    }

    // a sign change strictly inside: isolate one and extract strict witnesses
    cert.verdict = SignVerdict::Indefinite;
    auto brackets = isolate_roots(odd, iv.interior());
    if (brackets.empty()) throw std::logic_error("certify_sign: lost interior sign change");
    RootBracket crossing = brackets.front();
    Polynomial odd_sf = squarefree_part(odd);
    if (crossing.exact) {
        // expand to a strict two-sided bracket inside iv
        BigRational lo_limit = crossing.point - 1;
        BigRational hi_limit = crossing.point + 1;
        if (iv.lo && *iv.lo > lo_limit) lo_limit = *iv.lo;
        if (iv.hi && *iv.hi < hi_limit) hi_limit = *iv.hi;
        crossing.exact = false;
        crossing.lo = (crossing.point + lo_limit) / 2;
        crossing.hi = (crossing.point + hi_limit) / 2;
        // other roots may sit inside; shrink until this is the only one
        while (count_real_roots(odd_sf, Interval::open(crossing.lo, crossing.hi)) > 1 ||
               odd_sf(crossing.lo) == 0 || odd_sf(crossing.hi) == 0) {
            crossing.lo = (crossing.lo + crossing.point) / 2;
            crossing.hi = (crossing.hi + crossing.point) / 2;
        }
    }
    // shrink until both ends lie inside iv and p is strictly signed (and
    // opposite) there
    BigRational width = crossing.hi - crossing.lo;
    for (int iter = 0; iter < 256; ++iter) {
        BigRational pl = p(crossing.lo), ph = p(crossing.hi);
        if (iv.contains(crossing.lo) && iv.contains(crossing.hi) && pl != 0 && ph != 0 &&
            sign(pl) != sign(ph)) {
            const bool lo_positive = pl > 0;
            cert.witness_positive = lo_positive ? crossing.lo : crossing.hi;
            cert.witness_positive_value = lo_positive ? pl : ph;
            cert.witness_negative = lo_positive ? crossing.hi : crossing.lo;
            cert.witness_negative_value = lo_positive ? ph : pl;
            return cert;
        }
        width = width / 3;
        refine_bracket(odd_sf, crossing, width);
        if (crossing.exact) {
            // nudge back to an open bracket around the exact crossing
            BigRational r = crossing.point;
            crossing.exact = false;
            crossing.lo = r - width / 2;
            crossing.hi = r + width / 2;
            if (iv.lo && crossing.lo <= *iv.lo) crossing.lo = (r + *iv.lo) / 2;
            if (iv.hi && crossing.hi >= *iv.hi) crossing.hi = (r + *iv.hi) / 2;
        }
    }
    throw std::logic_error("certify_sign: failed to extract strict witnesses");
}

}  // namespace tangent
