#include "tangent/verify.hpp"

#include <cmath>
#include <sstream>

#include "tangent/certificate.hpp"
#include "tangent/minimize.hpp"

namespace tangent {

namespace {

struct Checker {
    VerificationReport report;

    bool require(bool condition, const std::string& what) {
        if (condition)
            report.checks.push_back(what);
        else
            report.failures.push_back(what);
        return condition;
    }
};

std::optional<RationalFunction> try_lower(const ExprPtr& e) {
    auto r = lower_to_rational(e);
    if (std::holds_alternative<RationalFunction>(r)) return std::get<RationalFunction>(r);
    return std::nullopt;
}

// sign the difference f - g must carry so the bound points the right way
int expected_required_sign(Direction d) {
    return d == Direction::LowerBound ? +1 : -1;
}

bool verify_sign_certificate_fields(Checker& ck, const SignCertificate& sc, const Polynomial& p,
                                    const std::string& label) {
    bool ok = true;
    if (sc.sample_point) {
        BigRational v = p(*sc.sample_point);
        ok &= ck.require(v == sc.sample_value, label + ": stored sample re-evaluates exactly");
        if (sc.verdict == SignVerdict::NonNegative)
            ok &= ck.require(v >= 0, label + ": sample sign matches NonNegative");
        if (sc.verdict == SignVerdict::NonPositive)
            ok &= ck.require(v <= 0, label + ": sample sign matches NonPositive");
    }
    if (sc.witness_positive)
        ok &= ck.require(p(*sc.witness_positive) > 0, label + ": positive witness re-verifies");
    if (sc.witness_negative)
        ok &= ck.require(p(*sc.witness_negative) < 0, label + ": negative witness re-verifies");
    return ok;
}

// one exact curve record: tangency, factorization reconstruction, fresh sign
// runs over the regions the proof needs (derived by the verifier, never
// trusted from the certificate)
bool verify_curve_record(Checker& ck, const CurveRecord& rec, const ExprPtr& f,
                         Direction direction, const std::vector<Interval>& required_regions,
                         const std::string& label) {
    auto F = try_lower(f);
    if (!ck.require(F.has_value(), label + ": f lowers to a rational function")) return false;
    if (!ck.require(rec.curve.exact(), label + ": curve coefficients are exact")) return false;
    auto G = try_lower(rec.curve.as_expr);
    if (!ck.require(G.has_value(), label + ": curve lowers to a rational function")) return false;
    const BigRational& x0 = rec.curve.x0;
    if (!ck.require(F->defined_at(x0) && G->defined_at(x0), label + ": no pole at x0"))
        return false;

    bool ok = ck.require((*F)(x0) == (*G)(x0), label + ": g(x0) = f(x0)");
    if (*rec.curve.k != 0)
        ok &= ck.require(F->derivative()(x0) == G->derivative()(x0), label + ": g'(x0) = f'(x0)");

    ok &= ck.require(rec.required_sign == expected_required_sign(direction),
                     label + ": required sign matches the direction");

    RationalFunction h = *F - *G;
    Polynomial cofactor;
    Polynomial denominator = h.den();
    if (rec.factorization) {
        Polynomial square = Polynomial::linear_root(rec.factorization->x0) *
                            Polynomial::linear_root(rec.factorization->x0);
        RationalFunction rebuilt(square * rec.factorization->cofactor,
                                 rec.factorization->denominator);
        ok &= ck.require(rebuilt == h,
                         label + ": (x - x0)^2 T / Q reconstructs f - g exactly");
        cofactor = rec.factorization->cofactor;
        denominator = rec.factorization->denominator;
    } else {
        cofactor = h.num();
    }

    // denominator: pole-free and one-signed over every required region
    int qsign = 0;
    for (const auto& region : required_regions) {
        ok &= ck.require(denominator.degree() <= 0 || count_real_roots(denominator, region) == 0,
                         label + ": denominator root-free on " + region.to_string());
        SignCertificate dsc = certify_sign(denominator, region);
        int s = dsc.verdict == SignVerdict::NonNegative ? +1 : -1;
        if (qsign == 0) qsign = s;
        ok &= ck.require(s == qsign, label + ": denominator keeps one sign across regions");
    }
    if (rec.denominator_sign)
        verify_sign_certificate_fields(ck, *rec.denominator_sign, denominator,
                                       label + " denominator");

    SignVerdict needed = rec.required_sign * qsign > 0 ? SignVerdict::NonNegative
                                                       : SignVerdict::NonPositive;
    for (const auto& region : required_regions) {
        SignCertificate fresh = certify_sign(cofactor, region);
        bool fine = fresh.verdict == needed ||
                    (cofactor.is_zero() && needed == SignVerdict::NonPositive);
        ok &= ck.require(fine, label + ": fresh Sturm run keeps T " +
                                    std::string(needed == SignVerdict::NonNegative ? ">= 0"
                                                                                   : "<= 0") +
                                    " on " + region.to_string());
    }
    if (rec.cofactor_sign)
        ok &= verify_sign_certificate_fields(ck, *rec.cofactor_sign, cofactor, label + " cofactor");
    return ok;
}

bool budget_matches(const ConstraintSpec& c, const BigRational& x0) {
    switch (c.family) {
        case ConstraintFamily::Sum: return BigRational(x0 * c.n) == c.budget;
        case ConstraintFamily::PowerSum: {
            if (x0 <= 0) return false;
            return pow(x0, c.alpha.get_num().get_si()) ==
                   pow(c.budget / c.n, c.alpha.get_den().get_si());
        }
        case ConstraintFamily::Product: return x0 > 0 && pow(x0, c.n) == c.budget;
        default: {
            auto lf = try_lower(c.l);
            return lf && lf->defined_at(x0) && BigRational((*lf)(x0) * c.n) == c.budget;
        }
    }
}

}  // namespace

VerificationReport verify_certificate(const nlohmann::json& cert_json) {
    Checker ck;
    ProofCertificate cert;
    try {
        cert = certificate_from_json(cert_json);
    } catch (const std::exception& e) {
        ck.report.failures.push_back(std::string("certificate does not parse: ") + e.what());
        return ck.report;
    }
    const ProblemSpec& p = cert.problem;
    const bool upper = p.direction == Direction::UpperBound;

    try {
        switch (cert.route) {
            case Route::Failure:
                ck.report.failures.push_back("a Failure certificate proves nothing");
                return ck.report;

            case Route::Theorem1: {
                if (!ck.require(cert.curves.size() == 1, "exactly one curve record")) break;
                verify_curve_record(ck, cert.curves[0], p.f(), p.direction, {p.domain}, "curve");
                auto F = try_lower(p.f());
                if (F && cert.conclusion.n_f_x0) {
                    const BigRational& x0 = cert.curves[0].curve.x0;
                    if (budget_matches(p.constraint, x0)) {
                        ck.require(BigRational((*F)(x0) * p.n) == *cert.conclusion.n_f_x0,
                                   "conclusion equals n * f(x0)");
                    } else {
                        BigRational fallback =
                            BigRational(*cert.curves[0].curve.k * p.constraint.budget) +
                            BigRational(*cert.curves[0].curve.m * p.n);
                        ck.require(fallback == *cert.conclusion.n_f_x0,
                                   "conclusion equals k B + n m for the overridden touch point");
                        ck.require(cert.curves[0].summation == SummationRule::DirectL,
                                   "overridden touch points only sum through the direct rule");
                    }
                }
                break;
            }

            case Route::Theorem2Split: {
                if (!ck.require(cert.curves.size() == 1, "exactly one curve record")) break;
                if (!ck.require(cert.split.has_value(), "split data present")) break;
                const SplitData& split = *cert.split;
                ck.require(p.domain.contains(split.carved), "G lies inside the domain");
                ck.require(!split.carved.contains(cert.curves[0].curve.x0),
                           "x0 lies in I minus G");
                // the tangent bound must cover I minus G, derived here rather
                // than trusted from the certificate
                std::vector<Interval> remainder;
                if (split.carved.hi == p.domain.hi && split.carved.lo) {
                    remainder.push_back(
                        Interval{p.domain.lo, *split.carved.lo, p.domain.lo_open, false});
                } else if (split.carved.lo == p.domain.lo && split.carved.hi) {
                    remainder.push_back(
                        Interval{*split.carved.hi, p.domain.hi, false, p.domain.hi_open});
                } else if (split.carved.lo && split.carved.hi) {
                    remainder.push_back(
                        Interval{p.domain.lo, *split.carved.lo, p.domain.lo_open, false});
                    remainder.push_back(
                        Interval{*split.carved.hi, p.domain.hi, false, p.domain.hi_open});
                }
                ck.require(!remainder.empty(), "I minus G is derivable");
                verify_curve_record(ck, cert.curves[0], p.f(), p.direction, remainder, "curve");
                ck.require(budget_matches(p.constraint, cert.curves[0].curve.x0),
                           "touch point is consistent with the budget");

                auto F = try_lower(p.f());
                if (F) {
                    // recompute the certified extrema (maxima verify through -f)
                    RationalFunction base = split.extrema_are_minima ? *F : -*F;
                    MinReport g_report = certified_min(base, split.carved);
                    MinReport i_report = certified_min(base, p.domain);
                    BigRational g_value =
                        split.extrema_are_minima ? g_report.value : BigRational(-g_report.value);
                    BigRational i_value =
                        split.extrema_are_minima ? i_report.value : BigRational(-i_report.value);
                    ck.require(g_value == split.extremum_G.value,
                               "extremum over G recomputes to the stored value");
                    ck.require(i_value == split.extremum_I.value,
                               "extremum over I recomputes to the stored value");
                    BigRational n_f_x0 = BigRational((*F)(cert.curves[0].curve.x0) * p.n);
                    ck.require(n_f_x0 == split.n_f_x0, "n * f(x0) recomputes to the stored value");
                    BigRational lhs = split.extremum_G.value + split.extremum_I.value * (p.n - 1);
                    if (split.extrema_are_minima)
                        ck.require(lhs >= split.n_f_x0,
                                   "min_G f + (n-1) min_I f >= n f(x0) holds");
                    else
                        ck.require(lhs <= split.n_f_x0,
                                   "max_G f + (n-1) max_I f <= n f(x0) holds");
                    if (cert.conclusion.n_f_x0)
                        ck.require(*cert.conclusion.n_f_x0 == split.n_f_x0,
                                   "conclusion equals n * f(x0)");
                }
                break;
            }

            case Route::Theorem5Cubic: {
                if (!ck.require(cert.cubic.has_value(), "cubic data present")) break;
                const Theorem5Data& cubic = *cert.cubic;
                // the cubic stays in the internal (>= after negation) form
                auto F = try_lower(p.f());
                if (F && F->is_polynomial() && F->num().degree() == 3) {
                    BigRational den = F->den().coeff(0);
                    BigRational expect_a = F->num().coeff(3) / den;
                    if (upper) expect_a = -expect_a;
                    ck.require(expect_a == cubic.a, "cubic leading coefficient matches f");
                }
                ck.require(cubic.endpoint_low == BigRational(cubic.a * cubic.x0 * 2 + cubic.b),
                           "endpoint value 2 a x0 + b recomputes");
                ck.require(cubic.endpoint_high ==
                               BigRational(cubic.a * cubic.x0 * (cubic.n + 2) + cubic.b),
                           "endpoint value (n+2) a x0 + b recomputes");
                if (!cubic.trivial_n1) {
                    ck.require(cubic.endpoint_low >= 0, "2 a x0 + b >= 0");
                    ck.require(cubic.endpoint_high >= 0, "(n+2) a x0 + b >= 0");
                    Polynomial P({cubic.d, cubic.c, cubic.b, cubic.a});
                    Polynomial linear({BigRational(cubic.a * cubic.x0 * 2 + cubic.b), cubic.a});
                    Polynomial square = Polynomial::linear_root(cubic.x0) *
                                        Polynomial::linear_root(cubic.x0);
                    Polynomial tangent({BigRational(P(cubic.x0) -
                                                    P.derivative()(cubic.x0) * cubic.x0),
                                        P.derivative()(cubic.x0)});
                    ck.require(P - tangent == square * linear,
                               "P - tangent reconstructs as (x - x0)^2 (a x + 2 a x0 + b)");
                }
                Polynomial P({cubic.d, cubic.c, cubic.b, cubic.a});
                BigRational value = P(cubic.x0) * cubic.n;
                if (upper) value = -value;
                if (cert.conclusion.n_f_x0)
                    ck.require(*cert.conclusion.n_f_x0 == value, "conclusion equals n * f(x0)");
                break;
            }

            case Route::Case2Heterogeneous: {
                if (!ck.require(cert.curves.size() == p.functions.size(),
                                "one curve record per function"))
                    break;
                if (!ck.require(cert.touch_points.has_value() &&
                                    cert.touch_points->size() == p.functions.size(),
                                "touch points present"))
                    break;
                std::optional<BigRational> slope;
                BigRational m_total(0);
                BigRational f_total(0);
                ExprPtr l = constraint_l(p.constraint);
                BigRational l_total(0);
                bool sums_ok = true;
                for (std::size_t j = 0; j < cert.curves.size(); ++j) {
                    std::string label = "curve " + std::to_string(j + 1);
                    verify_curve_record(ck, cert.curves[j], p.functions[j], p.direction,
                                        {p.domain}, label);
                    ck.require((*cert.touch_points)[j] == cert.curves[j].curve.x0,
                               label + ": touch point matches the curve");
                    if (!slope)
                        slope = *cert.curves[j].curve.k;
                    else
                        ck.require(*slope == *cert.curves[j].curve.k,
                                   label + ": shares the common slope");
                    m_total += *cert.curves[j].curve.m;
                    auto F = try_lower(p.functions[j]);
                    if (F) f_total += (*F)((*cert.touch_points)[j]);
                    auto lv = eval_exact(l, (*cert.touch_points)[j]);
                    if (lv)
                        l_total += *lv;
                    else
                        sums_ok = false;
                }
                ck.require(sums_ok && l_total == p.constraint.budget,
                           "sum l(x_j) equals the budget exactly");
                if (slope && cert.conclusion.n_f_x0) {
                    BigRational value = *slope * p.constraint.budget + m_total;
                    ck.require(value == *cert.conclusion.n_f_x0,
                               "conclusion equals k B + sum m");
                    ck.require(f_total == *cert.conclusion.n_f_x0,
                               "conclusion equals sum f_j(x_j)");
                }
                break;
            }

            case Route::NumericEvidenceOnly: {
                bool any_selected = false;
                for (const auto& ev : cert.evidence) {
                    if (!ev.selected) continue;
                    any_selected = true;
                    std::size_t index = static_cast<std::size_t>(&ev - cert.evidence.data());
                    if (p.functions.size() > 1 && index >= p.functions.size()) {
                        ck.require(false, "evidence entries do not align with the functions");
                        break;
                    }
                    const ExprPtr& f = p.functions.size() == 1 ? p.f() : p.functions[index];
                    // numeric tangency at x0
                    double x0 = to_double(ev.curve.x0);
                    double fv = eval_numeric(f, x0);
                    double gv = eval_numeric(ev.curve.as_expr, x0);
                    ck.require(std::fabs(fv - gv) <= 1e-9 * (1 + std::fabs(fv)),
                               "selected curve touches f at x0 numerically");
                    // re-run the recorded grid
                    ExprPtr lhs = upper ? ev.curve.as_expr : f;
                    ExprPtr rhs = upper ? f : ev.curve.as_expr;
                    EvidenceReport fresh = numeric_evidence(lhs, rhs, p.domain,
                                                            ev.report.grid_points, ev.report.tol);
                    ck.require(fresh.holds(), "selected curve still holds on a fresh grid");
                    ck.require(ev.report.flag == "evidence, not certificate",
                               "evidence is flagged as evidence");
                }
                ck.require(any_selected, "a selected evidence record exists");
                break;
            }
        }

        // the settled-bound claim
        if (cert.route != Route::Failure && cert.conclusion.bound) {
            const BigRational& claimed = *cert.conclusion.bound;
            bool settle;
            if (cert.exact() && cert.conclusion.n_f_x0)
                settle = upper ? *cert.conclusion.n_f_x0 <= claimed
                               : *cert.conclusion.n_f_x0 >= claimed;
            else
                settle = upper
                             ? cert.conclusion.n_f_x0_numeric <= to_double(claimed) + cert.numeric_tol
                             : cert.conclusion.n_f_x0_numeric >= to_double(claimed) - cert.numeric_tol;
            ck.require(settle == cert.conclusion.holds, "stored 'holds' flag matches re-derivation");
        }
    } catch (const std::exception& e) {
        ck.report.failures.push_back(std::string("verification aborted: ") + e.what());
    }

    ck.report.valid = ck.report.failures.empty();
    return ck.report;
}

}  // namespace tangent
