#include "tangent/certificate.hpp"

#include <sstream>

namespace tangent {

namespace {

using nlohmann::json;

json rational_json(const BigRational& q) {
    return to_string(q);
}

BigRational rational_from(const json& j) {
    auto q = parse_rational(j.get<std::string>());
    if (!q) throw std::invalid_argument("certificate: bad rational '" + j.get<std::string>() + "'");
    return *q;
}

json poly_json(const Polynomial& p) {
    json arr = json::array();
    for (const auto& c : p.coeffs()) arr.push_back(rational_json(c));
    return arr;
}

Polynomial poly_from(const json& j) {
    std::vector<BigRational> coeffs;
    for (const auto& c : j) coeffs.push_back(rational_from(c));
    return Polynomial(std::move(coeffs));
}

json interval_json(const Interval& iv) {
    return iv.to_string();
}

Interval interval_from(const json& j) {
    auto iv = parse_interval(j.get<std::string>());
    if (!iv) throw std::invalid_argument("certificate: bad interval '" + j.get<std::string>() + "'");
    return *iv;
}

json bracket_json(const RootBracket& b) {
    json j;
    j["exact"] = b.exact;
    if (b.exact)
        j["point"] = rational_json(b.point);
    else {
        j["lo"] = rational_json(b.lo);
        j["hi"] = rational_json(b.hi);
    }
    return j;
}

RootBracket bracket_from(const json& j) {
    RootBracket b;
    b.exact = j.at("exact").get<bool>();
    if (b.exact)
        b.point = rational_from(j.at("point"));
    else {
        b.lo = rational_from(j.at("lo"));
        b.hi = rational_from(j.at("hi"));
    }
    return b;
}

json sign_cert_json(const SignCertificate& sc) {
    json j;
    j["verdict"] = to_string(sc.verdict);
    if (sc.sample_point) {
        j["sample_point"] = rational_json(*sc.sample_point);
        j["sample_value"] = rational_json(sc.sample_value);
    }
    if (sc.witness_positive) {
        j["witness_positive"] = rational_json(*sc.witness_positive);
        j["witness_positive_value"] = rational_json(sc.witness_positive_value);
    }
    if (sc.witness_negative) {
        j["witness_negative"] = rational_json(*sc.witness_negative);
        j["witness_negative_value"] = rational_json(sc.witness_negative_value);
    }
    j["root_count"] = sc.root_count;
    json brackets = json::array();
    for (const auto& b : sc.root_brackets) brackets.push_back(bracket_json(b));
    j["root_brackets"] = brackets;
    return j;
}

SignCertificate sign_cert_from(const json& j) {
    SignCertificate sc;
    std::string v = j.at("verdict").get<std::string>();
    sc.verdict = v == "NonNegative" ? SignVerdict::NonNegative
                 : v == "NonPositive" ? SignVerdict::NonPositive
                                      : SignVerdict::Indefinite;
    if (j.contains("sample_point")) {
        sc.sample_point = rational_from(j.at("sample_point"));
        sc.sample_value = rational_from(j.at("sample_value"));
    }
    if (j.contains("witness_positive")) {
        sc.witness_positive = rational_from(j.at("witness_positive"));
        sc.witness_positive_value = rational_from(j.at("witness_positive_value"));
    }
    if (j.contains("witness_negative")) {
        sc.witness_negative = rational_from(j.at("witness_negative"));
        sc.witness_negative_value = rational_from(j.at("witness_negative_value"));
    }
    sc.root_count = j.at("root_count").get<int>();
    for (const auto& b : j.at("root_brackets")) sc.root_brackets.push_back(bracket_from(b));
    return sc;
}

json constraint_json(const ConstraintSpec& c) {
    json j;
    j["family"] = c.family_name();
    if (c.family == ConstraintFamily::PowerSum) j["alpha"] = rational_json(c.alpha);
    if (c.family == ConstraintFamily::CustomMean) j["l"] = print_expr(c.l);
    j["budget"] = rational_json(c.budget);
    j["n"] = c.n;
    return j;
}

ConstraintSpec constraint_from(const json& j) {
    ConstraintSpec c;
    std::string family = j.at("family").get<std::string>();
    if (family == "sum")
        c.family = ConstraintFamily::Sum;
    else if (family == "power_sum")
        c.family = ConstraintFamily::PowerSum;
    else if (family == "product")
        c.family = ConstraintFamily::Product;
    else
        c.family = ConstraintFamily::CustomMean;
    if (j.contains("alpha")) c.alpha = rational_from(j.at("alpha"));
    if (j.contains("l")) c.l = parse_expr(j.at("l").get<std::string>());
    c.budget = rational_from(j.at("budget"));
    c.n = j.at("n").get<int>();
    return c;
}

json problem_json(const ProblemSpec& p) {
    json j;
    j["id"] = p.id;
    json fns = json::array();
    for (const auto& f : p.functions) fns.push_back(print_expr(f));
    j["functions"] = fns;
    j["n"] = p.n;
    j["constraint"] = constraint_json(p.constraint);
    j["domain"] = interval_json(p.domain);
    j["direction"] = to_string(p.direction);
    j["bound"] = print_expr(p.bound);
    if (p.touch_point) j["touch_point"] = rational_json(*p.touch_point);
    if (p.homogeneous_degree) j["homogeneous_degree"] = rational_json(*p.homogeneous_degree);
    if (p.normalize_budget) j["normalize_budget"] = rational_json(*p.normalize_budget);
    if (p.curve_override) {
        json o;
        o["family"] = to_string(p.curve_override->family);
        o["alpha"] = rational_json(p.curve_override->alpha);
        j["curve_override"] = o;
    }
    return j;
}

ProblemSpec problem_from(const json& j) {
    ProblemSpec p;
    p.id = j.at("id").get<std::string>();
    for (const auto& f : j.at("functions")) p.functions.push_back(parse_expr(f.get<std::string>()));
    p.n = j.at("n").get<int>();
    p.constraint = constraint_from(j.at("constraint"));
    p.domain = interval_from(j.at("domain"));
    p.direction =
        j.at("direction").get<std::string>() == "le" ? Direction::UpperBound : Direction::LowerBound;
    p.bound = parse_expr(j.at("bound").get<std::string>());
    if (j.contains("touch_point")) p.touch_point = rational_from(j.at("touch_point"));
    if (j.contains("homogeneous_degree"))
        p.homogeneous_degree = rational_from(j.at("homogeneous_degree"));
    if (j.contains("normalize_budget")) p.normalize_budget = rational_from(j.at("normalize_budget"));
    if (j.contains("curve_override")) {
        ProblemSpec::CurveOverride o;
        std::string fam = j.at("curve_override").at("family").get<std::string>();
        o.family = fam == "line" ? CurveFamily::Line
                   : fam == "power" ? CurveFamily::PowerCurve
                   : fam == "log" ? CurveFamily::LogCurve
                                  : CurveFamily::CustomCurve;
        o.alpha = rational_from(j.at("curve_override").at("alpha"));
        p.curve_override = o;
    }
    return p;
}

json curve_json(const BaseCurve& c) {
    json j;
    j["family"] = to_string(c.family);
    if (c.family == CurveFamily::PowerCurve) j["alpha"] = rational_json(c.alpha);
    j["l"] = print_expr(c.l);
    j["k"] = c.k ? json(rational_json(*c.k)) : json(nullptr);
    j["m"] = c.m ? json(rational_json(*c.m)) : json(nullptr);
    j["k_sym"] = print_expr(c.k_sym);
    j["m_sym"] = print_expr(c.m_sym);
    j["x0"] = rational_json(c.x0);
    j["as_expr"] = print_expr(c.as_expr);
    return j;
}

BaseCurve curve_from(const json& j) {
    BaseCurve c;
    std::string fam = j.at("family").get<std::string>();
    c.family = fam == "line" ? CurveFamily::Line
               : fam == "power" ? CurveFamily::PowerCurve
               : fam == "log" ? CurveFamily::LogCurve
                              : CurveFamily::CustomCurve;
    if (j.contains("alpha")) c.alpha = rational_from(j.at("alpha"));
    c.l = parse_expr(j.at("l").get<std::string>());
    if (!j.at("k").is_null()) c.k = rational_from(j.at("k"));
    if (!j.at("m").is_null()) c.m = rational_from(j.at("m"));
    c.k_sym = parse_expr(j.at("k_sym").get<std::string>());
    c.m_sym = parse_expr(j.at("m_sym").get<std::string>());
    c.x0 = rational_from(j.at("x0"));
    c.as_expr = parse_expr(j.at("as_expr").get<std::string>());
    return c;
}

json curve_record_json(const CurveRecord& r) {
    json j = curve_json(r.curve);
    j["summation"] = to_string(r.summation);
    j["note"] = r.note;
    j["required_sign"] = r.required_sign;
    if (r.factorization) {
        json f;
        f["x0"] = rational_json(r.factorization->x0);
        f["T_coeffs"] = poly_json(r.factorization->cofactor);
        f["Q_coeffs"] = poly_json(r.factorization->denominator);
        j["factorization"] = f;
    }
    if (r.cofactor_sign) j["cofactor_sign"] = sign_cert_json(*r.cofactor_sign);
    if (r.denominator_sign) j["denominator_sign"] = sign_cert_json(*r.denominator_sign);
    json regions = json::array();
    for (const auto& region : r.certified_regions) regions.push_back(interval_json(region));
    j["certified_regions"] = regions;
    return j;
}

CurveRecord curve_record_from(const json& j) {
    CurveRecord r;
    r.curve = curve_from(j);
    std::string s = j.at("summation").get<std::string>();
    r.summation = s == "direct" ? SummationRule::DirectL
                  : s == "power_mean_theorem3" ? SummationRule::PowerMeanTheorem3
                                               : SummationRule::PowerMeanTheorem4;
    r.note = j.at("note").get<std::string>();
    r.required_sign = j.at("required_sign").get<int>();
    if (j.contains("factorization")) {
        Factorization f;
        f.x0 = rational_from(j.at("factorization").at("x0"));
        f.cofactor = poly_from(j.at("factorization").at("T_coeffs"));
        f.denominator = poly_from(j.at("factorization").at("Q_coeffs"));
        r.factorization = f;
    }
    if (j.contains("cofactor_sign")) r.cofactor_sign = sign_cert_from(j.at("cofactor_sign"));
    if (j.contains("denominator_sign"))
        r.denominator_sign = sign_cert_from(j.at("denominator_sign"));
    for (const auto& region : j.at("certified_regions"))
        r.certified_regions.push_back(interval_from(region));
    return r;
}

json min_report_json(const MinReport& m) {
    json j;
    j["value"] = rational_json(m.value);
    j["exact"] = m.exact;
    if (m.argmin) j["arg"] = rational_json(*m.argmin);
    if (m.argmin_bracket) j["arg_bracket"] = bracket_json(*m.argmin_bracket);
    return j;
}

MinReport min_report_from(const json& j) {
    MinReport m;
    m.value = rational_from(j.at("value"));
    m.exact = j.at("exact").get<bool>();
    if (j.contains("arg")) m.argmin = rational_from(j.at("arg"));
    if (j.contains("arg_bracket")) m.argmin_bracket = bracket_from(j.at("arg_bracket"));
    return m;
}

json evidence_json(const EvidenceRecord& e) {
    json j;
    j["curve"] = curve_json(e.curve);
    j["summation"] = to_string(e.summation);
    j["note"] = e.note;
    j["verdict"] = to_string(e.report.verdict);
    j["min_gap"] = e.report.min_gap;
    j["argmin"] = e.report.argmin;
    if (e.report.witness) {
        j["witness"] = *e.report.witness;
        j["witness_value"] = e.report.witness_value;
    }
    json viols = json::array();
    for (const auto& [x, gap] : e.report.violations) viols.push_back(json::array({x, gap}));
    j["violations"] = viols;
    j["grid_points"] = e.report.grid_points;
    j["tol"] = e.report.tol;
    j["flag"] = e.report.flag;
    j["gap_sense"] = e.gap_sense;
    j["selected"] = e.selected;
    return j;
}

EvidenceRecord evidence_from(const json& j) {
    EvidenceRecord e;
    e.curve = curve_from(j.at("curve"));
    std::string s = j.at("summation").get<std::string>();
    e.summation = s == "direct" ? SummationRule::DirectL
                  : s == "power_mean_theorem3" ? SummationRule::PowerMeanTheorem3
                                               : SummationRule::PowerMeanTheorem4;
    e.note = j.at("note").get<std::string>();
    e.report.verdict = j.at("verdict").get<std::string>() == "HOLDS_NUMERICALLY"
                           ? EvidenceReport::Verdict::HoldsNumerically
                           : EvidenceReport::Verdict::Violated;
    e.report.min_gap = j.at("min_gap").get<double>();
    e.report.argmin = j.at("argmin").get<double>();
    if (j.contains("witness")) {
        e.report.witness = j.at("witness").get<double>();
        e.report.witness_value = j.at("witness_value").get<double>();
    }
    for (const auto& v : j.at("violations"))
        e.report.violations.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    e.report.grid_points = j.at("grid_points").get<int>();
    e.report.tol = j.at("tol").get<double>();
    e.report.flag = j.at("flag").get<std::string>();
    e.gap_sense = j.at("gap_sense").get<std::string>();
    e.selected = j.at("selected").get<bool>();
    return e;
}

}  // namespace

nlohmann::json certificate_to_json(const ProofCertificate& cert) {
    json j;
    j["problem_id"] = cert.problem_id;
    j["route"] = to_string(cert.route);
    j["problem"] = problem_json(cert.problem);
    json curves = json::array();
    for (const auto& rec : cert.curves) curves.push_back(curve_record_json(rec));
    j["curves"] = curves;
    if (cert.split) {
        json s;
        s["G"] = interval_json(cert.split->carved);
        s["extrema_are_minima"] = cert.split->extrema_are_minima;
        s["extremum_G"] = min_report_json(cert.split->extremum_G);
        s["extremum_I"] = min_report_json(cert.split->extremum_I);
        s["n_f_x0"] = rational_json(cert.split->n_f_x0);
        s["condition"] = cert.split->condition;
        j["split"] = s;
    }
    if (cert.touch_points) {
        json pts = json::array();
        for (const auto& p : *cert.touch_points) pts.push_back(rational_json(p));
        j["touch_points"] = pts;
    }
    if (cert.cubic) {
        json c;
        c["a"] = rational_json(cert.cubic->a);
        c["b"] = rational_json(cert.cubic->b);
        c["c"] = rational_json(cert.cubic->c);
        c["d"] = rational_json(cert.cubic->d);
        c["x0"] = rational_json(cert.cubic->x0);
        c["n"] = cert.cubic->n;
        c["endpoint_low"] = rational_json(cert.cubic->endpoint_low);
        c["endpoint_high"] = rational_json(cert.cubic->endpoint_high);
        c["trivial_n1"] = cert.cubic->trivial_n1;
        j["cubic"] = c;
    }
    if (!cert.evidence.empty()) {
        json evs = json::array();
        for (const auto& e : cert.evidence) evs.push_back(evidence_json(e));
        j["numeric_evidence"] = evs;
    }
    json conclusion;
    conclusion["n_f_x0"] =
        cert.conclusion.n_f_x0 ? json(rational_json(*cert.conclusion.n_f_x0)) : json(nullptr);
    conclusion["n_f_x0_numeric"] = cert.conclusion.n_f_x0_numeric;
    conclusion["bound"] =
        cert.conclusion.bound ? json(rational_json(*cert.conclusion.bound)) : json(nullptr);
    conclusion["direction"] = to_string(cert.conclusion.direction);
    conclusion["holds"] = cert.conclusion.holds;
    j["conclusion"] = conclusion;
    j["diagnostics"] = cert.diagnostics;
    j["seeds"] = {{"numeric_oracle", cert.seed}};
    j["numeric_tol"] = cert.numeric_tol;
    return j;
}

ProofCertificate certificate_from_json(const nlohmann::json& j) {
    ProofCertificate cert;
    cert.problem_id = j.at("problem_id").get<std::string>();
    auto route = route_from_string(j.at("route").get<std::string>());
    if (!route) throw std::invalid_argument("certificate: unknown route");
    cert.route = *route;
    cert.problem = problem_from(j.at("problem"));
    for (const auto& c : j.at("curves")) cert.curves.push_back(curve_record_from(c));
    if (j.contains("split")) {
        SplitData s;
        s.carved = interval_from(j.at("split").at("G"));
        s.extrema_are_minima = j.at("split").at("extrema_are_minima").get<bool>();
        s.extremum_G = min_report_from(j.at("split").at("extremum_G"));
        s.extremum_I = min_report_from(j.at("split").at("extremum_I"));
        s.n_f_x0 = rational_from(j.at("split").at("n_f_x0"));
        s.condition = j.at("split").at("condition").get<std::string>();
        cert.split = s;
    }
    if (j.contains("touch_points")) {
        std::vector<BigRational> pts;
        for (const auto& p : j.at("touch_points")) pts.push_back(rational_from(p));
        cert.touch_points = pts;
    }
    if (j.contains("cubic")) {
        Theorem5Data c;
        c.a = rational_from(j.at("cubic").at("a"));
        c.b = rational_from(j.at("cubic").at("b"));
        c.c = rational_from(j.at("cubic").at("c"));
        c.d = rational_from(j.at("cubic").at("d"));
        c.x0 = rational_from(j.at("cubic").at("x0"));
        c.n = j.at("cubic").at("n").get<int>();
        c.endpoint_low = rational_from(j.at("cubic").at("endpoint_low"));
        c.endpoint_high = rational_from(j.at("cubic").at("endpoint_high"));
        c.trivial_n1 = j.at("cubic").at("trivial_n1").get<bool>();
        cert.cubic = c;
    }
    if (j.contains("numeric_evidence"))
        for (const auto& e : j.at("numeric_evidence")) cert.evidence.push_back(evidence_from(e));
    const json& conclusion = j.at("conclusion");
    if (!conclusion.at("n_f_x0").is_null())
        cert.conclusion.n_f_x0 = rational_from(conclusion.at("n_f_x0"));
    cert.conclusion.n_f_x0_numeric = conclusion.at("n_f_x0_numeric").get<double>();
    if (!conclusion.at("bound").is_null())
        cert.conclusion.bound = rational_from(conclusion.at("bound"));
    cert.conclusion.direction = conclusion.at("direction").get<std::string>() == "le"
                                    ? Direction::UpperBound
                                    : Direction::LowerBound;
    cert.conclusion.holds = conclusion.at("holds").get<bool>();
    for (const auto& d : j.at("diagnostics")) cert.diagnostics.push_back(d.get<std::string>());
    cert.seed = j.at("seeds").at("numeric_oracle").get<unsigned long>();
    cert.numeric_tol = j.at("numeric_tol").get<double>();
    return cert;
}

std::string render_proof(const ProofCertificate& cert) {
    std::ostringstream out;
    const ProblemSpec& p = cert.problem;
    const bool upper = p.direction == Direction::UpperBound;
    const char* rel = upper ? "<=" : ">=";

    out << "Problem " << p.id << ": show that the sum of ";
    if (p.functions.size() == 1)
        out << "f(x) = " << print_expr(p.f()) << " over " << p.n << " variables";
    else {
        out << "f_j(x_j) for f = [";
        for (std::size_t i = 0; i < p.functions.size(); ++i)
            out << (i ? ", " : "") << print_expr(p.functions[i]);
        out << "]";
    }
    out << " is " << rel << " " << print_expr(p.bound) << "\n";
    out << "  subject to " << p.constraint.family_name() << " constraint, budget "
        << to_string(p.constraint.budget) << ", variables in " << p.domain.to_string() << "\n";
    out << "Route: " << to_string(cert.route) << "\n";

    for (const auto& rec : cert.curves) {
        out << "Curve (" << to_string(rec.curve.family) << "): g(x) = "
            << print_expr(rec.curve.as_expr) << " at x0 = " << to_string(rec.curve.x0) << "\n";
        if (rec.factorization) {
            out << "  f - g = (x - " << to_string(rec.factorization->x0) << ")^2 * T / Q with\n"
                << "    T = " << rec.factorization->cofactor.to_string() << "\n"
                << "    Q = " << rec.factorization->denominator.to_string() << "\n";
        }
        if (rec.cofactor_sign) {
            out << "  sign of T";
            for (const auto& region : rec.certified_regions) out << " on " << region.to_string();
            out << ": " << to_string(rec.cofactor_sign->verdict);
            if (rec.cofactor_sign->sample_point)
                out << " (sample at " << to_string(*rec.cofactor_sign->sample_point) << ")";
            out << "\n";
        }
    }
    if (cert.cubic) {
        out << "Cubic check: a = " << to_string(cert.cubic->a) << ", b = " << to_string(cert.cubic->b)
            << ", endpoints 2*a*x0 + b = " << to_string(cert.cubic->endpoint_low)
            << ", (n+2)*a*x0 + b = " << to_string(cert.cubic->endpoint_high) << "\n";
    }
    if (cert.split) {
        out << "Split: G = " << cert.split->carved.to_string() << ", "
            << (cert.split->extrema_are_minima ? "min" : "max") << " over G = "
            << to_string(cert.split->extremum_G.value) << ", over I = "
            << to_string(cert.split->extremum_I.value) << "\n";
        out << "  check: " << cert.split->condition << "\n";
    }
    if (cert.touch_points) {
        out << "Touch points:";
        for (const auto& t : *cert.touch_points) out << " " << to_string(t);
        out << "\n";
    }
    for (const auto& ev : cert.evidence) {
        out << "Numeric evidence (" << to_string(ev.curve.family) << ", "
            << (ev.selected ? "selected" : "rejected") << "): " << to_string(ev.report.verdict)
            << ", min " << ev.gap_sense << " = " << ev.report.min_gap << " near x = "
            << ev.report.argmin << " [" << ev.report.flag << "]\n";
    }
    for (const auto& d : cert.diagnostics) out << "note: " << d << "\n";

    out << "Conclusion: sum " << rel << " ";
    if (cert.conclusion.n_f_x0)
        out << to_string(*cert.conclusion.n_f_x0);
    else
        out << cert.conclusion.n_f_x0_numeric << " (numeric)";
    if (cert.conclusion.bound) {
        out << "; claimed bound " << to_string(*cert.conclusion.bound) << ": "
            << (cert.conclusion.holds ? "settled" : "NOT settled");
    }
    out << "\n";
    if (cert.route == Route::NumericEvidenceOnly)
        out << "This run is numeric evidence, not an exact certificate.\n";
    if (cert.route == Route::Failure) out << "No proof was found.\n";
    return out.str();
}

}  // namespace tangent
