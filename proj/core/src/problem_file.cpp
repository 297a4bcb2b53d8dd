#include "tangent/problem_file.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace tangent {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(trim(current));
    return parts;
}

BigRational require_rational(const std::string& key, const std::string& value) {
    auto q = parse_rational(value);
    if (!q) throw ProblemFileError(key + ": '" + value + "' is not a rational number");
    return *q;
}

ExprPtr require_expr(const std::string& key, const std::string& value) {
    try {
        return parse_expr(value);
    } catch (const ParseError& e) {
        throw ProblemFileError(key + ": " + e.what());
    }
}

Polynomial coeff_list(const std::string& key, const std::string& value) {
    std::vector<BigRational> coeffs;
    for (const auto& part : split(value, ','))
        coeffs.push_back(require_rational(key, part));
    return Polynomial(std::move(coeffs));
}

}  // namespace

ProblemFile parse_problem_file(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::string provenance;
    bool in_header = true;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            if (in_header) {
                if (!provenance.empty()) provenance += "\n";
                provenance += trim(t.substr(1));
            }
            continue;
        }
        in_header = false;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ProblemFileError("line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ProblemFileError("line " + std::to_string(lineno) + ": empty key or value");
        if (kv.count(key))
            throw ProblemFileError("line " + std::to_string(lineno) + ": duplicate key '" + key +
                                   "'");
        kv[key] = value;
    }

    auto take = [&kv](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto require = [&take](const std::string& key) {
        auto v = take(key);
        if (!v) throw ProblemFileError("missing required key '" + key + "'");
        return *v;
    };

    ProblemFile out;
    out.provenance = provenance;
    ProblemSpec& p = out.problem;

    p.id = require("id");
    if (auto fn = take("function")) {
        p.functions.push_back(require_expr("function", *fn));
    } else if (auto fns = take("functions")) {
        for (const auto& part : split(*fns, ';'))
            p.functions.push_back(require_expr("functions", part));
    } else {
        throw ProblemFileError("missing required key 'function' (or 'functions')");
    }
    p.n = static_cast<int>(require_rational("n", require("n")).get_num().get_si());

    std::string family = require("constraint.family");
    std::optional<std::string> alpha = take("constraint.alpha");
    std::optional<std::string> l_text = take("constraint.l");
    std::optional<std::string> budget = take("constraint.budget");
    std::optional<std::string> mean = take("constraint.mean");
    p.constraint.n = p.n;
    if (family == "sum") {
        p.constraint.family = ConstraintFamily::Sum;
    } else if (family == "power_sum") {
        p.constraint.family = ConstraintFamily::PowerSum;
        if (!alpha) throw ProblemFileError("power_sum needs constraint.alpha");
        p.constraint.alpha = require_rational("constraint.alpha", *alpha);
    } else if (family == "product") {
        p.constraint.family = ConstraintFamily::Product;
    } else if (family == "mean") {
        if (l_text) {
            p.constraint.family = ConstraintFamily::CustomMean;
            p.constraint.l = require_expr("constraint.l", *l_text);
        } else if (alpha) {
            // fixed power mean c_alpha = value canonicalizes to a power sum
            p.constraint.family = ConstraintFamily::PowerSum;
            p.constraint.alpha = require_rational("constraint.alpha", *alpha);
            if (!mean) throw ProblemFileError("mean with alpha needs constraint.mean");
        } else {
            throw ProblemFileError("mean needs constraint.l or constraint.alpha");
        }
    } else {
        throw ProblemFileError("unknown constraint.family '" + family + "'");
    }
    if (mean && budget) throw ProblemFileError("give constraint.mean or constraint.budget, not both");
    if (mean) {
        // c_alpha(x_1..x_n) = value, i.e. sum x^alpha = n * value^alpha
        BigRational value = require_rational("constraint.mean", *mean);
        if (p.constraint.family == ConstraintFamily::PowerSum) {
            long pn = p.constraint.alpha.get_num().get_si();
            long pd = p.constraint.alpha.get_den().get_si();
            auto powed = exact_root(pow(value, pn), static_cast<unsigned long>(std::labs(pd)));
            if (!powed)
                throw ProblemFileError("constraint.mean^alpha is not rational; give the budget");
            p.constraint.budget = BigRational(*powed * p.n);
        } else {
            p.constraint.budget = BigRational(value * p.n);
        }
    } else if (budget) {
        p.constraint.budget = require_rational("constraint.budget", *budget);
    } else if (!kv.count("homogeneous.degree")) {
        // homogeneous problems may omit the budget: normalization picks it
        throw ProblemFileError("missing constraint.budget (or constraint.mean)");
    }

    std::string domain = require("domain");
    auto iv = parse_interval(domain);
    if (!iv) throw ProblemFileError("domain: '" + domain + "' is not an interval");
    p.domain = *iv;

    std::string direction = require("direction");
    if (direction == "ge")
        p.direction = Direction::LowerBound;
    else if (direction == "le")
        p.direction = Direction::UpperBound;
    else
        throw ProblemFileError("direction must be 'ge' or 'le'");

    p.bound = require_expr("bound", require("bound"));

    if (auto x0 = take("x0")) p.touch_point = require_rational("x0", *x0);
    if (auto deg = take("homogeneous.degree"))
        p.homogeneous_degree = require_rational("homogeneous.degree", *deg);
    if (auto nb = take("normalize.budget"))
        p.normalize_budget = require_rational("normalize.budget", *nb);
    if (auto cf = take("curve.family")) {
        ProblemSpec::CurveOverride o;
        if (*cf == "line")
            o.family = CurveFamily::Line;
        else if (*cf == "power")
            o.family = CurveFamily::PowerCurve;
        else if (*cf == "log")
            o.family = CurveFamily::LogCurve;
        else
            throw ProblemFileError("curve.family must be line, power or log");
        if (auto ca = take("curve.alpha")) o.alpha = require_rational("curve.alpha", *ca);
        if (o.family == CurveFamily::PowerCurve && o.alpha == 0)
            throw ProblemFileError("curve.family = power needs a nonzero curve.alpha");
        p.curve_override = o;
    }

    ExpectedBlock expected;
    if (auto r = take("expected.route")) {
        expected.route = route_from_string(*r);
        if (!expected.route) throw ProblemFileError("unknown expected.route '" + *r + "'");
    }
    if (auto s = take("expected.status")) {
        if (*s != "exact" && *s != "numeric")
            throw ProblemFileError("expected.status must be exact or numeric");
        expected.status = *s;
    }
    if (auto v = take("expected.k")) expected.k = require_rational("expected.k", *v);
    if (auto v = take("expected.m")) expected.m = require_rational("expected.m", *v);
    if (auto v = take("expected.T")) expected.cofactor = coeff_list("expected.T", *v);
    if (auto v = take("expected.Q")) expected.denominator = coeff_list("expected.Q", *v);
    if (auto v = take("expected.G")) {
        expected.carved = parse_interval(*v);
        if (!expected.carved) throw ProblemFileError("expected.G: bad interval");
    }
    if (auto v = take("expected.bound_value"))
        expected.bound_value = require_rational("expected.bound_value", *v);
    if (auto v = take("expected.touch_points")) {
        std::vector<BigRational> pts;
        for (const auto& part : split(*v, ','))
            pts.push_back(require_rational("expected.touch_points", part));
        expected.touch_points = pts;
    }
    if (!expected.empty()) out.expected = expected;

    if (!kv.empty()) throw ProblemFileError("unknown key '" + kv.begin()->first + "'");
    try {
        validate(p);
    } catch (const std::invalid_argument& e) {
        throw ProblemFileError(e.what());
    }
    return out;
}

ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProblemFileError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem_file(buffer.str());
}

std::vector<std::string> match_expected(const ProofCertificate& cert, const ExpectedBlock& expected,
                                        double numeric_tol) {
    std::vector<std::string> mismatches;
    auto mismatch = [&mismatches](const std::string& what) { mismatches.push_back(what); };

    if (!cert.proved()) mismatch("certificate does not settle the claimed bound");
    if (expected.route && cert.route != *expected.route)
        mismatch("route " + to_string(cert.route) + ", expected " + to_string(*expected.route));
    if (expected.status) {
        bool exact = cert.exact();
        if ((*expected.status == "exact") != exact)
            mismatch("status " + std::string(exact ? "exact" : "numeric") + ", expected " +
                     *expected.status);
    }
    const CurveRecord* rec = cert.curves.empty() ? nullptr : &cert.curves[0];
    const BaseCurve* curve = rec ? &rec->curve : nullptr;
    if (!curve && !cert.evidence.empty()) {
        for (const auto& ev : cert.evidence)
            if (ev.selected) curve = &ev.curve;
    }
    if (expected.k) {
        if (!curve || !curve->k)
            mismatch("no exact curve slope to compare");
        else if (*curve->k != *expected.k)
            mismatch("k = " + to_string(*curve->k) + ", expected " + to_string(*expected.k));
    }
    if (expected.m) {
        if (!curve || !curve->m)
            mismatch("no exact curve offset to compare");
        else if (*curve->m != *expected.m)
            mismatch("m = " + to_string(*curve->m) + ", expected " + to_string(*expected.m));
    }
    if (expected.cofactor) {
        if (!rec || !rec->factorization)
            mismatch("no factorization to compare");
        else if (rec->factorization->cofactor != *expected.cofactor)
            mismatch("T = " + rec->factorization->cofactor.to_string() + ", expected " +
                     expected.cofactor->to_string());
    }
    if (expected.denominator) {
        if (!rec || !rec->factorization)
            mismatch("no factorization to compare");
        else if (rec->factorization->denominator != *expected.denominator)
            mismatch("Q = " + rec->factorization->denominator.to_string() + ", expected " +
                     expected.denominator->to_string());
    }
    if (expected.carved) {
        if (!cert.split)
            mismatch("no split data to compare");
        else if (!(cert.split->carved == *expected.carved))
            mismatch("G = " + cert.split->carved.to_string() + ", expected " +
                     expected.carved->to_string());
    }
    if (expected.touch_points) {
        if (!cert.touch_points)
            mismatch("no touch points to compare");
        else if (*cert.touch_points != *expected.touch_points)
            mismatch("touch points differ");
    }
    if (expected.bound_value) {
        if (cert.conclusion.n_f_x0) {
            if (*cert.conclusion.n_f_x0 != *expected.bound_value)
                mismatch("bound value " + to_string(*cert.conclusion.n_f_x0) + ", expected " +
                         to_string(*expected.bound_value));
        } else {
            double diff =
                std::fabs(cert.conclusion.n_f_x0_numeric - to_double(*expected.bound_value));
            if (diff > numeric_tol * 100 + 1e-9)
                mismatch("numeric bound value off by " + std::to_string(diff));
        }
    }
    return mismatches;
}

}  // namespace tangent
