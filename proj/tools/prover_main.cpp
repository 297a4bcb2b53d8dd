#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tangent/certificate.hpp"
#include "tangent/corpus.hpp"
#include "tangent/verify.hpp"

namespace {

using namespace tangent;

// exit codes are the machine contract: 0 exact proof, 1 input error,
// 2 numeric evidence only, 3 failure
constexpr int kExitExact = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNumericOnly = 2;
constexpr int kExitFailure = 3;

int certificate_exit_code(const ProofCertificate& cert) {
    if (!cert.proved()) return kExitFailure;
    return cert.exact() ? kExitExact : kExitNumericOnly;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

int cmd_prove(const std::string& path, const std::string& json_out, bool verbose, double tol,
              unsigned long seed) {
    ProblemFile file;
    try {
        file = load_problem_file(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    ProveOptions options;
    options.numeric_tol = tol;
    options.seed = seed;
    ProofCertificate cert = prove(file.problem, options);
    std::cout << render_proof(cert);
    if (verbose) {
        VerificationReport report = verify_certificate(certificate_to_json(cert));
        std::cout << "self-check: " << (report.valid ? "valid" : "INVALID") << " ("
                  << report.checks.size() << " checks";
        if (!report.failures.empty()) std::cout << ", " << report.failures.size() << " failures";
        std::cout << ")\n";
        for (const auto& f : report.failures) std::cout << "  failed: " << f << "\n";
    }
    if (!json_out.empty()) write_json(json_out, certificate_to_json(cert));
    return certificate_exit_code(cert);
}

int cmd_corpus(const std::string& filter, const std::string& report_path, double tol,
               unsigned long seed) {
    ProveOptions options;
    options.numeric_tol = tol;
    options.seed = seed;

    nlohmann::json report = nlohmann::json::array();
    int failures = 0, ran = 0;
    for (const CorpusEntry& entry : corpus_entries()) {
        if (!filter.empty() && entry.id.find(filter) == std::string::npos) continue;
        ++ran;
        ProofCertificate cert = prove(entry.file.problem, options);
        std::vector<std::string> mismatches;
        if (entry.file.expected)
            mismatches = match_expected(cert, *entry.file.expected, tol);
        else
            mismatches.push_back("corpus entry has no expected block");
        bool pass = mismatches.empty();
        failures += pass ? 0 : 1;

        std::cout << (pass ? "PASS  " : "FAIL  ") << entry.id << "  route=" << to_string(cert.route)
                  << "\n";
        for (const auto& m : mismatches) std::cout << "      " << m << "\n";

        nlohmann::json item;
        item["id"] = entry.id;
        item["pass"] = pass;
        item["mismatches"] = mismatches;
        item["certificate"] = certificate_to_json(cert);
        report.push_back(item);
    }
    std::cout << (ran - failures) << "/" << ran << " corpus entries pass\n";
    if (!report_path.empty()) write_json(report_path, report);
    if (ran == 0) {
        std::cerr << "error: no corpus entry matches '" << filter << "'\n";
        return kExitInputError;
    }
    return failures == 0 ? 0 : kExitFailure;
}

int cmd_factor(const std::string& f_text, const std::string& g_text, const std::string& x0_text) {
    ExprPtr f, g;
    std::optional<BigRational> x0;
    try {
        f = parse_expr(f_text);
        g = parse_expr(g_text);
        x0 = parse_rational(x0_text);
        if (!x0) throw std::runtime_error("x0 must be a rational number");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    auto F = lower_to_rational(f);
    auto G = lower_to_rational(g);
    if (!std::holds_alternative<RationalFunction>(F) ||
        !std::holds_alternative<RationalFunction>(G)) {
        std::cerr << "error: both expressions must be rational functions\n";
        return kExitInputError;
    }
    try {
        auto fac = double_root_factor(std::get<RationalFunction>(F), std::get<RationalFunction>(G),
                                      *x0);
        std::cout << "f - g = (x - " << to_string(*x0) << ")^2 * T / Q\n";
        std::cout << "T = " << fac.cofactor.to_string() << "\n";
        std::cout << "Q = " << fac.denominator.to_string() << "\n";
        return 0;
    } catch (const TangencyViolation& e) {
        std::cerr << "tangency violation: " << e.what() << "\n";
        return kExitFailure;
    } catch (const PoleAtTouchPoint& e) {
        std::cerr << "pole at touch point: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Automated prover for Jensen-type inequalities via separating tangents"};
    app.require_subcommand(1);

    std::string prove_path, prove_json;
    bool verbose = false;
    double tol = 1e-9;
    unsigned long seed = 42;
    auto* prove_cmd = app.add_subcommand("prove", "Prove one problem file");
    prove_cmd->add_option("file", prove_path, "problem file")->required();
    prove_cmd->add_option("--json", prove_json, "write the certificate JSON here");
    prove_cmd->add_flag("--verbose", verbose, "re-verify the certificate and print the result");
    prove_cmd->add_option("--numeric-tol", tol, "numeric evidence tolerance");
    prove_cmd->add_option("--seed", seed, "sampling seed recorded in the certificate");

    std::string filter, report_path;
    auto* corpus_cmd = app.add_subcommand("corpus", "Run the built-in corpus as a regression suite");
    corpus_cmd->add_option("--filter", filter, "only run entries whose id contains this");
    corpus_cmd->add_option("--report", report_path, "write a machine-readable report here");
    corpus_cmd->add_option("--numeric-tol", tol, "numeric evidence tolerance");
    corpus_cmd->add_option("--seed", seed, "sampling seed recorded in the certificates");

    std::string factor_f, factor_g, factor_x0;
    auto* factor_cmd = app.add_subcommand("factor", "Factor f - g by (x - x0)^2");
    factor_cmd->add_option("f", factor_f, "function expression")->required();
    factor_cmd->add_option("g", factor_g, "curve expression")->required();
    factor_cmd->add_option("x0", factor_x0, "touch point (rational)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    }

    try {
        if (prove_cmd->parsed()) return cmd_prove(prove_path, prove_json, verbose, tol, seed);
        if (corpus_cmd->parsed()) return cmd_corpus(filter, report_path, tol, seed);
        return cmd_factor(factor_f, factor_g, factor_x0);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
