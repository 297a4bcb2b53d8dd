#define DOCTEST_CONFIG_IMPLEMENT
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "tangent/certificate.hpp"

namespace {

std::string g_prover;
std::string g_corpus_dir;

int run(const std::string& args) {
    std::string cmd = g_prover + " " + args + " > /tmp/tangent_cli_out.txt 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string output() {
    std::ifstream in("/tmp/tangent_cli_out.txt");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

}  // namespace

TEST_CASE("prove: exact corpus problem exits 0 with the 4/9 conclusion") {
    REQUIRE(run("prove " + g_corpus_dir + "/baltic2011_ineq2.prob") == 0);
    CHECK(output().find("4/9") != std::string::npos);
    CHECK(output().find("Theorem1") != std::string::npos);
}

TEST_CASE("prove: numeric-evidence problem exits 2") {
    CHECK(run("prove " + g_corpus_dir + "/example1.prob") == 2);
    CHECK(output().find("numeric evidence") != std::string::npos);
}

TEST_CASE("prove: missing file exits 1") {
    CHECK(run("prove /nonexistent/missing.prob") == 1);
}

TEST_CASE("prove --json emits a certificate that parses and verifies") {
    REQUIRE(run("prove " + g_corpus_dir + "/sample3.prob --json /tmp/tangent_cert.json --verbose") ==
            0);
    CHECK(output().find("self-check: valid") != std::string::npos);
    std::ifstream in("/tmp/tangent_cert.json");
    REQUIRE(in.good());
    nlohmann::json j = nlohmann::json::parse(in);
    tangent::ProofCertificate cert = tangent::certificate_from_json(j);
    CHECK(cert.route == tangent::Route::Theorem2Split);
}

TEST_CASE("corpus: all entries pass and the report is written") {
    REQUIRE(run("corpus --report /tmp/tangent_corpus.json") == 0);
    CHECK(output().find("11/11 corpus entries pass") != std::string::npos);
    std::ifstream in("/tmp/tangent_corpus.json");
    REQUIRE(in.good());
    nlohmann::json report = nlohmann::json::parse(in);
    CHECK(report.size() == 11);
}

TEST_CASE("corpus --filter runs a subset") {
    REQUIRE(run("corpus --filter sample3") == 0);
    CHECK(output().find("1/1 corpus entries pass") != std::string::npos);
    CHECK(run("corpus --filter no_such_entry") == 1);
}

TEST_CASE("factor subcommand") {
    REQUIRE(run("factor \"x/(x^3+8)\" \"(2*x+1)/27\" 1") == 0);
    CHECK(output().find("-2*x^2 - 5*x - 8") != std::string::npos);
    CHECK(output().find("27*x^3 + 216") != std::string::npos);

    REQUIRE(run("factor \"x^4\" \"(4*x^3-1)/3\" 1") == 0);
    CHECK(output().find("3*x^2 + 2*x + 1") != std::string::npos);

    CHECK(run("factor \"x^2\" \"x\" 1") == 3);
    CHECK(output().find("tangency violation") != std::string::npos);
    CHECK(output().find("f' = 2") != std::string::npos);
    CHECK(run("factor \"sqrt(x)\" \"x\" 1") == 1);
}

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: test_cli <prover-binary> <corpus-dir>\n");
        return 1;
    }
    g_prover = argv[1];
    g_corpus_dir = argv[2];
    doctest::Context context;
    context.applyCommandLine(1, argv);
    return context.run();
}
