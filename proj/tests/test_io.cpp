#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using namespace signsum;

namespace {

struct result {
    int code;
    std::string out;
    std::string err;
};

result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "signsum");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << text;
    return path;
}

std::string demo(const char* name) { return std::string(SIGNSUM_DEMO_DIR) + "/" + name; }

// runs the real binary and returns stdout
std::string run_binary(const std::string& args, int* status) {
    const std::string cmd = std::string(SIGNSUM_CLI_PATH) + " " + args;
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
    const int st = pclose(p);
    *status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return out;
}

}  // namespace

TEST(WeightFile, ParsesAllForms) {
    const auto v = io::parse_weight_text("# header\n3/5\n\n  0.25 \n-sqrt(1/2)\nsqrt(2/8)\n");
    ASSERT_EQ(v.size(), 4u);
    EXPECT_EQ(v[0].to_rational(), rational(3, 5));
    EXPECT_EQ(v[1].to_rational(), rational(1, 4));
    EXPECT_EQ(*v[2].exact(), -radical_sum::sqrt_of(rational(1, 2)));
    EXPECT_EQ(v[3].to_rational(), rational(1, 2));  // sqrt(1/4) is rational
    EXPECT_EQ(v.mode(), weight_mode::interval);
}

TEST(WeightFile, ErrorsCarryLineNumbers) {
    try {
        io::parse_weight_text("1/2\n# ok\nsqrt(-1)\n");
        FAIL();
    } catch (const parse_error& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    try {
        io::parse_weight_text("1/2\n1/0\n");
        FAIL();
    } catch (const parse_error& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(io::read_weight_file("/nonexistent/weights.txt"), parse_error);
}

TEST(Json, NumbersAsStrings) {
    const auto j = io::to_json(rational(-3, 5));
    EXPECT_EQ(j.dump(), R"({"num":"-3","den":"5"})");
    const auto iv = io::to_json(real_interval(0.25L, 0.5L));
    EXPECT_EQ(iv.dump(), R"({"lo":"0.25","hi":"0.5"})");
    const long double x = 0.1L;
    EXPECT_EQ(std::stold(io::float_text(x)), x);
}

TEST(Cli, ProbOnPythagoreanPair) {
    const auto r = run_cli({"prob", "--weights", demo("pythagorean.txt")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1/2\n");
}

TEST(Cli, JsonMatchesText) {
    const auto text = run_cli({"prob", "--weights", demo("quarter.txt"), "--offset", "1"});
    const auto js = run_cli({"prob", "--weights", demo("quarter.txt"), "--offset", "1", "--json"});
    ASSERT_EQ(js.code, 0);
    const auto j = io::json::parse(js.out);
    EXPECT_EQ(text.out, cli::text::probability(j) + "\n");
    EXPECT_EQ(text.out, "11/16\n");
}

TEST(Cli, ExitCodesPerSubcommand) {
    EXPECT_EQ(run_cli({"dist", "--weights", demo("sqrt_pair.txt")}).code, 0);
    EXPECT_EQ(run_cli({"tail", "--weights", demo("sqrt_pair.txt"), "--x", "sqrt(2)"}).code, 0);
    EXPECT_EQ(run_cli({"fvalue", "--c", "1/4"}).code, 0);
    EXPECT_EQ(run_cli({"bound", "--x", "sqrt(2)"}).code, 0);
    EXPECT_EQ(run_cli({"verify", "main-constant"}).code, 0);
    EXPECT_EQ(run_cli({"verify", "xi", "--value", "1/25"}).code, 0);
    EXPECT_EQ(run_cli({"verify", "lemma2", "--kmax", "6"}).code, 0);
    EXPECT_EQ(run_cli({"verify", "main", "--weights", demo("sqrt_pair.txt")}).code, 0);
    EXPECT_EQ(run_cli({"verify", "bd", "--count", "20"}).code, 0);
    EXPECT_EQ(run_cli({"verify", "lemma1", "--count", "20"}).code, 0);
    EXPECT_EQ(run_cli({"search", "--n", "3", "--restarts", "2", "--seed", "4"}).code, 0);
    EXPECT_EQ(run_cli({"sweep", "--family", "uniform", "--n", "3"}).code, 0);
    // usage errors
    EXPECT_EQ(run_cli({}).code, 3);
    EXPECT_EQ(run_cli({"prob"}).code, 3);
    EXPECT_EQ(run_cli({"prob", "--weights", demo("pythagorean.txt"), "--bogus"}).code, 3);
    EXPECT_EQ(run_cli({"sweep", "--family", "gaussian", "--n", "3"}).code, 3);
    EXPECT_EQ(run_cli({"fvalue", "--c", "0"}).code, 3);
    EXPECT_EQ(run_cli({"verify", "xi", "--value", "1/4"}).code, 3);
    EXPECT_EQ(run_cli({"verify", "main", "--weights", demo("pythagorean.txt"), "--threads", "0"}).code, 3);
    const auto bad = run_cli({"prob", "--weights", write_temp("bad.txt", "1/2\nnope\n")});
    EXPECT_EQ(bad.code, 3);
    EXPECT_NE(bad.err.find("line 2"), std::string::npos);
    // precondition: weights outside the unit ball
    EXPECT_EQ(run_cli({"verify", "main", "--weights", write_temp("big.txt", "1\n1\n")}).code, 3);
    // capacity
    std::string many;
    for (int i = 0; i < 41; ++i) many += "1/64\n";
    EXPECT_EQ(run_cli({"prob", "--weights", write_temp("many.txt", many)}).code, 4);
    std::string mid;
    for (int i = 0; i < 25; ++i) mid += "1/64\n";
    EXPECT_EQ(run_cli({"dist", "--weights", write_temp("mid.txt", mid)}).code, 4);
    EXPECT_EQ(run_cli({"fvalue", "--c", "1/4", "--width", "1e-300"}).code, 4);
}

TEST(Cli, UndecidedExitCode) {
    // three radicands: decided through enclosures
    const auto r = run_cli({"verify", "main", "--weights", write_temp("w.txt", "sqrt(1/2)\nsqrt(1/3)\nsqrt(1/6)\n")});
    EXPECT_EQ(r.code, 0);
    verification_report undecided{"x", verdict::undecided, 0, {}, {}};
    std::ostringstream sink;
    EXPECT_EQ(cli::emit_report(sink, {}, undecided), 2);
    verification_report refuted{"x", verdict::refuted, 0, {}, {}};
    EXPECT_EQ(cli::emit_report(sink, {}, refuted), 1);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run_cli({"--help"}).code, 0); }

TEST(Cli, JsonIsByteIdenticalAcrossRuns) {
    int s1 = -1, s2 = -1;
    const std::string a = run_binary("search --n 5 --restarts 3 --seed 17 --json", &s1);
    const std::string b = run_binary("search --n 5 --restarts 3 --seed 17 --json --threads 2", &s2);
    EXPECT_EQ(s1, 0);
    EXPECT_EQ(s2, 0);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, b);
    const std::string c = run_binary("verify lemma1 --count 30 --json", &s1);
    const std::string d = run_binary("verify lemma1 --count 30 --json", &s2);
    EXPECT_EQ(c, d);
    EXPECT_EQ(io::json::parse(c).at("verdict"), "verified");
}

TEST(Cli, ReportSchema) {
    const auto r = run_cli({"verify", "f-properties", "--json", "--count", "10"});
    ASSERT_EQ(r.code, 0);
    const auto j = io::json::parse(r.out);
    for (const char* key : {"claim", "verdict", "precision", "evidence"}) EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j.at("precision").at("significand_bits"), 64);
    for (const auto& c : j.at("components")) {
        EXPECT_TRUE(c.at("verdict").is_string());
        for (const auto& e : c.at("evidence")) {
            EXPECT_TRUE(e.contains("input"));
            EXPECT_TRUE(e.contains("lhs"));
            EXPECT_TRUE(e.contains("rhs"));
        }
    }
}
