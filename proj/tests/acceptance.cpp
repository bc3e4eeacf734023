// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "brute_force.hpp"
#include "signsum/signsum.hpp"

using namespace signsum;
using io::json;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct cli_result {
    int status = -1;
    std::string out;
};

cli_result run_cli(const std::string& args) {
    const std::string cmd = std::string(SIGNSUM_CLI_PATH) + " " + args;
    cli_result r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[65536];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

long double from_text(const json& s) { return std::stold(s.get<std::string>()); }

std::string sci(long double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3Le", x);
    return buf;
}

int failures = 0;

void line(int id, bool pass, const std::string& detail, double secs) {
    std::printf("criterion %2d: %s  %s (%.2f s)\n", id, pass ? "PASS" : "FAIL", detail.c_str(), secs);
    std::fflush(stdout);
    if (!pass) ++failures;
}

bool all_records(const json& r, const char* wanted) {
    for (const auto& e : r.at("evidence"))
        if (e.at("verdict") != wanted) return false;
    if (r.contains("components"))
        for (const auto& c : r.at("components"))
            if (!all_records(c, wanted)) return false;
    return true;
}

void criterion1() {
    const auto t0 = clock_type::now();
    const cli_result r = run_cli("verify main-constant --json");
    const double secs = seconds_since(t0);
    bool pass = r.status == 0;
    std::string detail = "exit " + std::to_string(r.status);
    if (pass) {
        const json j = json::parse(r.out);
        const auto& f = j.at("evidence").at(0).at("lhs");
        const std::string lo = f.at("lo"), hi = f.at("hi");
        const long double width = from_text(f.at("hi")) - from_text(f.at("lo"));
        pass = rational::parse(lo) > rational(427685, 1000000) && width <= 1e-9L && secs < 1.0;
        detail = "F(1/4) in [" + lo + ", " + hi + "], width " + sci(width);
    }
    line(1, pass, detail, secs);
}

void criterion2() {
    const auto t0 = clock_type::now();
    const real_interval b = gaussian::bd_bound(gaussian::sqrt2<long double>());
    const auto v = io::parse_weight_text("sqrt(1/2)\nsqrt(1/2)\n");
    const auto tail = prob_tail_ge(v, real_value::parse("sqrt(2)"));
    const auto rep = verify_bd_on_instance(v, real_value::parse("sqrt(2)"));
    const bool pass = b.contains(0.25L) && b.width() <= 1e-12L && tail.exact && *tail.exact == rational(1, 4) &&
                      rep.result == verdict::verified;
    line(2, pass,
         "bd(sqrt 2) width " + sci(b.width()) + ", Pr[S >= sqrt 2] = " +
             (tail.exact ? tail.exact->str() : std::string("?")) + ", " + std::string(to_string(rep.result)),
         seconds_since(t0));
}

void criterion3() {
    const auto t0 = clock_type::now();
    const cli_result r = run_cli("verify lemma2 --kmax 60 --json");
    bool identities = true;
    for (int K = 2; K <= 60; ++K) {
        const auto inst = lemma_two_instance::make(K);
        const rational d((2 * K + 1) * (2 * K + 1));
        identities = identities && inst.c1 == rational(1, 4) + rational(3, 4) / d &&
                     inst.c2 == rational(1, 4) - rational(5, 4) / d;
    }
    const double secs = seconds_since(t0);
    bool all = false;
    std::size_t records = 0;
    if (r.status == 0) {
        const json j = json::parse(r.out);
        all = all_records(j, "verified");
        records = j.at("evidence").size();
    }
    line(3, r.status == 0 && all && records == 3 * 59 && identities && secs < 10,
         "exit " + std::to_string(r.status) + ", " + std::to_string(records) + " records, identities " +
             (identities ? "exact" : "broken"),
         secs);
}

void criterion4() {
    const auto t0 = clock_type::now();
    const cli_result a = run_cli("verify xi --value 1/25");
    const cli_result b = run_cli("verify xi --value 1/9");
    std::size_t ok = 0;
    for (int k = 0; k <= 111; ++k)
        ok += verify_xi_inequality(rational(bigint(k), bigint(1000))).result == verdict::verified;
    const double secs = seconds_since(t0);
    line(4, a.status == 0 && b.status == 0 && ok == 112 && secs < 30,
         "1/25 exit " + std::to_string(a.status) + ", 1/9 exit " + std::to_string(b.status) + ", grid " +
             std::to_string(ok) + "/112",
         secs);
}

void criterion5() {
    const auto t0 = clock_type::now();
    const cli_result r = run_cli("verify convexity --json");
    const double secs = seconds_since(t0);
    bool strict = false;
    std::size_t cells = 0;
    if (r.status == 0) {
        const json j = json::parse(r.out);
        const auto& ev = j.at("evidence");
        cells = ev.size();
        strict = true;
        for (std::size_t i = 0; i + 1 < ev.size(); ++i)
            strict = strict && from_text(ev[i].at("lhs").at("lo")) > 0 && ev[i].at("verdict") == "verified";
        strict = strict && ev.back().at("verdict") == "verified";
    }
    const auto grid = default_convexity_grid();
    bool covers = grid.front().lo == rational(1, 10000) && grid.back().hi == rational(1, 3);
    for (std::size_t i = 1; i < grid.size(); ++i) covers = covers && grid[i].lo == grid[i - 1].hi;
    line(5, r.status == 0 && strict && covers && secs < 30,
         std::to_string(cells) + " cells over [1/10000, 1/3], strict away from 1/3: " + (strict ? "yes" : "no"),
         secs);
}

void criterion6() {
    const auto t0 = clock_type::now();
    std::size_t agree = 0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
        auto e = stress::make_engine(6, static_cast<std::uint64_t>(trial));
        const auto n = static_cast<std::size_t>(stress::uniform_int(e, 1, 16));
        std::vector<rational> v;
        for (std::size_t i = 0; i < n; ++i) v.push_back(stress::random_entry(e));
        const rational x = stress::random_entry(e);
        const brute_force::counter b(v, {x});
        const auto p = prob_abs_shifted_le(weight_vector::from_rationals(v), real_value(x), rational(1));
        const std::uint64_t naive = b.count(b.scale(rational(-1) - x), b.scale(rational(1) - x));
        agree += p.exact && *p.exact == rational(bigint(naive), bigint(1) << n);
    }
    const double secs = seconds_since(t0);
    line(6, agree == trials && secs < 120, std::to_string(agree) + "/200 exact matches", secs);
}

void criterion7() {
    const auto t0 = clock_type::now();
    const rational expected[] = {rational(1), rational(1, 2), rational(3, 4), rational(7, 8), rational(1, 2)};
    const auto named = named_main_vectors();
    bool named_ok = true;
    for (std::size_t i = 0; i < named.size(); ++i) {
        const auto r = verify_main_conclusion(named[i]);
        named_ok = named_ok && r.result == verdict::verified && r.records[0].exact == expected[i];
    }
    const auto suite = verify_main_suite(500, battery_config{}.seed);
    line(7, named_ok && suite.result == verdict::verified && suite.records.size() == 505,
         std::string("named vectors ") + (named_ok ? "1, 1/2, 3/4, 7/8, 1/2" : "mismatch") + ", " +
             std::to_string(suite.count(verdict::verified)) + "/505 verified",
         seconds_since(t0));
}

void criterion8() {
    const auto t0 = clock_type::now();
    const auto suite = verify_lemma1_suite(500, battery_config{}.seed);
    const double secs = seconds_since(t0);
    line(8, suite.count(verdict::refuted) == 0 && suite.records.size() == 503 && secs < 120,
         std::to_string(suite.count(verdict::verified)) + " verified, " +
             std::to_string(suite.count(verdict::undecided)) + " undecided, " +
             std::to_string(suite.count(verdict::refuted)) + " refuted",
         secs);
}

void criterion9() {
    const auto t0 = clock_type::now();
    const auto suite = verify_bd_suite(500, battery_config{}.seed);
    const double secs = seconds_since(t0);
    line(9, suite.result == verdict::verified && suite.records.size() == 502 && secs < 120,
         std::to_string(suite.count(verdict::verified)) + "/502 verified", secs);
}

void criterion10() {
    const auto t0 = clock_type::now();
    const cli_result a = run_cli("report --json");
    const double first = seconds_since(t0);
    const cli_result b = run_cli("report --json");
    const double secs = seconds_since(t0);
    const bool same = !a.out.empty() && a.out == b.out;
    line(10, a.status == 0 && b.status == 0 && same && first < 300,
         "exit " + std::to_string(a.status) + "/" + std::to_string(b.status) + ", " + std::to_string(a.out.size()) +
             " bytes, identical: " + (same ? "yes" : "no"),
         secs);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::printf("%s: %d failing\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
