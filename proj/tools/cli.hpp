#pragma once

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "signsum/signsum.hpp"

// Command-line front end. Every command builds its JSON first; the text
// output is rendered from that JSON.
namespace signsum::cli {

using io::json;

enum exit_code : int { ok = 0, refuted = 1, undecided = 2, usage = 3, capacity = 4 };

inline int exit_for(verdict v) {
    switch (v) {
        case verdict::verified: return ok;
        case verdict::refuted: return refuted;
        case verdict::undecided: return undecided;
    }
    return undecided;
}

namespace text {

inline std::string rat(const json& r) {
    const std::string den = r.at("den").get<std::string>();
    return den == "1" ? r.at("num").get<std::string>() : r.at("num").get<std::string>() + "/" + den;
}

inline std::string iv(const json& x) {
    if (x.is_null()) return "-";
    return "[" + x.at("lo").get<std::string>() + ", " + x.at("hi").get<std::string>() + "]";
}

inline std::string probability(const json& p) {
    if (!p.at("exact").is_null()) return rat(p.at("exact"));
    return "[" + rat(p.at("lower")) + ", " + rat(p.at("upper")) + "] (" +
           std::to_string(p.at("ambiguous_atoms").get<std::uint64_t>()) + " undecided patterns)";
}

inline std::string weights(const json& w) {
    std::string out = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ", ";
        out += w[i].is_string() ? w[i].get<std::string>() : iv(w[i]);
    }
    return out + ")";
}

inline void evidence_line(std::ostream& os, const json& e, const std::string& indent) {
    os << indent << e.at("verdict").get<std::string>() << "  " << e.at("input").get<std::string>() << "  "
       << e.at("relation").get<std::string>();
    if (!e.at("lhs").is_null()) os << "  lhs " << iv(e.at("lhs"));
    if (!e.at("rhs").is_null()) os << "  rhs " << iv(e.at("rhs"));
    if (e.contains("exact")) os << "  exact " << rat(e.at("exact"));
    if (e.contains("note")) os << "  (" << e.at("note").get<std::string>() << ")";
    os << "\n";
}

// Reports with many records list only the records that are not verified.
inline void report(std::ostream& os, const json& r, const std::string& indent = "") {
    const auto& ev = r.at("evidence");
    std::size_t verified = 0;
    for (const auto& e : ev) verified += e.at("verdict") == "verified";
    os << indent << r.at("claim").get<std::string>() << ": " << r.at("verdict").get<std::string>();
    if (!ev.empty()) os << " (" << verified << "/" << ev.size() << " comparisons verified)";
    os << "\n";
    const bool all = ev.size() <= 8;
    for (const auto& e : ev)
        if (all || e.at("verdict") != "verified") evidence_line(os, e, indent + "  ");
    if (r.contains("components"))
        for (const auto& c : r.at("components")) report(os, c, indent + "  ");
}

}  // namespace text

struct options {
    bool as_json = false;
    unsigned threads = 0;
};

inline void emit(std::ostream& out, const options& o, const json& j, auto render) {
    if (o.as_json) out << j.dump(2) << "\n";
    else render(out, j);
}

inline int emit_report(std::ostream& out, const options& o, const verification_report& r) {
    const json j = io::to_json(r);
    emit(out, o, j, [](std::ostream& os, const json& x) { text::report(os, x); });
    return exit_for(r.result);
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certified computations around Rademacher sums and the bound F(c) = 1/2 - Q(1/sqrt c)/(4 Q(sqrt 2))",
                 "signsum"};
    app.require_subcommand(1);
    options opt;
    app.add_flag("--json", opt.as_json, "write JSON instead of text")->configurable(false);
    app.add_option("--threads", opt.threads, "worker threads (default: SIGNSUM_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    app.fallthrough();

    std::string weights_path, offset = "0", threshold = "1", x_text, c_text, family;
    long double width = gaussian::default_target_width, precision = gaussian::default_target_width;
    int kmax = 60;
    std::string xi_text;
    std::size_t n = 4, restarts = 8, count = 500;
    std::uint64_t seed = battery_config{}.seed, search_seed = 1;

    auto* dist = app.add_subcommand("dist", "all signed sums with multiplicities");
    dist->add_option("--weights", weights_path, "weight file")->required();

    auto* prob = app.add_subcommand("prob", "Pr[|offset + S| <= threshold]");
    prob->add_option("--weights", weights_path, "weight file")->required();
    prob->add_option("--offset", offset, "shift x (rational or sqrt(p/q))");
    prob->add_option("--threshold", threshold, "threshold t >= 0 (rational)");

    auto* tail = app.add_subcommand("tail", "Pr[S >= x]");
    tail->add_option("--weights", weights_path, "weight file")->required();
    tail->add_option("--x", x_text, "x (rational or sqrt(p/q))")->required();

    auto* fvalue = app.add_subcommand("fvalue", "enclosure of F(c)");
    fvalue->add_option("--c", c_text, "c > 0 (rational)")->required();
    fvalue->add_option("--width", width, "target enclosure width")->check(CLI::PositiveNumber);

    auto* bound = app.add_subcommand("bound", "enclosure of Q(x)/(4 Q(sqrt 2))");
    bound->add_option("--x", x_text, "x (rational or sqrt(p/q))")->required();

    auto* verify = app.add_subcommand("verify", "run one verification");
    verify->require_subcommand(1);
    auto* v_const = verify->add_subcommand("main-constant", "F(1/4) > 0.427685");
    auto* v_fprop = verify->add_subcommand("f-properties", "bound, monotonicity and concavity of F plus both lemmas");
    v_fprop->add_option("--seed", seed, "seed of the random lemma 1 instances");
    v_fprop->add_option("--count", count, "number of random lemma 1 instances");
    auto* v_lemma1 = verify->add_subcommand("lemma1", "drift lemma on fixed and random instances");
    v_lemma1->add_option("--seed", seed, "seed of the random instances");
    v_lemma1->add_option("--count", count, "number of random instances");
    auto* v_lemma2 = verify->add_subcommand("lemma2", "weighted-average inequality for K = 2..kmax");
    v_lemma2->add_option("--kmax", kmax, "largest K")->check(CLI::Range(2, 100000));
    auto* v_xi = verify->add_subcommand("xi", "F(1/4+3xi/4)/2 + F(1/4-5xi/4)/2 >= F(1/4)");
    v_xi->add_option("--value", xi_text, "xi (rational)")->required();
    auto* v_conv = verify->add_subcommand("convexity", "Q(x^-1/2) convex on (1e-4, 1/3]");
    auto* v_bd = verify->add_subcommand("bd", "tail bound on the equality case and random instances");
    v_bd->add_option("--seed", seed, "seed of the random instances");
    v_bd->add_option("--count", count, "number of random instances");
    auto* v_main = verify->add_subcommand("main", "Pr[|S| <= 1] > 0.427685 for one vector");
    v_main->add_option("--weights", weights_path, "weight file")->required();

    auto* search = app.add_subcommand("search", "local search for small Pr[|S| <= 1]");
    search->add_option("--n", n, "number of weights")->required()->check(CLI::PositiveNumber);
    search->add_option("--restarts", restarts, "restarts")->required()->check(CLI::PositiveNumber);
    search->add_option("--seed", search_seed, "seed")->required();

    auto* sweep = app.add_subcommand("sweep", "Pr[|S| <= 1] across a family of unit vectors");
    sweep->add_option("--family", family, "uniform, two-block or dyadic")
        ->required()
        ->check(CLI::IsMember({"uniform", "two-block", "dyadic"}));
    sweep->add_option("--n", n, "number of weights")->required()->check(CLI::PositiveNumber);

    auto* report = app.add_subcommand("report", "full verification battery");
    report->add_option("--precision", precision, "target enclosure width")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }
    if (opt.threads) set_worker_count(opt.threads);

    try {
        if (*dist) {
            const auto d = enumerate_distribution(io::read_weight_file(weights_path));
            emit(out, opt, io::to_json(d), [](std::ostream& os, const json& j) {
                os << "mode " << j.at("mode").get<std::string>() << ", " << j.at("total").get<std::string>()
                   << " sign patterns\n";
                for (const auto& a : j.at("atoms")) {
                    os << (a.at("exact").is_null() ? text::iv(a.at("enclosure")) : a.at("exact").get<std::string>())
                       << "\t" << a.at("multiplicity").get<std::uint64_t>() << "\n";
                }
            });
            return ok;
        }
        if (*prob) {
            const auto p = prob_abs_shifted_le(io::read_weight_file(weights_path), real_value::parse(offset),
                                               rational::parse(threshold));
            emit(out, opt, io::to_json(p), [](std::ostream& os, const json& j) { os << text::probability(j) << "\n"; });
            return ok;
        }
        if (*tail) {
            const auto p = prob_tail_ge(io::read_weight_file(weights_path), real_value::parse(x_text));
            emit(out, opt, io::to_json(p), [](std::ostream& os, const json& j) { os << text::probability(j) << "\n"; });
            return ok;
        }
        if (*fvalue) {
            const rational c = rational::parse(c_text);
            const real_interval f = gaussian::f_of_c<long double>(c, width);
            const json j{{"c", io::to_json(c)}, {"F", io::to_json(f)}, {"precision", io::precision_json(width)}};
            emit(out, opt, j, [](std::ostream& os, const json& x) {
                os << "F(" << text::rat(x.at("c")) << ") in " << text::iv(x.at("F")) << "\n";
            });
            return ok;
        }
        if (*bound) {
            const real_value x = real_value::parse(x_text);
            const real_interval b = gaussian::bd_bound(x.enclosure());
            const json j{{"x", x.str()}, {"bound", io::to_json(b)}, {"precision", io::precision_json(width)}};
            emit(out, opt, j, [](std::ostream& os, const json& v) {
                os << "Q(x)/(4Q(sqrt 2)) at x = " << v.at("x").get<std::string>() << " in " << text::iv(v.at("bound"))
                   << "\n";
            });
            return ok;
        }
        if (*verify) {
            if (*v_const) return emit_report(out, opt, verify_main_constant());
            if (*v_fprop) {
                const auto l1 = verify_lemma1_suite(count, seed);
                const auto l2 = verify_lemma2_finite(60);
                return emit_report(out, opt, verify_f_properties_with(l1, l2, gaussian::default_target_width));
            }
            if (*v_lemma1) return emit_report(out, opt, verify_lemma1_suite(count, seed));
            if (*v_lemma2) return emit_report(out, opt, verify_lemma2_finite(kmax));
            if (*v_xi) return emit_report(out, opt, verify_xi_inequality(rational::parse(xi_text)));
            if (*v_conv) return emit_report(out, opt, verify_convexity_q_invsqrt(default_convexity_grid()));
            if (*v_bd) return emit_report(out, opt, verify_bd_suite(count, seed));
            if (*v_main) return emit_report(out, opt, verify_main_conclusion(io::read_weight_file(weights_path)));
        }
        if (*search) {
            search_config cfg;
            cfg.n = n;
            cfg.restarts = restarts;
            cfg.seed = search_seed;
            const search_result r = minimize_prob(cfg);
            emit(out, opt, io::to_json(r), [](std::ostream& os, const json& j) {
                os << "best " << text::weights(j.at("best")) << "\n";
                os << "Pr[|S| <= 1] = " << text::rat(j.at("probability")) << " (restart "
                   << j.at("best_restart").get<std::size_t>() << ")\n";
                os << "restart\tprobability\n";
                const auto& ps = j.at("restart_probabilities");
                for (std::size_t i = 0; i < ps.size(); ++i) os << i << "\t" << text::rat(ps[i]) << "\n";
                os << "all above 0.427685: " << j.at("lower_bound_check").get<std::string>() << "\n";
            });
            return r.lower_bound_check == verdict::verified ? ok : refuted;
        }
        if (*sweep) {
            const auto rows = sweep_family(parse_family(family), n);
            emit(out, opt, io::to_json(rows), [](std::ostream& os, const json& j) {
                os << "probability\tparameters\n";
                for (const auto& row : j) {
                    os << text::probability(row.at("probability")) << "\t" << row.at("parameters").get<std::string>()
                       << "\n";
                }
            });
            return ok;
        }
        if (*report) {
            battery_config cfg;
            cfg.precision = precision;
            return emit_report(out, opt, report_all(cfg));
        }
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const contract_error& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const capacity_error& e) {
        err << "error: " << e.what() << "\n";
        return capacity;
    } catch (const precision_exhausted& e) {
        err << "error: " << e.what() << "\n";
        return capacity;
    }
    return usage;
}

}  // namespace signsum::cli
