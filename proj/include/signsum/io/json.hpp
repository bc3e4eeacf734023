#pragma once

#include <charconv>
#include <limits>
#include <string>

#include <json.hpp>

#include "signsum/distribution/distribution.hpp"
#include "signsum/search.hpp"
#include "signsum/verifier/report.hpp"

// JSON encoding. Keys keep insertion order and nothing time-dependent is
// written, so equal inputs give byte-identical output. Rationals are
// {"num", "den"} decimal strings; interval ends are the shortest decimal
// strings that read back to the same long double.
namespace signsum::io {

using json = nlohmann::ordered_json;

inline std::string float_text(long double x) {
    if (x == std::numeric_limits<long double>::infinity()) return "inf";
    if (x == -std::numeric_limits<long double>::infinity()) return "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline json to_json(const rational& r) { return json{{"num", r.num().str()}, {"den", r.den().str()}}; }

inline json to_json(const real_interval& x) { return json{{"lo", float_text(x.lo())}, {"hi", float_text(x.hi())}}; }

inline json precision_json(long double target) {
    return json{{"target_width", float_text(target)},
                {"significand_bits", std::numeric_limits<long double>::digits}};
}

inline json to_json(const real_value& v) {
    json j;
    j["exact"] = v.is_exact() ? json(v.str()) : json(nullptr);
    j["enclosure"] = to_json(v.enclosure());
    return j;
}

inline json to_json(const weight_vector& v) {
    json arr = json::array();
    for (const auto& e : v.entries()) arr.push_back(e.is_exact() ? json(e.str()) : to_json(e.enclosure()));
    return arr;
}

inline json to_json(const probability_result& p) {
    json j;
    j["exact"] = p.exact ? to_json(*p.exact) : json(nullptr);
    j["lower"] = to_json(p.lower);
    j["upper"] = to_json(p.upper);
    j["ambiguous_atoms"] = p.ambiguous_atoms;
    j["enclosure"] = to_json(p.bounds());
    return j;
}

inline json to_json(const signed_sum_distribution& d) {
    json atoms = json::array();
    for (const auto& a : d.atoms) {
        json j = to_json(a.value);
        j["multiplicity"] = a.multiplicity;
        atoms.push_back(std::move(j));
    }
    return json{{"mode", std::string(to_string(d.mode))}, {"total", d.total.str()}, {"atoms", std::move(atoms)}};
}

inline json to_json(const evidence& e) {
    json j;
    j["input"] = e.input;
    j["relation"] = e.relation;
    j["lhs"] = e.lhs ? to_json(*e.lhs) : json(nullptr);
    j["rhs"] = e.rhs ? to_json(*e.rhs) : json(nullptr);
    if (e.exact) j["exact"] = to_json(*e.exact);
    j["verdict"] = std::string(to_string(e.outcome));
    if (!e.note.empty()) j["note"] = e.note;
    return j;
}

inline json to_json(const verification_report& r) {
    json j;
    j["claim"] = r.claim;
    j["verdict"] = std::string(to_string(r.result));
    j["precision"] = precision_json(r.precision);
    json ev = json::array();
    for (const auto& e : r.records) ev.push_back(to_json(e));
    j["evidence"] = std::move(ev);
    if (!r.components.empty()) {
        json comps = json::array();
        for (const auto& c : r.components) comps.push_back(to_json(c));
        j["components"] = std::move(comps);
    }
    return j;
}

inline json to_json(const search_result& r) {
    json j;
    j["best"] = to_json(r.best);
    j["probability"] = to_json(r.probability);
    j["best_restart"] = r.best_restart;
    json probs = json::array();
    for (const auto& p : r.restart_probabilities) probs.push_back(to_json(p));
    j["restart_probabilities"] = std::move(probs);
    json traj = json::array();
    for (const auto& t : r.trajectory) traj.push_back(json{{"iteration", t.iteration}, {"probability", t.probability}});
    j["trajectory"] = std::move(traj);
    j["lower_bound_check"] = std::string(to_string(r.lower_bound_check));
    return j;
}

inline json to_json(const std::vector<sweep_row>& rows) {
    json arr = json::array();
    for (const auto& row : rows)
        arr.push_back(json{{"parameters", row.parameters},
                           {"weights", to_json(row.weights)},
                           {"probability", to_json(row.probability)}});
    return arr;
}

}  // namespace signsum::io
