// Exact Pr[|S| <= 1] and the tail bound for a few hand-picked unit vectors.
#include <iostream>

#include "signsum/signsum.hpp"

int main() {
    using namespace signsum;
    const char* vectors[][4] = {
        {"sqrt(1/2)", "sqrt(1/2)", nullptr, nullptr},
        {"3/5", "4/5", nullptr, nullptr},
        {"sqrt(1/3)", "sqrt(1/3)", "sqrt(1/3)", nullptr},
        {"1/2", "1/2", "1/2", "1/2"},
    };
    std::cout << "F(1/4) in " << gaussian::f_of_c<long double>(rational(1, 4)) << "\n\n";
    for (const auto& row : vectors) {
        std::vector<real_value> w;
        for (const char* s : row)
            if (s) w.push_back(real_value::parse(s));
        const weight_vector v(std::move(w));
        const auto p = prob_abs_shifted_le(v, real_value(0), rational(1));
        std::cout << v.str() << "\n  Pr[|S| <= 1] = " << (p.exact ? p.exact->str() : "undecided") << "\n";
        const auto t = prob_tail_ge(v, real_value(1));
        std::cout << "  Pr[S >= 1] = " << (t.exact ? t.exact->str() : "undecided")
                  << ", bound " << gaussian::bd_bound(real_interval(1.0L)) << "\n";
    }
}
