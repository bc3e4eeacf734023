#pragma once

#include <string_view>

namespace signsum {

enum class verdict { verified, refuted, undecided };

constexpr std::string_view to_string(verdict v) {
    switch (v) {
        case verdict::verified: return "verified";
        case verdict::refuted: return "refuted";
        case verdict::undecided: return "undecided";
    }
    return "undecided";
}

/// Refuted dominates undecided, which dominates verified.
constexpr verdict combine(verdict a, verdict b) {
    if (a == verdict::refuted || b == verdict::refuted) return verdict::refuted;
    if (a == verdict::undecided || b == verdict::undecided) return verdict::undecided;
    return verdict::verified;
}

}  // namespace signsum
