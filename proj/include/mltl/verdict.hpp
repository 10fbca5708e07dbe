// ============================================================================
// mltl/verdict.hpp — solver verdicts and run statistics
// ============================================================================

#ifndef MLTL_VERDICT_HPP
#define MLTL_VERDICT_HPP

#include <string>

#include "json.hpp"
#include "mltl/common.hpp"

namespace mltl {

enum class Truth : uint8_t { Sat, Unsat, Unknown };

inline const char* to_string(Truth t) {
    switch (t) {
        case Truth::Sat: return "sat";
        case Truth::Unsat: return "unsat";
        default: return "unknown";
    }
}

struct Stats {
    size_t mcs = 0;
    size_t clusters = 0;
    size_t maps = 0;      // interned boundary-like maps across engines
    uint64_t millis = 0;
};

struct Verdict {
    Truth truth = Truth::Unknown;
    nlohmann::ordered_json witness;  // derivation tree for sat verdicts, else null
    Stats stats;
    std::string note;                // cap diagnostics for unknown verdicts
};

}  // namespace mltl

#endif  // MLTL_VERDICT_HPP
