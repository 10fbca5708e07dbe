// ============================================================================
// mltl/common.hpp — shared small types: bitsets, errors, budgets, logging
// ============================================================================

#ifndef MLTL_COMMON_HPP
#define MLTL_COMMON_HPP

#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mltl {

using std::size_t;
using std::uint32_t;
using std::uint64_t;

inline constexpr uint32_t kNone = static_cast<uint32_t>(-1);

// ── Bits ────────────────────────────────────────────────────────────────────
// Fixed-width dynamic bitset.  Closure sets and MCS universes at desk scale
// fit in a handful of words, so everything is kept inline and hashable.

class Bits {
public:
    Bits() = default;
    explicit Bits(size_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    size_t size() const { return nbits_; }
    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(size_t i, bool v = true) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void or_with(const Bits& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    }
    bool intersects(const Bits& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    bool contains(const Bits& o) const {  // o subset of this
        for (size_t i = 0; i < w_.size(); ++i)
            if (o.w_[i] & ~w_[i]) return false;
        return true;
    }
    bool any() const {
        for (uint64_t w : w_) if (w) return true;
        return false;
    }
    size_t count() const {
        size_t n = 0;
        for (uint64_t w : w_) n += static_cast<size_t>(__builtin_popcountll(w));
        return n;
    }
    bool operator==(const Bits& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }
    bool operator<(const Bits& o) const { return w_ < o.w_; }

    // "0110..." indicator string, index 0 first.
    std::string to_string() const {
        std::string s(nbits_, '0');
        for (size_t i = 0; i < nbits_; ++i) if (get(i)) s[i] = '1';
        return s;
    }
    static Bits from_string(const std::string& s) {
        Bits b(s.size());
        for (size_t i = 0; i < s.size(); ++i)
            if (s[i] == '1') b.set(i);
        return b;
    }

    size_t hash() const {
        size_t h = nbits_;
        for (uint64_t w : w_) h = h * 1099511628211ull ^ w;
        return h;
    }

private:
    size_t nbits_ = 0;
    std::vector<uint64_t> w_;
};

struct BitsHash {
    size_t operator()(const Bits& b) const { return b.hash(); }
};

// ── Errors ──────────────────────────────────────────────────────────────────

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(size_t pos, const std::string& msg)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a configured resource cap is exceeded.  Callers translate this
// into an "unknown" verdict; it must never turn into a wrong sat/unsat answer.
struct ResourceLimit : std::runtime_error {
    explicit ResourceLimit(const std::string& what_limit)
        : std::runtime_error("resource limit exceeded: " + what_limit) {}
};

// ── Budget ──────────────────────────────────────────────────────────────────

struct Budget {
    size_t tableau_nodes = 1u << 20;       // K_t consistency oracle work units
    size_t max_traces = 2'000'000;         // interned traces / bi-traces per kind
    size_t max_maps = 5'000'000;           // interned boundary-like maps
    uint64_t max_millis = 0;               // 0 = no wall-clock limit
};

// ── Logging ─────────────────────────────────────────────────────────────────
// MLTL_LOG = off | info | debug.  Diagnostics go to stderr only.

enum class LogLevel { Off = 0, Info = 1, Debug = 2 };

inline LogLevel log_level() {
    static LogLevel lvl = [] {
        const char* e = std::getenv("MLTL_LOG");
        if (!e) return LogLevel::Off;
        if (std::strcmp(e, "debug") == 0) return LogLevel::Debug;
        if (std::strcmp(e, "info") == 0) return LogLevel::Info;
        return LogLevel::Off;
    }();
    return lvl;
}

inline void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) std::cerr << "[mltl] " << msg << "\n";
}
inline void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::Debug) std::cerr << "[mltl:debug] " << msg << "\n";
}

}  // namespace mltl

#endif  // MLTL_COMMON_HPP
