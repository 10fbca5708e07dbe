// ============================================================================
// mltl/trace.hpp — traces (time-like lines) and bi-traces (light-lines)
// ============================================================================
//
// A trace is an alternating ≲-ordered sequence (c0, m0, c1, ..., m_{k-1}, ck)
// of distinct clusters and separating MCSs, summarising the truth sets along
// a time-like line.  A bi-trace pairs a lower and an upper cluster sequence
// with boundary MCSs and summarises a light-line of the strict frame, where
// distinct points on the line are unordered and only the clusters holding
// arbitrarily soon above/recently below each point are recorded.
//
// Pools intern values and can enumerate the full universe over a Filtration,
// with caps; truncation is reported so callers can degrade to "unknown".
//
// ============================================================================

#ifndef MLTL_TRACE_HPP
#define MLTL_TRACE_HPP

#include <unordered_map>
#include <vector>

#include "mltl/mcs.hpp"

namespace mltl {

struct Trace {
    std::vector<uint32_t> clusters;  // k+1 distinct clusters, ≲-ordered
    std::vector<uint32_t> mcss;      // k separating MCSs
    bool operator==(const Trace& o) const {
        return clusters == o.clusters && mcss == o.mcss;
    }
};

struct BiTrace {
    std::vector<uint32_t> lower;   // n+1 lower clusters, ≲-ordered
    std::vector<uint32_t> upper;   // n+1 upper clusters, ≲-ordered
    std::vector<uint32_t> bounds;  // n boundary MCSs
    bool operator==(const BiTrace& o) const {
        return lower == o.lower && upper == o.upper && bounds == o.bounds;
    }
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
    void fail(const std::string& clause) {
        ok = false;
        violations.push_back(clause);
    }
};

// ── Traces ──────────────────────────────────────────────────────────────────

ValidationReport validate_trace(const Filtration& ft, const Trace& t);

// Defects of a trace: future defects of the final cluster plus any element's
// future defect not passed up to its successor; dual for past with the
// initial cluster.  Sources are reported so callers can re-check flows.
struct TraceDefect {
    NodeRef source;
    Defect defect;
};
std::vector<TraceDefect> trace_defects(const Filtration& ft, const Trace& t);

// t ⊕ m ⊕ t2: concatenation; when final_cluster(t) == initial_cluster(t2) the
// two are identified and m is omitted.  Throws PreconditionError on ordering
// violations or duplicate clusters in the result.
Trace trace_join(const Filtration& ft, const Trace& t, uint32_t mcs, const Trace& t2);

class TracePool {
public:
    explicit TracePool(const Filtration& ft) : ft_(&ft) {}

    uint32_t intern(const Trace& t);
    const Trace& get(uint32_t id) const { return traces_[id]; }
    size_t size() const { return traces_.size(); }
    uint32_t initial_cluster(uint32_t id) const { return traces_[id].clusters.front(); }
    uint32_t final_cluster(uint32_t id) const { return traces_[id].clusters.back(); }
    uint32_t single(uint32_t cluster);

    // Exhaustively enumerates every valid trace, up to `cap` interned values.
    // Returns true when the universe is complete.
    bool enumerate_all(size_t cap);
    bool enumerated() const { return enumerated_; }
    bool truncated() const { return truncated_; }
    const std::vector<uint32_t>& all() const { return all_; }

private:
    const Filtration* ft_;
    std::vector<Trace> traces_;
    std::unordered_map<size_t, std::vector<uint32_t>> index_;
    std::vector<uint32_t> all_;
    bool enumerated_ = false;
    bool truncated_ = false;
};

// ── Bi-traces ───────────────────────────────────────────────────────────────

// Checks conditions (i)-(iv); violations are tagged with the clause number.
ValidationReport validate_bitrace(const Filtration& ft, const BiTrace& bt);

BiTrace bitrace_join(const Filtration& ft, const BiTrace& bt, uint32_t boundary_mcs,
                     const BiTrace& bt2);

// Unresolved defect flow along a bi-trace, used by the bi-variant limit side
// conditions.  The paper leaves these implicit ("no significant changes");
// the transcription here reads the upper sequence for future obligations and
// the lower sequence for past ones, with boundary-MCS obligations already
// discharged by bi-trace condition (iv).
std::vector<TraceDefect> bitrace_future_defects(const Filtration& ft, const BiTrace& bt);
std::vector<TraceDefect> bitrace_past_defects(const Filtration& ft, const BiTrace& bt);

class BiTracePool {
public:
    explicit BiTracePool(const Filtration& ft) : ft_(&ft) {}

    uint32_t intern(const BiTrace& bt);
    const BiTrace& get(uint32_t id) const { return bitraces_[id]; }
    size_t size() const { return bitraces_.size(); }
    uint32_t final_lower(uint32_t id) const { return bitraces_[id].lower.back(); }
    uint32_t final_upper(uint32_t id) const { return bitraces_[id].upper.back(); }
    uint32_t initial_lower(uint32_t id) const { return bitraces_[id].lower.front(); }
    uint32_t initial_upper(uint32_t id) const { return bitraces_[id].upper.front(); }
    bool lower_constant(uint32_t id) const;

    bool enumerate_all(size_t cap);
    bool enumerated() const { return enumerated_; }
    bool truncated() const { return truncated_; }
    const std::vector<uint32_t>& all() const { return all_; }

private:
    const Filtration* ft_;
    std::vector<BiTrace> bitraces_;
    std::unordered_map<size_t, std::vector<uint32_t>> index_;
    std::vector<uint32_t> all_;
    bool enumerated_ = false;
    bool truncated_ = false;
};

}  // namespace mltl

#endif  // MLTL_TRACE_HPP
