// ============================================================================
// mltl/boundary.hpp — boundary maps over rounded key-domains and their
// fabrication: joins, limits, shuffles, and satisfiability over the
// irreflexive plane product frame
// ============================================================================
//
// A boundary map summarises a rectangle model: traces along the four edges,
// MCSs at the four corners, and the minimal/maximal interior clusters - and +.
// The key-domain is any rounded subset of {-,+,N,S,E,W,b,l,r,t} containing
// {-,+}: a corner may only be present when both adjacent edges are.
//
// Fabrication computes the least set containing every valid simple map
// (interior clusters equal) and every one-point map, closed under the two
// joins, the two limits, and shuffles.  The saturation interns maps
// canonically and tracks, fused into the fixed point, whether the goal
// formula occurs in a map's labels or anywhere in its derivation.  A formula
// is satisfiable over the frame exactly when it occurs in an open fabricated
// map, so the engine can stop early on the first open hit.
//
// Caps are explicit: when any enumeration is truncated the engine reports it
// and negative verdicts degrade to "unknown".
//
// ============================================================================

#ifndef MLTL_BOUNDARY_HPP
#define MLTL_BOUNDARY_HPP

#include <array>
#include <optional>
#include <unordered_map>

#include "mltl/trace.hpp"
#include "mltl/verdict.hpp"

namespace mltl {

// ── Key domains ─────────────────────────────────────────────────────────────

enum MapKey : uint8_t {
    KeyMinus = 0, KeyPlus = 1,
    KeyN = 2, KeyS = 3, KeyE = 4, KeyW = 5,
    KeyB = 6, KeyL = 7, KeyR = 8, KeyT = 9
};

using DomainMask = uint16_t;

inline constexpr DomainMask kOpenDomain = (1u << KeyMinus) | (1u << KeyPlus);
inline constexpr DomainMask kClosedDomain = 0x3FF;

inline bool has_key(DomainMask d, MapKey k) { return (d >> k) & 1u; }

bool domain_is_rounded(DomainMask d);
bool domain_is_rectangular(DomainMask d);
// All 47 rounded domains, in ascending mask order.
const std::vector<DomainMask>& all_rounded_domains();

// ── BoundaryMap ─────────────────────────────────────────────────────────────

struct BoundaryMap {
    DomainMask domain = kOpenDomain;
    uint32_t minus = kNone, plus = kNone;                     // cluster ids
    std::array<uint32_t, 4> edge{kNone, kNone, kNone, kNone};     // N,S,E,W trace ids
    std::array<uint32_t, 4> corner{kNone, kNone, kNone, kNone};   // b,l,r,t MCS ids

    uint32_t& edge_ref(MapKey k) { return edge[k - KeyN]; }
    uint32_t edge_of(MapKey k) const { return edge[k - KeyN]; }
    uint32_t& corner_ref(MapKey k) { return corner[k - KeyB]; }
    uint32_t corner_of(MapKey k) const { return corner[k - KeyB]; }
    bool has(MapKey k) const { return has_key(domain, k); }

    bool operator==(const BoundaryMap& o) const {
        return domain == o.domain && minus == o.minus && plus == o.plus &&
               edge == o.edge && corner == o.corner;
    }
    size_t hash() const {
        size_t h = domain;
        h = h * 1099511628211ull ^ minus;
        h = h * 1099511628211ull ^ plus;
        for (uint32_t e : edge) h = h * 1099511628211ull ^ e;
        for (uint32_t c : corner) h = h * 1099511628211ull ^ c;
        return h;
    }
};

struct RectContext {
    Filtration& ft;
    TracePool& traces;
};

// Checks every ordering and defect-flow condition for the keys in the domain;
// violations are reported clause by clause.
ValidationReport validate_boundary(const RectContext& cx, const BoundaryMap& m);

// Simple: the two interior clusters coincide (and the map is valid).
bool is_simple(const RectContext& cx, const BoundaryMap& m);

// Joins.  `top` fits to the north of `bottom` (resp. `right` to the east of
// `left`); throws JoinError naming the offending key when the fit fails.
struct JoinError : std::runtime_error {
    std::string key;
    explicit JoinError(const std::string& k)
        : std::runtime_error("join fit failed at key " + k), key(k) {}
};
BoundaryMap join_north(RectContext& cx, const BoundaryMap& bottom, const BoundaryMap& top);
BoundaryMap join_east(RectContext& cx, const BoundaryMap& left, const BoundaryMap& right);

// Limits.  star is a southeastern (northeastern) limit of m0 using m1,m2,m3.
struct LimitCheck {
    bool ok = true;
    std::vector<std::string> failed;       // failed bullets
    std::vector<std::string> diagnostics;  // surfaced parentheticals, not requirements
};
LimitCheck is_limit_se(RectContext& cx, const BoundaryMap& star, const BoundaryMap& m0,
                       const BoundaryMap& m1, const BoundaryMap& m2, const BoundaryMap& m3);
LimitCheck is_limit_ne(RectContext& cx, const BoundaryMap& star, const BoundaryMap& m0,
                       const BoundaryMap& m1, const BoundaryMap& m2, const BoundaryMap& m3);

// Shuffles.  Parts are closed maps or one-point maps (an MCS standing for the
// constant map on {b,t}); at least one one-point part is required and
// 1 <= |parts| <= |phi|.
struct ShufflePart {
    bool one_point;
    BoundaryMap map;      // when !one_point; must be closed
    uint32_t mcs = kNone; // when one_point
};
bool is_shuffle(const RectContext& cx, const BoundaryMap& target,
                const std::vector<ShufflePart>& parts, ValidationReport* why = nullptr);

// ── Fabrication ─────────────────────────────────────────────────────────────

enum class DerivKind : uint8_t {
    Simple, OnePoint, JoinN, JoinE, LimitSE, LimitNE, Shuffle
};

struct FabEntry {
    bool one_point;
    uint32_t map;          // map id, or MCS id for one-point entries
    bool occurs;
    DerivKind kind;
    std::vector<uint32_t> children;  // entry indices
};

struct FabOptions {
    Budget budget;
    bool early_exit_on_sat = true;
    uint64_t seed_permutation = 0;  // nonzero: deterministic shuffle of seed order
};

class RectEngine {
public:
    RectEngine(Filtration& ft, const FabOptions& opt);

    // Saturates to the least fixed point (or stops at the first open map in
    // which phi occurs, if early exit is enabled).
    void run();

    bool sat_found() const { return sat_entry_ != kNone; }
    uint32_t sat_entry() const { return sat_entry_; }
    bool truncated() const { return truncated_; }
    const std::string& truncation_reason() const { return truncation_reason_; }

    size_t map_count() const { return maps_.size(); }
    size_t entry_count() const { return entries_.size(); }
    const BoundaryMap& map(uint32_t id) const { return maps_[id]; }
    const FabEntry& entry(uint32_t e) const { return entries_[e]; }
    RectContext context() { return {ft_, traces_}; }
    const TracePool& traces() const { return traces_; }

    // Canonical serialization of the fabricated set, for the worklist-order
    // independence check.
    std::vector<std::string> fabricated_signatures() const;

    nlohmann::ordered_json witness_json(uint32_t entry_idx) const;

private:
    friend struct RectGen;
    bool fabricate(bool one_point, uint32_t id, bool occ, DerivKind kind,
                   std::vector<uint32_t> children);
    bool label_occurs(const BoundaryMap& m) const;
    void process_joins(uint32_t entry_idx);
    void limit_pass();
    void shuffle_pass();
    uint32_t intern_map(const BoundaryMap& m);   // kNone if pruned or capped
    void seed();
    bool admissible_map(const BoundaryMap& m) const;  // validity + model-coherence pruning

    Filtration& ft_;
    FabOptions opt_;
    TracePool traces_;

    std::vector<BoundaryMap> maps_;
    std::unordered_map<size_t, std::vector<uint32_t>> map_index_;
    std::vector<char> map_valid_;

    // per map: 0 = not fabricated, 1 = fabricated without occurrence,
    // 2 = fabricated with occurrence; one-points tracked per MCS id
    std::vector<uint8_t> fab_state_;
    std::vector<uint8_t> onepoint_state_;
    std::vector<uint32_t> entry_for_;          // map id -> best entry
    std::vector<uint32_t> onepoint_entry_;
    std::vector<FabEntry> entries_;
    std::vector<uint32_t> worklist_;

    // join partner indexes over fabricated proper maps
    std::unordered_map<uint32_t, std::vector<uint32_t>> fab_by_N_, fab_by_S_, fab_by_E_, fab_by_W_;
    // discovered decompositions result -> (bottom/left, top/right) entries
    std::unordered_map<uint32_t, std::vector<std::pair<uint32_t, uint32_t>>> decomp_n_, decomp_e_;

    uint32_t sat_entry_ = kNone;
    bool truncated_ = false;
    std::string truncation_reason_;
    size_t work_ = 0;
};

// Satisfiability over the plane product frame with accessibility made
// irreflexive.  Sat verdicts carry a witness derivation.
Verdict sat_m(FormulaFactory& f, FormulaId phi, const FabOptions& opt = {});

}  // namespace mltl

#endif  // MLTL_BOUNDARY_HPP
