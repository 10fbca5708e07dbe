// ============================================================================
// mltl/mcs.hpp — maximal consistent sets, the ≲ preorder, clusters, defects
// ============================================================================
//
// An MCS is stored as the indicator function of its members over the closure
// indices of Cl(phi).  Internally MCS search works over subformula/negation
// pairs: letters and temporal formulas are free bits, the boolean connectives
// are forced by propagation, and the remaining candidates are filtered by the
// K_t consistency oracle.
//
// The oracle decides whether a finite set of formulas can hold together at a
// point of some arbitrary temporal frame (F along R, P along its converse).
// It works world-at-a-time over fully expanded candidate worlds with global
// caching: worlds whose F/P members cannot be discharged by any compatible
// world are eliminated until a fixed point is reached.  Verdicts are exact;
// exceeding the configured work budget raises ResourceLimit and never turns
// into a wrong answer.
//
// ============================================================================

#ifndef MLTL_MCS_HPP
#define MLTL_MCS_HPP

#include <map>
#include <optional>
#include <vector>

#include "mltl/common.hpp"
#include "mltl/formula.hpp"

namespace mltl {

// Exact K_t satisfiability of a finite formula set.
bool kt_satisfiable(FormulaFactory& f, const std::vector<FormulaId>& formulas,
                    const Budget& budget = {});

struct Defect {
    bool future;          // false = past
    uint32_t formula_idx; // closure index of the F/P formula
    bool operator==(const Defect& o) const {
        return future == o.future && formula_idx == o.formula_idx;
    }
};

struct Cluster {
    uint32_t representative;        // smallest member id, used for ≲ checks
    std::vector<uint32_t> members;  // MCS ids, ascending
    Bits belongs;                   // union indicator over closure indices
};

// A reference to either an MCS or a cluster, the two things defects flow
// between.
struct NodeRef {
    enum Kind : uint8_t { McsNode, ClusterNode };
    Kind kind;
    uint32_t idx;
    static NodeRef mcs(uint32_t i) { return {McsNode, i}; }
    static NodeRef cluster(uint32_t i) { return {ClusterNode, i}; }
    bool operator==(const NodeRef& o) const { return kind == o.kind && idx == o.idx; }
};

// ── Filtration ──────────────────────────────────────────────────────────────
// Per-formula analysis context: closure set, all MCSs, the ≲ matrix, the
// cluster decomposition and defect tables.  Everything is computed eagerly
// and immutable afterwards, so sharing across threads is safe.

class Filtration {
public:
    Filtration(FormulaFactory& f, FormulaId phi, const Budget& budget = {});

    FormulaFactory& factory() const { return *f_; }
    const ClosureSet& closure() const { return cl_; }
    const Budget& budget() const { return budget_; }

    // MCS layer
    size_t mcs_count() const { return mcs_.size(); }
    const Bits& mcs_bits(size_t m) const { return mcs_[m]; }
    bool lesssim(size_t m, size_t n) const { return leq_rows_[m].get(n); }
    bool reflexive(size_t m) const { return lesssim(m, m); }
    std::vector<Defect> mcs_defects(size_t m) const;

    // Cluster layer
    size_t cluster_count() const { return clusters_.size(); }
    const Cluster& cluster(size_t c) const { return clusters_[c]; }
    uint32_t cluster_of(size_t m) const { return cluster_of_[m]; }  // kNone if irreflexive
    const std::vector<uint32_t>& irreflexives() const { return irreflexives_; }
    std::vector<Defect> cluster_defects(size_t c) const;
    // Cluster chain order: distinct clusters a ≤ b (via representatives).
    bool cluster_leq(uint32_t a, uint32_t b) const {
        return lesssim(clusters_[a].representative, clusters_[b].representative);
    }
    bool cluster_reaches(uint32_t a, uint32_t b) const { return reach_[a].get(b); }

    // Node layer
    const Bits& bits_of(NodeRef r) const {
        return r.kind == NodeRef::McsNode ? mcs_[r.idx] : clusters_[r.idx].belongs;
    }
    uint32_t representative(NodeRef r) const {
        return r.kind == NodeRef::McsNode ? r.idx : clusters_[r.idx].representative;
    }
    bool leq(NodeRef a, NodeRef b) const {
        return lesssim(representative(a), representative(b));
    }
    std::vector<Defect> defects(NodeRef r) const {
        return r.kind == NodeRef::McsNode ? mcs_defects(r.idx) : cluster_defects(r.idx);
    }

    // Defect flow.  passes_up/passes_down check the ≲ precondition and throw
    // PreconditionError on violation; the _if variants return false instead.
    bool passes_up(const Defect& d, NodeRef from, NodeRef to) const;
    bool passes_down(const Defect& d, NodeRef from, NodeRef to) const;
    bool passes_up_if(const Defect& d, NodeRef from, NodeRef to) const;
    bool passes_down_if(const Defect& d, NodeRef from, NodeRef to) const;
    // All defects of `from` discharge into `to` (used by interpolants etc.).
    bool future_defects_pass_up(NodeRef from, NodeRef to) const;
    bool past_defects_pass_down(NodeRef from, NodeRef to) const;

    // Interpolants of a (lower, upper) cluster pair: MCSs lying between them
    // whose future defects pass up and past defects pass down.
    const std::vector<uint32_t>& interpolants(uint32_t lo, uint32_t hi) const;
    bool interpolant_exists(uint32_t lo, uint32_t hi) const {
        return !interpolants(lo, hi).empty();
    }

    // Closure item helpers
    Op item_op(size_t closure_idx) const { return item_op_[closure_idx]; }
    uint32_t item_child(size_t closure_idx) const { return item_child_[closure_idx]; }
    size_t phi_index() const { return cl_.phi_index(); }

    // Diagnostic dump for the fuzz harness:
    // {"mcs":[{"bits":"0110..."}...],"clusters":[...],"lesssim":[[i,j]...]}
    std::string to_json() const;

private:
    FormulaFactory* f_;
    Budget budget_;
    ClosureSet cl_;
    std::vector<Bits> mcs_;                 // closure-index indicators, canonical order
    std::vector<Bits> leq_rows_;            // leq_rows_[m].get(n) == m ≲ n
    std::vector<Cluster> clusters_;
    std::vector<uint32_t> cluster_of_;
    std::vector<uint32_t> irreflexives_;
    std::vector<Bits> reach_;               // cluster reachability (reflexive-transitive)
    std::vector<Op> item_op_;
    std::vector<uint32_t> item_child_;
    mutable std::map<std::pair<uint32_t, uint32_t>, std::vector<uint32_t>> interp_;
};

// Spec-level conveniences over the Filtration tables.
std::vector<Bits> enumerate_mcs(Filtration& ft);

}  // namespace mltl

#endif  // MLTL_MCS_HPP
