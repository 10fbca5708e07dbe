// ============================================================================
// mltl/formula.hpp — temporal formula AST, parser, printer, closure sets
// ============================================================================
//
// Formulas are nodes in an interned DAG owned by a FormulaFactory; clients
// hold FormulaId handles, so structural equality is pointer equality.
//
// Node kinds: Letter, Neg, Disj, Conj, Impl, F, P.  The box operators are
// derived: G x and H x are built as ~F~x and ~P~x at construction time, so
// they never appear as nodes.  Double negation is always collapsed by
// make_neg, which keeps subformula/negation pairs canonical.
//
// Concrete grammar (whitespace insensitive, unary binds tightest,
// "->" right-associative):
//
//   formula := impl
//   impl    := disj ("->" impl)?
//   disj    := conj ("|" conj)*
//   conj    := unary ("&" unary)*
//   unary   := ("~"|"F"|"P"|"G"|"H") unary | atom
//   atom    := letter | "(" formula ")"
//   letter  := [a-z][a-zA-Z0-9_]*
//
// ============================================================================

#ifndef MLTL_FORMULA_HPP
#define MLTL_FORMULA_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "mltl/common.hpp"

namespace mltl {

using FormulaId = uint32_t;

enum class Op : uint8_t { Letter, Neg, Disj, Conj, Impl, F, P };

struct FormulaNode {
    Op op;
    FormulaId lhs = kNone;   // child for unary ops
    FormulaId rhs = kNone;
    uint32_t name_idx = kNone;  // Letter only
    uint32_t size = 1;          // node count of the subtree
};

class FormulaFactory {
public:
    FormulaId make_letter(const std::string& name);
    FormulaId make_neg(FormulaId a);    // collapses ~~x to x
    FormulaId make_disj(FormulaId a, FormulaId b);
    FormulaId make_conj(FormulaId a, FormulaId b);
    FormulaId make_impl(FormulaId a, FormulaId b);
    FormulaId make_f(FormulaId a);
    FormulaId make_p(FormulaId a);
    FormulaId make_g(FormulaId a) { return make_neg(make_f(make_neg(a))); }
    FormulaId make_h(FormulaId a) { return make_neg(make_p(make_neg(a))); }

    const FormulaNode& node(FormulaId id) const { return nodes_[id]; }
    const std::string& letter_name(FormulaId id) const { return names_[nodes_[id].name_idx]; }
    uint32_t size(FormulaId id) const { return nodes_[id].size; }
    size_t node_count() const { return nodes_.size(); }

    // Deterministic structural ordering: by (size, op tag, letter name,
    // recursive comparison of children).  Used for canonical closure indexing.
    int compare(FormulaId a, FormulaId b) const;

private:
    FormulaId intern(FormulaNode n);

    std::vector<FormulaNode> nodes_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, uint32_t> name_idx_;
    std::unordered_map<uint64_t, std::vector<FormulaId>> buckets_;
};

// Parses the concrete grammar above; throws ParseError with position.
FormulaId parse(FormulaFactory& f, const std::string& text);

// Emits parseable text with minimal parentheses; parse(render(x)) == x.
std::string render(const FormulaFactory& f, FormulaId id);

// ~x with double negation collapse.
FormulaId negate(FormulaFactory& f, FormulaId id);

// Applies F y -> y | F y and P y -> y | P y bottom-up to every temporal
// subformula, so satisfiability over the reflexive plane product equals
// satisfiability of the result over the irreflexive frame.
FormulaId reflexive_reduction(FormulaFactory& f, FormulaId id);

// ── ClosureSet ──────────────────────────────────────────────────────────────
// All subformulas of phi and their (collapse-normalized) negations, indexed
// in the canonical structural order.  Indicator strings over these indices
// are the wire representation of MCSs everywhere else in the library.

class ClosureSet {
public:
    // Interns missing negations through the factory; existing ids stay valid.
    ClosureSet(FormulaFactory& f, FormulaId phi);

    size_t size() const { return items_.size(); }
    FormulaId item(size_t i) const { return items_[i]; }
    size_t index_of(FormulaId id) const { return at(id); }
    bool contains(FormulaId id) const { return pos_.count(id) != 0; }
    size_t negation_of(size_t i) const { return neg_[i]; }
    FormulaId phi() const { return phi_; }
    size_t phi_index() const { return at(phi_); }

    // Pair view: one entry per subformula/negation pair, keyed by the
    // non-negation member ("positive").
    struct Pair {
        size_t pos_idx;      // closure index of the positive formula
        size_t neg_idx;      // closure index of its negation
        Op op;               // op of the positive formula
        // (pair, sign) coordinates of children, for propagation:
        uint32_t a_pair = kNone; bool a_sign = true;
        uint32_t b_pair = kNone; bool b_sign = true;
        bool free = false;   // Letter / F / P: chosen freely in MCS search
    };
    size_t pair_count() const { return pairs_.size(); }
    const Pair& pair(size_t p) const { return pairs_[p]; }
    uint32_t pair_of(size_t closure_idx) const { return item_pair_[closure_idx]; }
    bool sign_of(size_t closure_idx) const { return item_sign_[closure_idx]; }
    const std::vector<uint32_t>& f_pairs() const { return f_pairs_; }
    const std::vector<uint32_t>& p_pairs() const { return p_pairs_; }

private:
    size_t at(FormulaId id) const;

    const FormulaFactory* f_;
    FormulaId phi_;
    std::vector<FormulaId> items_;
    std::unordered_map<FormulaId, size_t> pos_;
    std::vector<size_t> neg_;
    std::vector<Pair> pairs_;
    std::vector<uint32_t> item_pair_;
    std::vector<uint8_t> item_sign_;
    std::vector<uint32_t> f_pairs_;  // pairs whose positive is an F formula
    std::vector<uint32_t> p_pairs_;
};

}  // namespace mltl

#endif  // MLTL_FORMULA_HPP
