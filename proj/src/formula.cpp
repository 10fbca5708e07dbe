// ============================================================================
// formula.cpp — factory interning, parser, printer, closure construction
// ============================================================================

#include "mltl/formula.hpp"

#include <algorithm>
#include <cctype>

namespace mltl {

// ── FormulaFactory ──────────────────────────────────────────────────────────

static uint64_t node_key(const FormulaNode& n) {
    uint64_t h = static_cast<uint64_t>(n.op);
    h = h * 0x9E3779B97F4A7C15ull + (n.lhs + 1);
    h = h * 0x9E3779B97F4A7C15ull + (n.rhs + 1);
    h = h * 0x9E3779B97F4A7C15ull + (n.name_idx + 1);
    return h;
}

FormulaId FormulaFactory::intern(FormulaNode n) {
    uint64_t key = node_key(n);
    auto& bucket = buckets_[key];
    for (FormulaId id : bucket) {
        const FormulaNode& m = nodes_[id];
        if (m.op == n.op && m.lhs == n.lhs && m.rhs == n.rhs && m.name_idx == n.name_idx)
            return id;
    }
    FormulaId id = static_cast<FormulaId>(nodes_.size());
    nodes_.push_back(n);
    bucket.push_back(id);
    return id;
}

FormulaId FormulaFactory::make_letter(const std::string& name) {
    auto it = name_idx_.find(name);
    uint32_t ni;
    if (it == name_idx_.end()) {
        ni = static_cast<uint32_t>(names_.size());
        names_.push_back(name);
        name_idx_.emplace(name, ni);
    } else {
        ni = it->second;
    }
    FormulaNode n{Op::Letter, kNone, kNone, ni, 1};
    return intern(n);
}

FormulaId FormulaFactory::make_neg(FormulaId a) {
    if (nodes_[a].op == Op::Neg) return nodes_[a].lhs;
    FormulaNode n{Op::Neg, a, kNone, kNone, nodes_[a].size + 1};
    return intern(n);
}

FormulaId FormulaFactory::make_disj(FormulaId a, FormulaId b) {
    FormulaNode n{Op::Disj, a, b, kNone, nodes_[a].size + nodes_[b].size + 1};
    return intern(n);
}

FormulaId FormulaFactory::make_conj(FormulaId a, FormulaId b) {
    FormulaNode n{Op::Conj, a, b, kNone, nodes_[a].size + nodes_[b].size + 1};
    return intern(n);
}

FormulaId FormulaFactory::make_impl(FormulaId a, FormulaId b) {
    FormulaNode n{Op::Impl, a, b, kNone, nodes_[a].size + nodes_[b].size + 1};
    return intern(n);
}

FormulaId FormulaFactory::make_f(FormulaId a) {
    FormulaNode n{Op::F, a, kNone, kNone, nodes_[a].size + 1};
    return intern(n);
}

FormulaId FormulaFactory::make_p(FormulaId a) {
    FormulaNode n{Op::P, a, kNone, kNone, nodes_[a].size + 1};
    return intern(n);
}

int FormulaFactory::compare(FormulaId a, FormulaId b) const {
    if (a == b) return 0;
    const FormulaNode& na = nodes_[a];
    const FormulaNode& nb = nodes_[b];
    if (na.size != nb.size) return na.size < nb.size ? -1 : 1;
    if (na.op != nb.op) return static_cast<int>(na.op) < static_cast<int>(nb.op) ? -1 : 1;
    if (na.op == Op::Letter) {
        const std::string& sa = names_[na.name_idx];
        const std::string& sb = names_[nb.name_idx];
        return sa < sb ? -1 : (sa == sb ? 0 : 1);
    }
    if (int c = compare(na.lhs, nb.lhs); c != 0) return c;
    if (na.rhs == kNone || nb.rhs == kNone) return 0;
    return compare(na.rhs, nb.rhs);
}

// ── Parser ──────────────────────────────────────────────────────────────────

namespace {

struct Parser {
    FormulaFactory& f;
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    bool eat_arrow() {
        skip_ws();
        if (i + 1 < s.size() && s[i] == '-' && s[i + 1] == '>') { i += 2; return true; }
        return false;
    }

    FormulaId impl() {
        FormulaId left = disj();
        if (eat_arrow()) return f.make_impl(left, impl());  // right-associative
        return left;
    }
    FormulaId disj() {
        FormulaId x = conj();
        while (eat('|')) x = f.make_disj(x, conj());
        return x;
    }
    FormulaId conj() {
        FormulaId x = unary();
        while (eat('&')) x = f.make_conj(x, unary());
        return x;
    }
    FormulaId unary() {
        skip_ws();
        if (i >= s.size()) throw ParseError(i, "unexpected end of input");
        char c = s[i];
        switch (c) {
            case '~': ++i; return f.make_neg(unary());
            case 'F': ++i; return f.make_f(unary());
            case 'P': ++i; return f.make_p(unary());
            case 'G': ++i; return f.make_g(unary());
            case 'H': ++i; return f.make_h(unary());
            default: return atom();
        }
    }
    FormulaId atom() {
        skip_ws();
        if (i >= s.size()) throw ParseError(i, "unexpected end of input");
        if (s[i] == '(') {
            ++i;
            FormulaId x = impl();
            if (!eat(')')) throw ParseError(i, "expected ')'");
            return x;
        }
        if (s[i] >= 'a' && s[i] <= 'z') {
            size_t start = i;
            ++i;
            while (i < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            return f.make_letter(s.substr(start, i - start));
        }
        throw ParseError(i, std::string("unexpected character '") + s[i] + "'");
    }

    FormulaId run() {
        FormulaId x = impl();
        skip_ws();
        if (i != s.size()) throw ParseError(i, "trailing input");
        return x;
    }
};

}  // namespace

FormulaId parse(FormulaFactory& f, const std::string& text) {
    Parser p{f, text};
    return p.run();
}

// ── Printer ─────────────────────────────────────────────────────────────────
// Precedence: unary 3, & 2, | 1, -> 0.  & and | print as left-assoc chains;
// -> prints right-assoc.

namespace {

int prec(Op op) {
    switch (op) {
        case Op::Impl: return 0;
        case Op::Disj: return 1;
        case Op::Conj: return 2;
        default: return 3;
    }
}

void render_rec(const FormulaFactory& f, FormulaId id, int min_prec, std::string& out) {
    const FormulaNode& n = f.node(id);
    int p = prec(n.op);
    bool parens = p < min_prec;
    if (parens) out += '(';
    switch (n.op) {
        case Op::Letter:
            out += f.letter_name(id);
            break;
        case Op::Neg:
            out += '~';
            render_rec(f, n.lhs, 3, out);
            break;
        case Op::F:
            out += "F ";
            render_rec(f, n.lhs, 3, out);
            break;
        case Op::P:
            out += "P ";
            render_rec(f, n.lhs, 3, out);
            break;
        case Op::Conj:
            render_rec(f, n.lhs, 2, out);
            out += " & ";
            render_rec(f, n.rhs, 3, out);
            break;
        case Op::Disj:
            render_rec(f, n.lhs, 1, out);
            out += " | ";
            render_rec(f, n.rhs, 2, out);
            break;
        case Op::Impl:
            render_rec(f, n.lhs, 1, out);
            out += " -> ";
            render_rec(f, n.rhs, 0, out);
            break;
    }
    if (parens) out += ')';
}

}  // namespace

std::string render(const FormulaFactory& f, FormulaId id) {
    std::string out;
    render_rec(f, id, 0, out);
    return out;
}

FormulaId negate(FormulaFactory& f, FormulaId id) { return f.make_neg(id); }

// ── Reflexive reduction ─────────────────────────────────────────────────────

namespace {

FormulaId reduce_rec(FormulaFactory& f, FormulaId id,
                     std::unordered_map<FormulaId, FormulaId>& memo) {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    const FormulaNode n = f.node(id);  // copy: construction may grow the pool
    FormulaId out;
    switch (n.op) {
        case Op::Letter: out = id; break;
        case Op::Neg: out = f.make_neg(reduce_rec(f, n.lhs, memo)); break;
        case Op::Disj: out = f.make_disj(reduce_rec(f, n.lhs, memo), reduce_rec(f, n.rhs, memo)); break;
        case Op::Conj: out = f.make_conj(reduce_rec(f, n.lhs, memo), reduce_rec(f, n.rhs, memo)); break;
        case Op::Impl: out = f.make_impl(reduce_rec(f, n.lhs, memo), reduce_rec(f, n.rhs, memo)); break;
        case Op::F: {
            FormulaId c = reduce_rec(f, n.lhs, memo);
            out = f.make_disj(c, f.make_f(c));
            break;
        }
        case Op::P: {
            FormulaId c = reduce_rec(f, n.lhs, memo);
            out = f.make_disj(c, f.make_p(c));
            break;
        }
    }
    memo.emplace(id, out);
    return out;
}

}  // namespace

FormulaId reflexive_reduction(FormulaFactory& f, FormulaId id) {
    std::unordered_map<FormulaId, FormulaId> memo;
    return reduce_rec(f, id, memo);
}

// ── ClosureSet ──────────────────────────────────────────────────────────────

namespace {

void collect_subformulas(const FormulaFactory& f, FormulaId id, std::vector<FormulaId>& out,
                         std::unordered_map<FormulaId, bool>& seen) {
    if (seen.count(id)) return;
    seen.emplace(id, true);
    out.push_back(id);
    const FormulaNode& n = f.node(id);
    switch (n.op) {
        case Op::Letter: break;
        case Op::Neg:
        case Op::F:
        case Op::P:
            collect_subformulas(f, n.lhs, out, seen);
            break;
        default:
            collect_subformulas(f, n.lhs, out, seen);
            collect_subformulas(f, n.rhs, out, seen);
            break;
    }
}

}  // namespace

ClosureSet::ClosureSet(FormulaFactory& f, FormulaId phi) : f_(&f), phi_(phi) {
    std::vector<FormulaId> subs;
    std::unordered_map<FormulaId, bool> seen;
    collect_subformulas(f, phi, subs, seen);

    std::vector<FormulaId> all = subs;
    for (FormulaId id : subs) {
        FormulaId neg = f.make_neg(id);  // ~~x collapses, so pairs stay canonical
        if (!seen.count(neg)) {
            seen.emplace(neg, true);
            all.push_back(neg);
        }
    }

    std::sort(all.begin(), all.end(),
              [&](FormulaId a, FormulaId b) { return f.compare(a, b) < 0; });
    items_ = std::move(all);
    for (size_t i = 0; i < items_.size(); ++i) pos_.emplace(items_[i], i);

    neg_.resize(items_.size());
    item_pair_.assign(items_.size(), kNone);
    item_sign_.assign(items_.size(), 1);
    for (size_t i = 0; i < items_.size(); ++i) {
        const FormulaNode& n = f.node(items_[i]);
        FormulaId neg = (n.op == Op::Neg) ? n.lhs : f.make_neg(items_[i]);
        neg_[i] = at(neg);
    }

    // Pairs keyed by the non-negation member, in closure index order.
    for (size_t i = 0; i < items_.size(); ++i) {
        const FormulaNode& n = f.node(items_[i]);
        if (n.op == Op::Neg) continue;
        Pair pr;
        pr.pos_idx = i;
        pr.neg_idx = neg_[i];
        pr.op = n.op;
        uint32_t pidx = static_cast<uint32_t>(pairs_.size());
        item_pair_[i] = pidx;
        item_sign_[i] = 1;
        item_pair_[pr.neg_idx] = pidx;
        item_sign_[pr.neg_idx] = 0;
        pairs_.push_back(pr);
    }

    // Child coordinates, now that every item has a pair.
    auto coords = [&](FormulaId id, uint32_t& pair, bool& sign) {
        size_t idx = at(id);
        pair = item_pair_[idx];
        sign = item_sign_[idx] != 0;
    };
    for (size_t p = 0; p < pairs_.size(); ++p) {
        Pair& pr = pairs_[p];
        const FormulaNode& n = f.node(items_[pr.pos_idx]);
        switch (n.op) {
            case Op::Letter:
                pr.free = true;
                break;
            case Op::F:
                pr.free = true;
                coords(n.lhs, pr.a_pair, pr.a_sign);
                f_pairs_.push_back(static_cast<uint32_t>(p));
                break;
            case Op::P:
                pr.free = true;
                coords(n.lhs, pr.a_pair, pr.a_sign);
                p_pairs_.push_back(static_cast<uint32_t>(p));
                break;
            case Op::Disj:
            case Op::Conj:
            case Op::Impl:
                coords(n.lhs, pr.a_pair, pr.a_sign);
                coords(n.rhs, pr.b_pair, pr.b_sign);
                break;
            case Op::Neg:
                break;  // unreachable: positives are never negations
        }
    }
}

size_t ClosureSet::at(FormulaId id) const {
    auto it = pos_.find(id);
    if (it == pos_.end())
        throw PreconditionError("formula not in closure set");
    return it->second;
}

}  // namespace mltl
