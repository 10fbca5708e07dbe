// ============================================================================
// trace.cpp — trace/bi-trace validation, joins, defects, universe enumeration
// ============================================================================

#include "mltl/trace.hpp"

#include <algorithm>

namespace mltl {

namespace {

size_t vec_hash(const std::vector<uint32_t>& v, size_t seed) {
    size_t h = seed;
    for (uint32_t x : v) h = h * 1099511628211ull ^ x;
    return h;
}

}  // namespace

// ── Traces ──────────────────────────────────────────────────────────────────

ValidationReport validate_trace(const Filtration& ft, const Trace& t) {
    ValidationReport r;
    if (t.clusters.empty()) {
        r.fail("trace: empty");
        return r;
    }
    if (t.mcss.size() + 1 != t.clusters.size()) {
        r.fail("trace: arity mismatch");
        return r;
    }
    for (size_t i = 0; i < t.clusters.size(); ++i)
        for (size_t j = i + 1; j < t.clusters.size(); ++j)
            if (t.clusters[i] == t.clusters[j]) r.fail("trace: clusters not distinct");
    for (size_t i = 0; i < t.mcss.size(); ++i) {
        NodeRef c = NodeRef::cluster(t.clusters[i]);
        NodeRef m = NodeRef::mcs(t.mcss[i]);
        NodeRef c2 = NodeRef::cluster(t.clusters[i + 1]);
        if (!ft.leq(c, m) || !ft.leq(m, c2)) r.fail("trace: not ≲-ordered");
    }
    return r;
}

std::vector<TraceDefect> trace_defects(const Filtration& ft, const Trace& t) {
    std::vector<TraceDefect> out;
    size_t len = t.clusters.size() + t.mcss.size();
    auto at = [&](size_t pos) {
        return pos % 2 == 0 ? NodeRef::cluster(t.clusters[pos / 2])
                            : NodeRef::mcs(t.mcss[pos / 2]);
    };
    for (size_t pos = 0; pos < len; ++pos) {
        NodeRef here = at(pos);
        for (const Defect& d : ft.defects(here)) {
            if (d.future) {
                if (pos + 1 == len) out.push_back({here, d});  // final cluster
                else if (!ft.passes_up_if(d, here, at(pos + 1))) out.push_back({here, d});
            } else {
                if (pos == 0) out.push_back({here, d});  // initial cluster
                else if (!ft.passes_down_if(d, here, at(pos - 1))) out.push_back({here, d});
            }
        }
    }
    return out;
}

Trace trace_join(const Filtration& ft, const Trace& t, uint32_t mcs, const Trace& t2) {
    NodeRef m = NodeRef::mcs(mcs);
    if (!ft.leq(NodeRef::cluster(t.clusters.back()), m) ||
        !ft.leq(m, NodeRef::cluster(t2.clusters.front())))
        throw PreconditionError("trace_join: t ≲ m ≲ t2 violated");
    Trace out;
    if (t.clusters.back() == t2.clusters.front()) {
        // seam clusters identified, m omitted
        out.clusters = t.clusters;
        out.clusters.insert(out.clusters.end(), t2.clusters.begin() + 1, t2.clusters.end());
        out.mcss = t.mcss;
        out.mcss.insert(out.mcss.end(), t2.mcss.begin(), t2.mcss.end());
    } else {
        out.clusters = t.clusters;
        out.clusters.insert(out.clusters.end(), t2.clusters.begin(), t2.clusters.end());
        out.mcss = t.mcss;
        out.mcss.push_back(mcs);
        out.mcss.insert(out.mcss.end(), t2.mcss.begin(), t2.mcss.end());
    }
    ValidationReport r = validate_trace(ft, out);
    if (!r.ok) throw PreconditionError("trace_join: " + r.violations.front());
    return out;
}

uint32_t TracePool::intern(const Trace& t) {
    size_t h = vec_hash(t.clusters, vec_hash(t.mcss, 0x9E37u));
    auto& bucket = index_[h];
    for (uint32_t id : bucket)
        if (traces_[id] == t) return id;
    uint32_t id = static_cast<uint32_t>(traces_.size());
    traces_.push_back(t);
    bucket.push_back(id);
    all_.push_back(id);
    return id;
}

uint32_t TracePool::single(uint32_t cluster) {
    Trace t;
    t.clusters.push_back(cluster);
    return intern(t);
}

bool TracePool::enumerate_all(size_t cap) {
    if (enumerated_) return !truncated_;
    const Filtration& ft = *ft_;
    size_t cc = ft.cluster_count();

    // separating MCSs per ordered cluster pair
    std::vector<std::vector<std::vector<uint32_t>>> between(
        cc, std::vector<std::vector<uint32_t>>(cc));
    for (size_t a = 0; a < cc; ++a)
        for (size_t b = 0; b < cc; ++b) {
            if (a == b || !ft.cluster_leq(static_cast<uint32_t>(a), static_cast<uint32_t>(b)))
                continue;
            for (size_t m = 0; m < ft.mcs_count(); ++m)
                if (ft.leq(NodeRef::cluster(static_cast<uint32_t>(a)), NodeRef::mcs(static_cast<uint32_t>(m))) &&
                    ft.leq(NodeRef::mcs(static_cast<uint32_t>(m)), NodeRef::cluster(static_cast<uint32_t>(b))))
                    between[a][b].push_back(static_cast<uint32_t>(m));
        }

    truncated_ = false;
    std::vector<char> used(cc, 0);
    Trace cur;
    // depth-first over ≲-increasing distinct-cluster sequences
    auto rec = [&](auto&& self, uint32_t last) -> void {
        if (truncated_) return;
        intern(cur);
        if (traces_.size() >= cap) { truncated_ = true; return; }
        for (uint32_t nxt = 0; nxt < cc; ++nxt) {
            if (used[nxt] || between[last][nxt].empty()) continue;
            used[nxt] = 1;
            cur.clusters.push_back(nxt);
            for (uint32_t m : between[last][nxt]) {
                cur.mcss.push_back(m);
                self(self, nxt);
                cur.mcss.pop_back();
                if (truncated_) break;
            }
            cur.clusters.pop_back();
            used[nxt] = 0;
            if (truncated_) break;
        }
    };
    for (uint32_t c = 0; c < cc && !truncated_; ++c) {
        std::fill(used.begin(), used.end(), 0);
        used[c] = 1;
        cur.clusters.assign(1, c);
        cur.mcss.clear();
        rec(rec, c);
    }
    enumerated_ = true;
    return !truncated_;
}

// ── Bi-traces ───────────────────────────────────────────────────────────────

ValidationReport validate_bitrace(const Filtration& ft, const BiTrace& bt) {
    ValidationReport r;
    size_t n1 = bt.lower.size();
    if (n1 == 0 || bt.upper.size() != n1 || bt.bounds.size() + 1 != n1) {
        r.fail("bitrace: arity mismatch");
        return r;
    }
    auto cl = [](uint32_t c) { return NodeRef::cluster(c); };
    for (size_t i = 0; i + 1 < n1; ++i) {
        if (!ft.leq(cl(bt.lower[i]), cl(bt.lower[i + 1])) ||
            !ft.leq(cl(bt.upper[i]), cl(bt.upper[i + 1])))
            r.fail("bitrace: sequences not ≲-ordered");
    }
    for (size_t i = 0; i < n1; ++i) {
        if (!ft.leq(cl(bt.lower[i]), cl(bt.upper[i]))) r.fail("bitrace clause (i): lower ⋠ upper");
        if (i + 1 < n1 && bt.lower[i] == bt.lower[i + 1] && bt.upper[i] == bt.upper[i + 1])
            r.fail("bitrace clause (i): adjacent pairs equal");
    }
    for (size_t i = 0; i < bt.bounds.size(); ++i) {
        NodeRef b = NodeRef::mcs(bt.bounds[i]);
        if (!ft.leq(cl(bt.lower[i]), b) || !ft.leq(b, cl(bt.upper[i + 1])))
            r.fail("bitrace clause (ii): boundary MCS out of order");
    }
    for (size_t i = 0; i < n1; ++i)
        if (!ft.interpolant_exists(bt.lower[i], bt.upper[i]))
            r.fail("bitrace clause (iii): no interpolant");
    for (size_t i = 0; i < bt.bounds.size(); ++i) {
        NodeRef b = NodeRef::mcs(bt.bounds[i]);
        if (!ft.future_defects_pass_up(b, cl(bt.upper[i + 1])))
            r.fail("bitrace clause (iv): future defect of boundary MCS stuck");
        if (!ft.past_defects_pass_down(b, cl(bt.lower[i])))
            r.fail("bitrace clause (iv): past defect of boundary MCS stuck");
    }
    return r;
}

BiTrace bitrace_join(const Filtration& ft, const BiTrace& bt, uint32_t boundary_mcs,
                     const BiTrace& bt2) {
    BiTrace out;
    bool identify = bt.lower.back() == bt2.lower.front() && bt.upper.back() == bt2.upper.front();
    if (identify) {
        out.lower = bt.lower;
        out.lower.insert(out.lower.end(), bt2.lower.begin() + 1, bt2.lower.end());
        out.upper = bt.upper;
        out.upper.insert(out.upper.end(), bt2.upper.begin() + 1, bt2.upper.end());
        out.bounds = bt.bounds;
        out.bounds.insert(out.bounds.end(), bt2.bounds.begin(), bt2.bounds.end());
    } else {
        out.lower = bt.lower;
        out.lower.insert(out.lower.end(), bt2.lower.begin(), bt2.lower.end());
        out.upper = bt.upper;
        out.upper.insert(out.upper.end(), bt2.upper.begin(), bt2.upper.end());
        out.bounds = bt.bounds;
        out.bounds.push_back(boundary_mcs);
        out.bounds.insert(out.bounds.end(), bt2.bounds.begin(), bt2.bounds.end());
    }
    ValidationReport r = validate_bitrace(ft, out);
    if (!r.ok) throw PreconditionError("bitrace_join: " + r.violations.front());
    return out;
}

std::vector<TraceDefect> bitrace_future_defects(const Filtration& ft, const BiTrace& bt) {
    std::vector<TraceDefect> out;
    size_t n1 = bt.upper.size();
    for (size_t i = 0; i < n1; ++i) {
        NodeRef here = NodeRef::cluster(bt.upper[i]);
        for (const Defect& d : ft.defects(here)) {
            if (!d.future) continue;
            if (i + 1 == n1) out.push_back({here, d});
            else if (!ft.passes_up_if(d, here, NodeRef::cluster(bt.upper[i + 1])))
                out.push_back({here, d});
        }
    }
    return out;
}

std::vector<TraceDefect> bitrace_past_defects(const Filtration& ft, const BiTrace& bt) {
    std::vector<TraceDefect> out;
    for (size_t i = 0; i < bt.lower.size(); ++i) {
        NodeRef here = NodeRef::cluster(bt.lower[i]);
        for (const Defect& d : ft.defects(here)) {
            if (d.future) continue;
            if (i == 0) out.push_back({here, d});
            else if (!ft.passes_down_if(d, here, NodeRef::cluster(bt.lower[i - 1])))
                out.push_back({here, d});
        }
    }
    return out;
}

uint32_t BiTracePool::intern(const BiTrace& bt) {
    size_t h = vec_hash(bt.lower, vec_hash(bt.upper, vec_hash(bt.bounds, 0xB17Au)));
    auto& bucket = index_[h];
    for (uint32_t id : bucket)
        if (bitraces_[id] == bt) return id;
    uint32_t id = static_cast<uint32_t>(bitraces_.size());
    bitraces_.push_back(bt);
    bucket.push_back(id);
    all_.push_back(id);
    return id;
}

bool BiTracePool::lower_constant(uint32_t id) const {
    const BiTrace& bt = bitraces_[id];
    for (uint32_t c : bt.lower)
        if (c != bt.lower.front()) return false;
    return true;
}

bool BiTracePool::enumerate_all(size_t cap) {
    if (enumerated_) return !truncated_;
    const Filtration& ft = *ft_;
    size_t cc = ft.cluster_count();

    // segment pairs satisfying clauses (i)/(iii)
    struct Pair { uint32_t lo, hi; };
    std::vector<Pair> pairs;
    for (uint32_t lo = 0; lo < cc; ++lo)
        for (uint32_t hi = 0; hi < cc; ++hi)
            if (ft.cluster_leq(lo, hi) && ft.interpolant_exists(lo, hi))
                pairs.push_back({lo, hi});

    // admissible steps: pair a -> pair b via boundary MCS m
    size_t np = pairs.size();
    std::vector<std::vector<std::pair<uint32_t, std::vector<uint32_t>>>> step(np);
    for (size_t a = 0; a < np; ++a)
        for (size_t b = 0; b < np; ++b) {
            if (a == b) continue;
            if (pairs[a].lo == pairs[b].lo && pairs[a].hi == pairs[b].hi) continue;
            if (!ft.cluster_reaches(pairs[a].lo, pairs[b].lo) ||
                !ft.cluster_reaches(pairs[a].hi, pairs[b].hi))
                continue;
            std::vector<uint32_t> ms;
            for (size_t m = 0; m < ft.mcs_count(); ++m) {
                NodeRef r = NodeRef::mcs(static_cast<uint32_t>(m));
                if (!ft.leq(NodeRef::cluster(pairs[a].lo), r)) continue;
                if (!ft.leq(r, NodeRef::cluster(pairs[b].hi))) continue;
                if (!ft.future_defects_pass_up(r, NodeRef::cluster(pairs[b].hi))) continue;
                if (!ft.past_defects_pass_down(r, NodeRef::cluster(pairs[a].lo))) continue;
                ms.push_back(static_cast<uint32_t>(m));
            }
            if (!ms.empty()) step[a].push_back({static_cast<uint32_t>(b), ms});
        }

    truncated_ = false;
    std::vector<char> used(np, 0);
    BiTrace cur;
    auto rec = [&](auto&& self, uint32_t last) -> void {
        if (truncated_) return;
        intern(cur);
        if (bitraces_.size() >= cap) { truncated_ = true; return; }
        for (const auto& [nxt, ms] : step[last]) {
            if (used[nxt]) continue;
            used[nxt] = 1;
            cur.lower.push_back(pairs[nxt].lo);
            cur.upper.push_back(pairs[nxt].hi);
            for (uint32_t m : ms) {
                cur.bounds.push_back(m);
                self(self, nxt);
                cur.bounds.pop_back();
                if (truncated_) break;
            }
            cur.lower.pop_back();
            cur.upper.pop_back();
            used[nxt] = 0;
            if (truncated_) break;
        }
    };
    for (uint32_t p = 0; p < np && !truncated_; ++p) {
        std::fill(used.begin(), used.end(), 0);
        used[p] = 1;
        cur.lower.assign(1, pairs[p].lo);
        cur.upper.assign(1, pairs[p].hi);
        cur.bounds.clear();
        rec(rec, p);
    }
    enumerated_ = true;
    return !truncated_;
}

}  // namespace mltl
