// ============================================================================
// mcs.cpp — candidate world generation, K_t oracle, clusters, defect flow
// ============================================================================

#include "mltl/mcs.hpp"

#include <algorithm>

#include "json.hpp"

namespace mltl {

// ── Candidate atoms over a closure set ──────────────────────────────────────
// An atom assigns one truth value per subformula/negation pair.  Letters and
// temporal formulas are free; connectives are forced.  Pairs are evaluated in
// index order, which is size order, so children are always ready.

namespace {

struct AtomSpace {
    const ClosureSet& cl;
    std::vector<uint32_t> free_pairs;

    explicit AtomSpace(const ClosureSet& c) : cl(c) {
        for (size_t p = 0; p < cl.pair_count(); ++p)
            if (cl.pair(p).free) free_pairs.push_back(static_cast<uint32_t>(p));
    }

    size_t candidate_count() const { return size_t(1) << free_pairs.size(); }

    // pair values for the k-th free assignment, connectives propagated
    Bits pair_values(size_t k) const {
        Bits v(cl.pair_count());
        for (size_t i = 0; i < free_pairs.size(); ++i)
            if ((k >> i) & 1) v.set(free_pairs[i]);
        for (size_t p = 0; p < cl.pair_count(); ++p) {
            const auto& pr = cl.pair(p);
            if (pr.free) continue;
            bool a = v.get(pr.a_pair) == pr.a_sign;
            bool b = v.get(pr.b_pair) == pr.b_sign;
            bool val = false;
            switch (pr.op) {
                case Op::Conj: val = a && b; break;
                case Op::Disj: val = a || b; break;
                case Op::Impl: val = !a || b; break;
                default: break;
            }
            v.set(p, val);
        }
        return v;
    }

    Bits closure_bits(const Bits& pair_vals) const {
        Bits b(cl.size());
        for (size_t i = 0; i < cl.size(); ++i)
            if (pair_vals.get(cl.pair_of(i)) == cl.sign_of(i)) b.set(i);
        return b;
    }
};

// Elimination worker shared by kt_satisfiable and MCS enumeration.  Returns
// the surviving atoms (as pair-value bitsets) in candidate order.
std::vector<Bits> surviving_atoms(const ClosureSet& cl, const Budget& budget) {
    AtomSpace space(cl);
    if (space.free_pairs.size() > 26)
        throw ResourceLimit("candidate world space (2^" +
                            std::to_string(space.free_pairs.size()) + ")");
    size_t work = 0;
    auto spend = [&](size_t units) {
        work += units;
        if (work > budget.tableau_nodes) throw ResourceLimit("tableau node budget");
    };

    std::vector<Bits> atoms;
    for (size_t k = 0; k < space.candidate_count(); ++k) {
        spend(1);
        atoms.push_back(space.pair_values(k));
    }

    const auto& fp = cl.f_pairs();
    const auto& pp = cl.p_pairs();
    std::vector<char> alive(atoms.size(), 1);

    // wRw' compatibility between fully expanded worlds:
    //   ~F x in w  forces  ~x in w'      (no future witness may appear)
    //   ~P x in w' forces  ~x in w
    auto compatible = [&](const Bits& w, const Bits& w2) {
        for (uint32_t p : fp) {
            const auto& pr = cl.pair(p);
            if (!w.get(p) && w2.get(pr.a_pair) == pr.a_sign) return false;
        }
        for (uint32_t p : pp) {
            const auto& pr = cl.pair(p);
            if (!w2.get(p) && w.get(pr.a_pair) == pr.a_sign) return false;
        }
        return true;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < atoms.size(); ++i) {
            if (!alive[i]) continue;
            bool ok = true;
            for (uint32_t p : fp) {
                if (!atoms[i].get(p)) continue;
                const auto& pr = cl.pair(p);
                bool witnessed = false;
                for (size_t j = 0; j < atoms.size() && !witnessed; ++j) {
                    if (!alive[j]) continue;
                    spend(1);
                    witnessed = atoms[j].get(pr.a_pair) == pr.a_sign &&
                                compatible(atoms[i], atoms[j]);
                }
                if (!witnessed) { ok = false; break; }
            }
            for (uint32_t p : pp) {
                if (!ok) break;
                if (!atoms[i].get(p)) continue;
                const auto& pr = cl.pair(p);
                bool witnessed = false;
                for (size_t j = 0; j < atoms.size() && !witnessed; ++j) {
                    if (!alive[j]) continue;
                    spend(1);
                    witnessed = atoms[j].get(pr.a_pair) == pr.a_sign &&
                                compatible(atoms[j], atoms[i]);
                }
                if (!witnessed) { ok = false; break; }
            }
            if (!ok) { alive[i] = 0; changed = true; }
        }
    }

    std::vector<Bits> out;
    for (size_t i = 0; i < atoms.size(); ++i)
        if (alive[i]) out.push_back(std::move(atoms[i]));
    return out;
}

}  // namespace

bool kt_satisfiable(FormulaFactory& f, const std::vector<FormulaId>& formulas,
                    const Budget& budget) {
    if (formulas.empty()) return true;
    FormulaId conj = formulas[0];
    for (size_t i = 1; i < formulas.size(); ++i) conj = f.make_conj(conj, formulas[i]);
    ClosureSet cl(f, conj);
    size_t top = cl.index_of(conj);
    uint32_t top_pair = cl.pair_of(top);
    bool top_sign = cl.sign_of(top);
    for (const Bits& atom : surviving_atoms(cl, budget))
        if (atom.get(top_pair) == top_sign) return true;
    return false;
}

// ── Filtration ──────────────────────────────────────────────────────────────

Filtration::Filtration(FormulaFactory& f, FormulaId phi, const Budget& budget)
    : f_(&f), budget_(budget), cl_(f, phi) {
    // closure item tables
    item_op_.resize(cl_.size());
    item_child_.assign(cl_.size(), kNone);
    for (size_t i = 0; i < cl_.size(); ++i) {
        const FormulaNode& n = f.node(cl_.item(i));
        item_op_[i] = n.op;
        if (n.op == Op::F || n.op == Op::P || n.op == Op::Neg)
            item_child_[i] = static_cast<uint32_t>(cl_.index_of(n.lhs));
    }

    // MCSs: surviving atoms in candidate order, then sorted by indicator
    // string so the published order is canonical.
    AtomSpace space(cl_);
    std::vector<Bits> atoms = surviving_atoms(cl_, budget);
    mcs_.reserve(atoms.size());
    for (const Bits& a : atoms) mcs_.push_back(space.closure_bits(a));
    std::sort(mcs_.begin(), mcs_.end());

    // ≲ rows.  m ≲ n iff for all F x in Cl: (x in n -> Fx in m) and
    // (Fx in n -> Fx in m); dually for P with m and n swapped.
    size_t n = mcs_.size();
    leq_rows_.assign(n, Bits(n));
    std::vector<std::pair<uint32_t, uint32_t>> f_items, p_items;  // (Fx idx, x idx)
    for (size_t i = 0; i < cl_.size(); ++i) {
        if (item_op_[i] == Op::F) f_items.push_back({uint32_t(i), item_child_[i]});
        if (item_op_[i] == Op::P) p_items.push_back({uint32_t(i), item_child_[i]});
    }
    for (size_t m = 0; m < n; ++m) {
        for (size_t k = 0; k < n; ++k) {
            bool ok = true;
            for (auto [fx, x] : f_items) {
                if ((mcs_[k].get(x) || mcs_[k].get(fx)) && !mcs_[m].get(fx)) { ok = false; break; }
            }
            if (ok) {
                for (auto [px, x] : p_items) {
                    if ((mcs_[m].get(x) || mcs_[m].get(px)) && !mcs_[k].get(px)) { ok = false; break; }
                }
            }
            if (ok) leq_rows_[m].set(k);
        }
    }

    // clusters: mutual-≲ classes of reflexive MCSs, ordered by smallest member
    cluster_of_.assign(n, kNone);
    for (size_t m = 0; m < n; ++m) {
        if (!reflexive(m)) { continue; }
        if (cluster_of_[m] != kNone) continue;
        Cluster c;
        c.representative = static_cast<uint32_t>(m);
        c.belongs = Bits(cl_.size());
        uint32_t cid = static_cast<uint32_t>(clusters_.size());
        for (size_t k = m; k < n; ++k) {
            if (!reflexive(k) || cluster_of_[k] != kNone) continue;
            if (lesssim(m, k) && lesssim(k, m)) {
                cluster_of_[k] = cid;
                c.members.push_back(static_cast<uint32_t>(k));
                c.belongs.or_with(mcs_[k]);
            }
        }
        clusters_.push_back(std::move(c));
    }
    for (size_t m = 0; m < n; ++m)
        if (!reflexive(m)) irreflexives_.push_back(static_cast<uint32_t>(m));

    // cluster reachability closure (clusters ordered by ≲ form a DAG)
    size_t cc = clusters_.size();
    reach_.assign(cc, Bits(cc));
    for (size_t a = 0; a < cc; ++a) {
        reach_[a].set(a);
        for (size_t b = 0; b < cc; ++b)
            if (a != b && cluster_leq(static_cast<uint32_t>(a), static_cast<uint32_t>(b)))
                reach_[a].set(b);
    }
}

std::vector<Defect> Filtration::mcs_defects(size_t m) const {
    std::vector<Defect> out;
    for (size_t i = 0; i < cl_.size(); ++i) {
        if (!mcs_[m].get(i)) continue;
        if (item_op_[i] == Op::F) out.push_back({true, static_cast<uint32_t>(i)});
        if (item_op_[i] == Op::P) out.push_back({false, static_cast<uint32_t>(i)});
    }
    return out;
}

std::vector<Defect> Filtration::cluster_defects(size_t c) const {
    std::vector<Defect> out;
    const Bits& b = clusters_[c].belongs;
    for (size_t i = 0; i < cl_.size(); ++i) {
        if (!b.get(i)) continue;
        bool fut = item_op_[i] == Op::F;
        if (!fut && item_op_[i] != Op::P) continue;
        if (!b.get(item_child_[i]))  // child does not belong: a real obligation
            out.push_back({fut, static_cast<uint32_t>(i)});
    }
    return out;
}

bool Filtration::passes_up_if(const Defect& d, NodeRef from, NodeRef to) const {
    if (!leq(from, to)) return false;
    const Bits& b = bits_of(to);
    return b.get(item_child_[d.formula_idx]) || b.get(d.formula_idx);
}

bool Filtration::passes_down_if(const Defect& d, NodeRef from, NodeRef to) const {
    if (!leq(to, from)) return false;
    const Bits& b = bits_of(to);
    return b.get(item_child_[d.formula_idx]) || b.get(d.formula_idx);
}

bool Filtration::passes_up(const Defect& d, NodeRef from, NodeRef to) const {
    if (!leq(from, to)) throw PreconditionError("passes_up: source is not ≲ target");
    return passes_up_if(d, from, to);
}

bool Filtration::passes_down(const Defect& d, NodeRef from, NodeRef to) const {
    if (!leq(to, from)) throw PreconditionError("passes_down: target is not ≲ source");
    return passes_down_if(d, from, to);
}

bool Filtration::future_defects_pass_up(NodeRef from, NodeRef to) const {
    for (const Defect& d : defects(from))
        if (d.future && !passes_up_if(d, from, to)) return false;
    return true;
}

bool Filtration::past_defects_pass_down(NodeRef from, NodeRef to) const {
    for (const Defect& d : defects(from))
        if (!d.future && !passes_down_if(d, from, to)) return false;
    return true;
}

const std::vector<uint32_t>& Filtration::interpolants(uint32_t lo, uint32_t hi) const {
    auto key = std::make_pair(lo, hi);
    auto it = interp_.find(key);
    if (it != interp_.end()) return it->second;
    std::vector<uint32_t> out;
    NodeRef clo = NodeRef::cluster(lo), chi = NodeRef::cluster(hi);
    for (size_t m = 0; m < mcs_.size(); ++m) {
        NodeRef r = NodeRef::mcs(static_cast<uint32_t>(m));
        if (!leq(clo, r) || !leq(r, chi)) continue;
        if (!future_defects_pass_up(r, chi)) continue;
        if (!past_defects_pass_down(r, clo)) continue;
        out.push_back(static_cast<uint32_t>(m));
    }
    return interp_.emplace(key, std::move(out)).first->second;
}

std::string Filtration::to_json() const {
    nlohmann::ordered_json j;
    j["mcs"] = nlohmann::ordered_json::array();
    for (const Bits& b : mcs_) j["mcs"].push_back({{"bits", b.to_string()}});
    j["clusters"] = nlohmann::ordered_json::array();
    for (const Cluster& c : clusters_) {
        nlohmann::ordered_json jc;
        jc["members"] = c.members;
        jc["belongs"] = c.belongs.to_string();
        j["clusters"].push_back(jc);
    }
    j["lesssim"] = nlohmann::ordered_json::array();
    for (size_t m = 0; m < mcs_.size(); ++m)
        for (size_t k = 0; k < mcs_.size(); ++k)
            if (lesssim(m, k)) j["lesssim"].push_back({m, k});
    return j.dump();
}

std::vector<Bits> enumerate_mcs(Filtration& ft) {
    std::vector<Bits> out;
    for (size_t m = 0; m < ft.mcs_count(); ++m) out.push_back(ft.mcs_bits(m));
    return out;
}

}  // namespace mltl
