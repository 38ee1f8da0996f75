#include "tracktor/riemann.hpp"

#include "internal.hpp"
#include "tracktor/tractor.hpp"

#include <algorithm>
#include <map>

namespace tracktor {

namespace {

Atom mk(int kind, std::vector<Index> idx) {
    Atom a;
    a.kind = kind;
    a.idx = std::move(idx);
    return a;
}

}  // namespace

Expr decompose_riemann(const Expr& e) {
    std::vector<Term> work(e.terms.begin(), e.terms.end());
    Expr done;
    while (!work.empty()) {
        Term t = std::move(work.back());
        work.pop_back();
        size_t pos = t.body.size();
        for (size_t i = 0; i < t.body.size(); ++i) {
            auto* at = std::get_if<Atom>(&t.body[i]);
            if (at && at->kind == kind::Riemann) {
                pos = i;
                break;
            }
        }
        if (pos == t.body.size()) {
            done.terms.push_back(std::move(t));
            continue;
        }
        const Atom& at = std::get<Atom>(t.body[pos]);
        Index a = at.idx[0], b = at.idx[1], c = at.idx[2], d = at.idx[3];
        // R_abcd = C_abcd + g_ca P_bd - g_cb P_ad + g_db P_ac - g_da P_bc
        Expr repl;
        repl = repl + Expr(Term(DimRational(1), {mk(kind::Weyl, {a, b, c, d})}));
        repl = repl + Expr(Term(DimRational(1),
                                {mk(kind::Metric, {c, a}), mk(kind::Schouten, {b, d})}));
        repl = repl + Expr(Term(DimRational(-1),
                                {mk(kind::Metric, {c, b}), mk(kind::Schouten, {a, d})}));
        repl = repl + Expr(Term(DimRational(1),
                                {mk(kind::Metric, {d, b}), mk(kind::Schouten, {a, c})}));
        repl = repl + Expr(Term(DimRational(-1),
                                {mk(kind::Metric, {d, a}), mk(kind::Schouten, {b, c})}));
        if (!at.derivs.empty()) repl = leibniz_expand(apply_chain(at.derivs, repl));
        Expr sub = detail::substitute_atom(t, pos, repl);
        for (Term& nt : sub.terms) work.push_back(std::move(nt));
    }
    return merge(done);
}

namespace {

// Where does a chain index's partner live?
struct PartnerInfo {
    int cls;  // 0: own idx slot; 1: same chain; 2: external (free or elsewhere)
    // rank orders items within a class, ascending = more outer
    std::vector<int64_t> rank;
    int pair_pos = -1;  // class 1: partner's chain position
};

PartnerInfo classify_chain_index(const Term& t, size_t atom_pos, size_t chain_pos) {
    const Atom& at = std::get<Atom>(t.body[atom_pos]);
    const Index& d = at.derivs[chain_pos];
    PartnerInfo out;
    // own slots
    for (size_t s = 0; s < at.idx.size(); ++s)
        if (at.idx[s].label == d.label) {
            out.cls = 0;
            out.rank = {static_cast<int64_t>(s)};
            return out;
        }
    // same chain
    for (size_t p = 0; p < at.derivs.size(); ++p)
        if (p != chain_pos && at.derivs[p].label == d.label) {
            out.cls = 1;
            out.pair_pos = static_cast<int>(p);
            out.rank = {};
            return out;
        }
    // external: free labels first (by name id), then dummies by partner site
    out.cls = 2;
    for (size_t i = 0; i < t.body.size(); ++i) {
        const auto* other = std::get_if<Atom>(&t.body[i]);
        if (!other) continue;
        for (size_t s = 0; s < other->idx.size(); ++s)
            if (other->idx[s].label == d.label && !(i == atom_pos && false)) {
                out.rank = {1, static_cast<int64_t>(i), static_cast<int64_t>(s)};
                return out;
            }
        for (size_t p = 0; p < other->derivs.size(); ++p)
            if (other->derivs[p].label == d.label && !(i == atom_pos && p == chain_pos)) {
                out.rank = {1, static_cast<int64_t>(i), 1000 + static_cast<int64_t>(p)};
                return out;
            }
    }
    out.rank = {0, d.label};  // free label
    return out;
}

// Canonical target ordering of one atom's derivative chain, as the desired
// position of each current element. Externals outermost (frees by label,
// dummies by partner site), chain-contractions next as adjacent down-up
// pairs, self-contractions innermost (by slot).
std::vector<size_t> chain_target(const Term& t, size_t atom_pos) {
    const Atom& at = std::get<Atom>(t.body[atom_pos]);
    size_t m = at.derivs.size();
    std::vector<PartnerInfo> info(m);
    for (size_t p = 0; p < m; ++p) info[p] = classify_chain_index(t, atom_pos, p);
    std::vector<size_t> order;  // current positions in target sequence
    std::vector<size_t> cls2, cls0;
    for (size_t p = 0; p < m; ++p) {
        if (info[p].cls == 2) cls2.push_back(p);
        if (info[p].cls == 0) cls0.push_back(p);
    }
    std::stable_sort(cls2.begin(), cls2.end(),
                     [&](size_t a, size_t b) { return info[a].rank < info[b].rank; });
    std::stable_sort(cls0.begin(), cls0.end(),
                     [&](size_t a, size_t b) { return info[a].rank < info[b].rank; });
    order.insert(order.end(), cls2.begin(), cls2.end());
    // chain pairs in order of first (outer) current member; down before up
    std::vector<bool> used(m, false);
    for (size_t p = 0; p < m; ++p) {
        if (info[p].cls != 1 || used[p]) continue;
        size_t q = static_cast<size_t>(info[p].pair_pos);
        used[p] = used[q] = true;
        size_t down = at.derivs[p].up ? q : p;
        size_t up = at.derivs[p].up ? p : q;
        order.push_back(down);
        order.push_back(up);
    }
    order.insert(order.end(), cls0.begin(), cls0.end());
    return order;  // order[k] = current position that should sit at target slot k
}

}  // namespace

// Emit the curvature corrections for swapping chain positions i, i+1 of the
// atom at atom_pos, and the swapped main term; all appended to out.
void detail::swap_with_corrections(const Term& t, size_t atom_pos, size_t i,
                                   std::vector<Term>& out) {
    const Atom& at = std::get<Atom>(t.body[atom_pos]);
    Index u = at.derivs[i], v = at.derivs[i + 1];

    // main term: swapped chain
    Term main = t;
    Atom& mat = std::get<Atom>(main.body[atom_pos]);
    std::swap(mat.derivs[i], mat.derivs[i + 1]);
    out.push_back(std::move(main));

    // corrections: [nabla_u, nabla_v] acting on inner chain + slots
    std::vector<Index> outer(at.derivs.begin(), at.derivs.begin() + static_cast<long>(i));
    std::vector<Index> inner(at.derivs.begin() + static_cast<long>(i) + 2, at.derivs.end());

    struct Site {
        bool in_chain;
        size_t pos;
    };
    std::vector<Site> sites;
    for (size_t p = 0; p < inner.size(); ++p) sites.push_back({true, p});
    for (size_t s = 0; s < at.idx.size(); ++s) sites.push_back({false, s});

    for (const Site& site : sites) {
        Index c = site.in_chain ? inner[site.pos] : at.idx[site.pos];
        Atom core = at;
        core.derivs = inner;
        int32_t wid = detail::fresh_dummy(t);
        Index w_up = dummy(wid, c.kind, true), w_dn = dummy(wid, c.kind, false);
        Index& target = site.in_chain ? core.derivs[site.pos] : core.idx[site.pos];
        int curv = c.kind == IndexKind::Tensor ? kind::Riemann : kind::OmegaMx;
        Atom curv_atom;
        DimRational sc;
        if (c.up) {
            curv_atom = mk(curv, {u, v, c, w_dn});
            target = w_up;
            sc = DimRational(1);
        } else {
            curv_atom = mk(curv, {u, v, w_up, c});
            target = w_dn;
            sc = DimRational(-1);
        }
        Expr repl(Term(sc, {curv_atom, core}));
        if (!outer.empty()) repl = leibniz_expand(apply_chain(outer, repl));
        Expr sub = detail::substitute_atom(t, atom_pos, repl);
        for (Term& nt : sub.terms) out.push_back(std::move(nt));
    }
}

Expr commute_nablas(const Expr& e) {
    std::vector<Term> work(e.terms.begin(), e.terms.end());
    Expr done;
    while (!work.empty()) {
        Term t = std::move(work.back());
        work.pop_back();
        bool rewrote = false;
        for (size_t ai = 0; ai < t.body.size() && !rewrote; ++ai) {
            auto* at = std::get_if<Atom>(&t.body[ai]);
            if (!at || at->derivs.size() < 2) continue;
            std::vector<size_t> target = chain_target(t, ai);
            // priority of each current position
            std::vector<size_t> prio(target.size());
            for (size_t k = 0; k < target.size(); ++k) prio[target[k]] = k;
            for (size_t i = 0; i + 1 < prio.size(); ++i) {
                if (prio[i] > prio[i + 1]) {
                    std::vector<Term> res;
                    detail::swap_with_corrections(t, ai, i, res);
                    for (Term& nt : res) work.push_back(std::move(nt));
                    rewrote = true;
                    break;
                }
            }
        }
        if (!rewrote) done.terms.push_back(std::move(t));
    }
    return merge(done);
}

Expr substitute_flat(const Expr& e, bool kill_schouten) {
    Expr out;
    for (const Term& t : e.terms) {
        bool drop = false;
        for (const Node& nd : t.body) {
            auto* at = std::get_if<Atom>(&nd);
            if (!at) continue;
            if (at->kind == kind::Weyl || at->kind == kind::W || at->kind == kind::OmegaTr ||
                at->kind == kind::OmegaMx)
                drop = true;
            if (kill_schouten && (at->kind == kind::Schouten || at->kind == kind::JScalar))
                drop = true;
        }
        if (!drop) out.terms.push_back(t);
    }
    return merge(out);
}

}  // namespace tracktor
