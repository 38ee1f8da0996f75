#include "tracktor/tractor.hpp"

#include "internal.hpp"

#include <algorithm>
#include <map>

namespace tracktor {

namespace {

DimRational nsym() { return DimRational::n(); }

// (n + 2w - 2) for an affine weight w
DimRational box_coeff(const Weight& w) {
    return nsym() + DimRational(2) * w.as_dimrational() - DimRational(2);
}

Atom mk(int kind, std::vector<Index> idx) {
    Atom a;
    a.kind = kind;
    a.idx = std::move(idx);
    return a;
}

}  // namespace

Expr expand_macros(const Expr& e) {
    std::vector<Term> work(e.terms.begin(), e.terms.end());
    Expr done;
    while (!work.empty()) {
        Term t = std::move(work.back());
        work.pop_back();
        size_t pos = t.body.size();
        for (size_t i = t.body.size(); i-- > 0;) {
            if (std::holds_alternative<BoxNode>(t.body[i]) ||
                std::holds_alternative<DNode>(t.body[i]) ||
                std::holds_alternative<DoubleDNode>(t.body[i])) {
                pos = i;
                break;
            }
        }
        if (pos == t.body.size()) {
            done.terms.push_back(std::move(t));
            continue;
        }
        Weight w = suffix_weight(t.body, pos + 1);
        std::vector<Node> prefix(t.body.begin(), t.body.begin() + static_cast<long>(pos));
        std::vector<Node> suffix(t.body.begin() + static_cast<long>(pos) + 1, t.body.end());
        int32_t d = detail::fresh_dummy(t);
        auto emit = [&](DimRational c, std::vector<Node> mid) {
            Term nt;
            nt.coeff = t.coeff * c;
            if (nt.coeff.is_zero()) return;
            nt.body = prefix;
            nt.body.insert(nt.body.end(), mid.begin(), mid.end());
            nt.body.insert(nt.body.end(), suffix.begin(), suffix.end());
            work.push_back(std::move(nt));
        };
        const Node& nd = t.body[pos];
        if (std::holds_alternative<BoxNode>(nd)) {
            // Box = nabla_p nabla^p + w J
            emit(DimRational(1),
                 {NablaNode{dummy(d, IndexKind::Tensor, false)},
                  NablaNode{dummy(d, IndexKind::Tensor, true)}});
            emit(w.as_dimrational(), {mk(kind::JScalar, {})});
        } else if (auto* dn = std::get_if<DNode>(&nd)) {
            DimRational c = box_coeff(w);
            emit(c * w.as_dimrational(), {mk(kind::Y, {dn->A})});
            emit(c, {mk(kind::Z, {dn->A, dummy(d, IndexKind::Tensor, true)}),
                     NablaNode{dummy(d, IndexKind::Tensor, false)}});
            emit(DimRational(-1), {mk(kind::X, {dn->A}), BoxNode{}});
        } else {
            const auto& dd = std::get<DoubleDNode>(nd);
            // D_{AP} = 2w X_{[P} Y_{A]} + 2 X_{[P} Z_{A]}{}^b nabla_b
            DimRational wc = w.as_dimrational();
            emit(wc, {mk(kind::X, {dd.P}), mk(kind::Y, {dd.A})});
            emit(-wc, {mk(kind::X, {dd.A}), mk(kind::Y, {dd.P})});
            emit(DimRational(1), {mk(kind::X, {dd.P}),
                                  mk(kind::Z, {dd.A, dummy(d, IndexKind::Tensor, true)}),
                                  NablaNode{dummy(d, IndexKind::Tensor, false)}});
            emit(DimRational(-1), {mk(kind::X, {dd.A}),
                                   mk(kind::Z, {dd.P, dummy(d, IndexKind::Tensor, true)}),
                                   NablaNode{dummy(d, IndexKind::Tensor, false)}});
        }
    }
    return merge(done);
}

Expr expand_box(const Expr& v, const Weight& w) {
    if (!(weight_of(v) == w)) throw WeightError("expand_box: operand weight mismatch");
    return expand_macros(apply_node(BoxNode{}, v));
}

Expr expand_D(const Expr& v, const Weight& w, const Index& A) {
    if (!(weight_of(v) == w)) throw WeightError("expand_D: operand weight mismatch");
    return expand_macros(apply_node(DNode{A}, v));
}

Expr expand_doubleD(const Expr& v, const Weight& w, const Index& A, const Index& P) {
    if (!(weight_of(v) == w)) throw WeightError("expand_doubleD: operand weight mismatch");
    return expand_macros(apply_node(DoubleDNode{A, P}, v));
}

Expr push_projectors_left(const Expr& e) {
    std::vector<Term> work(e.terms.begin(), e.terms.end());
    Expr done;
    while (!work.empty()) {
        Term t = std::move(work.back());
        work.pop_back();
        size_t pos = t.body.size();
        for (size_t i = 0; i < t.body.size(); ++i) {
            if (auto* at = std::get_if<Atom>(&t.body[i])) {
                if ((at->kind == kind::X || at->kind == kind::Y || at->kind == kind::Z) &&
                    !at->derivs.empty()) {
                    pos = i;
                    break;
                }
            }
        }
        if (pos == t.body.size()) {
            done.terms.push_back(std::move(t));
            continue;
        }
        Atom at = std::get<Atom>(t.body[pos]);
        Index d = at.derivs.back();  // innermost derivative
        std::vector<Index> outer(at.derivs.begin(), at.derivs.end() - 1);
        Expr repl;
        if (at.kind == kind::X) {
            // nabla_d X_A = Z_{Ad}
            repl = Expr(Term(DimRational(1), {mk(kind::Z, {at.idx[0], d})}));
        } else if (at.kind == kind::Z) {
            // nabla_d Z_{Ab} = -P_{db} X_A - Y_A g_{db}
            repl = Expr(Term(DimRational(-1),
                             {mk(kind::Schouten, {d, at.idx[1]}), mk(kind::X, {at.idx[0]})})) +
                   Expr(Term(DimRational(-1),
                             {mk(kind::Y, {at.idx[0]}), mk(kind::Metric, {d, at.idx[1]})}));
        } else {
            // nabla_d Y_A = P_{db} Z_A{}^b
            int32_t b = detail::fresh_dummy(t);
            repl = Expr(Term(
                DimRational(1),
                {mk(kind::Schouten, {d, dummy(b, IndexKind::Tensor, false)}),
                 mk(kind::Z, {at.idx[0], dummy(b, IndexKind::Tensor, true)})}));
        }
        repl = leibniz_expand(apply_chain(outer, repl));
        Expr sub = detail::substitute_atom(t, pos, repl);
        for (Term& nt : sub.terms) work.push_back(std::move(nt));
    }
    return merge(done);
}

namespace {

// One local simplification pass over a term; returns true if it changed
// (term possibly emptied => zero, signalled by zero coefficient).
bool contract_term_once(Term& t) {
    // occurrence map: label -> positions (node, slot-ref)
    struct Ref {
        size_t node;
        int slot;  // >=0: idx slot; -1-k: deriv slot k
    };
    std::map<std::pair<int32_t, IndexKind>, std::vector<Ref>> occ;
    for (size_t i = 0; i < t.body.size(); ++i) {
        auto* at = std::get_if<Atom>(&t.body[i]);
        if (!at) continue;
        for (size_t s = 0; s < at->derivs.size(); ++s)
            occ[{at->derivs[s].label, at->derivs[s].kind}].push_back(
                {i, -1 - static_cast<int>(s)});
        for (size_t s = 0; s < at->idx.size(); ++s)
            occ[{at->idx[s].label, at->idx[s].kind}].push_back({i, static_cast<int>(s)});
    }
    auto get_index = [&](const Ref& r) -> Index& {
        Atom& at = std::get<Atom>(t.body[r.node]);
        return r.slot >= 0 ? at.idx[static_cast<size_t>(r.slot)]
                           : at.derivs[static_cast<size_t>(-1 - r.slot)];
    };
    auto contracted = [&](const Index& ix) {
        auto it = occ.find({ix.label, ix.kind});
        return it != occ.end() && it->second.size() == 2;
    };

    for (size_t i = 0; i < t.body.size(); ++i) {
        auto* at = std::get_if<Atom>(&t.body[i]);
        if (!at) continue;
        bool metric = at->kind == kind::Metric || at->kind == kind::TracMetric;
        if (metric) {
            int32_t l0 = at->idx[0].label, l1 = at->idx[1].label;
            if (l0 == l1) {  // self trace: dimension factor
                t.coeff = t.coeff * (at->kind == kind::Metric ? nsym()
                                                             : nsym() + DimRational(2));
                t.body.erase(t.body.begin() + static_cast<long>(i));
                return true;
            }
            for (int s = 0; s < 2; ++s) {
                const Index& l = at->idx[static_cast<size_t>(s)];
                if (!contracted(l)) continue;
                // partner occurrence is the one not on this metric slot
                for (const Ref& r : occ[{l.label, l.kind}]) {
                    if (r.node == i && r.slot == s) continue;
                    Index other = at->idx[static_cast<size_t>(1 - s)];
                    get_index(r) = other;
                    t.body.erase(t.body.begin() + static_cast<long>(i));
                    return true;
                }
            }
            continue;
        }
        if (at->kind == kind::Schouten && at->idx[0].label == at->idx[1].label) {
            // P^a{}_a = J (derivative chains pass through the trace)
            Atom j;
            j.kind = kind::JScalar;
            j.derivs = at->derivs;
            t.body[i] = j;
            return true;
        }
        if (kind_info(at->kind).trace_free) {
            for (size_t s1 = 0; s1 < at->idx.size(); ++s1)
                for (size_t s2 = s1 + 1; s2 < at->idx.size(); ++s2)
                    if (at->idx[s1].label == at->idx[s2].label) {
                        t.coeff = DimRational(0);
                        return true;
                    }
        }
        bool proj = at->kind == kind::X || at->kind == kind::Y || at->kind == kind::Z;
        if (proj && at->derivs.empty()) {
            const Index& l = at->idx[0];  // tractor slot
            if (!contracted(l)) continue;
            for (const Ref& r : occ[{l.label, l.kind}]) {
                if (r.node == i && r.slot == 0) continue;
                auto* other = std::get_if<Atom>(&t.body[r.node]);
                bool oproj = other && r.slot == 0 && other->derivs.empty() &&
                             (other->kind == kind::X || other->kind == kind::Y ||
                              other->kind == kind::Z);
                if (!oproj) continue;
                int k1 = at->kind, k2 = other->kind;
                size_t i2 = r.node;
                // Figure 1: X.Y = 1, Z.Z = g, everything else zero.
                if ((k1 == kind::X && k2 == kind::Y) || (k1 == kind::Y && k2 == kind::X)) {
                    size_t hi = std::max(i, i2), lo = std::min(i, i2);
                    t.body.erase(t.body.begin() + static_cast<long>(hi));
                    t.body.erase(t.body.begin() + static_cast<long>(lo));
                    return true;
                }
                if (k1 == kind::Z && k2 == kind::Z) {
                    Index a = at->idx[1], b = other->idx[1];
                    size_t hi = std::max(i, i2), lo = std::min(i, i2);
                    t.body.erase(t.body.begin() + static_cast<long>(hi));
                    t.body.erase(t.body.begin() + static_cast<long>(lo));
                    t.body.push_back(mk(kind::Metric, {a, b}));
                    return true;
                }
                t.coeff = DimRational(0);
                return true;
            }
        }
    }
    return false;
}

}  // namespace

Expr contract_inner(const Expr& e) {
    Expr out;
    for (const Term& t0 : e.terms) {
        Term t = t0;
        while (!t.coeff.is_zero() && contract_term_once(t)) {
        }
        if (!t.coeff.is_zero()) out.terms.push_back(std::move(t));
    }
    return merge(out);
}

namespace {

// Expansion of one curvature atom (ignoring its derivative chain) into an
// Expr; dummies local to the replacement start at `base` (which must not
// collide with ids already in use in the host term).
Expr curvature_expansion(const Atom& at, int32_t base) {
    auto T = IndexKind::Tensor;
    if (at.kind == kind::OmegaMx) {
        Index a = at.idx[0], b = at.idx[1], C = at.idx[2], E = at.idx[3];
        Index eu = dummy(base, T, true), ed = dummy(base, T, false);
        Index cu = dummy(base + 1, T, true), cd = dummy(base + 1, T, false);
        Expr r;
        // Z_C{}^c Z_E{}^e C_{abce}
        r = r + Expr(Term(DimRational(1), {mk(kind::Z, {C, cu}), mk(kind::Z, {E, eu}),
                                           mk(kind::Weyl, {a, b, cd, ed})}));
        // -4 X_{[C} Z_{E]}{}^e nabla_{[a} P_{b]e}
        auto cotton = [&](Index u, Index v) {  // nabla_{[u} P_{v]e} expanded
            Atom p1 = mk(kind::Schouten, {v, ed});
            p1.derivs = {u};
            Atom p2 = mk(kind::Schouten, {u, ed});
            p2.derivs = {v};
            return std::make_pair(p1, p2);
        };
        auto [p1, p2] = cotton(a, b);
        for (int s = 0; s < 2; ++s) {
            Index Xi = s ? E : C, Zi = s ? C : E;
            DimRational sc(s ? 1 : -1);
            r = r + Expr(Term(sc, {mk(kind::X, {Xi}), mk(kind::Z, {Zi, eu}), p1}));
            r = r + Expr(Term(-sc, {mk(kind::X, {Xi}), mk(kind::Z, {Zi, eu}), p2}));
        }
        return r;
    }
    if (at.kind == kind::OmegaTr) {
        Index A = at.idx[0], B = at.idx[1], C = at.idx[2], E = at.idx[3];
        Index au = dummy(base, T, true), ad = dummy(base, T, false);
        Index bu = dummy(base + 1, T, true), bd = dummy(base + 1, T, false);
        return Expr(Term(DimRational(1),
                         {mk(kind::Z, {A, au}), mk(kind::Z, {B, bu}),
                          mk(kind::OmegaMx, {ad, bd, C, E})}));
    }
    if (at.kind == kind::W) {
        Index A = at.idx[0], B = at.idx[1], C = at.idx[2], E = at.idx[3];
        Expr r = (nsym() - DimRational(4)) *
                 Expr(Term(DimRational(1), {mk(kind::OmegaTr, {A, B, C, E})}));
        // -2 X_{[A} Z_{B]}{}^b nabla^p Omega_{pb CE}
        Index pu = dummy(base, T, true), pd = dummy(base, T, false);
        Index bu = dummy(base + 1, T, true), bd = dummy(base + 1, T, false);
        Atom om = mk(kind::OmegaMx, {pd, bd, C, E});
        om.derivs = {pu};
        for (int s = 0; s < 2; ++s) {
            Index Xi = s ? B : A, Zi = s ? A : B;
            DimRational sc(s ? 1 : -1);
            r = r + Expr(Term(sc, {mk(kind::X, {Xi}), mk(kind::Z, {Zi, bu}), om}));
        }
        return r;
    }
    throw std::logic_error("curvature_expansion: not a curvature atom");
}

}  // namespace

Expr expand_W(const Expr& e) {
    std::vector<Term> work(e.terms.begin(), e.terms.end());
    Expr done;
    while (!work.empty()) {
        Term t = std::move(work.back());
        work.pop_back();
        size_t pos = t.body.size();
        for (size_t i = 0; i < t.body.size(); ++i) {
            auto* at = std::get_if<Atom>(&t.body[i]);
            if (at && (at->kind == kind::W || at->kind == kind::OmegaTr ||
                       at->kind == kind::OmegaMx)) {
                pos = i;
                break;
            }
        }
        if (pos == t.body.size()) {
            done.terms.push_back(std::move(t));
            continue;
        }
        const Atom& at = std::get<Atom>(t.body[pos]);
        Expr repl = curvature_expansion(at, detail::fresh_dummy(t));
        if (!at.derivs.empty())
            repl = push_projectors_left(leibniz_expand(apply_chain(at.derivs, repl)));
        Expr sub = detail::substitute_atom(t, pos, repl);
        for (Term& nt : sub.terms) work.push_back(std::move(nt));
    }
    return contract_inner(push_projectors_left(merge(done)));
}

Expr expand_all(const Expr& e) {
    return contract_inner(push_projectors_left(leibniz_expand(expand_macros(e))));
}

Expr symmetrize_labels(const Expr& e, const std::vector<Index>& labels) {
    size_t m = labels.size();
    if (m < 2) return e;
    std::vector<size_t> perm(m);
    for (size_t i = 0; i < m; ++i) perm[i] = i;
    Expr acc;
    size_t count = 0;
    do {
        // relabel via a temporary namespace to avoid collisions
        Expr cur = e;
        for (Term& t : cur.terms) {
            auto relabel = [&](Index& ix) {
                for (size_t i = 0; i < m; ++i)
                    if (ix.label == labels[i].label) {
                        ix.label = -1000000 - static_cast<int32_t>(i);
                        return;
                    }
            };
            auto fix = [&](Index& ix) {
                for (size_t i = 0; i < m; ++i)
                    if (ix.label == -1000000 - static_cast<int32_t>(i)) {
                        ix.label = labels[perm[i]].label;
                        return;
                    }
            };
            for (Node& nd : t.body)
                if (auto* at = std::get_if<Atom>(&nd)) {
                    for (Index& ix : at->derivs) relabel(ix);
                    for (Index& ix : at->idx) relabel(ix);
                }
            for (Node& nd : t.body)
                if (auto* at = std::get_if<Atom>(&nd)) {
                    for (Index& ix : at->derivs) fix(ix);
                    for (Index& ix : at->idx) fix(ix);
                }
        }
        acc = acc + cur;
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    DimRational inv = DimRational(1) / DimRational(static_cast<long long>(count));
    return inv * acc;
}

SlotExtraction slot_extract(const Expr& e, const std::vector<Index>& labels) {
    Expr sym = merge(symmetrize_labels(e, labels));
    SlotExtraction out;
    for (const Term& t : sym.terms) {
        std::vector<size_t> xpos;
        bool ok = true;
        for (const Index& lbl : labels) {
            bool found = false;
            for (size_t i = 0; i < t.body.size() && !found; ++i) {
                auto* at = std::get_if<Atom>(&t.body[i]);
                if (at && at->kind == kind::X && at->derivs.empty() &&
                    at->idx[0].label == lbl.label) {
                    xpos.push_back(i);
                    found = true;
                }
            }
            if (!found) {
                ok = false;
                break;
            }
        }
        if (ok) {
            Term nt = t;
            std::sort(xpos.rbegin(), xpos.rend());
            for (size_t p : xpos) nt.body.erase(nt.body.begin() + static_cast<long>(p));
            out.coefficient.terms.push_back(std::move(nt));
        } else {
            out.residual.terms.push_back(t);
        }
    }
    out.coefficient = merge(out.coefficient);
    out.residual = merge(out.residual);
    return out;
}

}  // namespace tracktor
