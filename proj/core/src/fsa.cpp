#include "tracktor/fsa.hpp"

#include "internal.hpp"
#include "tracktor/riemann.hpp"
#include "tracktor/tractor.hpp"
#include "tracktor/emit.hpp"
#include <cstdio>
#include <cstdlib>

#include <algorithm>

namespace tracktor {

namespace {

const char* kBlockLabels[] = {"i", "j", "k", "l", "m", "p", "q", "r"};

size_t find_density(const Term& t, int fkind) {
    for (size_t i = 0; i < t.body.size(); ++i) {
        const auto* at = std::get_if<Atom>(&t.body[i]);
        if (at && at->kind == fkind) return i;
    }
    throw FsaError("operator term does not contain the density atom");
}

size_t chain_order(const Term& t, int fkind) {
    return std::get<Atom>(t.body[find_density(t, fkind)]).derivs.size();
}

// Coefficient tensor of nabla_{L_1}..nabla_{L_m} f for one term of order m:
// the chain is replaced by the raised free labels L, with chain-internal
// contractions becoming explicit inverse-metric factors.
Term coefficient_tensor(const Term& t, int fkind, const std::vector<Index>& labels) {
    size_t fpos = find_density(t, fkind);
    const Atom& f = std::get<Atom>(t.body[fpos]);
    Term out;
    out.coeff = t.coeff;
    for (size_t i = 0; i < t.body.size(); ++i)
        if (i != fpos) out.body.push_back(t.body[i]);
    std::vector<bool> done(f.derivs.size(), false);
    for (size_t r = 0; r < f.derivs.size(); ++r) {
        if (done[r]) continue;
        const Index& d = f.derivs[r];
        Index L = labels[r];
        L.up = true;
        if (d.is_dummy()) {
            // partner within the chain -> inverse metric factor
            bool in_chain = false;
            for (size_t s = r + 1; s < f.derivs.size(); ++s)
                if (f.derivs[s].label == d.label) {
                    Index L2 = labels[s];
                    L2.up = true;
                    Atom g;
                    g.kind = kind::Metric;
                    g.idx = {L, L2};
                    out.body.emplace_back(std::move(g));
                    done[s] = true;
                    in_chain = true;
                    break;
                }
            if (in_chain) continue;
            // partner among the other atoms -> rename it to the label
            bool found = false;
            for (Node& nd : out.body) {
                auto* at = std::get_if<Atom>(&nd);
                if (!at) continue;
                for (Index& ix : at->derivs)
                    if (ix.label == d.label && ix.kind == d.kind && !found) {
                        ix = L;
                        found = true;
                    }
                for (Index& ix : at->idx)
                    if (ix.label == d.label && ix.kind == d.kind && !found) {
                        ix = L;
                        found = true;
                    }
            }
            if (!found) throw FsaError("dangling chain dummy in operator term");
        } else {
            throw FsaError("free chain index in operator term");
        }
    }
    return out;
}

Expr block_expansion(const FsaBlock& b, int fkind) {
    Expr out;
    for (const Term& mt : b.M.terms) {
        Term nt;
        nt.coeff = mt.coeff;
        for (const Index& L : b.left) nt.body.emplace_back(NablaNode{Index{L.label, L.kind, false}});
        for (const Node& nd : mt.body) nt.body.push_back(nd);
        Atom f;
        f.kind = fkind;
        for (const Index& L : b.right) f.derivs.push_back(Index{L.label, L.kind, false});
        nt.body.emplace_back(std::move(f));
        out.terms.push_back(std::move(nt));
    }
    return leibniz_expand(out);
}

}  // namespace

FsaForm to_fsa_form(const Expr& op, int fkind) {
    FsaForm form;
    form.fkind = fkind;
    Expr cur = canonicalize(op);
    while (true) {
        size_t top = 0;
        for (const Term& t : cur.terms) top = std::max(top, chain_order(t, fkind));
        if (top == 0) break;
        if (top % 2 != 0) throw FsaError("odd leading derivative order");
        if (top > 16) throw FsaError("operator order too large");
        size_t p = top / 2;
        FsaBlock b;
        b.p = static_cast<int>(p);
        std::vector<Index> labels;
        for (size_t r = 0; r < top; ++r)
            labels.push_back(free_tensor(kBlockLabels[r], true));
        b.left.assign(labels.begin(), labels.begin() + static_cast<long>(p));
        b.right.assign(labels.begin() + static_cast<long>(p), labels.end());
        Expr T;
        for (const Term& t : cur.terms)
            if (chain_order(t, fkind) == top)
                T.terms.push_back(coefficient_tensor(t, fkind, labels));
        b.M = canonicalize(symmetrize_labels(merge(T), labels));
        cur = canonicalize(cur - block_expansion(b, fkind));
        // the block reproduces the full even order; an odd residue means the
        // operator is not expressible in this form
        for (const Term& t : cur.terms)
            if (chain_order(t, fkind) >= top) {
                if (std::getenv("TRACKTOR_DEBUG_FSA")) {
                    Expr bad;
                    for (const Term& u : cur.terms)
                        if (chain_order(u, fkind) >= top) bad.terms.push_back(u);
                    std::fprintf(stderr, "surviving order-%zu terms:\n%s\n", top,
                                 emit_plain(bad).c_str());
                }
                throw FsaError("block subtraction failed to lower the order");
            }
        form.blocks.push_back(std::move(b));
    }
    for (const Term& t : cur.terms) {
        Term zt;
        zt.coeff = t.coeff;
        size_t fpos = find_density(t, fkind);
        for (size_t i = 0; i < t.body.size(); ++i)
            if (i != fpos) zt.body.push_back(t.body[i]);
        form.zeroth.terms.push_back(std::move(zt));
    }
    form.zeroth = merge(form.zeroth);
    return form;
}

Expr fsa_reassemble(const FsaForm& f) {
    Expr out;
    for (const FsaBlock& b : f.blocks) out = out + block_expansion(b, f.fkind);
    for (const Term& zt : f.zeroth.terms) {
        Term nt = zt;
        Atom fa;
        fa.kind = f.fkind;
        nt.body.emplace_back(std::move(fa));
        out.terms.push_back(std::move(nt));
    }
    return merge(out);
}

FsaForm fsa_adjoint(const FsaForm& f) {
    FsaForm out = f;
    for (FsaBlock& b : out.blocks) {
        // swap the label groups: rename left[i] <-> right[i]
        for (Term& t : b.M.terms)
            for (Node& nd : t.body)
                if (auto* at = std::get_if<Atom>(&nd)) {
                    auto swap_ix = [&](Index& ix) {
                        for (int i = 0; i < b.p; ++i) {
                            if (ix.label == b.left[static_cast<size_t>(i)].label)
                                ix.label = b.right[static_cast<size_t>(i)].label;
                            else if (ix.label == b.right[static_cast<size_t>(i)].label)
                                ix.label = b.left[static_cast<size_t>(i)].label;
                        }
                    };
                    for (Index& ix : at->derivs) swap_ix(ix);
                    for (Index& ix : at->idx) swap_ix(ix);
                }
        b.M = merge(b.M);
    }
    return out;
}

Expr formal_adjoint(const Expr& op, int fkind) {
    Expr out;
    for (const Term& t : op.terms) {
        size_t fpos = find_density(t, fkind);
        const Atom& f = std::get<Atom>(t.body[fpos]);
        Term base;
        base.coeff = (f.derivs.size() % 2 == 0) ? t.coeff : -t.coeff;
        for (size_t i = 0; i < t.body.size(); ++i)
            if (i != fpos) base.body.push_back(t.body[i]);
        Atom bare = f;
        bare.derivs.clear();
        base.body.emplace_back(std::move(bare));
        // wrap with the reversed chain
        std::vector<Node> wrapped;
        for (size_t r = f.derivs.size(); r-- > 0;)
            wrapped.emplace_back(NablaNode{f.derivs[r]});
        wrapped.insert(wrapped.end(), base.body.begin(), base.body.end());
        base.body = std::move(wrapped);
        out.terms.push_back(std::move(base));
    }
    return leibniz_expand(out);
}

bool fsa_certify(const Expr& op, int fkind) {
    return canonicalize(op - formal_adjoint(canonicalize(op), fkind)).is_zero();
}

}  // namespace tracktor
