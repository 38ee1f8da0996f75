#include "tracktor/riemann.hpp"

#include "internal.hpp"
#include "tracktor/tractor.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace tracktor {

namespace {

Atom mk(int kind, std::vector<Index> idx) {
    Atom a;
    a.kind = kind;
    a.idx = std::move(idx);
    return a;
}

// --- monoterm canonicalization ---------------------------------------------

using Encoding = std::vector<int32_t>;

void encode_atoms(const std::vector<Atom>& atoms, Encoding& enc,
                  std::vector<Atom>* renumbered) {
    enc.clear();
    std::map<std::pair<int32_t, IndexKind>, int32_t> remap;
    std::map<std::pair<int32_t, IndexKind>, int> count;
    for (const Atom& a : atoms) {
        for (const Index& ix : a.derivs) count[{ix.label, ix.kind}]++;
        for (const Index& ix : a.idx) count[{ix.label, ix.kind}]++;
    }
    int32_t next = 1;
    auto enc_index = [&](const Index& ix, Index* out_ix) {
        int32_t label;
        bool up = ix.up;
        auto key = std::make_pair(ix.label, ix.kind);
        if (count[key] == 2) {  // contraction (dummy or repeated name)
            auto it = remap.find(key);
            bool first = it == remap.end();
            if (first) it = remap.emplace(key, next++).first;
            label = it->second;
            // the variance split of a contracted pair is gauge (indices are
            // raised/lowered by the parallel metric): orient it canonically,
            // first occurrence down
            up = !first;
            if (out_ix) *out_ix = Index{-label, ix.kind, up};
        } else {
            label = 500000 + ix.label;
            if (out_ix) *out_ix = ix;
        }
        enc.push_back(label * 2 + (up ? 1 : 0));
    };
    if (renumbered) renumbered->clear();
    for (const Atom& a : atoms) {
        enc.push_back(-1000 - a.kind);
        enc.push_back(static_cast<int32_t>(a.derivs.size()));
        Atom ra = a;
        for (size_t i = 0; i < a.derivs.size(); ++i)
            enc_index(a.derivs[i], renumbered ? &ra.derivs[i] : nullptr);
        enc.push_back(-999);
        for (size_t i = 0; i < a.idx.size(); ++i)
            enc_index(a.idx[i], renumbered ? &ra.idx[i] : nullptr);
        if (renumbered) renumbered->push_back(std::move(ra));
    }
}

}  // namespace

Term monoterm_canonical(const Term& t) {
    std::vector<Atom> atoms;
    atoms.reserve(t.body.size());
    for (const Node& nd : t.body) {
        auto* at = std::get_if<Atom>(&nd);
        if (!at) throw std::runtime_error("monoterm_canonical: non-atom node");
        atoms.push_back(*at);
    }
    // coarse deterministic order; equal keys explored by block permutations
    std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.derivs.size() < b.derivs.size();
    });
    // blocks of identical (kind, chain length)
    std::vector<std::pair<size_t, size_t>> blocks;  // [begin, end)
    for (size_t i = 0; i < atoms.size();) {
        size_t j = i + 1;
        while (j < atoms.size() && atoms[j].kind == atoms[i].kind &&
               atoms[j].derivs.size() == atoms[i].derivs.size())
            ++j;
        if (j - i > 1) blocks.push_back({i, j});
        i = j;
    }
    // enumeration size guard
    double total = 1;
    for (const Atom& a : atoms) total *= static_cast<double>(kind_info(a.kind).symmetry.size());
    for (auto [b, e] : blocks)
        for (size_t s = 2; s <= e - b; ++s) total *= static_cast<double>(s);
    if (total > 4e6) throw std::runtime_error("monoterm_canonical: symmetry search too large");

    // odometer over per-atom symmetry choices and per-block permutations
    size_t na = atoms.size();
    std::vector<size_t> symchoice(na, 0);
    std::vector<std::vector<size_t>> blockperm(blocks.size());
    for (size_t b = 0; b < blocks.size(); ++b) {
        blockperm[b].resize(blocks[b].second - blocks[b].first);
        for (size_t i = 0; i < blockperm[b].size(); ++i) blockperm[b][i] = i;
    }

    Encoding best;
    int best_sign = 0;
    bool both_signs = false;
    std::vector<Atom> best_atoms;

    std::vector<Atom> cand(na);
    Encoding enc;
    bool more = true;
    while (more) {
        // build candidate: block permutation then per-slot symmetry
        for (size_t i = 0; i < na; ++i) cand[i] = atoms[i];
        for (size_t b = 0; b < blocks.size(); ++b)
            for (size_t i = 0; i < blockperm[b].size(); ++i)
                cand[blocks[b].first + i] = atoms[blocks[b].first + blockperm[b][i]];
        int sign = 1;
        for (size_t i = 0; i < na; ++i) {
            const auto& group = kind_info(cand[i].kind).symmetry;
            const SignedPerm& g = group[symchoice[i] % group.size()];
            if (!g.perm.empty()) {
                Atom permuted = cand[i];
                for (size_t s = 0; s < g.perm.size(); ++s)
                    permuted.idx[s] = cand[i].idx[static_cast<size_t>(g.perm[s])];
                cand[i] = std::move(permuted);
                sign *= g.sign;
            }
        }
        encode_atoms(cand, enc, nullptr);
        if (best_sign == 0 || enc < best) {
            best = enc;
            best_sign = sign;
            both_signs = false;
            encode_atoms(cand, enc, &best_atoms);
        } else if (enc == best && sign != best_sign) {
            both_signs = true;
        }

        // advance odometer: symmetry choices first, then block permutations
        more = false;
        for (size_t i = 0; i < na; ++i) {
            const auto& group = kind_info(atoms[i].kind).symmetry;
            if (++symchoice[i] < group.size()) {
                more = true;
                break;
            }
            symchoice[i] = 0;
        }
        if (!more) {
            for (size_t b = 0; b < blocks.size(); ++b) {
                if (std::next_permutation(blockperm[b].begin(), blockperm[b].end())) {
                    more = true;
                    break;
                }
            }
        }
    }

    Term out;
    if (both_signs) {
        out.coeff = DimRational(0);
        return out;
    }
    out.coeff = best_sign < 0 ? -t.coeff : t.coeff;
    for (Atom& a : best_atoms) out.body.emplace_back(std::move(a));
    return out;
}

namespace {

Expr monoterm_pass(const Expr& e) {
    Expr out;
    for (const Term& t : e.terms) {
        Term c = monoterm_canonical(t);
        if (!c.coeff.is_zero()) out.terms.push_back(std::move(c));
    }
    return merge(out);
}

// --- multiterm rewrite set --------------------------------------------------

// Innermost-derivative contraction with an own slot of P: nabla^a P_ab -> nabla_b J.
bool try_p_divergence(const Term& t, Expr& out) {
    for (size_t i = 0; i < t.body.size(); ++i) {
        const auto* at = std::get_if<Atom>(&t.body[i]);
        if (!at || at->kind != kind::Schouten || at->derivs.empty()) continue;
        const Index& d = at->derivs.back();
        for (int s = 0; s < 2; ++s) {
            if (at->idx[static_cast<size_t>(s)].label != d.label) continue;
            Atom j;
            j.kind = kind::JScalar;
            j.derivs.assign(at->derivs.begin(), at->derivs.end() - 1);
            j.derivs.push_back(at->idx[static_cast<size_t>(1 - s)]);
            Term nt = t;
            nt.body[i] = j;
            out.terms.push_back(renumber_dummies(nt));
            return true;
        }
    }
    return false;
}

// Divergence of Weyl: nabla^a C_{abce} -> (n-3)(nabla_c P_{eb} - nabla_e P_{cb}).
bool try_c_divergence(const Term& t, Expr& out) {
    for (size_t i = 0; i < t.body.size(); ++i) {
        const auto* at = std::get_if<Atom>(&t.body[i]);
        if (!at || at->kind != kind::Weyl || at->derivs.empty()) continue;
        const Index& d = at->derivs.back();
        int slot = -1;
        for (int s = 0; s < 4; ++s)
            if (at->idx[static_cast<size_t>(s)].label == d.label) slot = s;
        if (slot < 0) continue;
        // use a Weyl symmetry to bring the contracted slot first
        const auto& group = kind_info(kind::Weyl).symmetry;
        const SignedPerm* g = nullptr;
        for (const auto& cand : group)
            if (cand.perm[0] == slot) {
                g = &cand;
                break;
            }
        std::vector<Index> ix(4);
        for (size_t s = 0; s < 4; ++s) ix[s] = at->idx[static_cast<size_t>(g->perm[s])];
        Index b = ix[1], c = ix[2], e = ix[3];
        std::vector<Index> outer(at->derivs.begin(), at->derivs.end() - 1);
        DimRational coeff = DimRational(g->sign) * (DimRational::n() - DimRational(3));
        Atom p1 = mk(kind::Schouten, {e, b});
        p1.derivs = {c};
        Atom p2 = mk(kind::Schouten, {c, b});
        p2.derivs = {e};
        Expr repl = Expr(Term(coeff, {p1})) + Expr(Term(-coeff, {p2}));
        if (!outer.empty()) repl = leibniz_expand(apply_chain(outer, repl));
        Expr sub = detail::substitute_atom(t, i, repl);
        for (Term& nt : sub.terms) out.terms.push_back(std::move(nt));
        return true;
    }
    return false;
}

// First Bianchi identity of the Weyl tensor as a reduction: for every slot
// arrangement C_{wzxy} = C_{wyxz} - C_{wxyz}, accept the rewrite when each
// replacement either is strictly smaller in the canonical body order or
// folds back onto the original term (solved as a linear equation). The
// strict decrease makes the rewrite system terminating.
bool try_c_bianchi(const Term& t, Expr& out) {
    for (size_t i = 0; i < t.body.size(); ++i) {
        const auto* at = std::get_if<Atom>(&t.body[i]);
        if (!at || at->kind != kind::Weyl) continue;
        // require four distinct slot names, none contracted with own chain
        bool ok = true;
        for (int s = 0; s < 4 && ok; ++s) {
            for (int r = s + 1; r < 4; ++r)
                if (at->idx[static_cast<size_t>(s)].label ==
                    at->idx[static_cast<size_t>(r)].label)
                    ok = false;
            for (const Index& d : at->derivs)
                if (d.label == at->idx[static_cast<size_t>(s)].label) ok = false;
        }
        if (!ok) continue;
        const auto& group = kind_info(kind::Weyl).symmetry;
        for (const auto& g : group) {
            std::vector<Index> ix(4);
            for (size_t s = 0; s < 4; ++s) ix[s] = at->idx[static_cast<size_t>(g.perm[s])];
            Index w = ix[0], z = ix[1], x = ix[2], y = ix[3];
            DimRational sgn(g.sign);
            Atom c1 = mk(kind::Weyl, {w, y, x, z});
            c1.derivs = at->derivs;
            Atom c2 = mk(kind::Weyl, {w, x, y, z});
            c2.derivs = at->derivs;
            Expr repl = Expr(Term(sgn, {c1})) + Expr(Term(-sgn, {c2}));
            Expr sub = detail::substitute_atom(t, i, repl);
            // termination guard: with several classifiable atoms in one term
            // the elimination can feed back through the monoterm step, so
            // each replacement must either be strictly smaller in the
            // canonical body order (the rewritten multiset then decreases
            // in a well-founded order) or fold back onto the original term
            // itself, in which case the identity is solved for the original:
            //   t = lambda*t + rest  =>  t = rest / (1 - lambda)
            auto term_encoding = [](const Term& tt) {
                std::vector<Atom> atoms;
                for (const Node& nd : tt.body) atoms.push_back(std::get<Atom>(nd));
                Encoding enc;
                encode_atoms(atoms, enc, nullptr);
                return enc;
            };
            Term tc = monoterm_canonical(t);
            Encoding base = term_encoding(tc);
            DimRational lambda(0);
            std::vector<Term> smaller;
            bool usable = true;
            for (const Term& nt : sub.terms) {
                Term c = monoterm_canonical(nt);
                if (c.coeff.is_zero()) continue;
                Encoding enc = term_encoding(c);
                if (enc < base) {
                    smaller.push_back(std::move(c));
                } else if (enc == base) {
                    lambda = lambda + c.coeff / tc.coeff;
                } else {
                    usable = false;
                    break;
                }
            }
            if (!usable) continue;
            DimRational scale = DimRational(1) - lambda;
            if (scale.is_zero()) continue;
            for (Term& nt : smaller) {
                nt.coeff = nt.coeff / scale;
                out.terms.push_back(std::move(nt));
            }
            return true;
        }
    }
    return false;
}

// Two adjacent chain derivatives contracted into an antisymmetric slot pair
// of one atom: relabeling the contracted dummies equates the term with minus
// its chain-swapped form, so the term equals half the Ricci-identity
// corrections of that swap. Each application removes two derivatives.
bool try_antisym_chain(const Term& t, Expr& out) {
    for (size_t ai = 0; ai < t.body.size(); ++ai) {
        const auto* F = std::get_if<Atom>(&t.body[ai]);
        if (!F || F->derivs.size() < 2) continue;
        for (size_t i = 0; i + 1 < F->derivs.size(); ++i) {
            const Index& u = F->derivs[i];
            const Index& v = F->derivs[i + 1];
            if (!u.is_dummy() || !v.is_dummy() || u.kind != v.kind ||
                u.label == v.label)
                continue;
            // both partners must be index slots of one atom
            size_t pa = SIZE_MAX, ps = 0, qa = SIZE_MAX, qs = 0;
            for (size_t bi = 0; bi < t.body.size(); ++bi) {
                const auto* A = std::get_if<Atom>(&t.body[bi]);
                if (!A) continue;
                for (size_t s = 0; s < A->idx.size(); ++s) {
                    const Index& ix = A->idx[s];
                    if (ix.kind != u.kind) continue;
                    if (ix.label == u.label) {
                        pa = bi;
                        ps = s;
                    } else if (ix.label == v.label) {
                        qa = bi;
                        qs = s;
                    }
                }
            }
            if (pa == SIZE_MAX || pa != qa) continue;
            const Atom& A = std::get<Atom>(t.body[pa]);
            // the transposition (ps qs) fixing all other slots must be a
            // symmetry element of sign -1
            bool antisym = false;
            for (const SignedPerm& g : kind_info(A.kind).symmetry) {
                if (g.sign != -1) continue;
                bool match = true;
                for (size_t s = 0; s < g.perm.size(); ++s) {
                    size_t want = s == ps ? qs : s == qs ? ps : s;
                    if (static_cast<size_t>(g.perm[s]) != want) match = false;
                }
                if (match) {
                    antisym = true;
                    break;
                }
            }
            if (!antisym) continue;
            std::vector<Term> res;
            detail::swap_with_corrections(t, ai, i, res);
            // res[0], the swapped main term, equals -t; drop it and keep
            // half of the curvature corrections
            for (size_t k = 1; k < res.size(); ++k) {
                res[k].coeff = res[k].coeff / DimRational(2);
                out.terms.push_back(std::move(res[k]));
            }
            return true;
        }
    }
    return false;
}

bool multiterm_pass(const Expr& e, Expr& out) {
    bool changed = false;
    out = Expr();
    for (const Term& t : e.terms) {
        Expr r;
        if (try_p_divergence(t, r) || try_c_divergence(t, r) ||
            try_antisym_chain(t, r) || try_c_bianchi(t, r)) {
            changed = true;
            for (const Term& nt : r.terms) out.terms.push_back(nt);
        } else {
            out.terms.push_back(t);
        }
    }
    out = merge(out);
    return changed;
}

bool exprs_equal(const Expr& a, const Expr& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (size_t i = 0; i < a.terms.size(); ++i) {
        if (!(a.terms[i].coeff == b.terms[i].coeff)) return false;
        if (!(a.terms[i].body == b.terms[i].body)) return false;
    }
    return true;
}

bool has_kind(const Expr& e, std::initializer_list<int> kinds) {
    for (const Term& t : e.terms)
        for (const Node& nd : t.body)
            if (auto* at = std::get_if<Atom>(&nd))
                for (int k : kinds)
                    if (at->kind == k) return true;
    return false;
}

}  // namespace

Expr canonicalize(const Expr& e) {
    Expr cur = merge(e);
    if (!fully_expanded(cur)) cur = expand_all(cur);
    const bool debug = std::getenv("TRACKTOR_DEBUG_CANON") != nullptr;
    std::vector<Expr> history;  // cycle diagnostics only
    for (int iter = 0; iter < 64; ++iter) {
        Expr a = commute_nablas(cur);
        if (has_kind(a, {kind::Riemann})) a = decompose_riemann(a);
        if (has_kind(a, {kind::W, kind::OmegaTr, kind::OmegaMx})) a = expand_W(a);
        a = contract_inner(a);
        a = monoterm_pass(a);
        Expr b;
        multiterm_pass(a, b);
        if (exprs_equal(b, cur)) return b;
        if (debug) {
            Expr delta = merge(b - cur);
            std::fprintf(stderr, "canonicalize iter %d: %zu terms, delta %zu\n", iter,
                         b.terms.size(), delta.terms.size());
            if (iter >= 60) {
                for (const Term& t : delta.terms)
                    std::fprintf(stderr, "  %s\n", term_str(t).c_str());
            }
            for (size_t h = 0; h < history.size(); ++h)
                if (exprs_equal(b, history[h])) {
                    Expr diff = merge(b - cur);
                    std::fprintf(stderr,
                                 "canonicalize cycle: iter %d == iter %zu, last-step "
                                 "delta (%zu terms):\n",
                                 iter, h, diff.terms.size());
                    for (const Term& t : diff.terms)
                        std::fprintf(stderr, "  %s\n", term_str(t).c_str());
                    throw std::runtime_error("canonicalize: cycle");
                }
            history.push_back(cur);
        }
        cur = std::move(b);
    }
    throw std::runtime_error("canonicalize: no fixpoint within iteration cap");
}

}  // namespace tracktor
