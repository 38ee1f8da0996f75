#include "tracktor/pipeline.hpp"

#include "tracktor/dsl.hpp"
#include "tracktor/riemann.hpp"
#include "tracktor/tractor.hpp"

namespace tracktor {

namespace {

// Simultaneous renaming of free labels throughout an expression.
Expr rename_free(const Expr& e, const std::vector<std::pair<int32_t, int32_t>>& map) {
    auto ren = [&](Index& ix) {
        if (ix.is_dummy()) return;
        for (const auto& [from, to] : map)
            if (ix.label == from) {
                ix.label = to;
                return;
            }
    };
    Expr out = e;
    for (Term& t : out.terms)
        for (Node& nd : t.body)
            std::visit(
                [&](auto& node) {
                    using T = std::decay_t<decltype(node)>;
                    if constexpr (std::is_same_v<T, Atom>) {
                        for (Index& ix : node.derivs) ren(ix);
                        for (Index& ix : node.idx) ren(ix);
                    } else if constexpr (std::is_same_v<T, NablaNode>) {
                        ren(node.a);
                    } else if constexpr (std::is_same_v<T, DNode>) {
                        ren(node.A);
                    } else if constexpr (std::is_same_v<T, DoubleDNode>) {
                        ren(node.A);
                        ren(node.P);
                    }
                },
                nd);
    return out;
}

}  // namespace

// Each term's node prefix is peeled off and re-applied one node at a time
// with a canonicalization in between.
Expr canonicalize_staged(const Expr& e) {
    Expr out;
    for (const Term& t : e.terms) {
        size_t s = t.body.size();
        while (s > 0 && std::holds_alternative<Atom>(t.body[s - 1])) --s;
        Expr cur(Term(t.coeff,
                      std::vector<Node>(t.body.begin() + static_cast<long>(s),
                                        t.body.end())));
        cur = canonicalize(cur);
        for (size_t i = s; i-- > 0;) cur = canonicalize(apply_node(t.body[i], cur));
        out = out + cur;
    }
    return canonicalize(out);
}

GjmsResult gjms_formula(int k) {
    TractorFormula lf = library_formula(k);
    GjmsResult r;
    r.k = k;
    r.tractor = lf.op;
    r.slots = lf.slots;
    r.fkind = lf.fkind;
    Expr e = canonicalize_staged(lf.op);
    SlotExtraction sx = slot_extract(e, lf.slots);
    if (!merge(sx.residual).is_zero())
        throw PipelineError("gjms_formula: Y/Z slot residual survives extraction");
    r.coefficient = sx.coefficient;
    r.form = to_fsa_form(sx.coefficient, lf.fkind);
    return r;
}

QResult q_extract(const GjmsResult& r) {
    QResult q;
    q.k = r.k;
    DimRational factor =
        DimRational(2) / (DimRational::n() - DimRational(2 * r.k));
    q.q_n = merge(factor * r.form.zeroth);
    try {
        q.q = at_dimension(q.q_n, Rational(2 * r.k));
    } catch (const PoleError&) {
        throw PipelineError(
            "q_extract: zeroth-order block is not divisible by (n-2k)/2");
    }
    return q;
}

Expr i_tractor(const Index& A) {
    if (A.kind != IndexKind::Tractor || A.up)
        throw PipelineError("i_tractor: needs a lowered tractor label");
    Atom y;
    y.kind = kind::Y;
    y.idx = {A};
    Atom x;
    x.kind = kind::X;
    x.idx = {A};
    Atom j;
    j.kind = kind::JScalar;
    Expr e;
    e.terms.push_back(Term(DimRational::n() - DimRational(2), {y}));
    e.terms.push_back(Term(DimRational(-1), {j, x}));
    return e;
}

QResult q_via_tractor(int k) {
    QResult q;
    q.k = k;
    if (k == 2) {
        Index A = free_tractor("A");
        Expr e = canonicalize(apply_node(BoxNode{}, i_tractor(A)));
        SlotExtraction sx = slot_extract(at_dimension(e, Rational(4)), {A});
        if (!merge(sx.residual).is_zero())
            throw PipelineError("q_via_tractor: Y/Z slots of Box I survive at n=4");
        q.q = merge(sx.coefficient);
        return q;
    }
    if (k == 3) {
        Index A = free_tractor("A"), B = free_tractor("B");
        Expr t1 = apply_node(BoxNode{}, apply_node(DNode{A}, i_tractor(B)));
        Atom w;
        w.kind = kind::W;
        w.idx = {A, free_tractor("S", true), B, free_tractor("T", true)};
        DimRational c = DimRational(2) / (DimRational::n() - DimRational(4));
        Expr t2 = multiply(Expr(Term(c, {w})),
                           apply_node(DNode{free_tractor("S")},
                                      i_tractor(free_tractor("T"))));
        Expr e = canonicalize(t1 + t2);
        SlotExtraction sx = slot_extract(at_dimension(e, Rational(6)), {A, B});
        if (!merge(sx.residual).is_zero())
            throw PipelineError("q_via_tractor: Y/Z slots of E D I survive at n=6");
        // the X_A X_B component of E_{AB}{}^{ST} D_S I_T is -Q_6
        q.q = merge(DimRational(-1) * sx.coefficient);
        return q;
    }
    throw PipelineError("q_via_tractor: k must be 2 or 3");
}

Expr box2k_strong(int k) {
    if (k < 1 || k > 4) throw PipelineError("box2k_strong: k must be 1..4");
    int fk;
    if (k == 1) {
        parse("section f2 : weight(1 - n/2)\nf2");
        fk = find_section("f2");
    } else {
        fk = library_formula(k).fkind;
    }
    Atom f;
    f.kind = fk;
    Expr e(Term(DimRational(1), {f}));
    const char* names[] = {"K1", "K2", "K3"};
    for (int i = 1; i <= k - 1; ++i)
        e = apply_node(DNode{free_tractor(names[i - 1])}, e);
    e = apply_node(BoxNode{}, e);
    for (int i = k - 1; i >= 1; --i)
        e = apply_node(DNode{free_tractor(names[i - 1], true)}, e);
    DimRational denom(1);
    for (int i = 2; i <= k; ++i)
        denom = denom * (DimRational::n() - DimRational(2 * i)) * DimRational(i - 1);
    return canonicalize((DimRational(1) / denom) * e);
}

Expr e_operator_applied(int k) {
    if (k == 3) return library_formula(3).op;
    if (k != 4) throw PipelineError("e_operator_applied: k must be 3 or 4");
    TractorFormula p8 = library_formula(4);
    Index A = free_tractor("A"), B = free_tractor("B");
    Index Kd = free_tractor("K"), Ku = free_tractor("K", true);
    Index Md = free_tractor("M"), Mu = free_tractor("M", true);
    Atom f;
    f.kind = p8.fkind;

    // Box_4 D_A D_B f = (1/(n-4)) D^M Box D_M D_A D_B f
    Expr dd(Term(DimRational(1), {f}));
    dd = apply_node(DNode{B}, dd);
    dd = apply_node(DNode{A}, dd);
    Expr box4 = apply_node(DNode{Mu},
                           apply_node(BoxNode{}, apply_node(DNode{Md}, dd)));
    box4 = (DimRational(1) / (DimRational::n() - DimRational(4))) * box4;

    // Psi_{K B A}{}^{PQ} D_P D_Q f: the library formula with the X-slot
    // labels cycled to (K, B, A), plus the leading Box D_K D_B D_A f term
    // it absorbs.
    Expr op_kba =
        rename_free(p8.op, {{free_tractor("A").label, Kd.label},
                            {free_tractor("C").label, A.label}});
    Expr ddd(Term(DimRational(1), {f}));
    ddd = apply_node(DNode{A}, ddd);
    ddd = apply_node(DNode{B}, ddd);
    ddd = apply_node(DNode{Kd}, ddd);
    Expr psi = op_kba + apply_node(BoxNode{}, ddd);

    Expr corr = apply_node(DNode{Ku}, psi);
    corr = (DimRational(1) / (DimRational(4) - DimRational::n())) * corr;
    return box4 + corr;
}

Expr q_like_generator(const Expr& g_applied_to_i, const Index& A, long long n0) {
    if (A.kind != IndexKind::Tractor || A.up)
        throw PipelineError("q_like_generator: A must be a lowered tractor label");
    Expr e = apply_node(DNode{A.flipped()}, g_applied_to_i);
    return at_dimension(canonicalize(e), Rational(n0));
}

bool fsa_certify(const GjmsResult& r) { return fsa_certify(r.coefficient, r.fkind); }

}  // namespace tracktor
