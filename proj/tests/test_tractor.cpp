#include <doctest.h>

#include "tracktor/dsl.hpp"
#include "tracktor/emit.hpp"
#include "tracktor/riemann.hpp"
#include "tracktor/tractor.hpp"

using namespace tracktor;

namespace {

// Compare two expressions after full canonicalization.
bool same(const Expr& a, const Expr& b) { return canonicalize(a - b).is_zero(); }

Expr C(const std::string& s) { return contract_inner(parse(s)); }

}  // namespace

TEST_CASE("tractor inner products") {
    // the nonzero pairings
    CHECK(merge(C("X[-A] * Y[+A]") - parse("1")).is_zero());
    CHECK(merge(C("Y[-A] * X[+A]") - parse("1")).is_zero());
    CHECK(merge(C("Z[-A,-a] * Z[+A,+b]") - parse("g[-a,+b]")).is_zero());
    // everything else vanishes
    CHECK(C("X[-A] * X[+A]").is_zero());
    CHECK(C("Y[-A] * Y[+A]").is_zero());
    CHECK(C("X[-A] * Z[+A,+b]").is_zero());
    CHECK(C("Y[-A] * Z[+A,+b]").is_zero());
    // h folds into variance; self-trace gives the tractor dimension n+2
    CHECK(merge(C("h[+A,+B] * X[-A] * Y[-B]") - parse("1")).is_zero());
    CHECK(merge(C("h[+A,+B] * h[-A,-B]") - parse("n + 2")).is_zero());
    CHECK(merge(C("g[+a,+b] * g[-a,-b]") - parse("n")).is_zero());
}

TEST_CASE("conformal Laplacian from D on weight 1 - n/2") {
    parse("section fcl : weight(1 - n/2)");
    Expr lhs = expand_all(parse("D[-A](fcl)"));
    Expr rhs = expand_all(parse("-X[-A] * Box(fcl)"));
    CHECK(merge(lhs - rhs).is_zero());
    // and Box f here is (nabla^a nabla_a + (2-n)/2 J) f
    Expr box = expand_all(parse("Box(fcl)"));
    Expr expl = expand_all(parse("nabla[-p](nabla[+p](fcl)) + ((2-n)/2)*J*fcl"));
    CHECK(merge(box - expl).is_zero());
}

TEST_CASE("D applied to X^A V") {
    // D_A(X^A V) = (n+2w+2)(n+w) V for V of weight w
    struct Case { const char* decl; const char* expr; const char* rhs; };
    const Case cases[] = {
        {"section va : weight(2)", "D[-A](X[+A] * va)", "(n+2*2+2)*(n+2) * va"},
        {"section vb : weight(1 - n/2)", "D[-A](X[+A] * vb)", "4*(1 + n/2) * vb"},
        {"section vc[tractor] : weight(-2)", "D[-A](X[+A] * vc[-B])", "(n-2)*(n-2) * vc[-B]"},
    };
    for (const Case& c : cases) {
        parse(c.decl);
        CHECK(same(parse(c.expr), parse(c.rhs)));
    }
}

TEST_CASE("double-D identities") {
    parse("section vw : weight(3)");
    // antisymmetry
    CHECK(merge(expand_all(parse("DD[-A,-P](vw) + DD[-P,-A](vw)"))).is_zero());
    // h-trace vanishes
    CHECK(merge(expand_all(parse("h[+A,+P] * DD[-A,-P](vw)"))).is_zero());
    // X^A D_{AP} V = w X_P V
    Expr lhs = expand_all(parse("X[+A] * DD[-A,-P](vw)"));
    Expr rhs = expand_all(parse("3 * X[-P] * vw"));
    CHECK(merge(lhs - rhs).is_zero());
}

TEST_CASE("connection identities via projector pushing") {
    parse("section s1 : weight(1)");
    // nabla_a X_A = Z_{Aa}
    Expr e = push_projectors_left(leibniz_expand(parse("nabla[-a](X[-A] * s1)")));
    Expr want = merge(parse("Z[-A,-a] * s1") + parse("X[-A] * nabla[-a](s1)"));
    CHECK(merge(leibniz_expand(e) - leibniz_expand(want)).is_zero());
    // nabla_a Z_{Ab} = -P_ab X_A - Y_A g_ab ; check via the weight-0 pairing
    // nabla_a (Z_A{}^b Z^{A}{}_b) = nabla_a (delta^b_b) = 0
    Expr zz = expand_all(parse("nabla[-a](Z[-A,+b] * Z[+A,-b] * s1)"));
    Expr n_grad = expand_all(parse("n * nabla[-a](s1)"));
    CHECK(merge(zz - n_grad).is_zero());
    // nabla_a (X_A Y^A) = 0 expands consistently
    Expr xy = expand_all(parse("nabla[-a](X[-A] * Y[+A] * s1)"));
    CHECK(same(xy, parse("nabla[-a](s1)")));
}

TEST_CASE("commutator of D on densities vanishes") {
    const char* decls[] = {
        "section wa : weight(2)",
        "section wb : weight(1 - n/2)",
        "section wc : weight(3 - n/2)",
    };
    const char* names[] = {"wa", "wb", "wc"};
    for (int i = 0; i < 3; ++i) {
        parse(decls[i]);
        std::string f = names[i];
        Expr comm = parse("D[-A](D[-B](" + f + ")) - D[-B](D[-A](" + f + "))");
        CHECK(canonicalize(comm).is_zero());
    }
}

TEST_CASE("tractor curvature expansion is antisymmetric and X-annihilated") {
    // X^C Omega_{abCE} = 0 and Omega_{abCE} = -Omega_{abEC}
    Expr om = expand_W(parse("X[+C] * Om[-a,-b,-C,-E]"));
    CHECK(canonicalize(om).is_zero());
    Expr asym = expand_W(parse("Om[-a,-b,-C,-E] + Om[-a,-b,-E,-C]"));
    CHECK(canonicalize(asym).is_zero());
}

TEST_CASE("W has Weyl tensor symmetries") {
    auto w = [](const char* s) { return expand_W(parse(s)); };
    // antisymmetry in each pair
    CHECK(canonicalize(w("W[-A,-B,-C,-E] + W[-B,-A,-C,-E]")).is_zero());
    CHECK(canonicalize(w("W[-A,-B,-C,-E] + W[-A,-B,-E,-C]")).is_zero());
    // pair exchange
    CHECK(canonicalize(w("W[-A,-B,-C,-E] - W[-C,-E,-A,-B]")).is_zero());
    // first Bianchi: W_{[ABC]E} = 0
    CHECK(canonicalize(w("W[-A,-B,-C,-E] + W[-B,-C,-A,-E] + W[-C,-A,-B,-E]")).is_zero());
    // annihilated by X on any index
    CHECK(canonicalize(w("X[+A] * W[-A,-B,-C,-E]")).is_zero());
    CHECK(canonicalize(w("X[+C] * W[-A,-B,-C,-E]")).is_zero());
    // trace-free
    CHECK(canonicalize(w("h[+A,+C] * W[-A,-B,-C,-E]")).is_zero());
    // vanishes for flat structures; the residual after killing only C consists
    // of Cotton and divergence-of-Cotton terms, which vanish when C = 0 but
    // only via the reverse of the engine's C -> Cotton rewrite, so the full
    // conformally flat statement is certified numerically by the jet oracle
    Expr flat = substitute_flat(canonicalize(w("W[-A,-B,-C,-E]")), true);
    CHECK(canonicalize(flat).is_zero());
}

TEST_CASE("slot extraction recovers an X coefficient") {
    parse("section fx : weight(2 - n/2)");
    Expr e = expand_all(parse("D[-A](fx)"));
    auto ex = slot_extract(e, {free_tractor("A")});
    // top/middle slots: (n+2w-2) = 2 at w = 2-n/2, so they are present
    CHECK(!ex.residual.is_zero());
    // coefficient of X_A is -Box fx
    Expr box = expand_all(parse("-Box(fx)"));
    CHECK(merge(ex.coefficient - box).is_zero());
}
