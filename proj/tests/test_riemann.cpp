#include "doctest.h"

#include "tracktor/dsl.hpp"
#include "tracktor/riemann.hpp"
#include "tracktor/tractor.hpp"

using namespace tracktor;

namespace {
bool same(const Expr& a, const Expr& b) { return canonicalize(a - b).is_zero(); }
}  // namespace

TEST_CASE("slot symmetries are normalized") {
    CHECK(same(parse("P[-b,-a]"), parse("P[-a,-b]")));
    CHECK(canonicalize(parse("C[-a,-b,-c,-d] + C[-b,-a,-c,-d]")).is_zero());
    CHECK(canonicalize(parse("C[-a,-b,-c,-d] - C[-c,-d,-a,-b]")).is_zero());
    // traces of the trace-free kinds vanish
    CHECK(canonicalize(parse("C[-a,-k,-c,+k]")).is_zero());
    CHECK(canonicalize(parse("g[+a,+b] * C[-a,-b,-c,-d]")).is_zero());
    // metric self-traces
    CHECK(same(parse("g[-k,+k]"), DimRational::n() * parse("1")));
    CHECK(same(parse("P[-k,+k]"), parse("J")));
}

TEST_CASE("first Bianchi identity for the Weyl atom") {
    CHECK(canonicalize(parse("C[-a,-b,-c,-d] + C[-a,-c,-d,-b] + C[-a,-d,-b,-c]"))
              .is_zero());
    // with contracted partners instead of free labels
    parse("section va[tensor] : weight(0)\nsection vb[tensor] : weight(0)\n"
          "section vc[tensor] : weight(0)\nsection vd[tensor] : weight(0)");
    Expr e = parse("C[-a,-b,-c,-d] * va[+a] * vb[+b] * vc[+c] * vd[+d]"
                   " + C[-a,-c,-d,-b] * va[+a] * vb[+b] * vc[+c] * vd[+d]"
                   " + C[-a,-d,-b,-c] * va[+a] * vb[+b] * vc[+c] * vd[+d]");
    CHECK(canonicalize(e).is_zero());
}

TEST_CASE("Riemann decomposition") {
    parse("section vv[tensor] : weight(0)");
    // Ricci contraction of the decomposition
    Expr ric = canonicalize(parse("g[+b,+d] * R[-a,-b,-c,-d]"));
    Expr expect = canonicalize(parse("(n - 2) * P[-a,-c] + J * g[-a,-c]"));
    CHECK(same(ric, expect));
    // flat specialization kills everything
    CHECK(substitute_flat(canonicalize(parse("R[-a,-b,-c,-d]")), true).is_zero());
}

TEST_CASE("contracted second Bianchi and Cotton rewrites") {
    CHECK(canonicalize(parse("nabla[+a](P[-a,-b]) - nabla[-b](J)")).is_zero());
    Expr divc = parse("nabla[+a](C[-a,-b,-c,-e])"
                      " - (n - 3) * nabla[-c](P[-e,-b])"
                      " + (n - 3) * nabla[-e](P[-c,-b])");
    CHECK(canonicalize(divc).is_zero());
}

TEST_CASE("derivative commutators insert curvature") {
    parse("section uvec[tensor] : weight(0)\nsection fzero : weight(0)");
    // on a density the commutator vanishes
    Expr dens = parse("nabla[-a](nabla[-b](fzero)) - nabla[-b](nabla[-a](fzero))");
    CHECK(canonicalize(dens).is_zero());
    // Ricci identity on a vector
    Expr comm = parse("nabla[-a](nabla[-b](uvec[+c])) - nabla[-b](nabla[-a](uvec[+c]))"
                      " - R[-a,-b,+c,-d] * uvec[+d]");
    CHECK(canonicalize(comm).is_zero());
    // contracted version: the Laplacian/divergence exchange on a 1-form
    Expr lap = parse("nabla[+k](nabla[-k](uvec[-b])) - nabla[-b](nabla[+k](uvec[-k]))"
                     " + nabla[+k](nabla[-b](uvec[-k])) - nabla[+k](nabla[-b](uvec[-k]))");
    (void)lap;  // structural smoke: canonicalize terminates
    CHECK(canonicalize(lap).terms.size() <= 8);
}

TEST_CASE("canonicalize is idempotent") {
    parse("section uvec[tensor] : weight(0)");
    const char* samples[] = {
        "nabla[-a](nabla[-b](uvec[+c])) + nabla[-b](nabla[-a](uvec[+c]))",
        "P[-i,-j] * P[+i,+j] * J",
        "nabla[+a](C[-a,-b,-c,-e]) * uvec[+b] * uvec[+c] * uvec[+e]",
        "g[+b,+d] * R[-a,-b,-c,-d] * uvec[+a] * uvec[+c]",
    };
    for (const char* s : samples) {
        Expr once = canonicalize(parse(s));
        Expr twice = canonicalize(once);
        CHECK(canonicalize(once - twice).is_zero());
    }
}
