#pragma once

// Tractor-specific expansion: the box/D/double-D macros, projector pushing
// via the connection identities, inner-product contraction, Omega/W
// expansion, and slot extraction.

#include "tracktor/expr.hpp"

#include <utility>

namespace tracktor {

// Leibniz distribution of nabla nodes over products (expr-core op; declared
// here with its consumers). Metric atoms and parallel sections are
// annihilated by the connection.
Expr leibniz_expand(const Expr& e);

// Expand every Box/D/double-D macro node (innermost first) into nabla nodes
// and projector atoms, with weight-dependent coefficients resolved from the
// operand's homogeneous weight.
Expr expand_macros(const Expr& e);

// Box V = nabla_p nabla^p V + w J V; checks V is homogeneous of weight w.
Expr expand_box(const Expr& v, const Weight& w);
// D_A V = (n+2w-2) w Y_A V + (n+2w-2) Z_A{}^a nabla_a V - X_A Box V.
Expr expand_D(const Expr& v, const Weight& w, const Index& A);
// D_{AP} V = 2w X_{[P} Y_{A]} V + 2 X_{[P} Z_{A]}{}^b nabla_b V.
Expr expand_doubleD(const Expr& v, const Weight& w, const Index& A, const Index& P);

// Rewrite derivatives of X/Y/Z to fixpoint via the connection identities;
// requires a fully Leibniz-expanded expression.
Expr push_projectors_left(const Expr& e);

// Resolve contracted tractor indices via the Figure-1 inner products and
// fold metric (g, h, delta) contractions into index variance. Tractor
// contractions against non-projector atoms (W, Omega, sections) remain.
Expr contract_inner(const Expr& e);

// Expand W and Omega atoms into Weyl/Schouten/projector vocabulary and
// re-run the expansion pipeline.
Expr expand_W(const Expr& e);

// Full pipeline: macros -> Leibniz -> projector pushing -> contraction.
Expr expand_all(const Expr& e);

// Average over all permutations of the listed free labels (which must share
// kind and variance across the expression).
Expr symmetrize_labels(const Expr& e, const std::vector<Index>& labels);

// Coefficient of X_{A_1}...X_{A_{k-1}} (after symmetrization over the
// labels) plus everything else as residual.
struct SlotExtraction {
    Expr coefficient;
    Expr residual;
};
SlotExtraction slot_extract(const Expr& e, const std::vector<Index>& labels);

}  // namespace tracktor
