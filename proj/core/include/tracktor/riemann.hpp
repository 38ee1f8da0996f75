#pragma once

// Riemannian canonicalization: Riemann decomposition, derivative reordering
// with curvature insertion, monoterm (slot-symmetry) canonicalization, and
// the Bianchi multiterm rewrite set.

#include "tracktor/expr.hpp"

namespace tracktor {

// R_abcd -> C_abcd + 2 g_{c[a} P_{b]d} + 2 g_{d[b} P_{a]c}.
Expr decompose_riemann(const Expr& e);

// Reorder every derivative chain into the fixed canonical index order;
// each adjacent swap inserts the curvature action (R on tensor slots,
// Omega on tractor slots, nothing on densities). Riemann atoms produced
// here are left for decompose_riemann.
Expr commute_nablas(const Expr& e);

// Monoterm canonical representative of one term: exhaustive double-coset
// search over slot symmetries and identical-atom exchange; returns the term
// with canonical dummy labels and sign, or a zero-coefficient term when the
// term is killed by its own symmetries.
Term monoterm_canonical(const Term& t);

// Full canonicalization loop: decomposition, metric folding, derivative
// reordering, monoterm search, and the multiterm rules (contracted Bianchi
// nabla^a P_ab -> nabla_b J, C traces -> 0, divergence of C -> Cotton,
// first-Bianchi resolution) applied to fixpoint.
Expr canonicalize(const Expr& e);

// Substitute C -> 0 (and optionally P -> 0, J -> 0) for flat/conformally
// flat specializations.
Expr substitute_flat(const Expr& e, bool kill_schouten);

}  // namespace tracktor
