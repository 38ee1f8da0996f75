#pragma once

// End-to-end derivations: the library tractor formulas for the conformally
// invariant operators P_{2k} (k = 2, 3, 4), their expansion into canonical
// self-adjoint form, Q-curvature extraction by both routes, the strong
// operators built from nested D-chains, and related generators.

#include "tracktor/expr.hpp"
#include "tracktor/fsa.hpp"

namespace tracktor {

struct PipelineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The library tractor expression equal to (+-) X_{A_1}..X_{A_{k-1}} P_{2k} f
// for a density f of weight k - n/2 (the sign convention is chosen so that
// the X-slot coefficient is P_{2k} itself, with principal part Delta^k).
struct TractorFormula {
    int k = 0;
    Expr op;                   // tractor-side expression
    std::vector<Index> slots;  // free tractor labels carrying the X factors
    int fkind = -1;            // density section kind, weight k - n/2
};
TractorFormula library_formula(int k);  // k in {2, 3, 4}

struct GjmsResult {
    int k = 0;
    Expr tractor;              // the library tractor expression
    std::vector<Index> slots;  // X-slot labels
    int fkind = -1;
    Expr coefficient;  // extracted Riemannian operator P_{2k} applied to f
    FsaForm form;      // canonical self-adjoint form of the coefficient
};

// Expand the library formula, extract the X..X slot (residual must vanish),
// and decompose into canonical self-adjoint form.
GjmsResult gjms_formula(int k);  // k in {2, 3, 4}

struct QResult {
    int k = 0;
    Expr q_n;  // Q_{2k,n}: zeroth-order term divided by (n-2k)/2, rational in n
    Expr q;    // Q_{2k} = Q_{2k,2k}: the n -> 2k specialization
};

// Divide the zeroth-order block by (n-2k)/2 (divisibility certified by the
// absence of a pole at n = 2k) and specialize.
QResult q_extract(const GjmsResult& r);

// The scale-dependent tractor I_A = (n-2) Y_A - J X_A (weight -1).
Expr i_tractor(const Index& A);

// Q-curvature via the I-tractor route, working at n = 2k:
//   k=2: Box I_A           = X_A Q_4   at n = 4
//   k=3: Box D_A I_B + (2/(n-4)) W_A{}^C{}_B{}^E D_C I_E = -X_A X_B Q_6
//        at n = 6
// Asserts that every other slot component vanishes. The q field must agree
// with q_extract term by term; q_n is left empty on this route.
QResult q_via_tractor(int k);  // k in {2, 3}

// Expansion of D^{A_1}..D^{A_{k-1}} Box D_{A_{k-1}}..D_{A_1} f on a density
// of weight k - n/2, divided by prod_{i=2..k} (n-2i)(i-1); principal part
// Delta^k. k = 1 gives Box itself.
Expr box2k_strong(int k);

// The operator of the translation theorem applied to D_A D_B f: for k = 3
// this is the P6 tractor expression itself; for k = 4 it is
// Box_4 D_A D_B f + (1/(4-n)) D^C Psi_{CAB}{}^{PQ} D_P D_Q f with Psi read
// off from the library P8 formula. Satisfies E D D f = X_A X_B P_{2k} f.
Expr e_operator_applied(int k);  // k in {3, 4}

// D^A applied to G_A{}^B I_B (supplied as an expression with the single free
// lowered tractor label A), canonicalized and specialized to n = n0.
Expr q_like_generator(const Expr& g_applied_to_i, const Index& A, long long n0);

// The canonical form equals its formal adjoint.
bool fsa_certify(const GjmsResult& r);

// Expand and canonicalize a macro expression innermost-first: one-shot
// expansion of deeply nested D-chains produces intermediate sums orders of
// magnitude larger than the canonical forms they collapse to; staging keeps
// every intermediate small.
Expr canonicalize_staged(const Expr& e);

}  // namespace tracktor
