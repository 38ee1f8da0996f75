#pragma once

// Canonical formally-self-adjoint form for operators on densities: nested
// divergence blocks nabla..M nabla.. plus a zeroth-order term, the formal
// adjoint by integration by parts, and self-adjointness certification.

#include "tracktor/expr.hpp"

namespace tracktor {

struct FsaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One block nabla_{i_1}..nabla_{i_p} M^{i_1..i_p j_1..j_p} nabla_{j_1}..
// nabla_{j_p} f; M is stored totally symmetrized with raised free labels
// left[0..p) then right[0..p).
struct FsaBlock {
    int p = 0;
    Expr M;
    std::vector<Index> left, right;
};

struct FsaForm {
    std::vector<FsaBlock> blocks;  // descending p
    Expr zeroth;                   // scalar multiplier of the bare density
    int fkind = -1;                // section kind the operator acts on
};

// Decompose a canonicalized operator (linear in the density atom of kind
// fkind) into canonical form. Throws FsaError when an odd-order residue
// survives at any stage (operator not expressible in even blocks).
FsaForm to_fsa_form(const Expr& op, int fkind);

// Rebuild the operator expression; to_fsa_form followed by reassembly is the
// identity up to canonicalize.
Expr fsa_reassemble(const FsaForm& f);

// Adjoint of the canonical form: swap the two label groups of each M.
FsaForm fsa_adjoint(const FsaForm& f);

// Formal adjoint of a raw operator expression by integration by parts:
// each term T nabla_{c_1}..nabla_{c_m} f maps to
// (-1)^m nabla_{c_m}..nabla_{c_1}(T f).
Expr formal_adjoint(const Expr& op, int fkind);

// op equals its formal adjoint after canonicalization.
bool fsa_certify(const Expr& op, int fkind);

}  // namespace tracktor
