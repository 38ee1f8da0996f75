#pragma once

// Shared helpers for the rewrite passes (not installed).

#include "tracktor/expr.hpp"

namespace tracktor::detail {

// Shift every dummy id in t by `shift` (magnitudes increase).
Term shift_dummies(Term t, int32_t shift);

// Replace the Atom at body position `pos` of t with `repl` (an expression in
// the same index slots), splicing each replacement term's body in place.
// Dummies paired *within* a replacement term are renamed away from t;
// indices occurring once in the replacement (free slots of the original
// atom, or contractions with the rest of t) are kept verbatim.
Expr substitute_atom(const Term& t, size_t pos, const Expr& repl);

// Fresh dummy id (one past the largest in use in t and e).
int32_t fresh_dummy(const Term& t);

// Append to `out` the swapped main term and the Ricci-identity curvature
// corrections for exchanging derivative chain positions i, i+1 of the atom
// at atom_pos; t is equal to the sum of the appended terms.
void swap_with_corrections(const Term& t, size_t atom_pos, size_t i,
                           std::vector<Term>& out);

}  // namespace tracktor::detail
