#pragma once

// Terms and expressions. A term is a DimRational coefficient times an ordered
// body of nodes; derivative/macro nodes act on everything to their right, so
// the body is the left-to-right reading of a right-nested application tree.

#include "tracktor/atom.hpp"
#include "tracktor/dimrational.hpp"

#include <stdexcept>
#include <variant>
#include <vector>

namespace tracktor {

struct IndexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct WeightError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NablaNode {
    Index a;  // tensor index (may be raised)
    auto operator<=>(const NablaNode&) const = default;
};
struct BoxNode {  // tractor box macro: nabla^p nabla_p + w J
    auto operator<=>(const BoxNode&) const = default;
};
struct DNode {  // tractor D macro
    Index A;  // tractor index
    auto operator<=>(const DNode&) const = default;
};
struct DoubleDNode {  // D_{AP} macro
    Index A, P;
    auto operator<=>(const DoubleDNode&) const = default;
};

using Node = std::variant<Atom, NablaNode, BoxNode, DNode, DoubleDNode>;

struct Term {
    DimRational coeff;
    std::vector<Node> body;

    Term() = default;
    Term(DimRational c, std::vector<Node> b) : coeff(std::move(c)), body(std::move(b)) {}
};

struct Expr {
    std::vector<Term> terms;

    Expr() = default;
    explicit Expr(Term t) { terms.push_back(std::move(t)); }
    static Expr zero() { return Expr(); }
    static Expr scalar(DimRational c) { return Expr(Term(std::move(c), {})); }
    bool is_zero() const { return terms.empty(); }
};

// --- construction helpers ---------------------------------------------------
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const DimRational& c, const Expr& e);

// Distributive product; dummy labels of b renamed away from a; free-index
// collisions that would create a triple occurrence raise IndexError.
Expr multiply(const Expr& a, const Expr& b);

// Prefix every term of e with a node (operator applied to the whole of e).
Expr apply_node(const Node& nd, const Expr& e);
// Prefix with a nabla chain, outermost first.
Expr apply_chain(const std::vector<Index>& chain, const Expr& e);

// --- bookkeeping ------------------------------------------------------------

// Common homogeneous weight of all terms; WeightError for a mixed sum.
Weight weight_of(const Expr& e);
Weight term_weight(const Term& t);
// Weight of a body suffix [from, end) — the operand of a macro node.
Weight suffix_weight(const std::vector<Node>& body, size_t from);

// Validates dummy pairing / free-occurrence rules; throws IndexError.
void check_indices(const Term& t);

// Renumber dummy labels left-to-right (deterministic normal form for merging;
// does not use symmetries). Free labels are never renamed.
Term renumber_dummies(const Term& t);
// First unused dummy id magnitude in t (for fresh allocation).
int32_t max_dummy(const Term& t);

// Structural merge: renumber dummies, sort-compare bodies byte-wise, sum
// coefficients of identical bodies, drop zeros.
Expr merge(const Expr& e);

// Substitute the value n = n0 into every coefficient (PoleError on poles).
Expr at_dimension(const Expr& e, const Rational& n0);

// All bodies contain only Atom nodes?
bool fully_expanded(const Expr& e);

std::string term_str(const Term& t);
std::string expr_str(const Expr& e);

}  // namespace tracktor
