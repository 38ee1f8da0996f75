#pragma once

// Noncommutative rewriting over ambient operator words: derives the tractor
// formulas for P_{2k} from the ambient Laplacian power construction. A word
// is an ordered product of factors in which operator factors (Nabla, Delta,
// D) act on everything to their right; Groups are parenthesized sub-words
// acting as multiplicative tensor factors.

#include "tracktor/expr.hpp"

namespace tracktor::ambient {

struct AmbientError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Factor {
    enum Type {
        X,      // ambient Euler covector, one index, weight +1
        H,      // ambient metric, two indices, weight 0
        Nabla,  // ambient connection, one index, weight -1
        Delta,  // ambient Laplacian, weight -2
        D,      // ambient tractor-D macro, one index, weight -1
        R,      // ambient curvature, four indices, weight -2
        F,      // the harmonic density extension, weight k - n/2
        Group,  // parenthesized sub-word (operators applied to an R)
    };
    Type type = F;
    std::vector<Index> idx;   // X:1, H:2, Nabla:1, D:1, R:4, else empty
    std::vector<Factor> sub;  // Group only

    bool operator==(const Factor&) const = default;
};

struct Word {
    DimRational coeff;
    std::vector<Factor> factors;
    int qpower = 0;  // guaranteed power of the defining function Q

    Word() = default;
    Word(DimRational c, std::vector<Factor> f)
        : coeff(std::move(c)), factors(std::move(f)) {}
};

struct AmbExpr {
    std::vector<Word> words;
    bool is_zero() const { return words.empty(); }
};

// Whether the factor is a multiplicative tensor (X, H, R, Group) as opposed
// to an operator or the density.
bool is_multiplicative(const Factor& f);

// Step 1: Delta D_{A_{k-1}} ... D_{A_1} ftilde with every D macro expanded
// as 2(k-j) Nabla_{A_j} - X_{A_j} Delta at its weight position, distributed
// without reordering. Slot labels are A, B, C from the outside in.
AmbExpr step1_expand(int k);

// Step 2: move every X left of any Nabla or Delta via [Nabla_A, X_B] = h_AB
// and [Delta, X_A] = 2 Nabla_A; fold metric contractions; kill X-into-R
// contractions.
AmbExpr step2_move_x_left(const AmbExpr& e, int k);

// Step 3: move every Delta right of any Nabla via the curvature commutator,
// distributing Nabla/Delta over curvature groups as they appear. All
// curvature-free words cancel except (-1)^{k-1} X^{k-1} Delta^k ftilde.
AmbExpr step3_move_delta_right(const AmbExpr& e, int k);

// Step 4: assuming the harmonic extension (Delta ftilde = O(Q^{k-1})), drop
// O(Q) words and replace the density's plain Nabla chains by D macros from
// the left, and derivative curvature groups by D/X/R words.
AmbExpr step4_eliminate(const AmbExpr& e, int k);

// Steps 1-4 composed: the normal form of Delta D^{k-1} ftilde, containing
// the word (-1)^{k-1} X^{k-1} Delta^k ftilde plus curvature words built
// from D, X, h, R.
AmbExpr derive(int k);

// Step 5: formal replacement ftilde -> f, Delta -> Box, X -> X, h -> h,
// R -> W/(n-4), D -> D; curvature groups are expanded into the tractor
// vocabulary. The result acts on the weight k - n/2 density section.
Expr step5_descend(const AmbExpr& e, int k);

// Normalization used between the steps (exact rewrites only); exposed for
// tests. sort_nablas additionally orders adjacent plain-Nabla pairs with
// curvature corrections.
AmbExpr normalize(const AmbExpr& e, int k, bool sort_nablas);

std::string word_str(const Word& w);
std::string ambexpr_str(const AmbExpr& e);

}  // namespace tracktor::ambient
