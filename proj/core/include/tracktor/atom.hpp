#pragma once

// The fixed atom vocabulary plus registerable generic sections. Each kind
// carries an index signature, a base weight (all indices in their lowered
// position), a slot-symmetry group, and parallel/trace flags.

#include "tracktor/index.hpp"
#include "tracktor/weight.hpp"

#include <vector>

namespace tracktor {

struct SignedPerm {
    std::vector<int> perm;  // image of each slot
    int sign = 1;
};

struct AtomKindInfo {
    std::string name;
    std::vector<IndexKind> slots;
    Weight base;            // weight with every index lowered
    bool parallel = false;  // annihilated by the coupled connection
    bool trace_free = false;  // any self-contraction vanishes (C, W)
    std::vector<SignedPerm> symmetry;  // full group, identity included
};

// Fixed catalog ids. Section kinds are appended after FirstSection.
namespace kind {
inline constexpr int Metric = 0;      // g_ab / g^ab / delta, weight +2 all-down
inline constexpr int TracMetric = 1;  // h_AB, weight 0
inline constexpr int Schouten = 2;    // P_ab
inline constexpr int JScalar = 3;     // J = P^a_a, weight -2
inline constexpr int Weyl = 4;        // C_abcd, weight +2
inline constexpr int Riemann = 5;     // R_abcd (transient; always decomposed)
inline constexpr int X = 6;           // X_A, weight +1
inline constexpr int Y = 7;           // Y_A, weight -1
inline constexpr int Z = 8;           // Z_{Aa}, weight +1 all-down (Z_A{}^a: -1)
inline constexpr int W = 9;           // W_ABCE, weight -2
inline constexpr int OmegaTr = 10;    // Omega_ABCE, weight -2
inline constexpr int OmegaMx = 11;    // Omega_{ab C E}, weight 0 all-down
inline constexpr int FirstSection = 12;
}  // namespace kind

const AtomKindInfo& kind_info(int id);
int kind_count();

// Registers (or finds) a generic section symbol. Re-registration with the
// same signature is idempotent; a conflicting signature throws.
int register_section(const std::string& name, std::vector<IndexKind> slots,
                     Weight weight, bool parallel = false);
int find_section(const std::string& name);  // -1 if absent

// An atom instance: an optional chain of covariant derivatives (written
// order, outermost first) applied to one catalog atom.
struct Atom {
    int kind = 0;
    std::vector<Index> derivs;  // tensor indices of nabla chain, outermost first
    std::vector<Index> idx;     // slot indices, signature order

    auto operator<=>(const Atom&) const = default;
};

// Weight of an instance: base + (-2 per raised tensor slot); derivatives
// preserve weight. Raised tractor slots cost nothing (h has weight 0).
Weight atom_weight(const Atom& a);

std::string atom_str(const Atom& a);

}  // namespace tracktor
