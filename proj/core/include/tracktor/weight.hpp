#pragma once

// Conformal weights: affine expressions a + b*n in the dimension symbol.

#include "tracktor/dimrational.hpp"
#include "tracktor/poly.hpp"

namespace tracktor {

struct Weight {
    Rational a;  // constant part
    Rational b;  // coefficient of n

    Weight() = default;
    Weight(long long c) : a(c) {}
    Weight(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}

    Weight operator+(const Weight& o) const { return {a + o.a, b + o.b}; }
    Weight operator-(const Weight& o) const { return {a - o.a, b - o.b}; }
    Weight operator*(const Rational& s) const { return {a * s, b * s}; }
    bool operator==(const Weight& o) const { return a == o.a && b == o.b; }
    bool is_zero() const { return a.is_zero() && b.is_zero(); }

    // weight as an element of the coefficient field
    DimRational as_dimrational() const { return DimRational::affine(a, b); }

    std::string str() const;
};

inline std::string Weight::str() const {
    return as_dimrational().str();
}

}  // namespace tracktor
