#pragma once

// Exact rational functions of the dimension symbol n: the coefficient field
// of every formula in the engine.

#include "tracktor/poly.hpp"

#include <stdexcept>

namespace tracktor {

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

class DimRational {
  public:
    DimRational() : num_(), den_(1) {}
    DimRational(long long c) : num_(c), den_(1) {}
    DimRational(const Rational& r) : num_(r.num), den_(r.den) { normalize(); }
    DimRational(Poly num, Poly den = Poly(1));

    static DimRational n() { return DimRational(Poly::n()); }
    // convenience: (a + b*n) as a DimRational from exact rationals a, b
    static DimRational affine(const Rational& a, const Rational& b);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }  // normalized: positive leading coeff
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == Poly(1) && den_ == Poly(1); }

    DimRational operator+(const DimRational& o) const;
    DimRational operator-(const DimRational& o) const;
    DimRational operator*(const DimRational& o) const;
    DimRational operator/(const DimRational& o) const;
    DimRational operator-() const;
    DimRational& operator+=(const DimRational& o) { return *this = *this + o; }
    DimRational& operator*=(const DimRational& o) { return *this = *this * o; }
    bool operator==(const DimRational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator<(const DimRational& o) const;

    // Value at n = n0 of the normalized function; throws PoleError when the
    // (reduced) denominator vanishes at n0 — distinct from the value 0.
    Rational eval_at(const Rational& n0) const;

    // Substitute n -> n0 where possible; PoleError otherwise (same as eval_at).
    std::string str() const;

  private:
    void normalize();
    Poly num_, den_;
};

}  // namespace tracktor
