#pragma once

// Univariate integer polynomials in the dimension symbol n.
// Degrees stay tiny (<= ~10) throughout, so a dense vector representation
// with big-integer coefficients is both simple and fast enough.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tracktor {

using BigInt = boost::multiprecision::cpp_int;

// Rational number with exact big-integer numerator/denominator.
struct Rational {
    BigInt num = 0;
    BigInt den = 1;  // always > 0, gcd(num, den) == 1

    Rational() = default;
    Rational(long long v) : num(v) {}
    Rational(BigInt n, BigInt d);

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool is_zero() const { return num == 0; }
    double to_double() const;
    std::string str() const;
};

// Polynomial in n with BigInt coefficients, coeffs[i] multiplies n^i.
// The zero polynomial has an empty coefficient vector.
class Poly {
  public:
    Poly() = default;
    Poly(long long c) { if (c != 0) coeffs_ = {BigInt(c)}; }
    Poly(BigInt c) { if (c != 0) coeffs_ = {std::move(c)}; }
    explicit Poly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Poly n();  // the monomial n

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    const BigInt& leading() const { return coeffs_.back(); }
    BigInt coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : BigInt(0);
    }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }

    // Exact division; returns nullopt when the remainder is nonzero.
    std::optional<Poly> divide_exact(const Poly& d) const;

    // Content (gcd of coefficients, sign of leading coefficient kept positive).
    BigInt content() const;

    Rational eval(const Rational& x) const;

    std::string str() const;  // human readable, e.g. "n^2 - 8*n + 16"

    bool operator<(const Poly& o) const { return coeffs_ < o.coeffs_; }

  private:
    void trim();
    std::vector<BigInt> coeffs_;
};

// gcd of two polynomials over Q, returned as a primitive integer polynomial
// with positive leading coefficient; gcd(0,0) = 0.
Poly poly_gcd(Poly a, Poly b);

}  // namespace tracktor
