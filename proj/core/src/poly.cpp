#include "tracktor/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace tracktor {

using boost::multiprecision::gcd;

Rational::Rational(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    BigInt g = gcd(num < 0 ? BigInt(-num) : num, den);
    if (g > 1) { num /= g; den /= g; }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
    return Rational(num * o.num, den * o.den);
}
Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw std::domain_error("Rational: division by zero");
    return Rational(num * o.den, den * o.num);
}
Rational Rational::operator-() const {
    Rational r;
    r.num = -num;
    r.den = den;
    return r;
}

double Rational::to_double() const {
    return num.convert_to<double>() / den.convert_to<double>();
}

std::string Rational::str() const {
    std::ostringstream os;
    os << num;
    if (den != 1) os << "/" << den;
    return os.str();
}

Poly Poly::n() {
    Poly p;
    p.coeffs_ = {BigInt(0), BigInt(1)};
    return p;
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<BigInt> r(std::max(coeffs_.size(), o.coeffs_.size()), BigInt(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) r[i] += o.coeffs_[i];
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    std::vector<BigInt> r = coeffs_;
    for (auto& c : r) c = -c;
    Poly p;
    p.coeffs_ = std::move(r);
    return p;
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<BigInt> r(coeffs_.size() + o.coeffs_.size() - 1, BigInt(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            r[i + j] += coeffs_[i] * o.coeffs_[j];
    return Poly(std::move(r));
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
    if (d.is_zero()) return std::nullopt;
    if (is_zero()) return Poly();
    // Long division over Q: track numerators against a common scalar denominator
    // built from powers of d's leading coefficient, then require integrality.
    Poly rem = *this;
    int dd = d.degree();
    std::vector<Rational> q(std::max(0, degree() - dd + 1));
    // Work in rationals directly: coefficients are small, exactness matters.
    std::vector<Rational> r(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) r[i] = Rational(coeffs_[i], 1);
    Rational lead(d.leading(), 1);
    for (int i = static_cast<int>(r.size()) - 1; i >= dd; --i) {
        if (r[i].is_zero()) continue;
        Rational f = r[i] / lead;
        q[i - dd] = f;
        for (int j = 0; j <= dd; ++j)
            r[i - dd + j] = r[i - dd + j] - f * Rational(d.coeff(j), 1);
    }
    for (int i = 0; i < dd && i < static_cast<int>(r.size()); ++i)
        if (!r[i].is_zero()) return std::nullopt;
    std::vector<BigInt> qi(q.size());
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i].den != 1) return std::nullopt;
        qi[i] = q[i].num;
    }
    return Poly(std::move(qi));
}

BigInt Poly::content() const {
    BigInt g = 0;
    for (const auto& c : coeffs_) g = gcd(g, c < 0 ? BigInt(-c) : c);
    return g;
}

Rational Poly::eval(const Rational& x) const {
    Rational acc;
    for (int i = degree(); i >= 0; --i) acc = acc * x + Rational(coeffs_[i], 1);
    return acc;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        BigInt c = coeffs_[i];
        if (c == 0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        BigInt a = c < 0 ? BigInt(-c) : c;
        if (i == 0 || a != 1) os << a;
        if (i > 0) {
            if (a != 1) os << "*";
            os << "n";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

Poly poly_gcd(Poly a, Poly b) {
    // Euclid over Q with primitive-part normalization at each step.
    auto primitive = [](Poly p) {
        if (p.is_zero()) return p;
        BigInt c = p.content();
        if (p.leading() < 0) c = -c;
        std::vector<BigInt> v = p.coeffs();
        for (auto& x : v) x /= c;
        return Poly(std::move(v));
    };
    a = primitive(std::move(a));
    b = primitive(std::move(b));
    while (!b.is_zero()) {
        // pseudo-remainder of a by b
        Poly r = a;
        int db = b.degree();
        while (!r.is_zero() && r.degree() >= db) {
            // r := lead(b)*r - lead(r)*n^(dr-db)*b
            int dr = r.degree();
            std::vector<BigInt> shift(dr - db + 1, BigInt(0));
            shift.back() = r.leading();
            r = Poly(b.leading()) * r - Poly(std::move(shift)) * b;
        }
        a = b;
        b = primitive(std::move(r));
    }
    return a;
}

}  // namespace tracktor
