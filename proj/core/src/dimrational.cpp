#include "tracktor/dimrational.hpp"

#include <sstream>

namespace tracktor {

DimRational::DimRational(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("DimRational: zero denominator");
    normalize();
}

DimRational DimRational::affine(const Rational& a, const Rational& b) {
    // (a.num*b.den + b.num*a.den*n) / (a.den*b.den)
    Poly num(std::vector<BigInt>{a.num * b.den, b.num * a.den});
    Poly den(a.den * b.den);
    return DimRational(std::move(num), std::move(den));
}

void DimRational::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = *num_.divide_exact(g);
        den_ = *den_.divide_exact(g);
    }
    // scalar normalization: make denominator primitive with positive lead,
    // pushing the scalar into the numerator as an exact rational is not
    // possible over Z, so instead divide both by gcd(content(num), content(den))
    // and fix the denominator's sign.
    BigInt cn = num_.content(), cd = den_.content();
    BigInt c = boost::multiprecision::gcd(cn, cd);
    if (den_.leading() < 0) c = -c;
    if (c != 1) {
        auto div_by = [&](const Poly& p) {
            std::vector<BigInt> v = p.coeffs();
            for (auto& x : v) x /= c;
            return Poly(std::move(v));
        };
        num_ = div_by(num_);
        den_ = div_by(den_);
    }
}

DimRational DimRational::operator+(const DimRational& o) const {
    return DimRational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
DimRational DimRational::operator-(const DimRational& o) const {
    return DimRational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
DimRational DimRational::operator*(const DimRational& o) const {
    return DimRational(num_ * o.num_, den_ * o.den_);
}
DimRational DimRational::operator/(const DimRational& o) const {
    if (o.is_zero()) throw std::domain_error("DimRational: division by zero");
    return DimRational(num_ * o.den_, den_ * o.num_);
}
DimRational DimRational::operator-() const {
    DimRational r = *this;
    r.num_ = -r.num_;
    return r;
}

bool DimRational::operator<(const DimRational& o) const {
    if (!(den_ == o.den_)) return den_ < o.den_;
    return num_ < o.num_;
}

Rational DimRational::eval_at(const Rational& n0) const {
    Rational d = den_.eval(n0);
    if (d.is_zero()) throw PoleError("pole at n = " + n0.str());
    return num_.eval(n0) / d;
}

std::string DimRational::str() const {
    std::ostringstream os;
    bool wrap_num = num_.degree() > 0 && !(den_ == Poly(1));
    if (wrap_num) os << "(";
    os << num_.str();
    if (wrap_num) os << ")";
    if (!(den_ == Poly(1))) {
        os << "/";
        if (den_.degree() > 0 || den_.leading() < 0) os << "(" << den_.str() << ")";
        else os << den_.str();
    }
    return os.str();
}

}  // namespace tracktor
