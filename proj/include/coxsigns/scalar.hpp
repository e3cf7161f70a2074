#pragma once

// Exact scalar arithmetic: rationals, and the quadratic extension Q(phi)
// with phi^2 = phi + 1 (needed for the H3/H4 root systems).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <string>

#include "coxsigns/errors.hpp"

namespace coxsigns {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Sign : int { negative = -1, zero = 0, positive = 1 };

inline Sign rational_sign(const Rational& r) {
    if (r > 0) return Sign::positive;
    if (r < 0) return Sign::negative;
    return Sign::zero;
}

// Value a + b*phi with rational a, b.  The plain-rational variant is the
// b = 0, golden flag off case; mixing a rational with a golden value
// promotes the rational.  boost::cpp_rational keeps denominators positive
// and in lowest terms, so no extra normalization is needed here.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : a_(v) {}
    Scalar(long long v) : a_(v) {}
    explicit Scalar(Rational v) : a_(std::move(v)) {}
    Scalar(Rational num, Rational den) {
        if (den == 0) throw DegenerateFormError("Scalar: zero denominator");
        a_ = num / den;
    }

    static Scalar golden(Rational a, Rational b) {
        Scalar s;
        s.a_ = std::move(a);
        s.b_ = std::move(b);
        s.golden_ = true;
        return s;
    }
    static Scalar phi() { return golden(0, 1); }

    bool is_golden_variant() const { return golden_; }
    const Rational& rational_part() const { return a_; }
    const Rational& phi_part() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }

    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        Scalar r;
        r.a_ = x.a_ + y.a_;
        r.b_ = x.b_ + y.b_;
        r.golden_ = x.golden_ || y.golden_;
        return r;
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) {
        Scalar r;
        r.a_ = x.a_ - y.a_;
        r.b_ = x.b_ - y.b_;
        r.golden_ = x.golden_ || y.golden_;
        return r;
    }
    Scalar operator-() const {
        Scalar r = *this;
        r.a_ = -r.a_;
        r.b_ = -r.b_;
        return r;
    }
    // (a1 + b1 phi)(a2 + b2 phi) = a1 a2 + b1 b2 + (a1 b2 + a2 b1 + b1 b2) phi
    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        Scalar r;
        r.a_ = x.a_ * y.a_ + x.b_ * y.b_;
        r.b_ = x.a_ * y.b_ + x.b_ * y.a_ + x.b_ * y.b_;
        r.golden_ = x.golden_ || y.golden_;
        return r;
    }
    // Inverse via the conjugate a + b - b*phi; norm is a^2 + ab - b^2.
    Scalar inverse() const {
        Rational norm = a_ * a_ + a_ * b_ - b_ * b_;
        if (norm == 0) throw DegenerateFormError("Scalar: inverse of zero");
        Scalar r;
        r.a_ = (a_ + b_) / norm;
        r.b_ = -b_ / norm;
        r.golden_ = golden_;
        return r;
    }
    friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }

    Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
    Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }

    // Equality is mathematical: the variant tag does not participate.
    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    // Exact sign of a + b*phi with phi = (1+sqrt5)/2.  Scale by 2:
    // 2a + b + b*sqrt5; compare p = 2a+b against -q*sqrt5 (q = b) by
    // squaring with case analysis on the quadrant.
    Sign sign() const {
        if (b_ == 0) return rational_sign(a_);
        Rational p = 2 * a_ + b_;
        const Rational& q = b_;
        if (p >= 0 && q >= 0) return (p == 0 && q == 0) ? Sign::zero : Sign::positive;
        if (p <= 0 && q <= 0) return Sign::negative;
        // p and q have strictly opposite signs; p + q sqrt5 and p^2 - 5 q^2
        // have the same sign exactly when p > 0.
        Rational d = p * p - 5 * q * q;
        if (d == 0) return Sign::zero; // cannot happen for rational p, q != 0
        bool positive = (p > 0) ? (d > 0) : (d < 0);
        return positive ? Sign::positive : Sign::negative;
    }
    bool is_positive() const { return sign() == Sign::positive; }
    bool is_negative() const { return sign() == Sign::negative; }

    // Total order compatible with the real embedding.
    friend bool operator<(const Scalar& x, const Scalar& y) {
        return (x - y).sign() == Sign::negative;
    }

    std::string str() const {
        std::ostringstream os;
        if (b_ == 0) {
            os << a_;
            return os.str();
        }
        bool have_a = (a_ != 0);
        if (have_a) os << a_;
        if (b_ == 1) {
            os << (have_a ? "+" : "") << "phi";
        } else if (b_ == -1) {
            os << "-phi";
        } else {
            if (have_a && b_ > 0) os << "+";
            os << b_ << "*phi";
        }
        return os.str();
    }

private:
    Rational a_;
    Rational b_;
    bool golden_ = false;
};

inline Scalar operator*(long long k, const Scalar& s) { return Scalar(k) * s; }

} // namespace coxsigns
