#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <variant>

#include "scvx/errors.hpp"

namespace scvx {

using Rational = boost::multiprecision::cpp_rational;

/// A coefficient or value: exact rational or IEEE-754 binary64.
/// Arithmetic stays exact as long as both operands are exact; any double
/// operand demotes the result to double.  NaN is rejected everywhere.
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(int n) : v_(Rational(n)) {}
    Scalar(long n) : v_(Rational(n)) {}
    Scalar(long long n) : v_(Rational(n)) {}
    Scalar(const Rational& r) : v_(r) {}

    static Scalar ratio(long long num, long long den) {
        if (den == 0) throw ValidationError("Scalar: zero denominator");
        return Scalar(Rational(num, den));
    }

    static Scalar real(double d) {
        if (std::isnan(d)) throw ValidationError("Scalar: NaN is forbidden");
        if (std::isinf(d)) throw ValidationError("Scalar: non-finite double");
        Scalar s;
        s.v_ = d;
        return s;
    }

    bool exact() const { return std::holds_alternative<Rational>(v_); }

    const Rational& rat() const {
        if (!exact()) throw ValidationError("Scalar: not exact");
        return std::get<Rational>(v_);
    }

    double to_double() const {
        return exact() ? std::get<Rational>(v_).convert_to<double>()
                       : std::get<double>(v_);
    }

    int sign() const {
        if (exact()) {
            const Rational& r = std::get<Rational>(v_);
            return r > 0 ? 1 : (r < 0 ? -1 : 0);
        }
        double d = std::get<double>(v_);
        return d > 0 ? 1 : (d < 0 ? -1 : 0);
    }

    bool is_zero() const { return sign() == 0; }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.exact() && b.exact()) return Scalar(a.rat() + b.rat());
        return Scalar::real(a.to_double() + b.to_double());
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        if (a.exact() && b.exact()) return Scalar(a.rat() - b.rat());
        return Scalar::real(a.to_double() - b.to_double());
    }
    friend Scalar operator-(const Scalar& a) { return Scalar(0) - a; }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.exact() && b.exact()) return Scalar(a.rat() * b.rat());
        return Scalar::real(a.to_double() * b.to_double());
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw ValidationError("Scalar: division by zero");
        if (a.exact() && b.exact()) return Scalar(a.rat() / b.rat());
        return Scalar::real(a.to_double() / b.to_double());
    }

    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.exact() && b.exact()) return a.rat() == b.rat();
        return a.to_double() == b.to_double();
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.exact() && b.exact()) return a.rat() < b.rat();
        return a.to_double() < b.to_double();
    }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return a < b || a == b; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return b <= a; }

    Scalar abs() const { return sign() < 0 ? -*this : *this; }

    /// Nonnegative integer power, exact when the base is exact.
    Scalar pow(unsigned n) const {
        Scalar acc(1);
        Scalar base = *this;
        unsigned e = n;
        while (e > 0) {
            if (e & 1u) acc *= base;
            base *= base;
            e >>= 1u;
        }
        return acc;
    }

    std::string str() const {
        std::ostringstream os;
        if (exact()) {
            const Rational& r = rat();
            os << boost::multiprecision::numerator(r);
            if (boost::multiprecision::denominator(r) != 1)
                os << "/" << boost::multiprecision::denominator(r);
        } else {
            os << to_double();
        }
        return os.str();
    }

private:
    std::variant<Rational, double> v_;
};

inline bool approx_eq(const Scalar& a, const Scalar& b, const Scalar& tol) {
    if (a.exact() && b.exact()) return a == b;
    return (a - b).abs() <= tol;
}

}  // namespace scvx
