#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kbmf {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always kept normalised (gcd 1, positive
// denominator).  Objective values, LP audits and dual bounds are computed
// with this type so that ceiling-based stopping rules and the acceptance
// comparisons are exact.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
    Rational(BigInt v) : num_(std::move(v)), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalise(); }

    static Rational from_int64(std::int64_t v) { return Rational(BigInt(v)); }

    // Exact value of an IEEE double (finite).
    static Rational from_double(double v) {
        if (!std::isfinite(v)) throw std::invalid_argument("Rational::from_double: non-finite");
        if (v == 0.0) return Rational();
        int exp = 0;
        double frac = std::frexp(v, &exp);  // v = frac * 2^exp, |frac| in [0.5, 1)
        // 53 doublings make the significand integral.
        auto sig = static_cast<long long>(std::ldexp(frac, 53));
        exp -= 53;
        Rational r{BigInt(sig)};
        if (exp > 0)
            r.num_ <<= exp;
        else if (exp < 0)
            r.den_ <<= -exp;
        r.normalise();
        return r;
    }

    // Parses "p", "p/q" or a plain decimal like "0.25".
    static Rational parse(const std::string& s) {
        // cpp_int treats a leading 0 as octal; force decimal.
        auto as_int = [](std::string t) {
            bool neg = !t.empty() && t[0] == '-';
            if (neg || (!t.empty() && t[0] == '+')) t.erase(0, 1);
            auto nz = t.find_first_not_of('0');
            t = nz == std::string::npos ? "0" : t.substr(nz);
            BigInt v(t);
            return neg ? BigInt(-v) : v;
        };
        auto slash = s.find('/');
        if (slash != std::string::npos)
            return Rational(as_int(s.substr(0, slash)), as_int(s.substr(slash + 1)));
        auto dot = s.find('.');
        if (dot == std::string::npos) return Rational(as_int(s));
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        BigInt den = 1;
        for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
        return Rational(as_int(digits), den);
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    double to_double() const {
        return boost::multiprecision::cpp_rational(num_, den_).convert_to<double>();
    }

    BigInt floor() const {
        BigInt q = num_ / den_;
        if (num_ < 0 && q * den_ != num_) --q;
        return q;
    }
    BigInt ceil() const {
        BigInt q = num_ / den_;
        if (num_ > 0 && q * den_ != num_) ++q;
        return q;
    }

    std::string str() const {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalise();
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalise();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalise();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    void normalise() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace kbmf
