#pragma once

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace scidiv {

// Exact ratio of two 64-bit integers, kept reduced with a positive
// denominator. Article weights stay in this form until they reach a
// floating-point accumulator, so identities like "the page shares of a
// journal sum to one" hold exactly.
class Rational {
public:
    constexpr Rational() = default;

    Rational(long long numerator, long long denominator) {
        if (denominator == 0) throw std::invalid_argument("Rational: zero denominator");
        if (denominator < 0) {
            numerator = -numerator;
            denominator = -denominator;
        }
        const long long g = std::gcd(numerator < 0 ? -numerator : numerator, denominator);
        num_ = g ? numerator / g : 0;
        den_ = g ? denominator / g : 1;
    }

    long long num() const noexcept { return num_; }
    long long den() const noexcept { return den_; }

    double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) noexcept { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) noexcept {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) noexcept { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) noexcept { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) noexcept { return !(a < b); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        const __int128 n = static_cast<__int128>(a.num_) * b.den_ +
                           static_cast<__int128>(b.num_) * a.den_;
        const __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return from_wide(n, d);
    }

    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_wide(static_cast<__int128>(a.num_) * b.num_,
                         static_cast<__int128>(a.den_) * b.den_);
    }

private:
    static __int128 wide_gcd(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational from_wide(__int128 n, __int128 d) {
        const __int128 g = wide_gcd(n, d);
        if (g != 0) {
            n /= g;
            d /= g;
        }
        constexpr __int128 lo = -static_cast<__int128>(0x7fffffffffffffffLL) - 1;
        constexpr __int128 hi = static_cast<__int128>(0x7fffffffffffffffLL);
        if (n < lo || n > hi || d < lo || d > hi)
            throw std::overflow_error("Rational: value does not fit 64 bits after reduction");
        Rational r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d == 0 ? 1 : d);
        return r;
    }

    long long num_ = 0;
    long long den_ = 1;
};

inline const Rational& min(const Rational& a, const Rational& b) noexcept {
    return b < a ? b : a;
}

}  // namespace scidiv
