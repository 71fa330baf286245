#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace arbormax {

// Exact non-negative rational, used wherever a size threshold like k/2 or
// delta*k/2 must be compared against integer edge counts without rounding.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long value) : num_(value), den_(1) {}  // implicit from integers
    Rational(long long num, long long den) : num_(num), den_(den) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        reduce();
    }

    // Every finite double is a dyadic rational; this conversion is exact.
    // Throws for values whose denominator would not fit in 64 bits.
    static Rational from_double(double x) {
        if (!std::isfinite(x)) throw std::invalid_argument("Rational: non-finite value");
        int exp = 0;
        double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
        long long num = static_cast<long long>(std::ldexp(mant, 53));
        exp -= 53;
        if (exp >= 0) {
            if (exp > 10) throw std::invalid_argument("Rational: value too large");
            return Rational(num << exp, 1);
        }
        if (exp < -62) throw std::invalid_argument("Rational: value too small");
        return Rational(num, 1LL << -exp);
    }

    long long num() const { return num_; }
    long long den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    Rational operator*(const Rational& o) const {
        long long g1 = std::gcd(std::llabs(num_), o.den_);
        long long g2 = std::gcd(std::llabs(o.num_), den_);
        return Rational((num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
    }
    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }

    // Exact comparisons against integers via 128-bit cross multiplication.
    int cmp(long long v) const {
        __int128 lhs = static_cast<__int128>(num_);
        __int128 rhs = static_cast<__int128>(v) * den_;
        return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    }
    int cmp(const Rational& o) const {
        __int128 lhs = static_cast<__int128>(num_) * o.den_;
        __int128 rhs = static_cast<__int128>(o.num_) * den_;
        return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    }
    bool operator<(const Rational& o) const { return cmp(o) < 0; }
    bool operator<=(const Rational& o) const { return cmp(o) <= 0; }
    bool operator>(const Rational& o) const { return cmp(o) > 0; }
    bool operator>=(const Rational& o) const { return cmp(o) >= 0; }
    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

    long long floor() const {
        long long q = num_ / den_;
        if (num_ < 0 && num_ % den_ != 0) --q;
        return q;
    }
    long long ceil() const {
        long long q = num_ / den_;
        if (num_ > 0 && num_ % den_ != 0) ++q;
        return q;
    }

private:
    void reduce() {
        long long g = std::gcd(std::llabs(num_), den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    long long num_;
    long long den_;  // > 0
};

inline Rational operator*(long long a, const Rational& r) { return Rational(a) * r; }

}  // namespace arbormax
