#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flatspot {

// Raised when a request exceeds the configured arithmetic working range
// (see enumeration_cap() in exact_core.hpp).
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Arbitrary-precision rational number, always in lowest terms with a
// positive denominator. All arithmetic is exact; nothing here ever rounds.
// Backed by GMP's mpq layer.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(const mpz_class& n) : v_(n) {}
    Rational(long num, long den);
    Rational(const mpz_class& num, const mpz_class& den);

    // 2^k for any integer k (k < 0 gives 1/2^|k|).
    static Rational pow2(long k);

    // Exact value of a finite double (every double is a binary rational).
    static Rational from_double(double x);

    // Accepts "n", "-n", "a/b" and plain decimals ("0.25" -> 1/4).
    static std::optional<Rational> parse(std::string_view s);

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    mpz_class floor() const;
    // x - floor(x), always in [0,1).
    Rational frac() const;
    Rational abs() const { return sign() < 0 ? -*this : *this; }

    // Deterministic double conversion (GMP truncates toward zero).
    double to_double() const { return v_.get_d(); }

    // "num/den" in lowest terms; integers render without "/1".
    std::string str() const { return v_.get_str(); }

    Rational operator-() const;
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    const mpq_class& raw() const { return v_; }

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}

    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Fixed 17-significant-digit rendering used by every CSV/JSON emitter.
std::string format_double(double x);

}  // namespace flatspot
