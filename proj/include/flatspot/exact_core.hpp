#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flatspot/rational.hpp"

namespace flatspot {

// Reduced rotation number p/q with 1 <= p < q and gcd(p, q) = 1.
struct RotationFraction {
    long p;
    long q;

    RotationFraction(long p_, long q_);

    Rational value() const { return Rational(p, q); }
    std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }

    friend bool operator==(const RotationFraction& a, const RotationFraction& b) {
        return a.p == b.p && a.q == b.q;
    }
};

// Length-q binary itinerary of the stable periodic orbit; 1-based access.
class BitString {
public:
    explicit BitString(std::vector<uint8_t> bits);

    int size() const { return static_cast<int>(bits_.size()); }
    int bit(int i) const { return bits_.at(static_cast<size_t>(i) - 1); }  // i in 1..q
    int ones() const;
    std::string str() const;

private:
    std::vector<uint8_t> bits_;
};

// Closed interval of rationals.
struct Interval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool interior_contains(const Rational& x) const { return lo < x && x < hi; }
    bool intersects(const Interval& o) const {
        return (lo <= o.lo ? o.lo : lo) <= (hi <= o.hi ? hi : o.hi);
    }
    std::string str() const { return "[" + lo.str() + "," + hi.str() + "]"; }
};

// Working-range guard for denominator enumeration. Defaults to 64; the
// environment variable FLATSPOT_MAX_Q overrides it.
int enumeration_cap();

// All reduced p/q with 2 <= q <= max_q, ordered by (q, p). Consumers must
// not rely on value (Farey) order.
std::vector<RotationFraction> farey_enumerate(int max_q);

// The binary string s with s_i = floor((i+1)p/q) - floor(ip/q), i = 1..q.
// Has exactly p ones and ends in 0.
BitString upper_string(const RotationFraction& r);

// The dyadic parameter whose binary expansion is upper_string(r):
// sum_i s_i 2^{-i}. Lies in (0,1) with denominator dividing 2^q.
Rational t_of(const RotationFraction& r);

// The mode-locking interval [ (2^q t - 1)/(2^q - 1), 2^q t/(2^q - 1) ]
// of width exactly 1/(2^q - 1).
Interval interval_I(const RotationFraction& r);

// Sum of fractional parts {2^i t} for i = 0..q-1 of a dyadic t whose
// denominator divides 2^q. Computed in closed form: (#1-bits of t) - t.
// Throws std::invalid_argument if t is not dyadic at scale q.
Rational sum_frac_parts(const Rational& t, int q);

// Companion identity: sum of floor(2^i t) for i = 0..q-1, equal to
// 2^q t - (#1-bits of t).
mpz_class sum_floor_parts(const Rational& t, int q);

}  // namespace flatspot
