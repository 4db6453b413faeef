#include "flatspot/exact_core.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace flatspot {

RotationFraction::RotationFraction(long p_, long q_) : p(p_), q(q_) {
    if (q < 2 || p < 1 || p >= q)
        throw std::invalid_argument("RotationFraction: need 1 <= p < q, q >= 2");
    if (std::gcd(p, q) != 1)
        throw std::invalid_argument("RotationFraction: p/q not reduced");
}

BitString::BitString(std::vector<uint8_t> bits) : bits_(std::move(bits)) {
    for (uint8_t b : bits_)
        if (b > 1) throw std::invalid_argument("BitString: entries must be 0 or 1");
}

int BitString::ones() const {
    int n = 0;
    for (uint8_t b : bits_) n += b;
    return n;
}

std::string BitString::str() const {
    std::string s;
    s.reserve(bits_.size());
    for (uint8_t b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

int enumeration_cap() {
    static const int cap = [] {
        if (const char* env = std::getenv("FLATSPOT_MAX_Q")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end && *end == '\0' && v >= 2) return static_cast<int>(v);
        }
        return 64;
    }();
    return cap;
}

std::vector<RotationFraction> farey_enumerate(int max_q) {
    if (max_q < 2) throw std::invalid_argument("farey_enumerate: max_q must be >= 2");
    if (max_q > enumeration_cap())
        throw capacity_error("farey_enumerate: max_q " + std::to_string(max_q) +
                             " exceeds cap " + std::to_string(enumeration_cap()));
    std::vector<RotationFraction> out;
    for (long q = 2; q <= max_q; ++q)
        for (long p = 1; p < q; ++p)
            if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    return out;
}

BitString upper_string(const RotationFraction& r) {
    std::vector<uint8_t> bits(static_cast<size_t>(r.q));
    for (long i = 1; i <= r.q; ++i)
        bits[static_cast<size_t>(i - 1)] =
            static_cast<uint8_t>((i + 1) * r.p / r.q - i * r.p / r.q);
    return BitString(std::move(bits));
}

Rational t_of(const RotationFraction& r) {
    const BitString s = upper_string(r);
    mpz_class num = 0;
    for (int i = 1; i <= s.size(); ++i) {
        num <<= 1;
        num += s.bit(i);
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(r.q));
    return Rational(num, den);
}

Interval interval_I(const RotationFraction& r) {
    const Rational t = t_of(r);
    const Rational p2q = Rational::pow2(r.q);
    const Rational den = p2q - Rational(1);
    return Interval{(p2q * t - Rational(1)) / den, p2q * t / den};
}

namespace {

// Digits of a dyadic t at scale q; throws unless den(t) divides 2^q.
mpz_class dyadic_numerator(const Rational& t, int q) {
    if (t.sign() < 0 || t >= Rational(1))
        throw std::invalid_argument("sum_frac_parts: t must lie in [0,1)");
    const Rational scaled = t * Rational::pow2(q);
    if (!scaled.is_integer())
        throw std::invalid_argument("sum_frac_parts: denominator of t does not divide 2^q");
    return scaled.num();
}

}  // namespace

Rational sum_frac_parts(const Rational& t, int q) {
    const mpz_class m = dyadic_numerator(t, q);
    const long ones = static_cast<long>(mpz_popcount(m.get_mpz_t()));
    return Rational(ones) - t;
}

mpz_class sum_floor_parts(const Rational& t, int q) {
    const mpz_class m = dyadic_numerator(t, q);
    const long ones = static_cast<long>(mpz_popcount(m.get_mpz_t()));
    return m - ones;
}

}  // namespace flatspot
