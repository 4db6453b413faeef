#include "flatspot/rational.hpp"

#include <cctype>
#include <cstdio>
#include <ostream>

namespace flatspot {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
}

Rational Rational::pow2(long k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
    return k >= 0 ? Rational(p) : Rational(mpz_class(1), p);
}

Rational Rational::from_double(double x) {
    Rational r;
    r.v_ = mpq_class(x);
    return r;
}

Rational Rational::operator-() const {
    Rational r;
    r.v_ = -v_;
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Rational Rational::frac() const {
    return *this - Rational(floor());
}

std::optional<Rational> Rational::parse(std::string_view s) {
    if (s.empty()) return std::nullopt;
    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.remove_prefix(1);
        if (s.empty()) return std::nullopt;
    }
    const auto digits = [](std::string_view t) {
        if (t.empty()) return false;
        for (char c : t)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };

    Rational out;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view a = s.substr(0, slash), b = s.substr(slash + 1);
        if (!digits(a) || !digits(b)) return std::nullopt;
        mpz_class num(std::string(a), 10), den(std::string(b), 10);
        if (den == 0) return std::nullopt;
        out = Rational(num, den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view a = s.substr(0, dot), b = s.substr(dot + 1);
        if ((!a.empty() && !digits(a)) || !digits(b)) return std::nullopt;
        mpz_class ip = a.empty() ? mpz_class(0) : mpz_class(std::string(a), 10);
        mpz_class fp(std::string(b), 10);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, b.size());
        out = Rational(ip) + Rational(fp, scale);
    } else {
        if (!digits(s)) return std::nullopt;
        out = Rational(mpz_class(std::string(s), 10));
    }
    return neg ? -out : out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace flatspot
