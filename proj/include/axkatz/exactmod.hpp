#pragma once

// Exact integer and rational primitives: p-adic valuations, Euler's phi on
// prime powers, binomial coefficients at arbitrary integer arguments,
// Legendre's formula and power sums modulo p.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace axkatz {

using BigInt = boost::multiprecision::cpp_int;
/// Always kept reduced with a positive denominator by the backend.
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when an enumeration would exceed a configured size cap.
class CapExceeded : public std::runtime_error {
   public:
    CapExceeded(const std::string& what, BigInt required_, BigInt cap_)
        : std::runtime_error(what + " (required " + required_.str() + ", cap " + cap_.str() + ")"),
          required(std::move(required_)),
          cap(std::move(cap_)) {}
    BigInt required;
    BigInt cap;
};

/// Deterministic trial division; intended for desk-scale primes.
inline bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline void require_prime(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

inline BigInt ipow(const BigInt& base, unsigned e) { return boost::multiprecision::pow(base, e); }

inline BigInt ipow(std::uint64_t base, unsigned e) { return boost::multiprecision::pow(BigInt(base), e); }

/// Floor division, rounding toward negative infinity.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

/// Least nonnegative residue of a modulo m > 0.
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

inline BigInt floor(const Rational& x) {
    return floor_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

inline BigInt ceil(const Rational& x) {
    return ceil_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

/// Inverse of a modulo m; throws if gcd(a, m) != 1.
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt old_r = mod_floor(a, m), r = m;
    BigInt old_s = 1, s = 0;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw std::domain_error("element is not invertible modulo " + m.str());
    return mod_floor(old_s, m);
}

/// A prime power p^s, s >= 0.
class PrimePower {
   public:
    PrimePower(std::uint64_t p, unsigned s) : p_(p), s_(s) {
        require_prime(p);
        value_ = ipow(p, s);
    }

    std::uint64_t p() const noexcept { return p_; }
    unsigned s() const noexcept { return s_; }
    const BigInt& value() const noexcept { return value_; }

   private:
    std::uint64_t p_;
    unsigned s_;
    BigInt value_;
};

/// Exponent of p in x. Throws std::domain_error for x = 0.
inline long vp(const BigInt& x, std::uint64_t p) {
    require_prime(p);
    if (x == 0) throw std::domain_error("valuation of zero undefined");
    BigInt y = x < 0 ? BigInt(-x) : x;
    long v = 0;
    const BigInt bp = p;
    while (y % bp == 0) {
        y /= bp;
        ++v;
    }
    return v;
}

inline long vp(const Rational& x, std::uint64_t p) {
    if (x == 0) throw std::domain_error("valuation of zero undefined");
    return vp(BigInt(boost::multiprecision::numerator(x)), p) - vp(BigInt(boost::multiprecision::denominator(x)), p);
}

/// phi(p^s): 1 for s = 0, otherwise (p - 1) p^(s - 1).
inline BigInt euler_phi(const PrimePower& q) {
    if (q.s() == 0) return 1;
    return BigInt(q.p() - 1) * ipow(q.p(), q.s() - 1);
}

/// x(x-1)...(x-n+1)/n! for any integer x; every partial product is exact.
inline BigInt binom(const BigInt& x, unsigned n) {
    BigInt r = 1;
    for (unsigned k = 0; k < n; ++k) {
        r *= x - k;
        r /= k + 1;
        if (r == 0) break;
    }
    return r;
}

/// Legendre: sum over i >= 1 of floor(n / p^i).
inline std::uint64_t vp_factorial(std::uint64_t n, std::uint64_t p) {
    require_prime(p);
    std::uint64_t total = 0;
    while (n > 0) {
        n /= p;
        total += n;
    }
    return total;
}

/// Sum of x^m over x in [0, p-1], reduced mod p, with 0^0 = 1.
///
/// m = 0 gives p ones, hence 0. For m > 0 the sum is -1 = p - 1 exactly when
/// (p - 1) | m and 0 otherwise.
inline std::uint64_t sum_of_powers_mod(std::uint64_t p, std::uint64_t m) {
    require_prime(p);
    if (m == 0) return 0;
    return m % (p - 1) == 0 ? p - 1 : 0;
}

}  // namespace axkatz
