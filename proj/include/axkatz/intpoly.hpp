#pragma once

// Univariate integer-valued polynomials in the binomial basis
// { binom(X, n) : n >= 0 }, finite-difference tables and the Newton expansion.
//
// The binomial basis is the canonical representation. Monomial form
// (RationalPoly) exists only at the text boundary and for conversion.

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "detail/checked.hpp"
#include "exactmod.hpp"

namespace axkatz {

/// sum_n a_n binom(X, n) with integer a_n, trailing coefficient nonzero.
class IntValuedPoly {
   public:
    IntValuedPoly() = default;
    explicit IntValuedPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    static IntValuedPoly constant(const BigInt& c) { return IntValuedPoly(std::vector<BigInt>{c}); }

    /// binom(X, n) itself.
    static IntValuedPoly basis(unsigned n) {
        std::vector<BigInt> c(n + 1, 0);
        c[n] = 1;
        return IntValuedPoly(std::move(c));
    }

    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 1; }

    BigInt operator()(const BigInt& x) const {
        BigInt total = 0;
        BigInt b = 1;  // binom(x, n), advanced in place
        for (std::size_t n = 0; n < coeffs_.size(); ++n) {
            if (n > 0) {
                b *= x - BigInt(n - 1);
                b /= n;
            }
            if (coeffs_[n] != 0) total += coeffs_[n] * b;
        }
        return total;
    }

    /// Machine-word evaluation; false on any overflow.
    bool try_eval(std::int64_t x, std::int64_t& out) const noexcept {
        if (!small_) return false;
        std::int64_t total = 0;
        std::int64_t b = 1;
        for (std::size_t n = 0; n < small_coeffs_.size(); ++n) {
            if (n > 0) {
                std::int64_t factor;
                if (!detail::sub(x, static_cast<std::int64_t>(n - 1), factor)) return false;
                if (!detail::mul(b, factor, b)) return false;
                b /= static_cast<std::int64_t>(n);
            }
            std::int64_t term;
            if (!detail::mul(small_coeffs_[n], b, term) || !detail::add(total, term, total)) return false;
        }
        out = total;
        return true;
    }

    friend bool operator==(const IntValuedPoly& a, const IntValuedPoly& b) { return a.coeffs_ == b.coeffs_; }

   private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
        small_ = true;
        small_coeffs_.clear();
        for (const auto& c : coeffs_) {
            if (c > std::numeric_limits<std::int64_t>::max() || c < std::numeric_limits<std::int64_t>::min()) {
                small_ = false;
                small_coeffs_.clear();
                return;
            }
            small_coeffs_.push_back(static_cast<std::int64_t>(c));
        }
    }

    std::vector<BigInt> coeffs_;
    std::vector<std::int64_t> small_coeffs_;
    bool small_ = true;
};

inline BigInt eval_iv(const IntValuedPoly& p, const BigInt& x) { return p(x); }

/// Values f(0), ..., f(len - 1) of a map Z -> Z, optionally declared periodic.
class DiffTable {
   public:
    explicit DiffTable(std::vector<BigInt> values, std::optional<std::size_t> period = std::nullopt)
        : values_(std::move(values)), period_(period) {
        if (period_) {
            if (*period_ == 0) throw std::invalid_argument("period must be positive");
            if (values_.size() < *period_) throw std::invalid_argument("periodic table shorter than its period");
        }
    }

    const std::vector<BigInt>& values() const noexcept { return values_; }
    const std::optional<std::size_t>& period() const noexcept { return period_; }
    std::size_t size() const noexcept { return values_.size(); }

    /// f(x) for any integer x when periodic; otherwise x must lie in the table.
    const BigInt& at(std::int64_t x) const {
        if (period_) {
            const auto P = static_cast<std::int64_t>(*period_);
            return values_[static_cast<std::size_t>(((x % P) + P) % P)];
        }
        if (x < 0 || static_cast<std::size_t>(x) >= values_.size()) throw std::out_of_range("outside table domain");
        return values_[static_cast<std::size_t>(x)];
    }

   private:
    std::vector<BigInt> values_;
    std::optional<std::size_t> period_;
};

/// (Delta f)(x) = f(x + 1) - f(x). Periodic tables keep their length and period.
inline DiffTable finite_difference(const DiffTable& t) {
    const auto& v = t.values();
    if (t.period()) {
        std::vector<BigInt> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = t.at(static_cast<std::int64_t>(i) + 1) - v[i];
        return DiffTable(std::move(out), t.period());
    }
    if (v.size() < 2) throw std::invalid_argument("finite difference needs at least two values");
    std::vector<BigInt> out(v.size() - 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) out[i] = v[i + 1] - v[i];
    return DiffTable(std::move(out));
}

/// a_n = (Delta^n f)(0) for n in [0, len - 1].
inline IntValuedPoly newton_coeffs(const DiffTable& t) {
    if (t.size() == 0) throw std::invalid_argument("newton expansion of an empty table");
    std::vector<BigInt> row = t.values();
    std::vector<BigInt> out;
    out.reserve(row.size());
    while (!row.empty()) {
        out.push_back(row.front());
        for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = row[i + 1] - row[i];
        row.pop_back();
    }
    return IntValuedPoly(std::move(out));
}

// ---------------------------------------------------------------------------
// Monomial form

/// sum_k c_k x^k over Q, trailing coefficient nonzero.
class RationalPoly {
   public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.coeffs_ == b.coeffs_; }

   private:
    std::vector<Rational> coeffs_;
};

/// Monomial coefficients of sum_n a_n binom(X, n).
inline RationalPoly to_monomial(const IntValuedPoly& p) {
    const auto& a = p.coeffs();
    std::vector<Rational> out(a.size(), Rational(0));
    std::vector<BigInt> falling{1};  // X(X-1)...(X-n+1), ascending powers
    BigInt factorial = 1;
    for (std::size_t n = 0; n < a.size(); ++n) {
        if (n > 0) {
            factorial *= n;
            std::vector<BigInt> next(falling.size() + 1, 0);
            for (std::size_t k = 0; k < falling.size(); ++k) {
                next[k + 1] += falling[k];
                next[k] -= falling[k] * BigInt(n - 1);
            }
            falling = std::move(next);
        }
        if (a[n] == 0) continue;
        for (std::size_t k = 0; k < falling.size(); ++k) out[k] += Rational(a[n] * falling[k], factorial);
    }
    return RationalPoly(std::move(out));
}

/// Raised when a rational polynomial takes a non-integer value.
class NotIntegerValued : public std::domain_error {
   public:
    NotIntegerValued(long witness_, Rational value_)
        : std::domain_error("not integer-valued: value " + value_.str() + " at x=" + std::to_string(witness_)),
          witness(witness_),
          value(std::move(value_)) {}
    long witness;
    Rational value;
};

/// Binomial-basis form of an integer-valued polynomial given in monomial form.
/// Decided by exact values on [0, deg] and a symbolic comparison of both forms.
inline IntValuedPoly to_binomial_basis(const RationalPoly& f) {
    if (f.degree() < 0) return {};
    std::vector<BigInt> values;
    for (long x = 0; x <= f.degree(); ++x) {
        Rational v = f(Rational(x));
        if (boost::multiprecision::denominator(v) != 1) throw NotIntegerValued(x, v);
        values.push_back(boost::multiprecision::numerator(v));
    }
    IntValuedPoly g = newton_coeffs(DiffTable(std::move(values)));
    if (!(to_monomial(g) == f)) throw std::logic_error("binomial-basis conversion disagrees with input");
    return g;
}

inline IntValuedPoly to_binomial_basis(const std::vector<Rational>& monomial_coeffs) {
    return to_binomial_basis(RationalPoly(monomial_coeffs));
}

/// Raised by the text parsers.
class ParseError : public std::invalid_argument {
   public:
    ParseError(const std::string& what, std::size_t pos_)
        : std::invalid_argument(what + " at offset " + std::to_string(pos_)), pos(pos_) {}
    std::size_t pos;
};

namespace detail {

class Cursor {
   public:
    explicit Cursor(std::string_view s) : s_(s) {}

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool done() {
        skip_ws();
        return i_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++i_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
    BigInt integer() {
        skip_ws();
        const std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) fail("expected integer");
        return BigInt(std::string(s_.substr(start, i_ - start)));
    }
    unsigned small_integer() {
        BigInt v = integer();
        if (v > 1000000) fail("exponent too large");
        return static_cast<unsigned>(v);
    }
    std::size_t pos() const noexcept { return i_; }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, i_); }

   private:
    std::string_view s_;
    std::size_t i_ = 0;
};

inline std::string coeff_prefix(const Rational& c, bool has_var) {
    // magnitude only; sign is handled by the caller
    if (has_var && c == 1) return "";
    return c.str() + (has_var ? "*" : "");
}

}  // namespace detail

/// Grammar: terms joined by + / -, each term a '*'-product of integer or
/// fraction coefficients and powers of x, e.g. "1/2*x^2 + 1/2*x".
inline RationalPoly parse_rational_poly(std::string_view text) {
    detail::Cursor c(text);
    std::vector<Rational> acc;
    bool first = true;
    if (c.done()) c.fail("empty polynomial");
    while (!c.done()) {
        int sign = 1;
        if (c.accept('+')) {
        } else if (c.accept('-')) {
            sign = -1;
        } else if (!first) {
            c.fail("expected '+' or '-'");
        }
        first = false;
        Rational coeff = sign;
        std::size_t power = 0;
        do {
            if (c.at_digit()) {
                BigInt num = c.integer();
                if (c.accept('/')) {
                    BigInt den = c.integer();
                    if (den == 0) c.fail("zero denominator");
                    coeff *= Rational(num, den);
                } else {
                    coeff *= Rational(num);
                }
            } else if (c.accept('x')) {
                power += c.accept('^') ? c.small_integer() : 1;
            } else {
                c.fail("expected coefficient or x");
            }
        } while (c.accept('*'));
        if (acc.size() <= power) acc.resize(power + 1, Rational(0));
        acc[power] += coeff;
    }
    return RationalPoly(std::move(acc));
}

/// Canonical text: descending powers, "c*x^k", unit coefficients elided.
inline std::string to_string(const RationalPoly& p) {
    const auto& c = p.coeffs();
    if (c.empty()) return "0";
    std::string out;
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k] == 0) continue;
        const bool neg = c[k] < 0;
        const Rational mag = neg ? Rational(-c[k]) : c[k];
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        out += detail::coeff_prefix(mag, k > 0);
        if (k >= 1) out += "x";
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
}

/// Parses monomial text and converts it; throws NotIntegerValued if needed.
inline IntValuedPoly parse_int_valued(std::string_view text) { return to_binomial_basis(parse_rational_poly(text)); }

}  // namespace axkatz
