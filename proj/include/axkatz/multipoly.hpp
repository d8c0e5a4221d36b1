#pragma once

// Sparse multivariate polynomials over Z and their text format
// ("2*x1^2*x3 - x2 + 7").

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "exactmod.hpp"
#include "intpoly.hpp"

namespace axkatz {

class MultiPoly {
   public:
    using Exponents = std::vector<unsigned>;
    using Terms = std::map<Exponents, BigInt>;

    explicit MultiPoly(std::size_t n_vars = 0) : n_vars_(n_vars) {}

    MultiPoly(std::size_t n_vars, Terms terms) : n_vars_(n_vars) {
        for (auto& [e, c] : terms) {
            if (e.size() != n_vars) throw std::invalid_argument("exponent tuple arity does not match n_vars");
            if (c != 0) terms_.emplace(e, std::move(c));
        }
    }

    static MultiPoly constant(std::size_t n_vars, const BigInt& c) {
        return MultiPoly(n_vars, Terms{{Exponents(n_vars, 0), c}});
    }

    /// X_j (0-based j).
    static MultiPoly variable(std::size_t n_vars, std::size_t j, unsigned power = 1) {
        if (j >= n_vars) throw std::out_of_range("variable index out of range");
        Exponents e(n_vars, 0);
        e[j] = power;
        return MultiPoly(n_vars, Terms{{std::move(e), BigInt(1)}});
    }

    std::size_t n_vars() const noexcept { return n_vars_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Total degree; -1 for the zero polynomial.
    long degree() const noexcept {
        long d = -1;
        for (const auto& [e, c] : terms_) {
            long s = 0;
            for (unsigned k : e) s += k;
            d = std::max(d, s);
        }
        return d;
    }

    long degree_in(std::size_t j) const noexcept {
        long d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e[j]));
        return d;
    }

    BigInt operator()(std::span<const BigInt> point) const {
        if (point.size() != n_vars_) throw std::invalid_argument("point arity does not match n_vars");
        BigInt total = 0;
        for (const auto& [e, c] : terms_) {
            BigInt term = c;
            for (std::size_t j = 0; j < n_vars_; ++j)
                if (e[j] != 0) term *= ipow(point[j], e[j]);
            total += term;
        }
        return total;
    }

    /// Same polynomial viewed in more variables.
    MultiPoly widened(std::size_t n_vars) const {
        if (n_vars < n_vars_) throw std::invalid_argument("cannot narrow a polynomial");
        Terms t;
        for (const auto& [e, c] : terms_) {
            Exponents w = e;
            w.resize(n_vars, 0);
            t.emplace(std::move(w), c);
        }
        return MultiPoly(n_vars, std::move(t));
    }

    MultiPoly& operator+=(const MultiPoly& rhs) {
        check_arity(rhs);
        for (const auto& [e, c] : rhs.terms_) {
            auto it = terms_.find(e);
            if (it == terms_.end()) {
                terms_.emplace(e, c);
            } else if ((it->second += c) == 0) {
                terms_.erase(it);
            }
        }
        return *this;
    }

    MultiPoly& operator*=(const BigInt& k) {
        if (k == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= k;
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_arity(b);
        MultiPoly out(a.n_vars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.n_vars_);
                for (std::size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
                out += MultiPoly(a.n_vars_, Terms{{std::move(e), ca * cb}});
            }
        }
        return out;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.n_vars_ == b.n_vars_ && a.terms_ == b.terms_;
    }

   private:
    void check_arity(const MultiPoly& rhs) const {
        if (rhs.n_vars_ != n_vars_) throw std::invalid_argument("polynomial arity mismatch");
    }

    std::size_t n_vars_;
    Terms terms_;
};

/// Parses "2*x1^2*x3 - x2 + 7". Variables are 1-based; n_vars defaults to the
/// largest index seen and must cover it when given.
inline MultiPoly parse_multipoly(std::string_view text, std::optional<std::size_t> n_vars = std::nullopt) {
    detail::Cursor c(text);
    std::vector<std::pair<std::map<std::size_t, unsigned>, BigInt>> raw;
    std::size_t max_var = 0;
    bool first = true;
    if (c.done()) c.fail("empty polynomial");
    while (!c.done()) {
        BigInt coeff = 1;
        if (c.accept('+')) {
        } else if (c.accept('-')) {
            coeff = -1;
        } else if (!first) {
            c.fail("expected '+' or '-'");
        }
        first = false;
        std::map<std::size_t, unsigned> powers;
        do {
            if (c.at_digit()) {
                coeff *= c.integer();
            } else if (c.accept('x')) {
                const BigInt idx = c.integer();
                if (idx < 1 || idx > 4096) c.fail("variable index out of range");
                const auto j = static_cast<std::size_t>(idx);
                max_var = std::max(max_var, j);
                powers[j - 1] += c.accept('^') ? c.small_integer() : 1;
            } else {
                c.fail("expected coefficient or variable");
            }
        } while (c.accept('*'));
        raw.emplace_back(std::move(powers), std::move(coeff));
    }
    const std::size_t n = n_vars.value_or(max_var);
    if (max_var > n) throw ParseError("variable x" + std::to_string(max_var) + " exceeds declared arity", 0);
    MultiPoly out(n);
    for (auto& [powers, coeff] : raw) {
        MultiPoly::Exponents e(n, 0);
        for (auto [j, k] : powers) e[j] = k;
        out += MultiPoly(n, MultiPoly::Terms{{std::move(e), std::move(coeff)}});
    }
    return out;
}

/// Canonical text: graded order, highest degree first.
inline std::string to_string(const MultiPoly& f) {
    if (f.is_zero()) return "0";
    std::vector<std::pair<MultiPoly::Exponents, BigInt>> terms(f.terms().begin(), f.terms().end());
    auto total = [](const MultiPoly::Exponents& e) {
        long s = 0;
        for (unsigned k : e) s += k;
        return s;
    };
    std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
        const long da = total(a.first), db = total(b.first);
        if (da != db) return da > db;
        return a.first > b.first;
    });
    std::string out;
    for (const auto& [e, c] : terms) {
        const bool neg = c < 0;
        const BigInt mag = neg ? BigInt(-c) : c;
        out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        std::string mono;
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(j + 1);
            if (e[j] > 1) mono += "^" + std::to_string(e[j]);
        }
        if (mono.empty())
            out += mag.str();
        else if (mag == 1)
            out += mono;
        else
            out += mag.str() + "*" + mono;
    }
    return out;
}

}  // namespace axkatz
