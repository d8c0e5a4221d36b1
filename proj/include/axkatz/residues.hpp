#pragma once

// Hensel lifting and complete residue systems modulo p, including the system
// on which x^(p-1) acts as a 0/1 indicator modulo p^m.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "exactmod.hpp"

namespace axkatz {

/// Integer polynomial in monomial form, ascending powers.
class IntegerPoly {
   public:
    IntegerPoly() = default;
    explicit IntegerPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    /// X^k - c
    static IntegerPoly power_minus(unsigned k, const BigInt& c) {
        std::vector<BigInt> v(k + 1, 0);
        v[k] += 1;
        v[0] -= c;
        return IntegerPoly(std::move(v));
    }

    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

    BigInt operator()(const BigInt& x) const {
        BigInt acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    IntegerPoly derivative() const {
        std::vector<BigInt> d;
        for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * BigInt(k));
        return IntegerPoly(std::move(d));
    }

   private:
    std::vector<BigInt> coeffs_;
};

/// Unique y in [0, p^(m+e) - 1] with y = x mod p^m and f(y) = 0 mod p^(m+e).
///
/// Requires f(x) = 0 mod p^m and f'(x) != 0 mod p. One Newton step with the
/// inverse of f'(x) modulo p^e already reaches level m + e because e <= m.
inline BigInt hensel_lift(const IntegerPoly& f, const BigInt& x, std::uint64_t p, unsigned m, unsigned e) {
    require_prime(p);
    if (m < 1) throw std::invalid_argument("lift level m must be at least 1");
    if (e < 1 || e > m) throw std::invalid_argument("lift step e must lie in [1, m]");
    const BigInt pm = ipow(p, m);
    const BigInt pe = ipow(p, e);
    const BigInt target = pm * pe;
    const BigInt fx = f(x);
    if (mod_floor(fx, pm) != 0) throw std::domain_error("not a root at level m");
    const BigInt dfx = f.derivative()(x);
    if (mod_floor(dfx, BigInt(p)) == 0) throw std::domain_error("singular root, lift not unique");

    BigInt y = mod_floor(x - fx * mod_inverse(dfx, pe), target);
    if (mod_floor(f(y), target) != 0) throw std::logic_error("hensel step did not reach level m + e");
    return y;
}

/// p integers that hit every residue class mod p exactly once.
inline bool validate_system(const std::vector<BigInt>& candidate, std::uint64_t p) {
    if (candidate.size() != p) return false;
    std::vector<bool> seen(p, false);
    for (const auto& x : candidate) {
        const auto r = static_cast<std::size_t>(mod_floor(x, BigInt(p)));
        if (seen[r]) return false;
        seen[r] = true;
    }
    return true;
}

/// A complete system of residues modulo p with elements in [0, p^level - 1].
class ResidueSystem {
   public:
    ResidueSystem(std::uint64_t p, unsigned level, std::vector<BigInt> elements)
        : p_(p), level_(level), elements_(std::move(elements)) {
        require_prime(p);
        if (level < 1) throw std::invalid_argument("residue system level must be at least 1");
        if (!validate_system(elements_, p)) throw std::invalid_argument("not a complete system of residues");
        const BigInt bound = ipow(p, level);
        for (const auto& x : elements_)
            if (x < 0 || x >= bound) throw std::invalid_argument("residue representative outside [0, p^level - 1]");
    }

    /// [0, p - 1]
    static ResidueSystem standard(std::uint64_t p) {
        std::vector<BigInt> v;
        for (std::uint64_t i = 0; i < p; ++i) v.emplace_back(i);
        return ResidueSystem(p, 1, std::move(v));
    }

    std::uint64_t p() const noexcept { return p_; }
    unsigned level() const noexcept { return level_; }
    const std::vector<BigInt>& elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }

    friend bool operator==(const ResidueSystem& a, const ResidueSystem& b) {
        return a.p_ == b.p_ && a.level_ == b.level_ && a.elements_ == b.elements_;
    }

   private:
    std::uint64_t p_;
    unsigned level_;
    std::vector<BigInt> elements_;
};

/// {0} together with the lifts of [1, p-1] to roots of X^(p-1) - 1 mod p^m,
/// sorted ascending. Lifting doubles the level per step until m is reached.
inline ResidueSystem build_unit_system(std::uint64_t p, unsigned m) {
    require_prime(p);
    if (m < 1) throw std::invalid_argument("residue system level must be at least 1");
    const IntegerPoly f = IntegerPoly::power_minus(static_cast<unsigned>(p - 1), 1);
    std::vector<BigInt> elems{0};
    for (std::uint64_t r = 1; r < p; ++r) {
        BigInt y = r;
        unsigned level = 1;
        while (level < m) {
            const unsigned step = std::min(level, m - level);
            y = hensel_lift(f, y, p, level, step);
            level += step;
        }
        elems.push_back(y);
    }
    std::sort(elems.begin(), elems.end());
    return ResidueSystem(p, m, std::move(elems));
}

}  // namespace axkatz
