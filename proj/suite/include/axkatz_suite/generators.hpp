#pragma once

// Seeded random instances for the property suites.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "axkatz/axkatz.hpp"

namespace axkatz::gen {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

inline std::int64_t nonzero(Rng& rng, std::int64_t bound) {
    const auto v = uniform(rng, 1, bound);
    return coin(rng) ? v : -v;
}

/// Sparse polynomial of total degree exactly `deg` in n variables.
inline MultiPoly sparse_poly(Rng& rng, std::size_t n, unsigned deg, std::size_t max_terms) {
    MultiPoly f(n);
    do {
        f = MultiPoly(n);
        const auto terms = uniform(rng, 1, static_cast<std::int64_t>(max_terms));
        for (std::int64_t t = 0; t < terms; ++t) {
            const unsigned d = t == 0 ? deg : static_cast<unsigned>(uniform(rng, 0, deg));
            MultiPoly::Exponents e(n, 0);
            for (unsigned k = 0; k < d; ++k) ++e[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(n) - 1))];
            f += MultiPoly(n, MultiPoly::Terms{{e, BigInt(nonzero(rng, 5))}});
        }
    } while (f.degree() != static_cast<long>(deg));
    return f;
}

/// Integer-valued weight of degree exactly t with small binomial coordinates.
inline IntValuedPoly weight(Rng& rng, unsigned t) {
    std::vector<BigInt> c;
    for (unsigned k = 0; k < t; ++k) c.emplace_back(uniform(rng, -3, 3));
    c.emplace_back(nonzero(rng, 3));
    return IntValuedPoly(c);
}

/// Representatives r + p * u with u uniform below p^(level - 1).
inline ResidueSystem random_system(Rng& rng, std::uint64_t p, unsigned level) {
    const auto top = static_cast<std::int64_t>(ipow(p, level - 1)) - 1;
    std::vector<BigInt> v;
    for (std::uint64_t r = 0; r < p; ++r) v.emplace_back(BigInt(r) + BigInt(p) * uniform(rng, 0, top));
    return ResidueSystem(p, level, v);
}

enum class BoxKind { standard, unit, random, mixed };

inline Box random_box(Rng& rng, std::uint64_t p, std::size_t n, BoxKind kind) {
    std::vector<ResidueSystem> sys;
    for (std::size_t j = 0; j < n; ++j) {
        BoxKind k = kind;
        if (k == BoxKind::mixed) k = static_cast<BoxKind>(uniform(rng, 0, 2));
        const auto level = static_cast<unsigned>(uniform(rng, 1, 3));
        if (k == BoxKind::standard)
            sys.push_back(ResidueSystem::standard(p));
        else if (k == BoxKind::unit)
            sys.push_back(build_unit_system(p, level));
        else
            sys.push_back(random_system(rng, p, level));
    }
    return Box(p, sys);
}

struct InstanceShape {
    std::uint64_t p;
    /// n_max with p^n_max within the box budget.
    std::size_t max_vars;
    bool trivial_weights;
    /// Force every level to 1.
    bool unit_levels = false;
    BoxKind box = BoxKind::mixed;
};

/// Random instance with hypothesis margin at least 1, or nullopt when the
/// drawn degrees need more variables than max_vars allows.
inline std::optional<AxKatzInstance> axkatz_instance(Rng& rng, const InstanceShape& shape) {
    const std::uint64_t p = shape.p;
    const auto s = static_cast<std::size_t>(uniform(rng, 1, 2));
    std::vector<unsigned> degs, levels;
    std::vector<IntValuedPoly> weights;
    Rational threshold = 0;
    for (std::size_t i = 0; i < s; ++i) {
        degs.push_back(static_cast<unsigned>(uniform(rng, 1, 2)));
        levels.push_back(shape.unit_levels ? 1 : static_cast<unsigned>(uniform(rng, 1, 2)));
        const unsigned t = shape.trivial_weights ? 0 : static_cast<unsigned>(uniform(rng, 0, 2));
        weights.push_back(shape.trivial_weights ? IntValuedPoly::constant(1) : weight(rng, t));
        const BigInt q = ipow(p, levels.back());
        threshold += Rational(((BigInt(t) + 1) * q - 1) * degs.back(), BigInt(p - 1));
    }
    const auto n_min = static_cast<std::size_t>(floor(threshold)) + 1;
    const std::size_t n = n_min + static_cast<std::size_t>(uniform(rng, 0, 1));
    if (n > shape.max_vars) return std::nullopt;
    std::vector<MultiPoly> polys;
    for (std::size_t i = 0; i < s; ++i) polys.push_back(sparse_poly(rng, n, degs[i], n + 2));
    return AxKatzInstance{p, polys, levels, weights, random_box(rng, p, n, shape.box)};
}

/// Random sequence of the given length.
inline GroupSequence sequence(Rng& rng, const AbelianPGroup& g, std::uint64_t len) {
    GroupSequence s(g);
    for (std::uint64_t i = 0; i < len; ++i) s.push(static_cast<std::uint64_t>(uniform(rng, 0, static_cast<std::int64_t>(g.size()) - 1)));
    return s;
}

}  // namespace axkatz::gen
