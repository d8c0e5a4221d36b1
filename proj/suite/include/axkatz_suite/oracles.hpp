#pragma once

// Second routes to the library's answers. Each one computes the same quantity
// by a different method: plain enumeration, BigInt evaluation, or an
// independent formula.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "axkatz/axkatz.hpp"

namespace axkatz::oracle {

/// sum over x in [0, p - 1] of x^m mod p, 0^0 = 1.
inline std::uint64_t sum_of_powers_direct(std::uint64_t p, std::uint64_t m) {
    BigInt total = 0;
    for (std::uint64_t x = 0; x < p; ++x) total += ipow(BigInt(x), static_cast<unsigned>(m));
    return static_cast<std::uint64_t>(mod_floor(total, BigInt(p)));
}

/// Filters every i in [0, n] by its residue instead of stepping.
inline BigInt weisman_fleck_direct(std::uint64_t n, std::uint64_t r, std::uint64_t p, unsigned s,
                                   const IntValuedPoly& w) {
    const BigInt P = ipow(p, s);
    BigInt total = 0;
    BigInt c = 1;  // binom(n, i)
    for (std::uint64_t i = 0; i <= n; ++i) {
        if (i > 0) c = c * (n - i + 1) / i;
        if (mod_floor(BigInt(i) - r, P) != 0) continue;
        const BigInt term = c * w((BigInt(i) - r) / P);
        total += (i % 2 == 0) ? term : BigInt(-term);
    }
    return total;
}

/// Newton coefficients of h(x) = w(floor(x / P)) f(x) from its values on [0, D).
inline IntValuedPoly wilson_by_differences(const DiffTable& f, const IntValuedPoly& w, long degree_bound) {
    const auto P = static_cast<std::int64_t>(*f.period());
    std::vector<BigInt> h;
    for (std::int64_t x = 0; x < degree_bound; ++x) h.push_back(w(BigInt(x / P)) * f.at(x));
    return newton_coeffs(DiffTable(h));
}

/// |V| and N by BigInt evaluation at every box point.
inline WeightedCount box_count_direct(const AxKatzInstance& inst) {
    WeightedCount out{0, 0};
    const auto total = static_cast<std::uint64_t>(inst.box.size());
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const auto a = inst.box.point(idx);
        BigInt weight = 1;
        bool in_v = true;
        for (std::size_t i = 0; i < inst.polys.size() && in_v; ++i) {
            const BigInt v = inst.polys[i](a);
            const BigInt q = ipow(inst.p, inst.levels[i]);
            in_v = mod_floor(v, q) == 0;
            if (in_v) weight *= inst.weights[i](v / q);
        }
        if (in_v) {
            out.v_size += 1;
            out.n += weight;
        }
    }
    return out;
}

/// sum over the box of prod_i g_i(f_i(a)) mod p^m, g_i the Wilson polynomial
/// for the indicator of 0 mod p^(m_i) weighted by w_i.
inline BigInt box_count_by_wilson(const AxKatzInstance& inst, unsigned m) {
    const BigInt mod = ipow(inst.p, m);
    std::vector<IntValuedPoly> g;
    for (std::size_t i = 0; i < inst.polys.size(); ++i) {
        const auto P = static_cast<std::size_t>(ipow(inst.p, inst.levels[i]));
        std::vector<BigInt> ind(P, 0);
        ind[0] = 1;
        g.push_back(wilson_approx(DiffTable(ind, P), inst.weights[i], inst.p, m, 2000).g);
    }
    BigInt total = 0;
    const auto points = static_cast<std::uint64_t>(inst.box.size());
    for (std::uint64_t idx = 0; idx < points; ++idx) {
        const auto a = inst.box.point(idx);
        BigInt term = 1;
        for (std::size_t i = 0; i < inst.polys.size(); ++i) term = mod_floor(term * g[i](inst.polys[i](a)), mod);
        total += term;
    }
    return mod_floor(total, mod);
}

/// Classical Ax-Katz exponent over F_p: ceil((n - sum deg f_i) / max deg f_i),
/// clamped at 0; constants count as degree 1 in the maximum.
inline long classical_axkatz_exponent(std::size_t n, const std::vector<long>& degrees) {
    long sum = 0, mx = 1;
    for (long d : degrees) {
        sum += d;
        mx = std::max(mx, d);
    }
    const long slack = static_cast<long>(n) - sum;
    if (slack <= 0) return 0;
    return (slack + mx - 1) / mx;
}

/// N_j by enumerating all 2^|S| index subsets.
inline std::vector<BigInt> subset_counts_naive(const GroupSequence& s) {
    const auto elems = s.elements();
    const auto& g = s.group();
    std::vector<BigInt> n(elems.size() + 1, 0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << elems.size()); ++mask) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (mask >> i & 1) acc = g.add(acc, elems[i]);
        if (acc == 0) n[static_cast<std::size_t>(__builtin_popcountll(mask))] += 1;
    }
    return n;
}

/// Whether some multiset of length `len` over G avoids zero sums with length in
/// X (every positive length when X is empty), by plain enumeration.
inline bool exists_free_multiset(const AbelianPGroup& g, const std::set<std::uint64_t>& X, std::uint64_t len) {
    std::vector<std::uint64_t> idx(len, 0);
    while (true) {
        const GroupSequence s(g, idx);
        const auto n = subset_counts_naive(s);
        bool free = true;
        for (std::size_t j = 1; j < n.size() && free; ++j)
            if ((X.empty() || X.count(j)) && n[j] > 0) free = false;
        if (free) return true;
        std::size_t k = len;
        while (k > 0 && idx[k - 1] + 1 == g.size()) --k;
        if (k == 0) return false;
        ++idx[k - 1];
        for (std::size_t i = k; i < len; ++i) idx[i] = idx[k - 1];
    }
}

/// The polynomial system whose weighted zero count over I^|S| equals
/// sum_j (p - 1)^j N_j(S): f_j = sum_i a_i^(j) X_i^(p-1) at level vp(q_j), with
/// I lifted far enough that x^(p-1) is a 0/1 indicator mod exp(G).
inline AxKatzInstance altsum_instance(const GroupSequence& s) {
    const auto& g = s.group();
    const std::uint64_t p = g.p();
    const auto n = static_cast<std::size_t>(s.length());
    const auto elems = s.elements();
    std::vector<MultiPoly> polys;
    std::vector<unsigned> levels;
    for (std::size_t j = 0; j < g.rank(); ++j) {
        MultiPoly f(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto a = g.coords(elems[i])[j];
            if (a != 0) f += MultiPoly::variable(n, i, static_cast<unsigned>(p - 1)) * MultiPoly::constant(n, BigInt(a));
        }
        if (f.is_zero()) f = MultiPoly::constant(n, BigInt(g.orders()[j]));  // vanishes mod q_j everywhere
        polys.push_back(f);
        levels.push_back(static_cast<unsigned>(vp(BigInt(g.orders()[j]), p)));
    }
    const auto top = static_cast<unsigned>(vp(BigInt(g.exponent()), p));
    return AxKatzInstance{p, polys, levels, std::vector<IntValuedPoly>(polys.size(), IntValuedPoly::constant(1)),
                          Box::uniform(build_unit_system(p, top), n)};
}

}  // namespace axkatz::oracle
