#pragma once

// Exact zero-sum invariants of small p-groups by exhaustive multiset search,
// and the applicability predicates behind the s_{X q} and s_{k q} bounds.
//
// A sequence is X-free when no nonempty subsequence with length in X sums to
// zero; s_X(G) is one more than the longest X-free length. Subsequences of an
// X-free sequence are X-free, so a depth-first search over nondecreasing
// index tuples that stops at the first failure visits every X-free multiset.
// Searching to depth c and finding nothing of length c certifies s_X(G) <= c.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exactmod.hpp"
#include "report.hpp"
#include "zerosum.hpp"

namespace axkatz {

using LengthSet = std::set<std::uint64_t>;

struct InvariantResult {
    AbelianPGroup group;
    std::string name;
    /// Absent for the Davenport constant (every positive length).
    std::optional<LengthSet> X;
    /// Exact when `exact`; otherwise only value >= search_depth + 1 is known.
    std::uint64_t value = 0;
    bool exact = false;
    std::uint64_t search_depth = 0;
    std::string depth_source;
    std::uint64_t search_space = 0;
    GroupSequence witness;
    bool witness_verified = false;
    std::optional<std::uint64_t> expected;
    bool verified = false;
};

inline Json to_json(const LengthSet& X) { return Json(std::vector<std::uint64_t>(X.begin(), X.end())); }

inline Json to_json(const InvariantResult& r) {
    Json j;
    j["group"] = r.group.spec();
    j["invariant"] = r.name;
    j["X"] = r.X ? to_json(*r.X) : Json(nullptr);
    j["value"] = r.value;
    j["exact"] = r.exact;
    j["expected"] = r.expected ? Json(*r.expected) : Json(nullptr);
    j["search_depth"] = r.search_depth;
    j["depth_source"] = r.depth_source;
    j["search_space"] = r.search_space;
    j["witness"] = to_json(r.witness);
    j["witness_verified"] = r.witness_verified;
    j["verified"] = r.verified;
    return j;
}

struct SearchOptions {
    /// Maximum number of multisets visited at any one length.
    std::uint64_t cap = 10'000'000;
    /// Run the sub-searches for each leading element concurrently.
    bool parallel = false;
    /// Let known values and applicable s_{X q} bounds set the search depth;
    /// otherwise pigeonhole alone does.
    bool use_bounds = true;
};

namespace detail {

struct SearchOutcome {
    std::uint64_t best = 0;
    std::vector<std::uint64_t> witness;
    std::vector<std::uint64_t> nodes;
};

class FreeSearch {
   public:
    /// X empty means every positive length.
    FreeSearch(const AbelianPGroup& g, const LengthSet& X, std::uint64_t depth, std::uint64_t cap)
        : g_(g), X_(X.begin(), X.end()), all_(X.empty()), depth_(depth), cap_(cap) {
        if (g.size() > 64) throw std::invalid_argument("exhaustive search supports groups of order at most 64");
        const std::size_t G = g.size();
        width_ = all_ ? 1 : static_cast<std::size_t>(*X.rbegin()) + 1;
        shift_.resize(G);
        for (std::size_t e = 0; e < G; ++e) {
            shift_[e].resize(G);
            for (std::size_t h = 0; h < G; ++h) shift_[e][h] = static_cast<std::uint8_t>(g.add(h, e));
        }
    }

    /// Explores every X-free nondecreasing tuple starting with `lead`.
    SearchOutcome run(std::uint64_t lead) const {
        SearchOutcome out;
        out.nodes.assign(depth_ + 1, 0);
        std::vector<std::vector<std::uint64_t>> states(depth_ + 1, std::vector<std::uint64_t>(width_, 0));
        if (!all_) states[0][0] = 1;
        std::vector<std::uint64_t> path;
        out.nodes[0] = 1;
        if (depth_ == 0) return out;
        if (!extend(states[0], lead, states[1])) return out;
        path.push_back(lead);
        dfs(1, lead, states, path, out);
        return out;
    }

   private:
    std::uint64_t translate(std::uint64_t mask, std::size_t e) const {
        std::uint64_t out = 0;
        const auto& row = shift_[e];
        while (mask) {
            const int h = __builtin_ctzll(mask);
            mask &= mask - 1;
            out |= std::uint64_t(1) << row[h];
        }
        return out;
    }

    /// Appends e; false when the result has a zero sum of a forbidden length.
    bool extend(const std::vector<std::uint64_t>& from, std::size_t e, std::vector<std::uint64_t>& to) const {
        if (all_) {
            to[0] = from[0] | translate(from[0], e) | (std::uint64_t(1) << e);
            return (to[0] & 1) == 0;
        }
        to[0] = from[0];
        for (std::size_t l = 1; l < width_; ++l) to[l] = from[l] | translate(from[l - 1], e);
        for (auto x : X_)
            if (to[x] & 1) return false;
        return true;
    }

    void dfs(std::size_t depth, std::size_t min_elem, std::vector<std::vector<std::uint64_t>>& states,
             std::vector<std::uint64_t>& path, SearchOutcome& out) const {
        if (++out.nodes[depth] > cap_)
            throw CapExceeded("multiset search exceeded the per-length cap at length " + std::to_string(depth),
                              axkatz::binom(BigInt(g_.size() + depth - 1), static_cast<unsigned>(depth)), BigInt(cap_));
        if (depth > out.best) {
            out.best = depth;
            out.witness = path;
        }
        if (depth == depth_) return;
        for (std::size_t e = min_elem; e < g_.size(); ++e) {
            if (!extend(states[depth], e, states[depth + 1])) continue;
            path.push_back(e);
            dfs(depth + 1, e, states, path, out);
            path.pop_back();
        }
    }

    const AbelianPGroup& g_;
    std::vector<std::uint64_t> X_;
    bool all_;
    std::uint64_t depth_;
    std::uint64_t cap_;
    std::size_t width_ = 1;
    std::vector<std::vector<std::uint8_t>> shift_;
};

/// Longest X-free multiset up to length `depth`, lexicographically first witness.
inline SearchOutcome longest_free(const AbelianPGroup& g, const LengthSet& X, std::uint64_t depth,
                                  const SearchOptions& opts) {
    const FreeSearch search(g, X, depth, opts.cap);
    std::vector<SearchOutcome> parts(g.size());
    if (opts.parallel && g.size() > 1) {
        std::vector<std::future<SearchOutcome>> jobs;
        for (std::uint64_t e = 0; e < g.size(); ++e)
            jobs.push_back(std::async(std::launch::async, [&search, e] { return search.run(e); }));
        for (std::uint64_t e = 0; e < g.size(); ++e) parts[e] = jobs[e].get();
    } else {
        for (std::uint64_t e = 0; e < g.size(); ++e) parts[e] = search.run(e);
    }
    SearchOutcome out;
    out.nodes.assign(depth + 1, 0);
    out.nodes[0] = 1;
    for (const auto& part : parts) {
        if (part.best > out.best) {
            out.best = part.best;
            out.witness = part.witness;
        }
        for (std::size_t l = 1; l <= depth; ++l) out.nodes[l] += part.nodes[l];
    }
    for (std::size_t l = 1; l <= depth; ++l)
        if (out.nodes[l] > opts.cap)
            throw CapExceeded("multiset search exceeded the per-length cap at length " + std::to_string(l),
                              BigInt(out.nodes[l]), BigInt(opts.cap));
    return out;
}

inline LengthSet prefix_lengths(std::uint64_t n) {
    LengthSet X;
    for (std::uint64_t l = 1; l <= n; ++l) X.insert(l);
    return X;
}

inline InvariantResult finish(InvariantResult r, const SearchOutcome& found) {
    r.search_space = 0;
    for (auto n : found.nodes) r.search_space += n;
    r.exact = found.best < r.search_depth;
    r.value = found.best + 1;
    r.witness = GroupSequence(r.group, found.witness);
    const LengthSet forbidden = r.X ? *r.X : prefix_lengths(r.witness.length());
    r.witness_verified = r.witness.length() + 1 == r.value &&
                         !sigma_X_contains_zero(r.witness, forbidden, std::max<std::uint64_t>(64, r.witness.length()));
    r.verified = r.exact && r.witness_verified && (!r.expected || *r.expected == r.value);
    return r;
}

}  // namespace detail

/// D(G) by exhaustive search to depth D*(G), or |G| without bounds.
inline InvariantResult davenport_exact(const AbelianPGroup& g, const SearchOptions& opts = {}) {
    InvariantResult r{g, "davenport", std::nullopt, 0, false, g.dstar(), "D*(G)", 0, GroupSequence(g), false,
                      g.dstar(), false};
    if (!opts.use_bounds) {
        r.search_depth = g.size();
        r.depth_source = "pigeonhole";
    }
    auto found = detail::longest_free(g, {}, r.search_depth, opts);
    return detail::finish(std::move(r), found);
}

// ---------------------------------------------------------------------------
// Bound predicates

struct DetHypothesis {
    BigInt product;
    bool ok = true;
};

/// With {x_1 < ... < x_s} = [1, max X] \ X: prod x_i * prod_{i<j} (x_j - x_i),
/// and whether it is nonzero mod p^(m+1).
inline DetHypothesis det_hypothesis(const LengthSet& X, std::uint64_t p, unsigned m) {
    require_prime(p);
    if (X.empty()) throw std::invalid_argument("X must be nonempty");
    if (*X.begin() == 0) throw std::invalid_argument("X must contain positive integers only");
    std::vector<std::uint64_t> comp;
    for (std::uint64_t x = 1; x <= *X.rbegin(); ++x)
        if (!X.count(x)) comp.push_back(x);
    DetHypothesis out{1, true};
    for (std::size_t i = 0; i < comp.size(); ++i) {
        out.product *= comp[i];
        for (std::size_t j = i + 1; j < comp.size(); ++j) out.product *= comp[j] - comp[i];
    }
    out.ok = mod_floor(out.product, ipow(p, m + 1)) != 0;
    return out;
}

struct SXqBound {
    bool applicable = false;
    std::uint64_t d = 0;
    std::uint64_t r = 0;
    DetHypothesis det;
    /// (max X - |X| + m (p - 1) / p + 1) q + D*(G) - 1
    Rational bound1 = 0;
    BigInt bound1_floor = 0;
    bool bound1_integral = true;
    /// (max X + 1 - m / p) q - r
    BigInt bound2 = 0;
};

/// Upper bounds for s_{X q}(G), applicable when |X| >= d + m and the
/// determinant hypothesis holds.
inline SXqBound thm17_bound(const AbelianPGroup& g, const LengthSet& X, unsigned m) {
    SXqBound out;
    if (X.empty()) throw std::invalid_argument("X must be nonempty");
    const std::uint64_t p = g.p(), q = g.exponent();
    out.d = g.d();
    out.r = out.d * q - g.dstar() + 1;
    out.det = det_hypothesis(X, p, m);
    out.applicable = !g.is_trivial() && X.size() >= out.d + m && out.det.ok;
    if (!out.applicable) return out;
    const auto maxX = static_cast<long long>(*X.rbegin());
    const auto sizeX = static_cast<long long>(X.size());
    out.bound1 = (Rational(maxX - sizeX + 1) + Rational(BigInt(m) * (p - 1), BigInt(p))) * BigInt(q) +
                 BigInt(g.dstar()) - 1;
    out.bound1_floor = floor(out.bound1);
    out.bound1_integral = out.bound1 == Rational(out.bound1_floor);
    out.bound2 = BigInt(maxX + 1) * q - BigInt(m) * (q / p) - out.r;
    return out;
}

struct SkqRange {
    std::uint64_t d = 0;
    std::uint64_t r = 0;
    /// s_{kq}(G) <= kq + D*(G) - 1 for all k >= the stated minimum.
    std::optional<std::uint64_t> thm18_min_k;
    std::optional<std::uint64_t> thm19_min_k;

    std::optional<std::uint64_t> min_k() const {
        if (thm18_min_k && thm19_min_k) return std::min(*thm18_min_k, *thm19_min_k);
        return thm18_min_k ? thm18_min_k : thm19_min_k;
    }
    bool guarantees(std::uint64_t k) const { return min_k() && k >= *min_k(); }
};

/// p >= 2d - 1 and d <= 4 gives all k >= d; p > d(d - 1) gives all k > d(d - 1)/2.
inline SkqRange thm18_19_krange(const AbelianPGroup& g) {
    SkqRange out;
    out.d = g.d();
    out.r = out.d * g.exponent() - g.dstar() + 1;
    if (g.is_trivial()) return out;
    const std::uint64_t p = g.p(), d = out.d;
    if (p + 1 >= 2 * d && d <= 4) out.thm18_min_k = d;
    if (p > d * (d - 1)) out.thm19_min_k = d * (d - 1) / 2 + 1;
    return out;
}

/// k = m k0 + r with r in [k0, 2 k0 - 1]; requires k >= k0 >= 1.
inline std::pair<std::uint64_t, std::uint64_t> transfer_decompose(std::uint64_t k, std::uint64_t k0) {
    if (k0 < 1 || k < k0) throw std::invalid_argument("need k >= k0 >= 1");
    const std::uint64_t m = k / k0 - 1;
    return {m, k - m * k0};
}

/// Whether [k0, 2 k0 - 1] lies inside the verified set, which extends the
/// s_{kq} bound to every k >= k0.
inline bool transfer_extend(std::uint64_t k0, const std::set<std::uint64_t>& verified_ks) {
    if (k0 < 1) throw std::invalid_argument("k0 must be positive");
    for (std::uint64_t k = k0; k < 2 * k0; ++k)
        if (!verified_ks.count(k)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// s_X

namespace detail {

inline std::optional<std::uint64_t> known_s_value(const AbelianPGroup& g, const LengthSet& X) {
    if (X.size() != 1 || g.is_trivial()) return std::nullopt;
    const std::uint64_t x = *X.begin(), q = g.exponent();
    if (x % q != 0) return std::nullopt;
    const std::uint64_t k = x / q;
    if (k == 1 && g.rank() == 1) return 2 * q - 1;
    if (k == 1 && g.rank() == 2 && g.orders()[0] == g.p() && g.orders()[1] == g.p()) return 4 * g.p() - 3;
    if (thm18_19_krange(g).guarantees(k)) return k * q + g.dstar() - 1;
    return std::nullopt;
}

}  // namespace detail

/// s_X(G) by exhaustive search. The depth is the smallest available upper
/// bound: a known value, an applicable s_{X q} bound, or pigeonhole on a
/// length in X divisible by exp(G).
inline InvariantResult s_X_exact(const AbelianPGroup& g, const LengthSet& X, const SearchOptions& opts = {},
                                 std::string name = "s_X") {
    if (X.empty() || *X.begin() == 0) throw std::invalid_argument("X must be a nonempty set of positive integers");
    const std::uint64_t q = g.exponent();
    std::optional<std::uint64_t> pigeon;
    for (auto x : X)
        if (x % q == 0) {
            pigeon = (x - 1) * g.size() + 1;
            break;
        }
    if (!pigeon) throw std::domain_error("s_X(G) is infinite: X has no multiple of exp(G)");

    InvariantResult r{g, std::move(name), X, 0, false, *pigeon, "pigeonhole", 0, GroupSequence(g), false,
                      detail::known_s_value(g, X), false};
    if (opts.use_bounds && r.expected && *r.expected < r.search_depth) {
        r.search_depth = *r.expected;
        r.depth_source = "known value";
    }
    bool all_multiples = true;
    LengthSet base;
    for (auto x : X) {
        all_multiples = all_multiples && x % q == 0;
        base.insert(x / q);
    }
    if (opts.use_bounds && all_multiples && !g.is_trivial()) {
        for (unsigned m = 0;; ++m) {
            const auto b = thm17_bound(g, base, m);
            if (!b.applicable) break;
            const BigInt c = std::min(b.bound1_floor, b.bound2);
            if (c > 0 && c < BigInt(r.search_depth)) {
                r.search_depth = static_cast<std::uint64_t>(c);
                r.depth_source = "s_Xq bound, m = " + std::to_string(m);
            }
        }
    }
    auto found = detail::longest_free(g, X, r.search_depth, opts);
    return detail::finish(std::move(r), found);
}

/// s(G) = s_{exp(G)}(G)
inline InvariantResult egz_exact(const AbelianPGroup& g, const SearchOptions& opts = {}) {
    return s_X_exact(g, {g.exponent()}, opts, "s");
}

inline InvariantResult skq_exact(const AbelianPGroup& g, std::uint64_t k, const SearchOptions& opts = {}) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    return s_X_exact(g, {k * g.exponent()}, opts, "s_kq");
}

/// s(C_p + C_p) = 4p - 3 for p in {2, 3}, with the extremal construction
/// checked against the search.
inline InvariantResult kemnitz_check(std::uint64_t p, const SearchOptions& opts = {}) {
    require_prime(p);
    if (p > 3) throw std::domain_error("exhaustive Kemnitz check infeasible at desk scale");
    const auto g = AbelianPGroup::elementary(p, 2);
    InvariantResult r = s_X_exact(g, {p}, opts, "kemnitz");
    r.expected = 4 * p - 3;
    const auto ext = extremal_sequence(g, ExtremalKind::egz_rank2);
    const bool ext_ok = ext.length() + 1 == r.value && !sigma_X_contains_zero(ext, {p});
    r.verified = r.verified && *r.expected == r.value && ext_ok;
    return r;
}

}  // namespace axkatz
