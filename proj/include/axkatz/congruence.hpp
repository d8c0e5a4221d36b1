#pragma once

// Weighted Weisman-Fleck sums, the weighted Wilson approximation polynomial,
// box sums of binomial products, and the generalized Ax-Katz verifier:
//
//   V = { a in B : p^(m_i) | f_i(a) for all i },
//   N = sum over a in V of prod_i w_i(f_i(a) / p^(m_i)),
//
// with N = 0 mod p^m whenever the number of variables clears the threshold
// computed by hypothesis_margin().

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "detail/checked.hpp"
#include "exactmod.hpp"
#include "intpoly.hpp"
#include "multipoly.hpp"
#include "report.hpp"
#include "residues.hpp"

namespace axkatz {

/// I_1 x ... x I_n, every factor a complete residue system for the same p.
class Box {
   public:
    Box(std::uint64_t p, std::vector<ResidueSystem> systems) : p_(p), systems_(std::move(systems)) {
        require_prime(p);
        for (const auto& s : systems_)
            if (s.p() != p) throw std::invalid_argument("box factors use different primes");
    }

    static Box uniform(const ResidueSystem& sys, std::size_t n) {
        return Box(sys.p(), std::vector<ResidueSystem>(n, sys));
    }

    std::uint64_t p() const noexcept { return p_; }
    std::size_t arity() const noexcept { return systems_.size(); }
    const std::vector<ResidueSystem>& systems() const noexcept { return systems_; }
    const ResidueSystem& operator[](std::size_t j) const { return systems_[j]; }

    /// p^n points.
    BigInt size() const { return ipow(p_, static_cast<unsigned>(systems_.size())); }

    /// Point with mixed-radix index `idx`, variable 0 varying fastest.
    std::vector<BigInt> point(std::uint64_t idx) const {
        std::vector<BigInt> a(systems_.size());
        for (std::size_t j = 0; j < systems_.size(); ++j) {
            a[j] = systems_[j].elements()[idx % p_];
            idx /= p_;
        }
        return a;
    }

   private:
    std::uint64_t p_;
    std::vector<ResidueSystem> systems_;
};

struct AxKatzInstance {
    std::uint64_t p;
    std::vector<MultiPoly> polys;
    std::vector<unsigned> levels;
    std::vector<IntValuedPoly> weights;
    Box box;

    void validate() const {
        require_prime(p);
        if (polys.empty()) throw std::invalid_argument("instance needs at least one polynomial");
        if (levels.size() != polys.size() || weights.size() != polys.size())
            throw std::invalid_argument("polys, levels and weights must have equal length");
        if (box.p() != p) throw std::invalid_argument("box prime differs from instance prime");
        for (const auto& f : polys) {
            if (f.is_zero()) throw std::invalid_argument("polynomials must be nonzero");
            if (f.n_vars() != box.arity()) throw std::invalid_argument("box arity differs from polynomial arity");
        }
        for (const auto& w : weights)
            if (w.is_zero()) throw std::invalid_argument("weights must be nonzero");
    }
};

namespace detail {

inline long clamp_to_long(const BigInt& x) {
    if (x > std::numeric_limits<long>::max()) return std::numeric_limits<long>::max();
    if (x < std::numeric_limits<long>::min()) return std::numeric_limits<long>::min();
    return static_cast<long>(x);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Weisman-Fleck

/// max{0, ceil((n - (t + 1) p^s + 1) / phi(p^s))}
inline long weisman_fleck_bound(std::uint64_t n, std::uint64_t p, unsigned s, long t) {
    const PrimePower q(p, s);
    const BigInt num = BigInt(n) - BigInt(t + 1) * q.value() + 1;
    const BigInt v = ceil_div(num, euler_phi(q));
    return v < 0 ? 0 : detail::clamp_to_long(v);
}

/// sum over i in [0, n], i = r mod p^s, of (-1)^i binom(n, i) w((i - r) / p^s).
inline BigInt weisman_fleck_value(std::uint64_t n, std::uint64_t r, std::uint64_t p, unsigned s,
                                  const IntValuedPoly& w) {
    const PrimePower q(p, s);
    if (BigInt(r) >= q.value()) throw std::invalid_argument("residue r must lie in [0, p^s - 1]");
    if (w.is_zero()) throw std::invalid_argument("weight must be nonzero");
    const auto step = static_cast<std::uint64_t>(q.value() > BigInt(n) ? BigInt(n + 1) : q.value());
    BigInt total = 0;
    std::uint64_t j = 0;
    for (std::uint64_t i = r; i <= n; i += step, ++j) {
        // i - r = j p^s exactly because step = p^s whenever a second term exists
        BigInt term = binom(BigInt(n), static_cast<unsigned>(i)) * w(BigInt(j));
        total += (i % 2 == 0) ? term : BigInt(-term);
    }
    return total;
}

inline CongruenceReport weisman_fleck_check(std::uint64_t n, std::uint64_t r, std::uint64_t p, unsigned s,
                                            const IntValuedPoly& w) {
    const BigInt value = weisman_fleck_value(n, r, p, s, w);
    CongruenceReport rep;
    rep.claim = "weisman-fleck";
    rep.parameters = {{"n", n}, {"r", r}, {"p", p}, {"s", s}, {"w", to_string(to_monomial(w))}, {"value", to_json(value)}};
    rep.predicted_valuation = weisman_fleck_bound(n, p, s, w.degree());
    rep.achieved = Valuation::of(value, p);
    rep.verified = rep.achieved.at_least(rep.predicted_valuation);
    if (!rep.verified) rep.witness = Json{{"value", to_json(value)}};
    return rep;
}

// ---------------------------------------------------------------------------
// Wilson approximation

struct WilsonApproximation {
    IntValuedPoly g;
    /// vp(a_n) and its required lower bound, for n in [0, degree_bound - 1].
    std::vector<Valuation> valuations;
    std::vector<long> required;
    /// deg g < degree_bound = (t + 1) p^s + (m - 1) phi(p^s).
    long degree_bound = 0;
    /// g - h is checked on [window_lo, window_hi); the full common period of
    /// both sides mod p^m is p^period_exponent.
    unsigned period_exponent = 0;
    std::int64_t window_lo = 0;
    std::int64_t window_hi = 0;
    bool window_capped = false;
    CongruenceReport report;
};

namespace detail {

/// Coefficient a_n of the Newton expansion of h(x) = w(floor(x / p^s)) f(x),
/// expanded over residue classes r mod p^s.
inline BigInt wilson_coefficient(std::uint64_t n, const DiffTable& f, const IntValuedPoly& w, std::uint64_t p,
                                 unsigned s) {
    const std::uint64_t P = static_cast<std::uint64_t>(ipow(p, s));
    BigInt total = 0;
    for (std::uint64_t r = 0; r < P && r <= n; ++r) {
        const BigInt& fr = f.at(static_cast<std::int64_t>(r));
        if (fr != 0) total += fr * weisman_fleck_value(n, r, p, s, w);
    }
    return n % 2 == 0 ? total : BigInt(-total);
}

/// Steps the table (Delta^k g)(x), k = 0..d, from x = lo to hi modulo `mod`
/// using only additions, and returns the first x where g(x) != h(x) mod `mod`.
template <class Int, class HFn>
std::optional<std::int64_t> scan_congruence(const IntValuedPoly& g, std::int64_t lo, std::int64_t hi, const BigInt& mod,
                                            HFn&& h_residue) {
    const auto& a = g.coeffs();
    const std::size_t d = a.size();
    // (Delta^k g)(lo) = sum_n a_n binom(lo, n - k)
    std::vector<Int> diff(d + 1, Int(0));
    for (std::size_t k = 0; k < d; ++k) {
        BigInt v = 0;
        for (std::size_t n = k; n < d; ++n) v += a[n] * axkatz::binom(BigInt(lo), static_cast<unsigned>(n - k));
        diff[k] = static_cast<Int>(mod_floor(v, mod));
    }
    const Int m = static_cast<Int>(mod);
    for (std::int64_t x = lo; x < hi; ++x) {
        const Int gx = d == 0 ? Int(0) : diff[0];
        if (gx != static_cast<Int>(h_residue(x))) return x;
        for (std::size_t k = 0; k + 1 < d; ++k) {
            diff[k] += diff[k + 1];
            if (diff[k] >= m) diff[k] -= m;
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Builds g = sum_{n < D} a_n binom(X, n) with g(x) = w(floor(x / p^s)) f(x)
/// mod p^m, where f has declared period p^s, and checks the degree bound, the
/// per-coefficient valuation bounds, and the congruence over a window that
/// covers a full common period (capped at window_cap points).
inline WilsonApproximation wilson_approx(const DiffTable& f, const IntValuedPoly& w, std::uint64_t p, unsigned m,
                                         std::uint64_t window_cap = 100000) {
    require_prime(p);
    if (m < 1) throw std::invalid_argument("target exponent m must be at least 1");
    if (w.is_zero()) throw std::invalid_argument("weight must be nonzero");
    if (!f.period()) throw std::invalid_argument("table must declare a period p^s");
    unsigned s = 0;
    {
        std::uint64_t P = *f.period();
        while (P % p == 0) {
            P /= p;
            ++s;
        }
        if (P != 1) throw std::invalid_argument("period is not a power of p");
    }
    const PrimePower q(p, s);
    const long t = w.degree();
    const BigInt D = BigInt(t + 1) * q.value() + BigInt(m - 1) * euler_phi(q);
    const auto degree_bound = static_cast<long>(D);

    WilsonApproximation out;
    out.degree_bound = degree_bound;
    std::vector<BigInt> a;
    for (long n = 0; n < degree_bound; ++n) {
        a.push_back(detail::wilson_coefficient(static_cast<std::uint64_t>(n), f, w, p, s));
        out.valuations.push_back(Valuation::of(a.back(), p));
        out.required.push_back(weisman_fleck_bound(static_cast<std::uint64_t>(n), p, s, t));
    }
    out.g = IntValuedPoly(a);

    bool coeffs_ok = true;
    std::optional<long> bad_coeff;
    for (std::size_t n = 0; n < a.size(); ++n) {
        if (!out.valuations[n].at_least(out.required[n])) {
            coeffs_ok = false;
            if (!bad_coeff) bad_coeff = static_cast<long>(n);
        }
    }
    const bool degree_ok = out.g.degree() < degree_bound;

    // Shifting x by y leaves g mod p^m fixed once vp(y) >= m + vp(deg!), and
    // leaves h mod p^m fixed once vp(y) >= s + m + vp(t!).
    const auto deg = static_cast<std::uint64_t>(std::max<long>(out.g.degree(), 0));
    out.period_exponent = static_cast<unsigned>(std::max<std::uint64_t>(
        s + m + vp_factorial(static_cast<std::uint64_t>(t), p), m + vp_factorial(deg, p)));
    const BigInt period = ipow(p, out.period_exponent);
    if (2 * period <= BigInt(window_cap)) {
        out.window_lo = -static_cast<std::int64_t>(period);
        out.window_hi = static_cast<std::int64_t>(period);
    } else {
        out.window_capped = true;
        out.window_lo = -static_cast<std::int64_t>(window_cap / 2);
        out.window_hi = static_cast<std::int64_t>(window_cap - window_cap / 2);
    }

    const BigInt mod = ipow(p, m);
    const std::int64_t P = static_cast<std::int64_t>(*f.period());
    std::int64_t cached_block = std::numeric_limits<std::int64_t>::min();
    BigInt cached_w = 0;
    auto h_residue = [&](std::int64_t x) -> BigInt {
        const std::int64_t block = x >= 0 ? x / P : -((-x + P - 1) / P);
        if (block != cached_block) {
            cached_block = block;
            cached_w = w(BigInt(block));
        }
        return mod_floor(cached_w * f.at(x), mod);
    };
    std::optional<std::int64_t> bad_x;
    if (mod < BigInt(std::int64_t(1) << 62)) {
        auto h64 = [&](std::int64_t x) { return static_cast<std::int64_t>(h_residue(x)); };
        bad_x = detail::scan_congruence<std::int64_t>(out.g, out.window_lo, out.window_hi, mod, h64);
    } else {
        bad_x = detail::scan_congruence<BigInt>(out.g, out.window_lo, out.window_hi, mod, h_residue);
    }
    // spot-check the additive scan against direct evaluation
    for (std::int64_t x = out.window_lo; x < out.window_hi; x += 1009) {
        if (bad_x && x >= *bad_x) break;
        if (mod_floor(out.g(BigInt(x)) - h_residue(x), mod) != 0)
            throw std::logic_error("difference-table scan disagrees with direct evaluation");
    }

    auto& rep = out.report;
    rep.claim = "wilson";
    Json table = Json::array();
    for (std::size_t i = 0; i < *f.period(); ++i) table.push_back(to_json(f.values()[i]));
    Json coeffs = Json::array();
    for (const auto& c : out.g.coeffs()) coeffs.push_back(to_json(c));
    rep.parameters = {{"p", p},
                      {"s", s},
                      {"m", m},
                      {"table", table},
                      {"w", to_string(to_monomial(w))},
                      {"g_coeffs", coeffs},
                      {"degree", out.g.degree()},
                      {"degree_bound", degree_bound},
                      {"coefficient_bounds_hold", coeffs_ok},
                      {"window", {out.window_lo, out.window_hi}},
                      {"window_period_exponent", out.period_exponent},
                      {"window_capped", out.window_capped}};
    rep.predicted_valuation = m;
    // valuation of g - h over the window, saturated at the target m
    rep.achieved = Valuation::finite(m);
    if (bad_x) rep.achieved = Valuation::finite(vp(mod_floor(out.g(BigInt(*bad_x)) - h_residue(*bad_x), mod), p));
    rep.verified = coeffs_ok && degree_ok && !bad_x;
    if (!rep.verified) {
        Json wit = Json::object();
        if (bad_x) wit["x"] = *bad_x;
        if (bad_coeff) wit["coefficient_index"] = *bad_coeff;
        if (!degree_ok) wit["degree"] = out.g.degree();
        rep.witness = wit;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Box sums

struct BoxSum {
    BigInt value;
    CongruenceReport report;
};

/// sum over the box of prod_i binom(f_i(a), k_i), with the predicted exponent
/// the largest m such that n >= (m - 1) + (deg + 1) / (p - 1), deg = sum k_i deg f_i.
inline BoxSum binomial_product_box_sum(const std::vector<MultiPoly>& polys, const std::vector<unsigned>& ks,
                                       const Box& box, std::uint64_t cap = std::uint64_t(1) << 24) {
    if (polys.size() != ks.size()) throw std::invalid_argument("polys and ks must have equal length");
    for (const auto& f : polys) {
        if (f.is_zero()) throw std::invalid_argument("polynomials must be nonzero");
        if (f.n_vars() != box.arity()) throw std::invalid_argument("box arity differs from polynomial arity");
    }
    const BigInt points = box.size();
    if (points > BigInt(cap)) throw CapExceeded("box too large", points, BigInt(cap));
    const std::uint64_t p = box.p();
    const auto n = static_cast<long>(box.arity());
    long deg = 0;
    for (std::size_t i = 0; i < polys.size(); ++i) deg += static_cast<long>(ks[i]) * polys[i].degree();

    BigInt total = 0;
    const auto count = static_cast<std::uint64_t>(points);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        const auto a = box.point(idx);
        BigInt term = 1;
        for (std::size_t i = 0; i < polys.size() && term != 0; ++i) term *= binom(polys[i](a), ks[i]);
        total += term;
    }

    BoxSum out{total, {}};
    auto& rep = out.report;
    rep.claim = "binomial-box-sum";
    rep.parameters = {{"p", p}, {"n", n}, {"ks", ks}, {"degree", deg}, {"value", to_json(total)}};
    const long pm1 = static_cast<long>(p - 1);
    const BigInt m = floor_div(BigInt(n * pm1 - deg - 1), BigInt(pm1)) + 1;
    rep.predicted_valuation = m < 0 ? 0 : detail::clamp_to_long(m);
    rep.achieved = Valuation::of(total, p);
    rep.verified = rep.achieved.at_least(rep.predicted_valuation);
    if (!rep.verified) rep.witness = Json{{"value", to_json(total)}};
    return out;
}

// ---------------------------------------------------------------------------
// Generalized Ax-Katz

/// Largest m >= 0 with
///   n > (m - 1) max_i{1, phi(p^(m_i)) deg f_i / (p - 1)} + sum_i ((t_i + 1) p^(m_i) - 1) deg f_i / (p - 1),
/// strict inequality; 0 when m = 1 already fails.
inline long hypothesis_margin(const AxKatzInstance& inst) {
    inst.validate();
    const std::uint64_t p = inst.p;
    const Rational pm1 = Rational(BigInt(p - 1));
    Rational max_term = 1;
    Rational sum_term = 0;
    for (std::size_t i = 0; i < inst.polys.size(); ++i) {
        const PrimePower q(p, inst.levels[i]);
        const BigInt deg = inst.polys[i].degree();
        const BigInt t = inst.weights[i].degree();
        max_term = std::max(max_term, Rational(euler_phi(q) * deg) / pm1);
        sum_term += Rational(((t + 1) * q.value() - 1) * deg) / pm1;
    }
    const Rational slack = Rational(BigInt(inst.box.arity())) - sum_term;
    if (slack <= 0) return 0;
    return detail::clamp_to_long(ceil(slack / max_term));
}

struct WeightedCount {
    BigInt v_size;
    BigInt n;
};

namespace detail {

/// Per-instance tables for evaluating every f_i at box points in machine words.
class BoxEvaluator {
   public:
    explicit BoxEvaluator(const AxKatzInstance& inst) : inst_(inst), p_(inst.p), n_(inst.box.arity()) {
        std::vector<unsigned> max_exp(n_, 0);
        for (const auto& f : inst.polys) {
            Compiled c;
            for (const auto& [e, coeff] : f.terms()) {
                Mono mono;
                if (coeff > std::numeric_limits<std::int64_t>::max() || coeff < std::numeric_limits<std::int64_t>::min())
                    c.small = false;
                else
                    mono.coeff = static_cast<std::int64_t>(coeff);
                for (std::size_t j = 0; j < n_; ++j) {
                    if (e[j] == 0) continue;
                    mono.factors.emplace_back(j, e[j]);
                    max_exp[j] = std::max(max_exp[j], e[j]);
                }
                c.monos.push_back(std::move(mono));
            }
            polys_.push_back(std::move(c));
        }
        // powers[j][idx * stride_j + e] = element_idx^e, or unset on overflow
        stride_.resize(n_);
        powers_.resize(n_);
        power_ok_.resize(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            stride_[j] = max_exp[j] + 1;
            const auto& elems = inst.box[j].elements();
            for (const auto& x : elems) {
                BigInt acc = 1;
                for (unsigned e = 0; e <= max_exp[j]; ++e) {
                    const bool fits = acc <= std::numeric_limits<std::int64_t>::max() &&
                                      acc >= std::numeric_limits<std::int64_t>::min();
                    powers_[j].push_back(fits ? static_cast<std::int64_t>(acc) : 0);
                    power_ok_[j].push_back(fits);
                    acc *= x;
                }
            }
        }
        for (unsigned lvl : inst.levels) {
            const BigInt q = ipow(p_, lvl);
            mods_.push_back(q <= std::numeric_limits<std::int64_t>::max() ? static_cast<std::int64_t>(q) : 0);
            big_mods_.push_back(q);
        }
    }

    /// Adds the contribution of points [begin, end) to out.
    void accumulate(std::uint64_t begin, std::uint64_t end, WeightedCount& out) const {
        std::vector<std::size_t> digit(n_, 0);
        {
            std::uint64_t idx = begin;
            for (std::size_t j = 0; j < n_; ++j) {
                digit[j] = idx % p_;
                idx /= p_;
            }
        }
        std::int64_t small_n = 0;
        std::uint64_t small_v = 0;
        std::vector<std::int64_t> vals(polys_.size());
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            bool in_v = true;
            bool fast = true;
            for (std::size_t i = 0; i < polys_.size() && in_v; ++i) {
                if (!eval_small(i, digit, vals[i]) || mods_[i] == 0) {
                    fast = false;
                    break;
                }
                in_v = vals[i] % mods_[i] == 0;
            }
            if (!fast) {
                slow_point(idx, out);
            } else if (in_v) {
                ++small_v;
                std::int64_t prod = 1;
                bool ok = true;
                for (std::size_t i = 0; i < polys_.size() && ok; ++i) {
                    if (inst_.weights[i].is_one()) continue;
                    std::int64_t wv;
                    ok = inst_.weights[i].try_eval(vals[i] / mods_[i], wv) && detail::mul(prod, wv, prod);
                }
                if (!ok) {
                    BigInt big = 1;
                    for (std::size_t i = 0; i < polys_.size(); ++i)
                        big *= inst_.weights[i](BigInt(vals[i] / mods_[i]));
                    out.n += big;
                } else if (!detail::add(small_n, prod, small_n)) {
                    out.n += small_n;
                    small_n = prod;
                }
            }
            for (std::size_t j = 0; j < n_; ++j) {
                if (++digit[j] < p_) break;
                digit[j] = 0;
            }
        }
        out.n += small_n;
        out.v_size += small_v;
    }

   private:
    struct Mono {
        std::int64_t coeff = 0;
        std::vector<std::pair<std::size_t, unsigned>> factors;
    };
    struct Compiled {
        std::vector<Mono> monos;
        bool small = true;
    };

    bool eval_small(std::size_t i, const std::vector<std::size_t>& digit, std::int64_t& out) const {
        const auto& c = polys_[i];
        if (!c.small) return false;
        std::int64_t total = 0;
        for (const auto& mono : c.monos) {
            std::int64_t term = mono.coeff;
            for (auto [j, e] : mono.factors) {
                const std::size_t at = digit[j] * stride_[j] + e;
                if (!power_ok_[j][at] || !detail::mul(term, powers_[j][at], term)) return false;
            }
            if (!detail::add(total, term, total)) return false;
        }
        out = total;
        return true;
    }

    void slow_point(std::uint64_t idx, WeightedCount& out) const {
        const auto a = inst_.box.point(idx);
        BigInt weight = 1;
        for (std::size_t i = 0; i < inst_.polys.size(); ++i) {
            const BigInt v = inst_.polys[i](a);
            if (mod_floor(v, big_mods_[i]) != 0) return;
            weight *= inst_.weights[i](v / big_mods_[i]);
        }
        out.v_size += 1;
        out.n += weight;
    }

    const AxKatzInstance& inst_;
    std::uint64_t p_;
    std::size_t n_;
    std::vector<Compiled> polys_;
    std::vector<unsigned> stride_;
    std::vector<std::vector<std::int64_t>> powers_;
    std::vector<std::vector<bool>> power_ok_;
    std::vector<std::int64_t> mods_;
    std::vector<BigInt> big_mods_;
};

}  // namespace detail

struct CountOptions {
    std::uint64_t cap = std::uint64_t(1) << 24;
    /// Number of disjoint index ranges; results are identical for any value.
    unsigned partitions = 1;
    /// Evaluate partitions concurrently.
    bool parallel = false;
};

/// Exact |V| and N over the points with indices in [begin, end).
inline WeightedCount box_weighted_count_range(const AxKatzInstance& inst, std::uint64_t begin, std::uint64_t end) {
    inst.validate();
    WeightedCount out{0, 0};
    detail::BoxEvaluator(inst).accumulate(begin, end, out);
    return out;
}

/// Exact |V| and N by enumerating the whole box.
inline WeightedCount box_weighted_count(const AxKatzInstance& inst, const CountOptions& opts = {}) {
    inst.validate();
    const BigInt points = inst.box.size();
    if (points > BigInt(opts.cap)) throw CapExceeded("box too large", points, BigInt(opts.cap));
    const auto total = static_cast<std::uint64_t>(points);
    const std::uint64_t parts = std::max<std::uint64_t>(1, std::min<std::uint64_t>(opts.partitions, total));
    const detail::BoxEvaluator eval(inst);
    std::vector<WeightedCount> pieces(parts, WeightedCount{0, 0});
    auto run = [&](std::uint64_t k) {
        eval.accumulate(total * k / parts, total * (k + 1) / parts, pieces[k]);
    };
    if (opts.parallel && parts > 1) {
        std::vector<std::future<void>> jobs;
        for (std::uint64_t k = 0; k < parts; ++k) jobs.push_back(std::async(std::launch::async, run, k));
        for (auto& j : jobs) j.get();
    } else {
        for (std::uint64_t k = 0; k < parts; ++k) run(k);
    }
    WeightedCount out{0, 0};
    for (const auto& piece : pieces) {
        out.v_size += piece.v_size;
        out.n += piece.n;
    }
    return out;
}

inline Json describe(const AxKatzInstance& inst) {
    Json polys = Json::array(), degrees = Json::array(), weights = Json::array(), tdeg = Json::array();
    for (const auto& f : inst.polys) {
        polys.push_back(to_string(f));
        degrees.push_back(f.degree());
    }
    for (const auto& w : inst.weights) {
        weights.push_back(to_string(to_monomial(w)));
        tdeg.push_back(w.degree());
    }
    Json box = Json::array();
    for (const auto& sys : inst.box.systems()) {
        Json e = Json::array();
        for (const auto& x : sys.elements()) e.push_back(to_json(x));
        box.push_back(e);
    }
    return Json{{"p", inst.p},      {"n", inst.box.arity()}, {"polys", polys},        {"degrees", degrees},
                {"levels", inst.levels}, {"weights", weights},   {"weight_degrees", tdeg}, {"box", box}};
}

/// Checks p^m | N for m = hypothesis_margin(inst). All weights 1 and all levels
/// 1 is the classical Chevalley-Warning / Ax-Katz statement over F_p.
inline CongruenceReport verify_axkatz(const AxKatzInstance& inst, const CountOptions& opts = {}) {
    const long margin = hypothesis_margin(inst);
    const WeightedCount wc = box_weighted_count(inst, opts);
    CongruenceReport rep;
    rep.claim = "axkatz";
    rep.parameters = describe(inst);
    rep.parameters["V_size"] = to_json(wc.v_size);
    rep.parameters["N"] = to_json(wc.n);
    rep.predicted_valuation = margin;
    rep.achieved = Valuation::of(wc.n, inst.p);
    rep.verified = rep.achieved.at_least(margin);
    if (!rep.verified) rep.witness = Json{{"N", to_json(wc.n)}};
    return rep;
}

}  // namespace axkatz
