#pragma once

// Finite abelian p-groups C_{q_1} + ... + C_{q_r}, sequences (multisets) over
// them, zero-sum subsequence counts by length, and the alternating-sum
// congruences those counts satisfy.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "detail/checked.hpp"
#include "exactmod.hpp"
#include "report.hpp"

namespace axkatz {

class AbelianPGroup {
   public:
    /// Orders are sorted; each must be a power of p greater than 1.
    AbelianPGroup(std::uint64_t p, std::vector<std::uint64_t> orders) : p_(p), orders_(std::move(orders)) {
        require_prime(p);
        std::sort(orders_.begin(), orders_.end());
        size_ = 1;
        for (auto q : orders_) {
            if (q < 2) throw std::invalid_argument("cyclic factor orders must exceed 1");
            for (auto r = q; r != 1; r /= p)
                if (r % p != 0) throw std::invalid_argument("cyclic factor order is not a power of p");
            if (size_ > (std::uint64_t(1) << 40) / q) throw std::invalid_argument("group too large");
            size_ *= q;
        }
        if (size_ <= 1024) {
            auto table = std::make_shared<std::vector<std::uint32_t>>(size_ * size_);
            for (std::uint64_t a = 0; a < size_; ++a)
                for (std::uint64_t b = 0; b < size_; ++b)
                    (*table)[a * size_ + b] = static_cast<std::uint32_t>(add_slow(a, b));
            add_ = std::move(table);
        }
    }

    static AbelianPGroup cyclic(std::uint64_t n) {
        if (n < 2) throw std::invalid_argument("cyclic group order must exceed 1");
        std::uint64_t p = 2;
        while (n % p != 0) ++p;
        return AbelianPGroup(p, {n});
    }

    static AbelianPGroup elementary(std::uint64_t p, std::size_t rank) {
        return AbelianPGroup(p, std::vector<std::uint64_t>(rank, p));
    }

    static AbelianPGroup trivial(std::uint64_t p) { return AbelianPGroup(p, {}); }

    std::uint64_t p() const noexcept { return p_; }
    const std::vector<std::uint64_t>& orders() const noexcept { return orders_; }
    std::size_t rank() const noexcept { return orders_.size(); }
    std::uint64_t size() const noexcept { return size_; }
    bool is_trivial() const noexcept { return orders_.empty(); }
    std::uint64_t exponent() const noexcept { return orders_.empty() ? 1 : orders_.back(); }

    /// D*(G) = 1 + sum (q_i - 1)
    std::uint64_t dstar() const noexcept {
        std::uint64_t d = 1;
        for (auto q : orders_) d += q - 1;
        return d;
    }

    /// ceil(D*(G) / exp(G))
    std::uint64_t d() const noexcept { return (dstar() + exponent() - 1) / exponent(); }

    /// Mixed-radix index, coordinate 0 least significant.
    std::uint64_t index(const std::vector<std::uint64_t>& coords) const {
        if (coords.size() != orders_.size()) throw std::invalid_argument("coordinate count differs from group rank");
        std::uint64_t idx = 0;
        for (std::size_t i = orders_.size(); i-- > 0;) {
            if (coords[i] >= orders_[i]) throw std::invalid_argument("coordinate out of range");
            idx = idx * orders_[i] + coords[i];
        }
        return idx;
    }

    std::vector<std::uint64_t> coords(std::uint64_t idx) const {
        std::vector<std::uint64_t> c(orders_.size());
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            c[i] = idx % orders_[i];
            idx /= orders_[i];
        }
        return c;
    }

    /// Unit vector e_i.
    std::uint64_t basis(std::size_t i) const {
        std::vector<std::uint64_t> c(orders_.size(), 0);
        c.at(i) = 1;
        return index(c);
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        return add_ ? (*add_)[a * size_ + b] : add_slow(a, b);
    }

    std::uint64_t neg(std::uint64_t a) const {
        auto c = coords(a);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = (orders_[i] - c[i]) % orders_[i];
        return index(c);
    }

    /// "p=3;orders=3,9"
    std::string spec() const {
        std::string s = "p=" + std::to_string(p_) + ";orders=";
        for (std::size_t i = 0; i < orders_.size(); ++i) s += (i ? "," : "") + std::to_string(orders_[i]);
        return s;
    }

    friend bool operator==(const AbelianPGroup& a, const AbelianPGroup& b) {
        return a.p_ == b.p_ && a.orders_ == b.orders_;
    }

   private:
    std::uint64_t add_slow(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t idx = 0, scale = 1;
        for (auto q : orders_) {
            idx += ((a % q + b % q) % q) * scale;
            scale *= q;
            a /= q;
            b /= q;
        }
        return idx;
    }

    std::uint64_t p_;
    std::vector<std::uint64_t> orders_;
    std::uint64_t size_ = 1;
    std::shared_ptr<const std::vector<std::uint32_t>> add_;
};

/// Parses "p=3;orders=3,9"; "orders=" may be empty for the trivial group.
inline AbelianPGroup parse_group(std::string_view text) {
    auto fail = [&](const std::string& why) -> AbelianPGroup {
        throw std::invalid_argument("bad group spec '" + std::string(text) + "': " + why);
    };
    std::optional<std::uint64_t> p;
    std::optional<std::vector<std::uint64_t>> orders;
    auto parse_u = [&](std::string_view s) -> std::uint64_t {
        if (s.empty() || s.size() > 18 || s.find_first_not_of("0123456789") != std::string_view::npos)
            fail("expected a natural number, got '" + std::string(s) + "'");
        return std::stoull(std::string(s));
    };
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = std::min(text.find(';', start), text.size());
        std::string_view field = text.substr(start, end - start);
        while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
        while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
        const auto eq = field.find('=');
        if (eq == std::string_view::npos) return fail("field without '='");
        const auto key = field.substr(0, eq);
        const auto val = field.substr(eq + 1);
        if (key == "p") {
            p = parse_u(val);
        } else if (key == "orders") {
            orders.emplace();
            std::size_t s = 0;
            while (!val.empty() && s <= val.size()) {
                const auto e = std::min(val.find(',', s), val.size());
                orders->push_back(parse_u(val.substr(s, e - s)));
                s = e + 1;
            }
        } else {
            return fail("unknown key '" + std::string(key) + "'");
        }
        start = end + 1;
    }
    if (!p || !orders) return fail("need both p and orders");
    return AbelianPGroup(*p, *orders);
}

/// A multiset of group elements stored as (element index, multiplicity).
class GroupSequence {
   public:
    explicit GroupSequence(AbelianPGroup g) : g_(std::move(g)) {}

    GroupSequence(AbelianPGroup g, const std::vector<std::uint64_t>& elements) : g_(std::move(g)) {
        for (auto e : elements) push(e);
    }

    const AbelianPGroup& group() const noexcept { return g_; }
    const std::map<std::uint64_t, std::uint64_t>& terms() const noexcept { return terms_; }
    std::uint64_t length() const noexcept { return length_; }
    std::uint64_t multiplicity(std::uint64_t g) const {
        auto it = terms_.find(g);
        return it == terms_.end() ? 0 : it->second;
    }

    void push(std::uint64_t element, std::uint64_t mult = 1) {
        if (element >= g_.size()) throw std::invalid_argument("element index outside the group");
        if (mult == 0) return;
        terms_[element] += mult;
        length_ += mult;
    }

    /// Terms listed with repetition in increasing index order.
    std::vector<std::uint64_t> elements() const {
        std::vector<std::uint64_t> out;
        out.reserve(length_);
        for (auto [g, k] : terms_) out.insert(out.end(), k, g);
        return out;
    }

    friend GroupSequence operator*(GroupSequence a, const GroupSequence& b) {
        if (!(a.g_ == b.g_)) throw std::invalid_argument("sequences over different groups");
        for (auto [g, k] : b.terms_) a.push(g, k);
        return a;
    }

    friend bool operator==(const GroupSequence& a, const GroupSequence& b) {
        return a.g_ == b.g_ && a.terms_ == b.terms_;
    }

   private:
    AbelianPGroup g_;
    std::map<std::uint64_t, std::uint64_t> terms_;
    std::uint64_t length_ = 0;
};

inline Json to_json(const GroupSequence& s) {
    Json out = Json::array();
    for (auto [g, k] : s.terms()) out.push_back(Json{{"coords", s.group().coords(g)}, {"mult", k}});
    return out;
}

/// [{"coords": [...], "mult": k}, ...]
inline GroupSequence sequence_from_json(const AbelianPGroup& g, const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("sequence must be a JSON array");
    GroupSequence s(g);
    for (const auto& item : j) {
        if (!item.is_object() || !item.contains("coords") || !item["coords"].is_array())
            throw std::invalid_argument("sequence entry needs a coords array");
        std::vector<std::uint64_t> c;
        for (const auto& x : item["coords"]) {
            if (!x.is_number_integer() || x.get<long long>() < 0)
                throw std::invalid_argument("coords must be natural numbers");
            c.push_back(x.get<std::uint64_t>());
        }
        std::uint64_t mult = 1;
        if (item.contains("mult")) {
            if (!item["mult"].is_number_integer() || item["mult"].get<long long>() < 1)
                throw std::invalid_argument("mult must be a positive integer");
            mult = item["mult"].get<std::uint64_t>();
        }
        s.push(g.index(c), mult);
    }
    return s;
}

inline std::uint64_t sigma(const GroupSequence& s) {
    const auto& g = s.group();
    std::uint64_t acc = 0;
    for (auto [e, k] : s.terms())
        for (std::uint64_t i = 0; i < k % g.exponent(); ++i) acc = g.add(acc, e);
    return acc;
}

namespace detail {

/// cnt[j][g] = number of j-subsets summing to g, element by element.
/// Returns false on overflow of the machine-word path.
template <class Int, class Add>
bool subset_sum_table(const GroupSequence& s, std::vector<Int>& out, Add&& add) {
    const auto& g = s.group();
    const std::size_t G = g.size();
    const std::size_t L = s.length();
    std::vector<std::vector<Int>> cnt(L + 1, std::vector<Int>(G, Int(0)));
    cnt[0][0] = Int(1);
    std::size_t seen = 0;
    for (auto e : s.elements()) {
        ++seen;
        for (std::size_t j = seen; j >= 1; --j) {
            const auto& prev = cnt[j - 1];
            auto& cur = cnt[j];
            for (std::size_t h = 0; h < G; ++h) {
                if (prev[h] == Int(0)) continue;
                auto& slot = cur[g.add(h, e)];
                if (!add(slot, prev[h])) return false;
            }
        }
    }
    out.assign(L + 1, Int(0));
    for (std::size_t j = 0; j <= L; ++j) out[j] = cnt[j][0];
    return true;
}

}  // namespace detail

/// N_0, ..., N_|S|: index subsets of each size that sum to zero.
inline std::vector<BigInt> count_by_length(const GroupSequence& s, std::uint64_t cap = 64) {
    if (s.length() > cap) throw CapExceeded("sequence too long", BigInt(s.length()), BigInt(cap));
    std::vector<std::uint64_t> small;
    const bool ok = detail::subset_sum_table<std::uint64_t>(
        s, small, [](std::uint64_t& a, std::uint64_t b) { return detail::add(a, b, a); });
    std::vector<BigInt> out;
    if (ok) {
        for (auto v : small) out.emplace_back(v);
        return out;
    }
    detail::subset_sum_table<BigInt>(s, out, [](BigInt& a, const BigInt& b) {
        a += b;
        return true;
    });
    return out;
}

/// N_j mod `mod`, reduced inside the recursion.
inline std::vector<std::uint64_t> count_by_length_mod(const GroupSequence& s, std::uint64_t mod,
                                                      std::uint64_t cap = 64) {
    if (mod == 0 || mod > (std::uint64_t(1) << 62)) throw std::invalid_argument("modulus must lie in [1, 2^62]");
    if (s.length() > cap) throw CapExceeded("sequence too long", BigInt(s.length()), BigInt(cap));
    std::vector<std::uint64_t> out;
    detail::subset_sum_table<std::uint64_t>(s, out, [mod](std::uint64_t& a, std::uint64_t b) {
        a = (a + b) % mod;
        return true;
    });
    for (auto& v : out) v %= mod;
    return out;
}

/// Whether some nonempty subsequence with length in X sums to zero.
inline bool sigma_X_contains_zero(const GroupSequence& s, const std::set<std::uint64_t>& X, std::uint64_t cap = 64) {
    if (X.empty()) return false;
    const auto n = count_by_length(s, cap);
    for (auto x : X)
        if (x >= 1 && x < n.size() && n[x] > 0) return true;
    return false;
}

namespace detail {

inline void require_nontrivial(const AbelianPGroup& g) {
    if (g.is_trivial()) throw std::invalid_argument("alternating-sum checks need a nontrivial group (q > 1)");
}

inline void require_length(const GroupSequence& s, std::uint64_t required) {
    if (s.length() < required)
        throw std::invalid_argument("sequence length " + std::to_string(s.length()) + " below required " +
                                    std::to_string(required));
}

}  // namespace detail

/// m (p - 1) q / p + D*(G), the shortest length the altsum congruence covers.
inline std::uint64_t altsum_min_length(const AbelianPGroup& g, std::uint64_t m) {
    return m * (g.p() - 1) * (g.exponent() / g.p()) + g.dstar();
}

/// m (p - 1) q / p + t q - 1 + D*(G)
inline std::uint64_t altsum_q_min_length(const AbelianPGroup& g, std::uint64_t m, std::uint64_t t) {
    return altsum_min_length(g, m) + t * g.exponent() - 1;
}

struct AltsumOptions {
    std::uint64_t cap = 64;
    /// Reduce the counts mod p^(m+1) inside the recursion.
    bool reduced = false;
};

/// sum_j (p - 1)^j N_j(S), checked for divisibility by p^(m+1).
inline CongruenceReport check_altsum(const GroupSequence& s, unsigned m, const AltsumOptions& opts = {}) {
    const auto& g = s.group();
    detail::require_nontrivial(g);
    detail::require_length(s, altsum_min_length(g, m));
    const std::uint64_t p = g.p();
    const BigInt mod = ipow(p, m + 1);

    CongruenceReport rep;
    rep.claim = "altsum";
    rep.parameters = {{"group", g.spec()}, {"length", s.length()}, {"m", m}, {"reduced", opts.reduced}};
    rep.predicted_valuation = m + 1;
    if (opts.reduced) {
        const auto md = static_cast<std::uint64_t>(mod);
        const auto n = count_by_length_mod(s, md, opts.cap);
        BigInt total = 0, pw = 1;
        for (auto v : n) {
            total += pw * v;
            pw = pw * (p - 1) % mod;
        }
        total = mod_floor(total, mod);
        rep.parameters["sum_mod"] = to_json(total);
        rep.achieved = total == 0 ? Valuation::finite(m + 1) : Valuation::of(total, p);
    } else {
        const auto n = count_by_length(s, opts.cap);
        BigInt total = 0, pw = 1;
        for (const auto& v : n) {
            total += pw * v;
            pw *= p - 1;
        }
        rep.parameters["sum"] = to_json(total);
        rep.achieved = Valuation::of(total, p);
    }
    rep.verified = rep.achieved.at_least(rep.predicted_valuation);
    if (!rep.verified) rep.witness = to_json(s);
    return rep;
}

/// For i in [0, t - 1]: sum_j (p - 1)^(jq + alpha) j^i N_(jq + alpha)(S), 0^0 = 1.
/// `n` must be count_by_length(s).
inline std::vector<CongruenceReport> check_altsum_q(const GroupSequence& s, const std::vector<BigInt>& n,
                                                    std::uint64_t alpha, unsigned t, unsigned m) {
    const auto& g = s.group();
    detail::require_nontrivial(g);
    const std::uint64_t q = g.exponent();
    if (alpha >= q) throw std::invalid_argument("alpha must lie in [0, q - 1]");
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    if (n.size() != s.length() + 1) throw std::invalid_argument("count table does not match the sequence");
    detail::require_length(s, altsum_q_min_length(g, m, t));
    const std::uint64_t p = g.p();

    std::vector<CongruenceReport> out;
    for (unsigned i = 0; i < t; ++i) {
        BigInt total = 0;
        for (std::uint64_t j = 0; j * q + alpha < n.size(); ++j) {
            const std::uint64_t len = j * q + alpha;
            if (n[len] == 0) continue;
            total += ipow(p - 1, static_cast<unsigned>(len)) * ipow(BigInt(j), i) * n[len];
        }
        CongruenceReport rep;
        rep.claim = "altsum-q";
        rep.parameters = {{"group", g.spec()}, {"length", s.length()}, {"alpha", alpha}, {"t", t},
                          {"i", i},            {"m", m},              {"sum", to_json(total)}};
        rep.predicted_valuation = m + 1;
        rep.achieved = Valuation::of(total, p);
        rep.verified = rep.achieved.at_least(m + 1);
        if (!rep.verified) rep.witness = to_json(s);
        out.push_back(std::move(rep));
    }
    return out;
}

inline std::vector<CongruenceReport> check_altsum_q(const GroupSequence& s, std::uint64_t alpha, unsigned t,
                                                    unsigned m, std::uint64_t cap = 64) {
    detail::require_nontrivial(s.group());
    detail::require_length(s, altsum_q_min_length(s.group(), m, t));
    return check_altsum_q(s, count_by_length(s, cap), alpha, t, m);
}

enum class ExtremalKind { davenport, egz_rank2 };

/// davenport: prod e_i^[q_i - 1], zero-sum free of length D*(G) - 1.
/// egz_rank2 (C_p + C_p only): 0, e1, e2, e1 + e2 each with multiplicity p - 1.
inline GroupSequence extremal_sequence(const AbelianPGroup& g, ExtremalKind kind) {
    GroupSequence s(g);
    if (kind == ExtremalKind::davenport) {
        for (std::size_t i = 0; i < g.rank(); ++i) s.push(g.basis(i), g.orders()[i] - 1);
        return s;
    }
    if (g.rank() != 2 || g.orders()[0] != g.p() || g.orders()[1] != g.p())
        throw std::invalid_argument("egz_rank2 construction needs the group C_p + C_p");
    const auto e1 = g.basis(0), e2 = g.basis(1);
    for (auto e : {std::uint64_t(0), e1, e2, g.add(e1, e2)}) s.push(e, g.p() - 1);
    return s;
}

}  // namespace axkatz
