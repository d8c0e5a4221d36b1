#pragma once

// Overflow-checked 64-bit arithmetic. Every helper returns false instead of
// wrapping; callers then redo the work with BigInt.

#include <cstdint>

namespace axkatz::detail {

inline bool add(std::int64_t a, std::int64_t b, std::int64_t& out) noexcept { return !__builtin_add_overflow(a, b, &out); }

inline bool sub(std::int64_t a, std::int64_t b, std::int64_t& out) noexcept { return !__builtin_sub_overflow(a, b, &out); }

inline bool mul(std::int64_t a, std::int64_t b, std::int64_t& out) noexcept { return !__builtin_mul_overflow(a, b, &out); }

inline bool add(std::uint64_t a, std::uint64_t b, std::uint64_t& out) noexcept {
    return !__builtin_add_overflow(a, b, &out);
}

/// binom(x, n) for machine-word x; exact division at every step.
inline bool binom(std::int64_t x, unsigned n, std::int64_t& out) noexcept {
    std::int64_t r = 1;
    for (unsigned k = 0; k < n && r != 0; ++k) {
        std::int64_t factor;
        if (!sub(x, static_cast<std::int64_t>(k), factor)) return false;
        if (!mul(r, factor, r)) return false;
        r /= static_cast<std::int64_t>(k) + 1;
    }
    out = r;
    return true;
}

}  // namespace axkatz::detail
