#pragma once

// Outcome records emitted by the verifiers, and their JSON form.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "exactmod.hpp"
#include "json.hpp"

namespace axkatz {

using Json = nlohmann::ordered_json;

/// p-adic valuation with an explicit infinite state for zero.
class Valuation {
   public:
    static Valuation infinite() { return Valuation(); }
    static Valuation finite(long v) { return Valuation(v); }
    static Valuation of(const BigInt& x, std::uint64_t p) { return x == 0 ? infinite() : finite(vp(x, p)); }

    bool is_infinite() const noexcept { return !value_.has_value(); }
    /// Only meaningful when finite.
    long value() const { return value_.value(); }
    bool at_least(long k) const noexcept { return !value_ || *value_ >= k; }

    friend bool operator==(const Valuation&, const Valuation&) = default;

   private:
    Valuation() = default;
    explicit Valuation(long v) : value_(v) {}
    std::optional<long> value_;
};

struct CongruenceReport {
    std::string claim;
    Json parameters = Json::object();
    long predicted_valuation = 0;
    Valuation achieved = Valuation::infinite();
    bool verified = false;
    std::optional<Json> witness;
};

inline Json to_json(const BigInt& x) { return x.str(); }

inline Json to_json(const CongruenceReport& r) {
    Json j;
    j["claim"] = r.claim;
    j["parameters"] = r.parameters;
    j["predicted_valuation"] = r.predicted_valuation;
    j["achieved_valuation"] = r.achieved.is_infinite() ? Json(nullptr) : Json(r.achieved.value());
    j["infinite"] = r.achieved.is_infinite();
    j["verified"] = r.verified;
    j["witness"] = r.witness ? *r.witness : Json(nullptr);
    return j;
}

}  // namespace axkatz
