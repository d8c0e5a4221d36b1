#include <gtest/gtest.h>

#include "axkatz/congruence.hpp"
#include "axkatz_suite/generators.hpp"
#include "axkatz_suite/oracles.hpp"

namespace {

using namespace axkatz;

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

const IntValuedPoly kOne = IntValuedPoly::constant(1);

DiffTable indicator(std::size_t P, std::size_t r) {
    std::vector<BigInt> v(P, 0);
    v[r] = 1;
    return DiffTable(v, P);
}

AxKatzInstance single(std::uint64_t p, const char* f, unsigned level, const IntValuedPoly& w, Box box) {
    return AxKatzInstance{p, {parse_multipoly(f, box.arity())}, {level}, {w}, std::move(box)};
}

// ---------------------------------------------------------------------------

TEST(WeismanFleck, Values) {
    EXPECT_EQ(weisman_fleck_value(4, 0, 2, 1, kOne), 8);
    EXPECT_EQ(weisman_fleck_value(6, 0, 3, 1, kOne), -18);
    EXPECT_EQ(weisman_fleck_value(0, 0, 2, 1, kOne), 1);
    EXPECT_THROW(weisman_fleck_value(4, 2, 2, 1, kOne), std::invalid_argument);
}

TEST(WeismanFleck, Reports) {
    auto r = weisman_fleck_check(4, 0, 2, 1, kOne);
    EXPECT_EQ(r.predicted_valuation, 3);
    EXPECT_EQ(r.achieved, Valuation::finite(3));
    EXPECT_TRUE(r.verified);
    r = weisman_fleck_check(6, 0, 3, 1, kOne);
    EXPECT_EQ(r.predicted_valuation, 2);
    EXPECT_EQ(r.achieved, Valuation::finite(2));
    EXPECT_TRUE(r.verified);
    r = weisman_fleck_check(1, 0, 2, 1, kOne);
    EXPECT_EQ(r.predicted_valuation, 0);
    EXPECT_TRUE(r.verified);
}

TEST(WeismanFleck, ZeroValueIsInfinite) {
    // n = 2, r = 1 mod 2 with weight x: the single term i = 1 carries w(0) = 0
    const auto r = weisman_fleck_check(2, 1, 2, 1, IntValuedPoly::basis(1));
    EXPECT_TRUE(r.achieved.is_infinite());
    EXPECT_TRUE(r.verified);
    EXPECT_TRUE(to_json(r)["infinite"].get<bool>());
    EXPECT_TRUE(to_json(r)["achieved_valuation"].is_null());
}

TEST(WeismanFleck, ExhaustiveAgainstDirectSummation) {
    const std::vector<IntValuedPoly> weights{kOne, parse_int_valued("x"), parse_int_valued("x^2"),
                                             IntValuedPoly::basis(2)};
    for (std::uint64_t p : {2, 3, 5})
        for (unsigned s = 1; s <= 2; ++s)
            for (std::uint64_t n = 0; n <= 30; ++n)
                for (std::uint64_t r = 0; BigInt(r) < ipow(p, s); ++r)
                    for (const auto& w : weights) {
                        const auto v = weisman_fleck_value(n, r, p, s, w);
                        ASSERT_EQ(v, oracle::weisman_fleck_direct(n, r, p, s, w));
                        const auto rep = weisman_fleck_check(n, r, p, s, w);
                        ASSERT_TRUE(rep.verified) << n << " " << r << " " << p << " " << s;
                    }
}

TEST(WeismanFleck, BoundFormula) {
    // max{0, ceil((n - (t + 1) p^s + 1) / phi(p^s))}
    EXPECT_EQ(weisman_fleck_bound(4, 2, 1, 0), 3);
    EXPECT_EQ(weisman_fleck_bound(30, 3, 2, 1), 3);  // ceil(13 / 6)
    EXPECT_EQ(weisman_fleck_bound(5, 5, 1, 0), 1);  // ceil(1 / 4)
    EXPECT_EQ(weisman_fleck_bound(3, 5, 1, 0), 0);
}

// ---------------------------------------------------------------------------

TEST(Wilson, Examples) {
    auto a = wilson_approx(indicator(2, 0), kOne, 2, 1);
    EXPECT_EQ(a.g.coeffs(), ints({1, -1}));
    EXPECT_TRUE(a.report.verified);
    for (long x = -8; x <= 8; ++x) EXPECT_EQ(mod_floor(a.g(BigInt(x)), BigInt(2)), x % 2 == 0 ? 1 : 0);

    a = wilson_approx(indicator(3, 0), kOne, 3, 1);
    EXPECT_EQ(a.g.coeffs(), ints({1, -1, 1}));
    EXPECT_EQ(a.g(BigInt(3)), 1);
    EXPECT_EQ(a.g(BigInt(4)), 3);
    EXPECT_EQ(a.g(BigInt(5)), 6);

    for (std::uint64_t p : {2, 3, 5})
        for (unsigned s = 0; s <= 2; ++s)
            for (unsigned m = 1; m <= 3; ++m) {
                const auto P = static_cast<std::size_t>(ipow(p, s));
                const auto c = wilson_approx(DiffTable(std::vector<BigInt>(P, 1), P), kOne, p, m);
                EXPECT_EQ(c.g, kOne);
                EXPECT_TRUE(c.report.verified);
            }
}

TEST(Wilson, RejectsBadPeriod) {
    EXPECT_THROW(wilson_approx(DiffTable(ints({1, 0, 0, 0, 0, 0}), 6), kOne, 2, 1), std::invalid_argument);
    EXPECT_THROW(wilson_approx(DiffTable(ints({1, 0})), kOne, 2, 1), std::invalid_argument);
    EXPECT_THROW(wilson_approx(indicator(2, 0), kOne, 2, 0), std::invalid_argument);
}

TEST(Wilson, AllBoundsHoldOnIndicators) {
    for (std::uint64_t p : {2, 3})
        for (unsigned s = 1; s <= 2; ++s)
            for (unsigned m = 1; m <= 3; ++m)
                for (const char* w : {"1", "x", "x^2"}) {
                    const auto weight = parse_int_valued(w);
                    const auto P = static_cast<std::size_t>(ipow(p, s));
                    for (std::size_t r = 0; r < P; ++r) {
                        const auto a = wilson_approx(indicator(P, r), weight, p, m);
                        ASSERT_TRUE(a.report.verified) << p << " " << s << " " << m << " " << w << " " << r;
                        ASSERT_LT(a.g.degree(), a.degree_bound);
                        for (std::size_t n = 0; n < a.valuations.size(); ++n)
                            ASSERT_TRUE(a.valuations[n].at_least(a.required[n]));
                    }
                }
}

TEST(Wilson, CoefficientsMatchNewtonTableOfTarget) {
    gen::Rng rng(31);
    for (int iter = 0; iter < 60; ++iter) {
        const std::uint64_t p = gen::coin(rng) ? 2 : 3;
        const auto s = static_cast<unsigned>(gen::uniform(rng, 1, 2));
        const auto m = static_cast<unsigned>(gen::uniform(rng, 1, 3));
        const auto P = static_cast<std::size_t>(ipow(p, s));
        std::vector<BigInt> f;
        for (std::size_t i = 0; i < P; ++i) f.emplace_back(gen::uniform(rng, -4, 4));
        const auto w = gen::weight(rng, static_cast<unsigned>(gen::uniform(rng, 0, 2)));
        const DiffTable table(f, P);
        const auto a = wilson_approx(table, w, p, m);
        ASSERT_EQ(a.g, oracle::wilson_by_differences(table, w, a.degree_bound));
        ASSERT_TRUE(a.report.verified);
    }
}

TEST(Wilson, PointwiseCongruenceOutsideWindowSample) {
    const auto w = parse_int_valued("x^2");
    const auto a = wilson_approx(indicator(9, 4), w, 3, 2);
    ASSERT_TRUE(a.report.verified);
    const BigInt mod = 9;
    for (long x = -2000; x <= 2000; x += 7) {
        const BigInt block = floor_div(BigInt(x), BigInt(9));
        const BigInt h = mod_floor(BigInt(x), BigInt(9)) == 4 ? w(block) : BigInt(0);
        ASSERT_EQ(mod_floor(a.g(BigInt(x)) - h, mod), 0) << x;
    }
}

TEST(Wilson, CappedWindowIsReported) {
    const auto a = wilson_approx(indicator(9, 0), parse_int_valued("x^2"), 3, 3, 500);
    EXPECT_TRUE(a.window_capped);
    EXPECT_EQ(a.window_hi - a.window_lo, 500);
    EXPECT_TRUE(to_json(a.report)["parameters"]["window_capped"].get<bool>());
}

TEST(Wilson, ScanFindsAPerturbedPolynomial) {
    const auto a = wilson_approx(indicator(3, 1), kOne, 3, 2);
    auto coeffs = a.g.coeffs();
    coeffs[4] += 1;  // changes g at x = 4 first
    const IntValuedPoly bad(coeffs);
    auto h = [](std::int64_t x) { return static_cast<std::int64_t>(mod_floor(BigInt(x), BigInt(3)) == 1); };
    EXPECT_EQ(detail::scan_congruence<std::int64_t>(a.g, 0, 81, BigInt(9), h), std::nullopt);
    EXPECT_EQ(detail::scan_congruence<std::int64_t>(bad, 0, 81, BigInt(9), h), std::optional<std::int64_t>(4));
    EXPECT_TRUE(detail::scan_congruence<BigInt>(bad, -81, 0, BigInt(9), [&](std::int64_t x) { return BigInt(h(x)); }));
}

// ---------------------------------------------------------------------------

TEST(BoxSum, Examples) {
    const Box b2 = Box::uniform(ResidueSystem::standard(2), 2);
    auto s = binomial_product_box_sum({parse_multipoly("x1 + x2")}, {1}, b2);
    EXPECT_EQ(s.value, 4);
    EXPECT_EQ(s.report.predicted_valuation, 1);
    EXPECT_TRUE(s.report.verified);

    for (std::uint64_t p : {2, 3, 5})
        for (std::size_t n = 1; n <= 3; ++n) {
            const Box b = Box::uniform(ResidueSystem::standard(p), n);
            std::vector<std::string> terms;
            const auto f = MultiPoly::variable(n, 0);
            s = binomial_product_box_sum({f}, {0}, b);
            EXPECT_EQ(s.value, ipow(p, static_cast<unsigned>(n)));
            EXPECT_EQ(s.report.predicted_valuation, static_cast<long>(n));
            EXPECT_TRUE(s.report.verified);
        }

    s = binomial_product_box_sum({parse_multipoly("x1")}, {2}, Box::uniform(ResidueSystem::standard(3), 1));
    EXPECT_EQ(s.value, 1);
    EXPECT_EQ(s.report.predicted_valuation, 0);
    EXPECT_TRUE(s.report.verified);
}

TEST(BoxSum, RandomProductsMeetPrediction) {
    gen::Rng rng(32);
    int claimed = 0;
    for (int iter = 0; iter < 300; ++iter) {
        const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5}[gen::uniform(rng, 0, 2)];
        const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, p == 5 ? 4 : 6));
        const auto s = static_cast<std::size_t>(gen::uniform(rng, 1, 2));
        std::vector<MultiPoly> polys;
        std::vector<unsigned> ks;
        for (std::size_t i = 0; i < s; ++i) {
            polys.push_back(gen::sparse_poly(rng, n, static_cast<unsigned>(gen::uniform(rng, 0, 2)), 3));
            ks.push_back(static_cast<unsigned>(gen::uniform(rng, 0, 3)));
        }
        const auto box = gen::random_box(rng, p, n, gen::BoxKind::mixed);
        const auto out = binomial_product_box_sum(polys, ks, box);
        ASSERT_TRUE(out.report.verified) << to_json(out.report).dump();
        claimed += out.report.predicted_valuation > 0;
    }
    EXPECT_GT(claimed, 50);
}

TEST(BoxSum, LowDegreeIntegerValuedSumsVanishModPToTheN) {
    // f = sum c * prod_j binom(x_j, k_j) with every k_j <= p - 2
    gen::Rng rng(33);
    for (std::uint64_t p : {2, 3, 5})
        for (std::size_t n = 1; n <= 6; ++n) {
            if (ipow(p, static_cast<unsigned>(n)) > 20000) continue;
            for (int iter = 0; iter < 4; ++iter) {
                std::vector<std::pair<BigInt, std::vector<unsigned>>> terms;
                for (int t = 0; t < 3; ++t) {
                    std::vector<unsigned> k(n);
                    for (auto& kj : k) kj = static_cast<unsigned>(gen::uniform(rng, 0, static_cast<std::int64_t>(p) - 2));
                    terms.emplace_back(BigInt(gen::nonzero(rng, 50)), k);
                }
                const auto box = gen::random_box(rng, p, n, gen::BoxKind::mixed);
                BigInt total = 0;
                const auto pts = static_cast<std::uint64_t>(box.size());
                for (std::uint64_t idx = 0; idx < pts; ++idx) {
                    const auto a = box.point(idx);
                    for (const auto& [c, k] : terms) {
                        BigInt v = c;
                        for (std::size_t j = 0; j < n; ++j) v *= binom(a[j], k[j]);
                        total += v;
                    }
                }
                ASSERT_EQ(mod_floor(total, ipow(p, static_cast<unsigned>(n))), 0) << p << " " << n;
            }
        }
}

TEST(BoxSum, CapIsEnforced) {
    const Box b = Box::uniform(ResidueSystem::standard(2), 10);
    EXPECT_THROW(binomial_product_box_sum({MultiPoly::variable(10, 0)}, {1}, b, 100), CapExceeded);
}

// ---------------------------------------------------------------------------

TEST(Margin, Examples) {
    const auto std2 = ResidueSystem::standard(2);
    EXPECT_EQ(hypothesis_margin(single(2, "x1", 1, kOne, Box::uniform(std2, 3))), 2);
    EXPECT_EQ(hypothesis_margin(single(3, "x1", 2, kOne, Box::uniform(ResidueSystem::standard(3), 8))), 2);
    EXPECT_EQ(hypothesis_margin(single(2, "x1", 1, kOne, Box::uniform(std2, 1))), 0);
}

TEST(Margin, ChevalleyWarningThresholdGivesAtLeastOne) {
    gen::Rng rng(34);
    for (int iter = 0; iter < 100; ++iter) {
        const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7}[gen::uniform(rng, 0, 3)];
        const auto s = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
        std::vector<unsigned> degs;
        std::size_t n = 1;
        for (std::size_t i = 0; i < s; ++i) {
            degs.push_back(static_cast<unsigned>(gen::uniform(rng, 1, 3)));
            n += degs.back();
        }
        std::vector<MultiPoly> polys;
        for (auto d : degs) polys.push_back(gen::sparse_poly(rng, n, d, 3));
        const AxKatzInstance inst{p, polys, std::vector<unsigned>(s, 1), std::vector<IntValuedPoly>(s, kOne),
                                  Box::uniform(ResidueSystem::standard(p), n)};
        ASSERT_GE(hypothesis_margin(inst), 1);
    }
}

TEST(Margin, StrictInequalityAtTies) {
    // p = 2, deg 1, level 1: n > (m - 1) + 1, so n = 2 gives m = 1, not 2
    EXPECT_EQ(hypothesis_margin(single(2, "x1", 1, kOne, Box::uniform(ResidueSystem::standard(2), 2))), 1);
}

TEST(Margin, ConstantPolynomialsUseTheExplicitOne) {
    // deg 0: the sum term vanishes and the max term is 1, so n > m - 1
    const auto inst = single(3, "5", 1, kOne, Box::uniform(ResidueSystem::standard(3), 4));
    EXPECT_EQ(hypothesis_margin(inst), 4);
    const auto c = box_weighted_count(inst);
    EXPECT_EQ(c.v_size, 0);
    EXPECT_EQ(c.n, 0);
}

// ---------------------------------------------------------------------------

TEST(WeightedCount, Examples) {
    const Box b = Box::uniform(ResidueSystem::standard(2), 2);
    auto c = box_weighted_count(single(2, "x1 + x2", 1, kOne, b));
    EXPECT_EQ(c.v_size, 2);
    EXPECT_EQ(c.n, 2);
    c = box_weighted_count(single(2, "x1 + x2", 1, IntValuedPoly::basis(1), b));
    EXPECT_EQ(c.v_size, 2);
    EXPECT_EQ(c.n, 1);
    EXPECT_EQ(hypothesis_margin(single(2, "x1 + x2", 1, IntValuedPoly::basis(1), b)), 0);
}

TEST(WeightedCount, CapIsEnforced) {
    const auto inst = single(2, "x1", 1, kOne, Box::uniform(ResidueSystem::standard(2), 12));
    CountOptions o;
    o.cap = 1000;
    try {
        box_weighted_count(inst, o);
        FAIL() << "expected CapExceeded";
    } catch (const CapExceeded& e) {
        EXPECT_EQ(e.required, 4096);
        EXPECT_EQ(e.cap, 1000);
    }
}

TEST(WeightedCount, MatchesBigIntEnumeration) {
    gen::Rng rng(35);
    for (int iter = 0; iter < 150; ++iter) {
        const std::uint64_t p = gen::coin(rng) ? 2 : 3;
        gen::InstanceShape shape{p, p == 2 ? std::size_t(12) : std::size_t(7), gen::coin(rng)};
        const auto inst = gen::axkatz_instance(rng, shape);
        if (!inst) continue;
        const auto fast = box_weighted_count(*inst);
        const auto slow = oracle::box_count_direct(*inst);
        ASSERT_EQ(fast.v_size, slow.v_size);
        ASSERT_EQ(fast.n, slow.n);
    }
}

TEST(WeightedCount, LargeCoefficientsFallBackExactly) {
    // values far beyond 64 bits force the slow path
    const Box b = Box::uniform(build_unit_system(3, 2), 3);
    const auto inst = single(3, "100000000000000000000*x1^3 + x2 - x3", 1, parse_int_valued("x^2"), b);
    const auto fast = box_weighted_count(inst);
    const auto slow = oracle::box_count_direct(inst);
    EXPECT_EQ(fast.v_size, slow.v_size);
    EXPECT_EQ(fast.n, slow.n);
}

TEST(WeightedCount, LevelZeroCountsEveryPoint) {
    const Box b = Box::uniform(ResidueSystem::standard(3), 2);
    const auto inst = single(3, "x1 + 2*x2", 0, parse_int_valued("x"), b);
    const auto c = box_weighted_count(inst);
    const auto slow = oracle::box_count_direct(inst);
    EXPECT_EQ(c.v_size, 9);
    EXPECT_EQ(c.n, slow.n);
}

TEST(WeightedCount, PartitionsGiveIdenticalResults) {
    gen::Rng rng(36);
    for (int iter = 0; iter < 20; ++iter) {
        const auto inst = gen::axkatz_instance(rng, {2, 14, false});
        if (!inst) continue;
        const auto base = box_weighted_count(*inst);
        for (unsigned parts : {2u, 3u, 7u}) {
            for (bool par : {false, true}) {
                CountOptions o;
                o.partitions = parts;
                o.parallel = par;
                const auto c = box_weighted_count(*inst, o);
                ASSERT_EQ(c.v_size, base.v_size);
                ASSERT_EQ(c.n, base.n);
            }
        }
        const auto total = static_cast<std::uint64_t>(inst->box.size());
        auto a = box_weighted_count_range(*inst, 0, total / 3);
        auto b = box_weighted_count_range(*inst, total / 3, total);
        ASSERT_EQ(a.n + b.n, base.n);
        ASSERT_EQ(a.v_size + b.v_size, base.v_size);
    }
}

TEST(WeightedCount, AgreesWithWilsonPolynomialSumModPm) {
    gen::Rng rng(37);
    int checked = 0;
    for (int iter = 0; iter < 80 && checked < 25; ++iter) {
        const std::uint64_t p = gen::coin(rng) ? 2 : 3;
        const auto inst = gen::axkatz_instance(rng, {p, p == 2 ? std::size_t(9) : std::size_t(6), false});
        if (!inst) continue;
        const unsigned m = 2;
        const auto c = box_weighted_count(*inst);
        ASSERT_EQ(mod_floor(c.n, ipow(p, m)), oracle::box_count_by_wilson(*inst, m));
        ++checked;
    }
    EXPECT_GE(checked, 10);
}

// ---------------------------------------------------------------------------

TEST(AxKatz, Examples) {
    auto r = verify_axkatz(single(2, "x1 + x2", 1, kOne, Box::uniform(ResidueSystem::standard(2), 2)));
    EXPECT_EQ(r.predicted_valuation, 1);
    EXPECT_EQ(r.achieved, Valuation::finite(1));
    EXPECT_TRUE(r.verified);
    EXPECT_EQ(r.parameters["V_size"], "2");

    r = verify_axkatz(single(2, "x1", 1, kOne, Box::uniform(ResidueSystem::standard(2), 1)));
    EXPECT_EQ(r.predicted_valuation, 0);
    EXPECT_TRUE(r.verified);

    r = verify_axkatz(single(3, "x1 + x2 + x3", 1, kOne, Box::uniform(build_unit_system(3, 1), 3)));
    EXPECT_EQ(r.parameters["V_size"], "9");
    EXPECT_EQ(r.predicted_valuation, 2);
    EXPECT_EQ(r.achieved, Valuation::finite(2));
    EXPECT_TRUE(r.verified);
}

TEST(AxKatz, InvalidInstancesAreRejected) {
    const Box b = Box::uniform(ResidueSystem::standard(2), 2);
    EXPECT_THROW(verify_axkatz(AxKatzInstance{2, {}, {}, {}, b}), std::invalid_argument);
    EXPECT_THROW(verify_axkatz(AxKatzInstance{2, {MultiPoly(2)}, {1}, {kOne}, b}), std::invalid_argument);
    EXPECT_THROW(verify_axkatz(AxKatzInstance{2, {parse_multipoly("x1", 3)}, {1}, {kOne}, b}),
                 std::invalid_argument);
    EXPECT_THROW(verify_axkatz(AxKatzInstance{2, {parse_multipoly("x1", 2)}, {1, 1}, {kOne}, b}),
                 std::invalid_argument);
    EXPECT_THROW(verify_axkatz(AxKatzInstance{3, {parse_multipoly("x1", 2)}, {1}, {kOne}, b}),
                 std::invalid_argument);
}

TEST(AxKatz, DivisibilityHoldsOnRandomInstances) {
    for (std::uint64_t p : {2, 3}) {
        gen::Rng rng(40 + p);
        int n_done = 0;
        for (int iter = 0; iter < 2000 && n_done < 120; ++iter) {
            gen::InstanceShape shape{p, p == 2 ? std::size_t(14) : std::size_t(8), gen::coin(rng)};
            const auto inst = gen::axkatz_instance(rng, shape);
            if (!inst) continue;
            const auto r = verify_axkatz(*inst);
            ASSERT_GE(r.predicted_valuation, 1);
            ASSERT_TRUE(r.verified) << to_json(r).dump();
            ++n_done;
        }
        EXPECT_EQ(n_done, 120);
    }
}

TEST(AxKatz, DivisibilityDoesNotDependOnTheBox) {
    gen::Rng rng(43);
    int pairs = 0;
    for (int iter = 0; iter < 500 && pairs < 60; ++iter) {
        const std::uint64_t p = gen::coin(rng) ? 2 : 3;
        auto inst = gen::axkatz_instance(rng, {p, p == 2 ? std::size_t(12) : std::size_t(7), false});
        if (!inst) continue;
        const long m = hypothesis_margin(*inst);
        auto other = *inst;
        other.box = gen::random_box(rng, p, inst->box.arity(), gen::BoxKind::random);
        const auto a = box_weighted_count(*inst).n;
        const auto b = box_weighted_count(other).n;
        const BigInt q = ipow(p, static_cast<unsigned>(m));
        ASSERT_EQ(mod_floor(a, q), 0);
        ASSERT_EQ(mod_floor(b, q), 0);
        ++pairs;
    }
    EXPECT_EQ(pairs, 60);
}

TEST(AxKatz, ClassicalCaseMatchesExponent) {
    gen::Rng rng(44);
    for (int iter = 0; iter < 150; ++iter) {
        const std::uint64_t p = gen::coin(rng) ? 2 : 3;
        const auto s = static_cast<std::size_t>(gen::uniform(rng, 1, 2));
        const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, p == 2 ? 12 : 7));
        std::vector<MultiPoly> polys;
        std::vector<long> degs;
        for (std::size_t i = 0; i < s; ++i) {
            polys.push_back(gen::sparse_poly(rng, n, static_cast<unsigned>(gen::uniform(rng, 1, 3)), 4));
            degs.push_back(polys.back().degree());
        }
        const AxKatzInstance inst{p, polys, std::vector<unsigned>(s, 1), std::vector<IntValuedPoly>(s, kOne),
                                  Box::uniform(ResidueSystem::standard(p), n)};
        const auto r = verify_axkatz(inst);
        ASSERT_EQ(r.predicted_valuation, oracle::classical_axkatz_exponent(n, degs));
        ASSERT_TRUE(r.verified);
        ASSERT_EQ(r.parameters["V_size"], r.parameters["N"]);
    }
}

TEST(AxKatz, ReportJsonShape) {
    const auto r = verify_axkatz(single(2, "x1 + x2", 1, kOne, Box::uniform(ResidueSystem::standard(2), 2)));
    const auto j = to_json(r);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"claim", "parameters", "predicted_valuation", "achieved_valuation",
                                              "infinite", "verified", "witness"}));
}

// ---------------------------------------------------------------------------

TEST(MultiPolyText, ParseAndPrint) {
    const auto f = parse_multipoly("2*x1^2*x3 - x2 + 7");
    EXPECT_EQ(f.n_vars(), 3u);
    EXPECT_EQ(f.degree(), 3);
    EXPECT_EQ(f.degree_in(0), 2);
    EXPECT_EQ(to_string(f), "2*x1^2*x3 - x2 + 7");
    EXPECT_EQ(parse_multipoly(to_string(f)), f);
    EXPECT_EQ(f(std::vector<BigInt>{2, 5, 3}), 26);
    EXPECT_EQ(MultiPoly(2).degree(), -1);
}

TEST(MultiPolyText, RejectsMalformedText) {
    for (const char* text : {"", "x0", "x1 + + x2", "y1", "x1^", "2 x1"})
        EXPECT_THROW(parse_multipoly(text), ParseError) << text;
    EXPECT_THROW(parse_multipoly("x3", 2), ParseError);
}

TEST(MultiPolyText, RandomRoundTrip) {
    gen::Rng rng(45);
    for (int iter = 0; iter < 300; ++iter) {
        const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 5));
        const auto f = gen::sparse_poly(rng, n, static_cast<unsigned>(gen::uniform(rng, 0, 4)), 5);
        const auto g = parse_multipoly(to_string(f), n);
        ASSERT_EQ(g, f) << to_string(f);
    }
}

}  // namespace
