#include <doctest.h>

#include <numeric>
#include <random>

#include "fermat3p/fermatchain.hpp"
#include "fermat3p/json_io.hpp"

using namespace fermat3p;

namespace {

CongruenceSet make_set(std::vector<ResidueCondition> conditions) {
    return CongruenceSet(std::move(conditions));
}

/// Independent density oracle: count satisfying reduced residues directly.
Rational density_by_enumeration(const std::vector<ResidueCondition>& conds,
                                std::uint64_t modulus) {
    std::uint64_t phi = 0, hits = 0;
    for (std::uint64_t r = 0; r < modulus; ++r) {
        if (std::gcd(r, modulus) != 1) continue;
        ++phi;
        for (const auto& c : conds) {
            bool match = false;
            for (auto res : c.residues) {
                if (r % c.modulus == res) { match = true; break; }
            }
            if (match) { ++hits; break; }
        }
    }
    return Rational(ExactInt(hits), ExactInt(phi));
}

} // namespace

TEST_SUITE_BEGIN("fermatchain");

TEST_CASE("frey_curve on the (2,1) fixture") {
    FreyInstance inst = frey_curve(2, 1);
    CHECK(inst.model == WeierstrassModel::make(0, 0, 0, 6, -7));
    CHECK(inst.s == 9);
    CHECK(invariants(inst.model).disc == -34992); // -2^4 3^7
}

TEST_CASE("frey_curve discriminant identity and degenerate inputs") {
    CHECK(invariants(frey_curve(1, 1).model).disc == -432 * 4);
    CHECK_THROWS_AS(frey_curve(1, -1), InvalidInput); // s = 0
    CHECK_THROWS_AS(frey_curve(2, 4), InvalidInput);  // gcd 2
}

TEST_CASE("frey discriminant identity on random coprime pairs") {
    std::mt19937 rng(2718);
    std::uniform_int_distribution<std::int64_t> dist(-500, 500);
    int checked = 0;
    while (checked < 300) {
        ExactInt a = dist(rng), b = dist(rng);
        if (gcd(a, b) != 1 || a * a * a + b * b * b == 0) continue;
        FreyInstance inst = frey_curve(a, b);
        CHECK(invariants(inst.model).disc == -432 * inst.s * inst.s);
        // equivalent algebraic form
        ExactInt a3 = a * a * a, b3 = b * b * b;
        CHECK((b3 - a3) * (b3 - a3) + 4 * a3 * b3 == (a3 + b3) * (a3 + b3));
        ++checked;
    }
}

TEST_CASE("kraus conditions checker") {
    CHECK(kraus_conditions_check(2, 1, 9).ok);
    CHECK(!kraus_conditions_check(4, 1, 9).ok);
    KrausCheck swapped = kraus_conditions_check(1, 2, 9);
    CHECK(swapped.ok);
    CHECK(swapped.swapped);
    CHECK(!kraus_conditions_check(2, 1, 6).ok);  // v2(c) != 0
    CHECK(!kraus_conditions_check(2, 1, 5).ok);  // v3(c) = 0
    CHECK(!kraus_conditions_check(0, 1, 9).ok);
}

TEST_CASE("valuation chain on (2,1)") {
    ValuationChainRecord rec = valuation_chain(frey_curve(2, 1));
    CHECK(rec.v3_s == 2);
    CHECK(rec.v2_disc_min == 4);
    CHECK(rec.v2_c4_min == 5);
    CHECK(rec.v3_c4 == 2);
    CHECK(rec.v3_c6 == 3);
    CHECK(rec.v3_disc == 7);
    CHECK(rec.twist_v3_c4 == 4);
    CHECK(rec.twist_v3_c6 == 6);
    CHECK(rec.twist_v3_disc == 13);
    CHECK(rec.twist_v3_disc_min == 1);
    CHECK(rec.twist_v2_disc_min == 4);
    CHECK(rec.twist_v2_c4_min == 5);
    CHECK(rec.multiplicative_at_3);
    CHECK(rec.congruence_ok);
}

TEST_CASE("valuation chain tracks v3(s)") {
    ValuationChainRecord rec = valuation_chain(frey_curve(2, 7)); // s = 351
    CHECK(rec.v3_s == 3);
    CHECK(rec.twist_v3_disc_min == -3 + 2 * 3);
    CHECK(rec.multiplicative_at_3);
}

TEST_CASE("valuation chain rejects the wrong 3-adic shape") {
    CHECK_THROWS_AS(valuation_chain(frey_curve(2, -1)), InvalidInput); // s = 7
    CHECK_THROWS_AS(valuation_chain(frey_curve(3, 1)), InvalidInput);  // v2 shape
}

TEST_CASE("congruence chain invariant on random kraus-shaped pairs") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<std::int64_t> dist(-60, 60);
    int checked = 0;
    while (checked < 25) {
        ExactInt a = 2 * dist(rng), b = dist(rng);
        if (a == 0 || b == 0 || gcd(a, b) != 1) continue;
        if (valuation(a, 2) != 1) continue;
        ExactInt s = a * a * a + b * b * b;
        if (s == 0 || s % 3 != 0) continue;
        ValuationChainRecord rec = valuation_chain(frey_curve(a, b));
        CHECK(rec.congruence_ok); // throws internally otherwise
        ++checked;
    }
}

TEST_CASE("reference curve data is validated") {
    const ReferenceCurveData& w = reference_curve_data();
    CHECK(w.v2_disc_min == 4);
    CHECK(w.v2_c4 == 5);
    CHECK(w.v3_disc_min == 1);
    CHECK(w.multiplicative_at_3);
    CHECK(w.inertia_at_2.image.kind == InertiaImage::Kind::SL2F3);
}

TEST_CASE("obstruction verdicts for small exponents") {
    VerdictReport r17 = obstruction_verdict(17);
    CHECK(r17.status == VerdictStatus::Eliminated);
    REQUIRE(!r17.trace.empty());
    CHECK(r17.trace.back().step == "contradiction-check");
    CHECK(r17.trace.back().value == "contradiction");

    CHECK(obstruction_verdict(19).status == VerdictStatus::Inconclusive);
    CHECK(obstruction_verdict(23).status == VerdictStatus::Eliminated);
    CHECK(obstruction_verdict(13).status == VerdictStatus::OutOfRange);
    CHECK_THROWS_AS(obstruction_verdict(18), InvalidInput);
}

TEST_CASE("classify_range over [17, 100]") {
    RangeSummary sum = classify_range(17, 100);
    std::vector<std::uint32_t> eliminated;
    for (const auto& v : sum.verdicts) {
        if (v.status == VerdictStatus::Eliminated) eliminated.push_back(v.p);
    }
    CHECK(eliminated == std::vector<std::uint32_t>{17, 23, 29, 41, 47, 53, 59,
                                                   71, 83, 89});
    CHECK(sum.eliminated == 10);
    CHECK(sum.eliminated + sum.inconclusive == sum.verdicts.size());
}

TEST_CASE("classify_range edge cases") {
    RangeSummary one = classify_range(17, 17);
    CHECK(one.verdicts.size() == 1);
    CHECK(one.verdicts[0].status == VerdictStatus::Eliminated);

    RangeSummary none = classify_range(18, 18);
    CHECK(none.verdicts.empty());

    CHECK_THROWS_AS(classify_range(5, 100), InvalidInput);
    CHECK_THROWS_AS(classify_range(100, 17), InvalidInput);
}

TEST_CASE("congruence sets validate their conditions") {
    CHECK_NOTHROW(make_set({{3, {2}}}));
    CHECK_THROWS_AS(make_set({{15, {3}}}), InvalidInput); // gcd(3,15) != 1
    CHECK_THROWS_AS(make_set({{3, {4}}}), InvalidInput);  // not reduced
    CHECK_THROWS_AS(make_set({{0, {}}}), InvalidInput);
}

TEST_CASE("dirichlet density of the anchored conditions") {
    CHECK(dirichlet_density(make_set({{3, {2}}})) == Rational(1, 2));
    CHECK(dirichlet_density(make_set({{5, {2, 3}}})) == Rational(1, 2));
    CHECK(dirichlet_density(make_set({{3, {2}}, {5, {2, 3}}})) ==
          Rational(3, 4));
    CHECK(dirichlet_density(make_set({})) == 0);
}

TEST_CASE("density matches the enumeration oracle and inclusion-exclusion") {
    std::mt19937 rng(555);
    const std::uint32_t mods[] = {3, 4, 5, 7, 8, 9, 11};
    std::uniform_int_distribution<std::size_t> pick(0, std::size(mods) - 1);
    int done = 0;
    while (done < 50) {
        std::uint32_t m1 = mods[pick(rng)], m2 = mods[pick(rng)];
        std::vector<std::uint64_t> r1, r2;
        for (std::uint64_t r = 1; r < m1; ++r) {
            if (std::gcd(r, static_cast<std::uint64_t>(m1)) == 1 && rng() % 2) {
                r1.push_back(r);
            }
        }
        for (std::uint64_t r = 1; r < m2; ++r) {
            if (std::gcd(r, static_cast<std::uint64_t>(m2)) == 1 && rng() % 2) {
                r2.push_back(r);
            }
        }
        if (r1.empty() || r2.empty()) continue;
        ResidueCondition a{m1, r1}, b{m2, r2};
        const std::uint64_t big = std::lcm<std::uint64_t>(m1, m2);

        Rational da = dirichlet_density(make_set({a}));
        Rational db = dirichlet_density(make_set({b}));
        Rational dunion = dirichlet_density(make_set({a, b}));

        // oracle agreement
        CHECK(dunion == density_by_enumeration({a, b}, big));
        CHECK(da == density_by_enumeration({a}, big));

        // intersection via CRT enumeration
        ResidueCondition inter{big, {}};
        for (std::uint64_t r = 0; r < big; ++r) {
            if (std::gcd(r, big) != 1) continue;
            bool ina = false, inb = false;
            for (auto x : r1) ina |= (r % m1 == x);
            for (auto x : r2) inb |= (r % m2 == x);
            if (ina && inb) inter.residues.push_back(r);
        }
        Rational dinter = inter.residues.empty()
                              ? Rational(0)
                              : dirichlet_density(make_set({inter}));
        CHECK(dunion == da + db - dinter);

        // union with a set can only increase the density
        CHECK(dunion >= da);
        CHECK(dunion >= db);
        ++done;
    }

    // union with the density-1/2 condition mod 3 keeps density >= 1/2
    CHECK(dirichlet_density(make_set({{3, {2}}, {7, {1}}})) >= Rational(1, 2));
}

TEST_CASE("verdict JSON has the documented shape") {
    std::string js = verdict_report_json(obstruction_verdict(17));
    CHECK(js.find("\"p\": 17") != std::string::npos);
    CHECK(js.find("\"status\": \"eliminated\"") != std::string::npos);
    CHECK(js.find("\"citation\"") != std::string::npos);

    // byte-identical on repeated serialization
    CHECK(js == verdict_report_json(obstruction_verdict(17)));
}

TEST_SUITE_END();
