#include "fermat3p/fermatchain.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <sstream>
#include <thread>

namespace fermat3p {

namespace {

std::string exact_str(const ExactInt& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

FreyInstance frey_curve(const ExactInt& a, const ExactInt& b) {
    if (gcd(a, b) != 1) {
        throw InvalidInput("frey_curve: gcd(a, b) = " + exact_str(gcd(a, b)) +
                           " != 1");
    }
    ExactInt s = a * a * a + b * b * b;
    if (s == 0) {
        throw InvalidInput("frey_curve: a^3 + b^3 = 0 is degenerate");
    }
    WeierstrassModel model = WeierstrassModel::make(
        0, 0, 0, 3 * a * b, b * b * b - a * a * a);
    InvariantData inv = invariants(model);
    if (inv.disc != -432 * s * s) {
        throw std::logic_error("frey_curve: discriminant identity violated");
    }
    return FreyInstance{a, b, std::move(s), std::move(model)};
}

KrausCheck kraus_conditions_check(const ExactInt& a, const ExactInt& b,
                                  const ExactInt& c) {
    KrausCheck out;
    if (a == 0 || b == 0 || c == 0) {
        out.detail = "zero entry: the conditions concern nonzero triples";
        return out;
    }
    if (valuation(c, 2) != 0) {
        out.detail = "v2(c) = " + std::to_string(valuation(c, 2)) + " != 0";
        return out;
    }
    if (valuation(c, 3) < 1) {
        out.detail = "v3(c) = 0, expected >= 1";
        return out;
    }
    long v2a = valuation(a, 2);
    long v2b = valuation(b, 2);
    if (v2a == 1 && v2b == 0) {
        out.ok = true;
        out.detail = "v2(a) = 1, v2(b) = 0, v2(c) = 0, v3(c) >= 1";
        return out;
    }
    if (v2b == 1 && v2a == 0) {
        out.ok = true;
        out.swapped = true;
        out.detail = "holds after swapping a and b";
        return out;
    }
    out.detail = "(v2(a), v2(b)) = (" + std::to_string(v2a) + ", " +
                 std::to_string(v2b) + "), expected (1, 0) up to swap";
    return out;
}

ValuationChainRecord valuation_chain(const FreyInstance& inst) {
    const long v2a = inst.a == 0 ? -1 : valuation(inst.a, 2);
    const long v2b = inst.b == 0 ? -1 : valuation(inst.b, 2);
    if (v2a != 1 && v2b != 1) {
        throw InvalidInput("valuation_chain: needs v2(a) = 1 or v2(b) = 1");
    }
    if (inst.s % 3 != 0) {
        throw InvalidInput("valuation_chain: needs 3 | a^3 + b^3 (got s = " +
                           exact_str(inst.s) + ")");
    }
    ValuationChainRecord rec;
    rec.a = inst.a;
    rec.b = inst.b;
    rec.s = inst.s;
    rec.v3_s = valuation(inst.s, 3);

    InvariantData inv = invariants(inst.model);
    rec.v3_c4 = valuation(inv.c4, 3);
    rec.v3_c6 = valuation(inv.c6, 3);
    rec.v3_disc = valuation(inv.disc, 3);
    auto [min2, local2] = minimalize_at(inst.model, 2);
    rec.v2_disc_min = local2.v_disc;
    rec.v2_c4_min = local2.v_c4.value_or(-1);

    WeierstrassModel twist = quadratic_twist(inst.model, -3);
    InvariantData tinv = invariants(twist);
    rec.twist_v3_c4 = valuation(tinv.c4, 3);
    rec.twist_v3_c6 = valuation(tinv.c6, 3);
    rec.twist_v3_disc = valuation(tinv.disc, 3);
    auto [tmin3, tlocal3] = minimalize_at(twist, 3);
    rec.twist_v3_disc_min = tlocal3.v_disc;
    rec.multiplicative_at_3 = tlocal3.reduction == ReductionType::Multiplicative;
    auto [tmin2, tlocal2] = minimalize_at(twist, 2);
    rec.twist_v2_disc_min = tlocal2.v_disc;
    rec.twist_v2_c4_min = tlocal2.v_c4.value_or(-1);

    rec.congruence_ok = rec.twist_v3_disc_min == -3 + 2 * rec.v3_s;
    if (!rec.congruence_ok) {
        throw VerificationError(
            "valuation_chain: v3(disc_min of twist) = " +
            std::to_string(rec.twist_v3_disc_min) + " != -3 + 2 v3(s) = " +
            std::to_string(-3 + 2 * rec.v3_s));
    }
    return rec;
}

// ------------------------------------------------------------- congruences

CongruenceSet::CongruenceSet(std::vector<ResidueCondition> conditions)
    : conditions_(std::move(conditions)) {
    for (const auto& c : conditions_) {
        if (c.modulus == 0) throw InvalidInput("congruence modulus must be positive");
        for (auto r : c.residues) {
            if (r >= c.modulus) {
                throw InvalidInput("residue " + std::to_string(r) +
                                   " is not reduced mod " + std::to_string(c.modulus));
            }
            if (std::gcd(r, c.modulus) != 1) {
                throw InvalidInput("residue " + std::to_string(r) +
                                   " is not coprime to modulus " +
                                   std::to_string(c.modulus));
            }
        }
    }
}

Rational dirichlet_density(const CongruenceSet& set) {
    LiftedClasses lifted = crt_classes(set.conditions());
    const std::uint64_t m = lifted.modulus;
    std::uint64_t phi = 0;
    std::uint64_t hits = 0;
    std::size_t idx = 0;
    for (std::uint64_t r = 0; r < m; ++r) {
        while (idx < lifted.residues.size() && lifted.residues[idx] < r) ++idx;
        if (std::gcd(r, m) != 1) continue;
        ++phi;
        if (idx < lifted.residues.size() && lifted.residues[idx] == r) ++hits;
    }
    if (phi == 0) return Rational(0);
    return Rational(ExactInt(hits), ExactInt(phi));
}

// ----------------------------------------------------------------- verdicts

std::string verdict_status_name(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Eliminated: return "eliminated";
        case VerdictStatus::Inconclusive: return "inconclusive";
        case VerdictStatus::OutOfRange: return "out-of-range";
    }
    return "out-of-range";
}

const ReferenceCurveData& reference_curve_data() {
    static const ReferenceCurveData data = [] {
        ReferenceCurveData d{WeierstrassModel::make(0, -1, 0, 1, 0),
                             0, 0, 0, InertiaCertificate{}, false};
        InvariantData inv = invariants(d.model);
        if (inv.j != Rational(2048, 3)) {
            throw VerificationError("reference curve: j != 2048/3");
        }
        auto [min2, local2] = minimalize_at(d.model, 2);
        if (local2.v_disc != 4 || local2.v_c4.value_or(-1) != 5 ||
            local2.reduction != ReductionType::PotentiallyGood) {
            throw VerificationError(
                "reference curve: 2-adic data disagrees with the certified "
                "constants (4, 5, potentially good)");
        }
        d.v2_disc_min = local2.v_disc;
        d.v2_c4 = *local2.v_c4;
        d.inertia_at_2.reduction_at_2 = local2.reduction;
        d.inertia_at_2.image = inertia_image_at_2(local2);
        if (d.inertia_at_2.image.kind != InertiaImage::Kind::SL2F3) {
            throw VerificationError("reference curve: inertia image not SL2(F3)");
        }
        auto [min3, local3] = minimalize_at(d.model, 3);
        if (local3.v_disc != 1 ||
            local3.reduction != ReductionType::Multiplicative) {
            throw VerificationError(
                "reference curve: expected multiplicative reduction at 3 with "
                "v3(disc_min) = 1");
        }
        d.v3_disc_min = local3.v_disc;
        d.multiplicative_at_3 = true;
        return d;
    }();
    return data;
}

VerdictReport obstruction_verdict(std::uint32_t p) {
    if (!is_prime(p)) {
        throw InvalidInput("obstruction_verdict: " + std::to_string(p) +
                           " is not prime");
    }
    VerdictReport report;
    report.p = p;
    if (p < 17) {
        report.status = VerdictStatus::OutOfRange;
        report.trace.push_back(
            {"range", "p", std::to_string(p),
             "exponents 3 <= p <= 10^7 are covered by prior computations "
             "(Kraus 1998; Chen-Siksek 2009), outside this chain"});
        return report;
    }
    const ReferenceCurveData& w = reference_curve_data();

    report.trace.push_back(
        {"reference-curve", "(v2(disc_min), v2(c4), v3(disc_min))",
         "(" + std::to_string(w.v2_disc_min) + ", " + std::to_string(w.v2_c4) +
             ", " + std::to_string(w.v3_disc_min) + ")",
         "curve 24a4 = -3 twist of 72a1; inertia row " + w.inertia_at_2.image.source});

    report.trace.push_back(
        {"frey-curve", "(v2(disc_min), v3(disc_min) mod p)",
         "(4, -3 + 2p*v3(c) = -3); inertia row (4, 5) as for the reference "
         "curve",
         "Kraus 1998, Lemma 4.1: minimality at 2 and the 3-adic valuations "
         "of the twisted Frey curve"});

    // Both curves: potentially good at 2, minimal discriminant valuation 4,
    // certified inertia row, same splitting field by the mod-p congruence.
    SympClass at2 = maincrit2_decide(p, 4, w.v2_disc_min, w.inertia_at_2,
                                     w.inertia_at_2, true);
    report.trace.push_back({"symplectic-at-2", "(2/p) and v2 residues",
                            symp_tag_name(at2.tag) + "; " + at2.witness.reason,
                            "potentially-good criterion for SL2(F3) inertia"});

    const long frey_v3_rep = -3 + 2 * static_cast<long>(p);
    SympClass at3 = ko_multiplicative_decide(p, w.v3_disc_min, frey_v3_rep);
    const int leg = legendre(-3, p);
    report.trace.push_back(
        {"symplectic-at-3", "(-3/p)",
         symp_tag_name(at3.tag) + "; (-3/p) = " + std::to_string(leg),
         "Kraus-Oesterle, Proposition 2, at the multiplicative prime 3"});

    Consistency verdict = contradiction_check(at2, at3, true);
    report.trace.push_back(
        {"contradiction-check", "symplectic at 2 vs 3", consistency_name(verdict),
         "scalar centralizer of a non-abelian image (Halberstadt-Kraus 2002, "
         "Lemma A.4)"});

    report.status = verdict == Consistency::Contradiction
                        ? VerdictStatus::Eliminated
                        : VerdictStatus::Inconclusive;
    return report;
}

RangeSummary classify_range(std::uint64_t lo, std::uint64_t hi) {
    if (lo < 17 || lo > hi) {
        throw InvalidInput("classify_range: need 17 <= lo <= hi");
    }
    std::vector<std::uint32_t> primes;
    for (std::uint64_t n = lo; n <= hi; ++n) {
        if (is_prime(n)) primes.push_back(static_cast<std::uint32_t>(n));
    }
    RangeSummary out;
    out.lo = lo;
    out.hi = hi;
    out.verdicts.resize(primes.size());

    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(
            std::thread::hardware_concurrency(), primes.size()));
    std::vector<std::future<void>> futures;
    std::size_t chunk = (primes.size() + workers - 1) / std::max<std::size_t>(workers, 1);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(primes.size(), begin + chunk);
        if (begin >= end) break;
        futures.push_back(std::async(std::launch::async, [&, begin, end] {
            for (std::size_t i = begin; i < end; ++i) {
                out.verdicts[i] = obstruction_verdict(primes[i]);
            }
        }));
    }
    for (auto& f : futures) f.get();

    for (const auto& v : out.verdicts) {
        const bool expect_eliminated = v.p % 3 == 2;
        if (expect_eliminated != (v.status == VerdictStatus::Eliminated)) {
            throw VerificationError(
                "classify_range: verdict for p = " + std::to_string(v.p) +
                " contradicts the p = 2 mod 3 pattern");
        }
        if (v.status == VerdictStatus::Eliminated) ++out.eliminated;
        else if (v.status == VerdictStatus::Inconclusive) ++out.inconclusive;
    }
    return out;
}

} // namespace fermat3p
