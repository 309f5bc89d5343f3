#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fermat3p/symplectic.hpp"
#include "fermat3p/wmodel.hpp"

namespace fermat3p {

/// Frey curve Y^2 = X^3 + 3ab X + (b^3 - a^3) attached to coprime (a, b),
/// with s = a^3 + b^3 standing in for the would-be c^p. The identity
/// disc = -432 s^2 is checked at construction.
struct FreyInstance {
    ExactInt a, b;
    ExactInt s; // a^3 + b^3
    WeierstrassModel model;
};

FreyInstance frey_curve(const ExactInt& a, const ExactInt& b);

/// 2- and 3-adic shape of a candidate triple: v2(a) = 1, v2(b) = 0,
/// v2(c) = 0 and v3(c) >= 1, up to swapping a and b.
struct KrausCheck {
    bool ok = false;
    bool swapped = false;
    std::string detail;
};
KrausCheck kraus_conditions_check(const ExactInt& a, const ExactInt& b,
                                  const ExactInt& c);

/// The local valuation data of a Frey instance and its twist by -3,
/// through 3-adic minimalization.
struct ValuationChainRecord {
    ExactInt a, b, s;
    long v3_s = 0;
    // Frey model E_{a,b}
    long v2_disc_min = 0;
    long v2_c4_min = 0;
    long v3_c4 = 0;
    long v3_c6 = 0;
    long v3_disc = 0;
    // twist by -3
    long twist_v3_c4 = 0;
    long twist_v3_c6 = 0;
    long twist_v3_disc = 0;
    long twist_v3_disc_min = 0;
    long twist_v2_disc_min = 0;
    long twist_v2_c4_min = 0;
    bool multiplicative_at_3 = false;
    bool congruence_ok = false; // twist_v3_disc_min == -3 + 2 v3(s)
};

/// Requires the 2-adic/3-adic shape v2(a) = 1 or v2(b) = 1, and 3 | s.
ValuationChainRecord valuation_chain(const FreyInstance& inst);

/// Finite union of residue conditions on the exponent. Residues must be
/// reduced and coprime to their modulus.
class CongruenceSet {
public:
    explicit CongruenceSet(std::vector<ResidueCondition> conditions);
    const std::vector<ResidueCondition>& conditions() const { return conditions_; }

private:
    std::vector<ResidueCondition> conditions_;
};

/// Exact density of the union: satisfying reduced classes mod lcm over
/// phi(lcm).
Rational dirichlet_density(const CongruenceSet& set);

enum class VerdictStatus { Eliminated, Inconclusive, OutOfRange };
std::string verdict_status_name(VerdictStatus s);

struct TraceStep {
    std::string step;
    std::string quantity;
    std::string value;
    std::string citation;
};

struct VerdictReport {
    std::uint32_t p = 0;
    VerdictStatus status = VerdictStatus::OutOfRange;
    std::vector<TraceStep> trace;
};

/// Certified local data of the reference curve 24a4 (the -3 twist of 72a1),
/// cross-checked on first use against the invariants of (0,-1,0,1,0).
struct ReferenceCurveData {
    WeierstrassModel model;
    long v2_disc_min = 0;   // 4
    long v2_c4 = 0;         // 5
    long v3_disc_min = 0;   // 1
    InertiaCertificate inertia_at_2;
    bool multiplicative_at_3 = false;
};
const ReferenceCurveData& reference_curve_data();

/// Runs the obstruction chain for one prime exponent p >= 17: the only
/// surviving mod-p congruence is against 24a4, and the symplectic
/// criteria at 2 and 3 contradict each other exactly when (-3/p) = -1.
VerdictReport obstruction_verdict(std::uint32_t p);

struct RangeSummary {
    std::uint64_t lo = 0, hi = 0;
    std::vector<VerdictReport> verdicts; // ascending p
    std::size_t eliminated = 0;
    std::size_t inconclusive = 0;
};

/// Verdicts for every prime in [lo, hi], 17 <= lo. Work is split across
/// threads; output order is deterministic. Also asserts the expected
/// pattern: eliminated exactly when p = 2 mod 3.
RangeSummary classify_range(std::uint64_t lo, std::uint64_t hi);

} // namespace fermat3p
