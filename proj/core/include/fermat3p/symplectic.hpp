#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fermat3p/ffcurve.hpp"
#include "fermat3p/matgroup.hpp"
#include "fermat3p/wmodel.hpp"

namespace fermat3p {

enum class SympTag { Symplectic, AntiSymplectic, Both, Undetermined };
std::string symp_tag_name(SympTag t);

/// Evidence attached to a symplectic/anti-symplectic decision.
struct SympWitness {
    std::optional<std::uint32_t> determinant;  // det of the deciding matrix
    std::optional<int> square_class;           // Legendre value used
    std::optional<long> v_left, v_right;       // valuations entering the test
    bool nonabelian_image = false;             // excludes the "Both" outcome
    std::string reason;                        // human-readable explanation
};

struct SympClass {
    SympTag tag = SympTag::Undetermined;
    SympWitness witness;
};

/// Module isomorphism given by its matrix in symplectic bases: symplectic
/// iff det is a square mod p. Singular input is rejected.
SympClass classify_isomorphism(const Mat2& m);

/// Computes r(phi) for the module map sending the basis through M, by
/// discrete logarithm of Weil pairing values, and asserts r(phi) = det(M).
FpElem oracle_r_of_phi(const Mat2& m, const TorsionBasis& basis);

/// Local certificate for the potentially-good-at-2 criterion: the curve's
/// reduction type at 2 and its inertia field classification.
struct InertiaCertificate {
    ReductionType reduction_at_2 = ReductionType::AdditiveOther;
    InertiaImage image;
};

/// Decision for two curves with potentially good reduction at 2 and
/// inertia image SL_2(F_3) over the same splitting field:
///   (2/p) = +1            -> symplectic;
///   (2/p) = -1            -> symplectic iff v2 == v2' (mod 3).
/// Missing prerequisites yield Undetermined (with the reason recorded).
SympClass maincrit2_decide(std::uint32_t p, long v2_disc_min_e,
                           long v2_disc_min_eprime,
                           const InertiaCertificate& cert_e,
                           const InertiaCertificate& cert_eprime,
                           bool same_splitting_field_asserted);

/// Decision at a prime of multiplicative reduction for both curves:
/// symplectic iff the two minimal-discriminant valuations differ
/// multiplicatively by a square mod p. Inapplicable (Undetermined) when p
/// divides either valuation.
SympClass ko_multiplicative_decide(std::uint32_t p, long vl_disc_min_e,
                                   long vl_disc_min_eprime);

enum class Consistency { Contradiction, Consistent, Undetermined };
std::string consistency_name(Consistency c);

/// A symplectic verdict at one prime against an anti-symplectic verdict at
/// another is a contradiction, provided the mod-p image is non-abelian
/// (otherwise both can hold at once and nothing follows).
Consistency contradiction_check(const SympClass& class_at_2,
                                const SympClass& class_at_3, bool nonabelian);

} // namespace fermat3p
