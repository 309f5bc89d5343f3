#include "fermat3p/symplectic.hpp"

namespace fermat3p {

std::string symp_tag_name(SympTag t) {
    switch (t) {
        case SympTag::Symplectic: return "symplectic";
        case SympTag::AntiSymplectic: return "anti-symplectic";
        case SympTag::Both: return "both";
        case SympTag::Undetermined: return "undetermined";
    }
    return "undetermined";
}

std::string consistency_name(Consistency c) {
    switch (c) {
        case Consistency::Contradiction: return "contradiction";
        case Consistency::Consistent: return "consistent";
        case Consistency::Undetermined: return "undetermined";
    }
    return "undetermined";
}

SympClass classify_isomorphism(const Mat2& m) {
    const std::uint32_t dt = m.det();
    if (dt == 0) throw InvalidInput("classify_isomorphism: singular matrix");
    SympClass out;
    out.witness.determinant = dt;
    const int cls = legendre(dt, m.p);
    out.witness.square_class = cls;
    out.tag = cls == 1 ? SympTag::Symplectic : SympTag::AntiSymplectic;
    out.witness.reason = "det = " + std::to_string(dt) + " is a " +
                         (cls == 1 ? "square" : "nonsquare") + " mod " +
                         std::to_string(m.p);
    return out;
}

FpElem oracle_r_of_phi(const Mat2& m, const TorsionBasis& basis) {
    const std::uint32_t p = basis.p;
    if (m.p != p) throw InvalidInput("oracle_r_of_phi: matrix modulus != torsion prime");
    if (m.det() == 0) throw InvalidInput("oracle_r_of_phi: singular matrix");
    // column convention: phi(P) = a P + c Q, phi(Q) = b P + d Q
    const FqPoint ip = add(scalar_mul(m.m[0], basis.P), scalar_mul(m.m[2], basis.Q));
    const FqPoint iq = add(scalar_mul(m.m[1], basis.P), scalar_mul(m.m[3], basis.Q));
    const FqElem value = weil_pairing(ip, iq, p);
    // discrete log of `value` in the cyclic group generated by zeta
    FqElem power = basis.zeta;
    std::uint32_t r = 1;
    while (power != value) {
        power = power * basis.zeta;
        ++r;
        if (r >= p) {
            throw VerificationError("oracle_r_of_phi: pairing value outside mu_p");
        }
    }
    if (r != m.det()) {
        throw VerificationError(
            "oracle_r_of_phi: r(phi) = " + std::to_string(r) + " but det = " +
            std::to_string(m.det()) + "; the pairing implementation is wrong");
    }
    return FpElem(static_cast<std::int64_t>(r), p);
}

namespace {

bool certificate_ok(const InertiaCertificate& c, std::string& why) {
    if (c.reduction_at_2 != ReductionType::PotentiallyGood) {
        why = "reduction at 2 is " + reduction_type_name(c.reduction_at_2) +
              ", not potentially good";
        return false;
    }
    if (c.image.kind != InertiaImage::Kind::SL2F3) {
        why = "inertia image at 2 is not certified SL2(F3): " + c.image.detail;
        return false;
    }
    return true;
}

} // namespace

SympClass maincrit2_decide(std::uint32_t p, long v2_disc_min_e,
                           long v2_disc_min_eprime,
                           const InertiaCertificate& cert_e,
                           const InertiaCertificate& cert_eprime,
                           bool same_splitting_field_asserted) {
    if (!is_prime(p) || p < 3) {
        throw InvalidInput("maincrit2_decide requires an odd prime exponent");
    }
    SympClass out;
    out.witness.v_left = v2_disc_min_e;
    out.witness.v_right = v2_disc_min_eprime;
    std::string why;
    if (!certificate_ok(cert_e, why)) {
        out.witness.reason = "first curve: " + why;
        return out;
    }
    if (!certificate_ok(cert_eprime, why)) {
        out.witness.reason = "second curve: " + why;
        return out;
    }
    if (!same_splitting_field_asserted) {
        out.witness.reason = "the hypothesis L = L' was not asserted by the caller";
        return out;
    }
    // SL2(F3) is non-abelian, so symplectic and anti-symplectic exclude
    // each other for these modules.
    out.witness.nonabelian_image = true;
    const int leg2 = legendre(2, p);
    out.witness.square_class = leg2;
    if (leg2 == 1) {
        out.tag = SympTag::Symplectic;
        out.witness.reason = "(2/p) = 1";
        return out;
    }
    const long r1 = ((v2_disc_min_e % 3) + 3) % 3;
    const long r2 = ((v2_disc_min_eprime % 3) + 3) % 3;
    out.tag = r1 == r2 ? SympTag::Symplectic : SympTag::AntiSymplectic;
    out.witness.reason = "(2/p) = -1 and v2(disc_min) residues mod 3 are " +
                         std::to_string(r1) + " and " + std::to_string(r2);
    return out;
}

SympClass ko_multiplicative_decide(std::uint32_t p, long vl_disc_min_e,
                                   long vl_disc_min_eprime) {
    if (!is_prime(p) || p < 3) {
        throw InvalidInput("ko_multiplicative_decide requires an odd prime");
    }
    SympClass out;
    out.witness.v_left = vl_disc_min_e;
    out.witness.v_right = vl_disc_min_eprime;
    const long pl = static_cast<long>(p);
    if (vl_disc_min_e % pl == 0 || vl_disc_min_eprime % pl == 0) {
        out.witness.reason = "criterion inapplicable: p divides a minimal "
                             "discriminant valuation";
        return out;
    }
    const int cls = legendre(ExactInt(vl_disc_min_e) * vl_disc_min_eprime, p);
    out.witness.square_class = cls;
    out.tag = cls == 1 ? SympTag::Symplectic : SympTag::AntiSymplectic;
    out.witness.reason =
        "product of multiplicative valuations is a " +
        std::string(cls == 1 ? "square" : "nonsquare") + " mod " + std::to_string(p);
    return out;
}

Consistency contradiction_check(const SympClass& class_at_2,
                                const SympClass& class_at_3, bool nonabelian) {
    if (class_at_2.tag == SympTag::Undetermined ||
        class_at_3.tag == SympTag::Undetermined) {
        return Consistency::Undetermined;
    }
    if (!nonabelian) return Consistency::Undetermined;
    const bool opposed =
        (class_at_2.tag == SympTag::Symplectic &&
         class_at_3.tag == SympTag::AntiSymplectic) ||
        (class_at_2.tag == SympTag::AntiSymplectic &&
         class_at_3.tag == SympTag::Symplectic);
    return opposed ? Consistency::Contradiction : Consistency::Consistent;
}

} // namespace fermat3p
