#include <doctest.h>

#include <random>

#include "fermat3p/symplectic.hpp"

using namespace fermat3p;

namespace {

InertiaCertificate good_certificate() {
    InertiaCertificate c;
    c.reduction_at_2 = ReductionType::PotentiallyGood;
    c.image.kind = InertiaImage::Kind::SL2F3;
    c.image.group_tag = "SL2F3";
    c.image.source = "Kraus 1990";
    return c;
}

} // namespace

TEST_SUITE_BEGIN("symplectic");

TEST_CASE("classify_isomorphism by determinant square class") {
    CHECK(classify_isomorphism(Mat2::identity(11)).tag == SympTag::Symplectic);

    const std::uint32_t p = 11;
    const std::uint32_t rp = smallest_nonsquare(p);
    Mat2 anti = Mat2::make(p, 1, 0, 0, static_cast<std::int64_t>(rp));
    CHECK(classify_isomorphism(anti).tag == SympTag::AntiSymplectic);

    Mat2 det2 = Mat2::make(5, 2, 0, 0, 1);
    CHECK(classify_isomorphism(det2).tag == SympTag::AntiSymplectic); // (2/5) = -1
    CHECK(classify_isomorphism(det2).witness.determinant.value() == 2);

    CHECK_THROWS_AS(classify_isomorphism(Mat2::make(5, 1, 1, 1, 1)), InvalidInput);
}

TEST_CASE("pairing oracle: identity and scalars") {
    TorsionBasis basis = torsion_basis(supersingular_f4_curve(), 3);
    CHECK(oracle_r_of_phi(Mat2::identity(3), basis).value() == 1);
    // r(a phi) = a^2 r(phi): scalar matrix aI has r = a^2
    CHECK(oracle_r_of_phi(Mat2::scalar(3, 2), basis).value() == (2 * 2) % 3);
}

TEST_CASE("pairing oracle agrees with det on all of GL_2(F_3)") {
    TorsionBasis basis = torsion_basis(supersingular_f4_curve(), 3);
    int checked = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) {
                    Mat2 m = Mat2::make(3, a, b, c, d);
                    if (m.det() == 0) continue;
                    FpElem r = oracle_r_of_phi(m, basis); // asserts r = det
                    SympClass cls = classify_isomorphism(m);
                    CHECK((cls.tag == SympTag::Symplectic) ==
                          (legendre(r.value(), 3) == 1));
                    ++checked;
                }
    CHECK(checked == 48);
}

TEST_CASE("pairing oracle on the p = 5 fixture") {
    auto f16 = FqContext::standard(2, 4);
    auto e = FqCurve::make(f16, 0, 0, 1, 1, 0);
    TorsionBasis basis = torsion_basis(e, 5);
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> dist(0, 4);
    int checked = 0;
    while (checked < 120) {
        Mat2 m = Mat2::make(5, dist(rng), dist(rng), dist(rng), dist(rng));
        if (m.det() == 0) continue;
        FpElem r = oracle_r_of_phi(m, basis);
        CHECK(r.value() == m.det());
        CHECK((classify_isomorphism(m).tag == SympTag::Symplectic) ==
              (legendre(r.value(), 5) == 1));
        ++checked;
    }
}

TEST_CASE("potentially-good criterion at 2") {
    InertiaCertificate cert = good_certificate();

    SympClass s7 = maincrit2_decide(7, 4, 7, cert, cert, true);
    CHECK(s7.tag == SympTag::Symplectic); // (2/7) = 1 regardless of valuations
    CHECK(s7.witness.nonabelian_image);

    CHECK(maincrit2_decide(5, 4, 4, cert, cert, true).tag == SympTag::Symplectic);
    CHECK(maincrit2_decide(5, 4, 8, cert, cert, true).tag == SympTag::AntiSymplectic);
}

TEST_CASE("potentially-good criterion is undetermined without certificates") {
    InertiaCertificate good = good_certificate();
    InertiaCertificate bad_reduction = good;
    bad_reduction.reduction_at_2 = ReductionType::Multiplicative;
    InertiaCertificate unknown_image = good;
    unknown_image.image = InertiaImage{};

    CHECK(maincrit2_decide(5, 4, 4, bad_reduction, good, true).tag ==
          SympTag::Undetermined);
    CHECK(maincrit2_decide(5, 4, 4, good, unknown_image, true).tag ==
          SympTag::Undetermined);
    SympClass no_field = maincrit2_decide(5, 4, 4, good, good, false);
    CHECK(no_field.tag == SympTag::Undetermined);
    CHECK(no_field.witness.reason.find("L = L'") != std::string::npos);
}

TEST_CASE("criterion at 2 is symmetric and depends on v2 mod 3 only") {
    InertiaCertificate cert = good_certificate();
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        for (long v = 0; v <= 8; ++v) {
            for (long w = 0; w <= 8; ++w) {
                SympClass ab = maincrit2_decide(p, v, w, cert, cert, true);
                SympClass ba = maincrit2_decide(p, w, v, cert, cert, true);
                CHECK(ab.tag == ba.tag);
                SympClass reduced =
                    maincrit2_decide(p, v % 3, w % 3, cert, cert, true);
                CHECK(ab.tag == reduced.tag);
            }
        }
    }
}

TEST_CASE("multiplicative criterion") {
    CHECK(ko_multiplicative_decide(23, 1, 1).tag == SympTag::Symplectic);
    // v' = -3 + 2p stands in for -3 mod p
    CHECK(ko_multiplicative_decide(17, 1, -3 + 2 * 17).tag ==
          SympTag::AntiSymplectic); // (-3/17) = -1
    CHECK(ko_multiplicative_decide(19, 1, -3 + 2 * 19).tag ==
          SympTag::Symplectic); // -3 = 16 = 4^2 mod 19
}

TEST_CASE("multiplicative criterion is inapplicable when p divides a valuation") {
    SympClass und = ko_multiplicative_decide(5, 10, 1);
    CHECK(und.tag == SympTag::Undetermined);
    CHECK(und.witness.reason.find("inapplicable") != std::string::npos);
}

TEST_CASE("multiplicative criterion only sees square classes") {
    std::mt19937 rng(8);
    std::uniform_int_distribution<long> dist(1, 300);
    for (std::uint32_t p : {5u, 17u, 19u, 23u}) {
        for (int i = 0; i < 60; ++i) {
            long v = dist(rng), w = dist(rng), k = dist(rng) % 7 + 1;
            if (v % p == 0 || w % p == 0 || k % p == 0) continue;
            CHECK(ko_multiplicative_decide(p, v, w).tag ==
                  ko_multiplicative_decide(p, v * k * k, w).tag);
        }
    }
}

TEST_CASE("contradiction check") {
    SympClass symp{SympTag::Symplectic, {}};
    SympClass anti{SympTag::AntiSymplectic, {}};
    SympClass und{SympTag::Undetermined, {}};

    CHECK(contradiction_check(symp, anti, true) == Consistency::Contradiction);
    CHECK(contradiction_check(symp, symp, true) == Consistency::Consistent);
    CHECK(contradiction_check(symp, anti, false) == Consistency::Undetermined);
    CHECK(contradiction_check(und, anti, true) == Consistency::Undetermined);
}

TEST_SUITE_END();
