#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fermat3p/ffcurve.hpp"

using namespace fermat3p;

namespace {

FqCurvePtr f16_full_5_torsion_curve() {
    // y^2 + y = x^3 + x over F_16: supersingular with Frobenius = [-4],
    // so E(F_16) = E[5] with 25 points.
    auto f16 = FqContext::standard(2, 4);
    return FqCurve::make(f16, 0, 0, 1, 1, 0);
}

} // namespace

TEST_SUITE_BEGIN("ffcurve");

TEST_CASE("point construction and negation") {
    auto f2 = FqContext::standard(2, 1);
    auto e = FqCurve::make(f2, 0, 0, 1, 0, 0); // y^2 + y = x^3
    FqPoint p = e->point(FqElem::zero(f2), FqElem::zero(f2));
    FqPoint q = e->point(FqElem::zero(f2), FqElem::one(f2));
    CHECK(-p == q);
    CHECK(add(p, e->infinity()) == p);
    CHECK(add(p, q).is_infinity());
    CHECK_THROWS_AS(e->point(FqElem::one(f2), FqElem::one(f2)), InvalidInput);
}

TEST_CASE("singular curves are rejected") {
    auto f7 = FqContext::standard(7, 1);
    CHECK_THROWS_AS(FqCurve::make(f7, 0, 0, 0, 0, 0), InvalidInput); // y^2 = x^3
}

TEST_CASE("adding points of different curves is rejected") {
    auto f7 = FqContext::standard(7, 1);
    auto e1 = FqCurve::make(f7, 0, 0, 0, 0, 1);
    auto e2 = FqCurve::make(f7, 0, 0, 0, 1, 1);
    auto p1 = e1->points()[1];
    auto p2 = e2->points()[1];
    CHECK_THROWS_AS(add(p1, p2), InvalidInput);
}

TEST_CASE("point enumeration counts") {
    auto f2 = FqContext::standard(2, 1);
    CHECK(FqCurve::make(f2, 0, 0, 1, 0, 0)->points().size() == 3);

    auto f4 = FqContext::standard(2, 2);
    CHECK(FqCurve::make(f4, 0, 0, 1, 0, 0)->points().size() == 9);

    auto f7 = FqContext::standard(7, 1);
    CHECK(FqCurve::make(f7, 0, 0, 0, 0, 1)->points().size() == 12);

    CHECK(f16_full_5_torsion_curve()->points().size() == 25);
}

TEST_CASE("enumeration is deterministic with infinity first") {
    auto pts = supersingular_f4_curve()->points();
    REQUIRE(pts.size() == 9);
    CHECK(pts[0].is_infinity());
    for (std::size_t i = 2; i < pts.size(); ++i) {
        const bool ordered = pts[i - 1].x() < pts[i].x() ||
                             (pts[i - 1].x() == pts[i].x() &&
                              pts[i - 1].y() < pts[i].y());
        CHECK(ordered);
    }
}

TEST_CASE("every rational point of the F4 curve is 3-torsion") {
    auto e = supersingular_f4_curve();
    for (const auto& p : e->points()) {
        CHECK(scalar_mul(3, p).is_infinity());
    }
}

TEST_CASE("group law is associative and commutative on sample fields") {
    std::mt19937 rng(31);
    std::vector<FqCurvePtr> curves{
        supersingular_f4_curve(),
        FqCurve::make(FqContext::standard(7, 1), 0, 0, 0, 0, 1),
        FqCurve::make(FqContext::standard(3, 2), 0, 0, 0, 1, 1),
        FqCurve::make(FqContext::standard(5, 2), 0, 0, 0, 2, 1),
    };
    for (const auto& e : curves) {
        auto pts = e->points();
        std::uniform_int_distribution<std::size_t> dist(0, pts.size() - 1);
        for (int i = 0; i < 40; ++i) {
            const FqPoint &a = pts[dist(rng)], &b = pts[dist(rng)],
                          &c = pts[dist(rng)];
            CHECK(add(a, b) == add(b, a));
            CHECK(add(add(a, b), c) == add(a, add(b, c)));
        }
        // inverses
        for (const auto& p : pts) CHECK(add(p, -p).is_infinity());
    }
}

TEST_CASE("torsion basis over F4 with p = 3") {
    auto e = supersingular_f4_curve();
    TorsionBasis basis = torsion_basis(e, 3);
    CHECK(point_order(basis.P, 100) == 3);
    CHECK(point_order(basis.Q, 100) == 3);
    // zeta is the lexicographically smallest primitive cube root: the
    // generator g of F_4 itself
    CHECK(basis.zeta == FqElem::gen(e->field()));
    CHECK(basis.zeta.pow(3) == FqElem::one(e->field()));
    CHECK(basis.zeta != FqElem::one(e->field()));
}

TEST_CASE("torsion basis requires fully rational p-torsion") {
    // y^2 = x^3 + x + 1 over F_5 has 9 points but is cyclic of order 9:
    // only 3 of the 9 division points exist, so the basis must be refused.
    auto f5 = FqContext::standard(5, 1);
    auto e9 = FqCurve::make(f5, 0, 0, 0, 1, 1);
    CHECK(e9->points().size() == 9);
    CHECK_THROWS_WITH_AS(torsion_basis(e9, 3), doctest::Contains("extend"),
                         InvalidInput);

    auto f7 = FqContext::standard(7, 1);
    auto e12 = FqCurve::make(f7, 0, 0, 0, 0, 1); // #E = 12, 9 does not divide
    CHECK_THROWS_AS(torsion_basis(e12, 3), InvalidInput);

    // y^2 = x^3 + 2 over F_7 carries full rational 3-torsion: 9 | #E is
    // necessary and here also sufficient
    auto efull = FqCurve::make(f7, 0, 0, 0, 0, 2);
    CHECK(efull->points().size() == 9);
    TorsionBasis basis = torsion_basis(efull, 3);
    CHECK(basis.zeta.pow(3) == FqElem::one(f7));
    CHECK(basis.zeta != FqElem::one(f7));
}

TEST_CASE("torsion basis over F16 with p = 5") {
    auto e = f16_full_5_torsion_curve();
    TorsionBasis basis = torsion_basis(e, 5);
    CHECK(point_order(basis.P, 100) == 5);
    CHECK(point_order(basis.Q, 100) == 5);
    CHECK(basis.zeta.pow(5) == FqElem::one(e->field()));
    CHECK(basis.zeta != FqElem::one(e->field()));
}

TEST_CASE("weil pairing is alternating, antisymmetric and bilinear") {
    auto e = supersingular_f4_curve();
    TorsionBasis basis = torsion_basis(e, 3);
    const auto one = FqElem::one(e->field());
    CHECK(weil_pairing(basis.P, basis.P, 3) == one);
    CHECK(weil_pairing(basis.Q, basis.Q, 3) == one);
    CHECK(weil_pairing(basis.P, basis.Q, 3) *
              weil_pairing(basis.Q, basis.P, 3) == one);
    CHECK(weil_pairing(basis.P, basis.Q, 3) != one); // non-degenerate

    // e(aP + bQ, cP + dQ) = zeta^(ad - bc), exhaustively over F_3
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) {
                    FqPoint left = add(scalar_mul(a, basis.P), scalar_mul(b, basis.Q));
                    FqPoint right = add(scalar_mul(c, basis.P), scalar_mul(d, basis.Q));
                    int exp = ((a * d - b * c) % 3 + 3) % 3;
                    CHECK(weil_pairing(left, right, 3) == basis.zeta.pow(exp));
                }
}

TEST_CASE("weil pairing rejects non-torsion input") {
    auto f7 = FqContext::standard(7, 1);
    auto e = FqCurve::make(f7, 0, 0, 0, 0, 1); // order 12
    auto pts = e->points();
    FqPoint p6;
    for (const auto& p : pts) {
        if (!p.is_infinity() && point_order(p, 100) == 6) { p6 = p; break; }
    }
    REQUIRE(p6.curve() != nullptr);
    CHECK_THROWS_AS(weil_pairing(p6, p6, 3), InvalidInput);
}

TEST_CASE("automorphism group of the F4 curve has order 24") {
    auto auts = automorphisms_f4();
    CHECK(auts.size() == 24);
    int identities = 0, order3 = 0;
    bool has_t_omega = false;
    auto f4 = supersingular_f4_curve()->field();
    const FqElem omega = FqElem::gen(f4);
    for (const auto& a : auts) {
        if (a.is_identity()) ++identities;
        if (a.order() == 3) ++order3;
        if (a.u() == omega && a.s().is_zero() && a.t().is_zero()) {
            has_t_omega = true;
            CHECK(a.order() == 3);
        }
    }
    CHECK(identities == 1);
    CHECK(has_t_omega);
    CHECK(order3 == 8); // SL_2(F_3) has eight elements of order 3
}

TEST_CASE("invalid substitutions are rejected") {
    auto e = supersingular_f4_curve();
    auto f4 = e->field();
    const FqElem omega = FqElem::gen(f4);
    // t = omega violates t^2 + t = s^6 = 0
    CHECK_THROWS_AS(CurveAutomorphism(e, omega, FqElem::zero(f4), omega),
                    InvalidInput);
    // s = 1 needs t^2 + t = 1; t = 0 fails it
    CHECK_THROWS_AS(CurveAutomorphism(e, FqElem::one(f4), FqElem::one(f4),
                                      FqElem::zero(f4)),
                    InvalidInput);
}

TEST_CASE("psi is an injective homomorphism into SL_2(F_3)") {
    auto e = supersingular_f4_curve();
    TorsionBasis basis = torsion_basis(e, 3);
    auto auts = automorphisms_f4();

    std::vector<Mat2> mats;
    for (const auto& a : auts) mats.push_back(psi_map(a, basis));

    std::set<Mat2> distinct(mats.begin(), mats.end());
    CHECK(distinct.size() == 24);
    for (const auto& m : mats) CHECK(m.det() == 1);

    // identity maps to the identity matrix
    for (std::size_t i = 0; i < auts.size(); ++i) {
        if (auts[i].is_identity()) CHECK(mats[i] == Mat2::identity(3));
    }

    // homomorphism on all 24 x 24 pairs
    for (std::size_t i = 0; i < auts.size(); ++i) {
        for (std::size_t j = 0; j < auts.size(); ++j) {
            Mat2 composed = psi_map(auts[i].compose(auts[j]), basis);
            CHECK(composed == mats[i] * mats[j]);
        }
    }

    MatGroup image(3, mats, {});
    CHECK(image.order() == 24);
    CHECK(identify(image).tag == GroupIsoClass::Tag::SL2F3);
}

TEST_CASE("the order-3 scalings map to the unipotent line") {
    auto e = supersingular_f4_curve();
    TorsionBasis basis = torsion_basis(e, 3);
    const FqElem omega = FqElem::gen(e->field());
    const FqElem zero = FqElem::zero(e->field());

    std::vector<Mat2> t_images;
    for (int k = 0; k < 3; ++k) {
        CurveAutomorphism t(e, omega.pow(k), zero, zero);
        t_images.push_back(psi_map(t, basis));
    }
    std::sort(t_images.begin(), t_images.end());
    t_images.erase(std::unique(t_images.begin(), t_images.end()), t_images.end());
    CHECK(t_images.size() == 3);

    // conjugate inside SL_2(F_3) to the subgroup generated by (1 1; 0 1)
    const Mat2 uni = Mat2::make(3, 1, 1, 0, 1);
    std::vector<Mat2> target{Mat2::identity(3), uni, uni * uni};
    std::sort(target.begin(), target.end());

    bool conjugate = false;
    MatGroup sl2 = closure(std::array{Mat2::make(3, 1, 1, 0, 1),
                                      Mat2::make(3, 1, 0, 1, 1)}); // SL_2(F_3)
    REQUIRE(sl2.order() == 24);
    for (const auto& g : sl2.elements()) {
        Mat2 gi = g.inverse();
        std::vector<Mat2> conj;
        for (const auto& m : t_images) conj.push_back(g * m * gi);
        std::sort(conj.begin(), conj.end());
        if (conj == target) { conjugate = true; break; }
    }
    CHECK(conjugate);
}

TEST_SUITE_END();
