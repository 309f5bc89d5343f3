#include <doctest.h>

#include <algorithm>
#include <array>

#include "fermat3p/matgroup.hpp"

using namespace fermat3p;

namespace {

MatGroup full_sl2(std::uint32_t p) {
    std::vector<Mat2> elems;
    for (std::uint32_t a = 0; a < p; ++a)
        for (std::uint32_t b = 0; b < p; ++b)
            for (std::uint32_t c = 0; c < p; ++c)
                for (std::uint32_t d = 0; d < p; ++d) {
                    Mat2 g = Mat2::make(p, a, b, c, d);
                    if (g.det() == 1) elems.push_back(g);
                }
    return MatGroup(p, std::move(elems), {});
}

} // namespace

TEST_SUITE_BEGIN("matgroup");

TEST_CASE("Mat2 arithmetic") {
    Mat2 a = Mat2::make(7, 1, 2, 3, 4);
    Mat2 b = Mat2::make(7, 0, 1, 1, 0);
    CHECK((a * b) == Mat2::make(7, 2, 1, 4, 3));
    CHECK(a.det() == (4 - 6 + 7) % 7);
    CHECK((a * a.inverse()) == Mat2::identity(7));
    CHECK(Mat2::make(7, 0, -1, 1, 0).order() == 4);
    CHECK_THROWS_AS(Mat2::make(6, 1, 0, 0, 1), InvalidInput);
    CHECK_THROWS_AS(Mat2::make(7, 1, 1, 1, 1).inverse(), InvalidInput);
}

TEST_CASE("closure of trivial and cyclic generators") {
    MatGroup trivial = closure(std::array{Mat2::identity(5)});
    CHECK(trivial.order() == 1);

    auto gen = sl23_generators(7);
    MatGroup c4 = closure(std::array{gen.g1});
    CHECK(c4.order() == 4);
    GroupIsoClass cls = identify(c4);
    CHECK(cls.tag == GroupIsoClass::Tag::CyclicN);
    CHECK(cls.cyclic_n == 4);
}

TEST_CASE("closure respects the cap") {
    auto gen = sl23_generators(7);
    CHECK_THROWS_AS(closure(std::array{gen.g1, gen.g2, gen.g3}, 10), CapExceeded);
}

TEST_CASE("build_sl23 produces the order-24 group of determinant one") {
    for (std::uint32_t p : {3u, 5u, 7u, 31u, 97u}) {
        MatGroup h = build_sl23(p);
        CHECK(h.order() == 24);
        for (const auto& e : h.elements()) CHECK(e.det() == 1);
        GroupIsoClass cls = identify(h);
        CHECK(cls.tag == GroupIsoClass::Tag::SL2F3);
        CHECK(cls.order_profile ==
              std::map<unsigned, std::size_t>{{1, 1}, {2, 1}, {3, 8}, {4, 6}, {6, 8}});
    }
}

TEST_CASE("build_sl23 at p=3 is all of SL_2(F_3)") {
    MatGroup h = build_sl23(3);
    MatGroup sl2 = full_sl2(3);
    CHECK(h.elements() == sl2.elements());
}

TEST_CASE("the quaternion subgroup of H") {
    auto gen = sl23_generators(7);
    MatGroup h8 = closure(std::array{gen.g1, gen.g2});
    CHECK(h8.order() == 8);
    CHECK(identify(h8).tag == GroupIsoClass::Tag::Quaternion8);
    // i = g1, j = g2, k = -g1 g2 satisfy the quaternion relations
    Mat2 minus_i = Mat2::scalar(7, -1);
    CHECK(gen.g1 * gen.g1 == minus_i);
    CHECK(gen.g2 * gen.g2 == minus_i);
    Mat2 k = minus_i * (gen.g1 * gen.g2);
    CHECK(k * k == minus_i);
    // u = g3 cycles i -> j -> k -> i
    Mat2 u = gen.g3, ui = gen.g3.inverse();
    CHECK(u * gen.g1 * ui == gen.g2);
    CHECK(u * gen.g2 * ui == k);
    CHECK(u * k * ui == gen.g1);
}

TEST_CASE("centralizer and center") {
    MatGroup h5 = build_sl23(5);
    MatGroup c = centralizer(h5, 5);
    MatGroup z = center_of_gl2(5);
    CHECK(c.elements() == z.elements());
    CHECK(z.order() == 4);

    CHECK(center_of_gl2(7).order() == 6);

    MatGroup trivial = closure(std::array{Mat2::identity(3)});
    CHECK(centralizer(trivial, 3).order() == 48); // all of GL_2(F_3)
}

TEST_CASE("centralizer via the linear solve for large p") {
    MatGroup h = build_sl23(97);
    MatGroup c = centralizer(h, 97);
    CHECK(c.elements() == center_of_gl2(97).elements());
}

TEST_CASE("centralizer contains the scalars for any subgroup") {
    for (std::uint32_t p : {5u, 7u}) {
        auto gen = sl23_generators(p);
        MatGroup g = closure(std::array{gen.g1, gen.n1});
        MatGroup c = centralizer(g, p);
        MatGroup z = center_of_gl2(p);
        for (const auto& s : z.elements()) {
            CHECK(c.contains(s));
        }
    }
}

TEST_CASE("normalizer by brute force") {
    CHECK(normalizer_bruteforce(build_sl23(3), 3).order() == 48);
    CHECK(normalizer_bruteforce(build_sl23(5), 5).order() == 96);
    CHECK(normalizer_bruteforce(build_sl23(7), 7).order() == 144);
    CHECK_THROWS_AS(normalizer_bruteforce(build_sl23(37), 37), InvalidInput);
}

TEST_CASE("generated normalizer equals the brute-force normalizer") {
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        MatGroup h = build_sl23(p);
        MatGroup nb = normalizer_bruteforce(h, p);
        MatGroup ng = normalizer_generated(h, p);
        CHECK(nb.elements() == ng.elements());
    }
}

TEST_CASE("generated normalizer at larger primes") {
    MatGroup n31 = normalizer_generated(build_sl23(31), 31);
    CHECK(n31.order() == 720); // 30 * 24

    MatGroup n97 = normalizer_generated(build_sl23(97), 97);
    CHECK(n97.order() == 96 * 24);
    ScalarQuotient q(n97);
    CHECK(q.order() == 24);
}

TEST_CASE("normalizer quotient is S4") {
    MatGroup n7 = normalizer_bruteforce(build_sl23(7), 7);
    ScalarQuotient q(n7);
    CHECK(q.order() == 24);
    CHECK(identify(q).tag == GroupIsoClass::Tag::S4);
}

TEST_CASE("square-determinant part of the quotient at p = 5 is A4") {
    MatGroup n5 = normalizer_bruteforce(build_sl23(5), 5);
    ScalarQuotient q(n5);
    std::vector<Mat2> square_reps;
    for (const auto& r : q.representatives()) {
        if (legendre(r.det(), 5) == 1) square_reps.push_back(r);
    }
    CHECK(square_reps.size() == 12);
    CHECK(identify(ScalarQuotient(5, square_reps)).tag ==
          GroupIsoClass::Tag::A4);
}

TEST_CASE("verify_normalizer_lemma on (2/p) = +1 primes") {
    for (std::uint32_t p : {7u, 17u, 23u}) {
        LemmaReport rep = verify_normalizer_lemma(p);
        CHECK(rep.legendre_2_p == 1);
        CHECK(rep.quotient_order == 24);
        CHECK(rep.quotient_class.tag == GroupIsoClass::Tag::S4);
        CHECK(rep.det_n1 == 2);
        CHECK(rep.det_n2 == 2);
        CHECK(rep.nonsquare_det_count == 0);
        CHECK(rep.square_det_count == 24u * (p - 1));
        CHECK(!rep.a4_check.has_value());
    }
}

TEST_CASE("verify_normalizer_lemma on (2/p) = -1 primes") {
    for (std::uint32_t p : {3u, 5u, 11u, 13u, 19u}) {
        LemmaReport rep = verify_normalizer_lemma(p);
        CHECK(rep.legendre_2_p == -1);
        CHECK(rep.quotient_order == 24);
        CHECK(rep.quotient_class.tag == GroupIsoClass::Tag::S4);
        CHECK(rep.square_det_count == rep.nonsquare_det_count);
        REQUIRE(rep.a4_check.has_value());
        CHECK(*rep.a4_check);
    }
}

TEST_CASE("lemma verification rejects bad input") {
    CHECK_THROWS_AS(verify_normalizer_lemma(4), InvalidInput);
    CHECK_THROWS_AS(verify_normalizer_lemma(2), InvalidInput);
}

TEST_SUITE_END();
