#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fermat3p/numutil.hpp"

namespace fermat3p {

/// A 2x2 matrix over F_p, row-major (a b; c d). Entries always reduced.
struct Mat2 {
    std::uint32_t p = 0;
    std::array<std::uint32_t, 4> m{}; // a, b, c, d

    static Mat2 make(std::uint32_t p, std::int64_t a, std::int64_t b,
                     std::int64_t c, std::int64_t d);
    static Mat2 identity(std::uint32_t p);
    static Mat2 scalar(std::uint32_t p, std::int64_t lambda);

    std::uint32_t det() const;
    bool invertible() const { return det() != 0; }
    Mat2 operator*(const Mat2& o) const;
    Mat2 inverse() const;
    /// Multiplicative order (the matrix must be invertible).
    unsigned order() const;

    bool operator==(const Mat2& o) const { return p == o.p && m == o.m; }
    bool operator!=(const Mat2& o) const { return !(*this == o); }
    /// Entry-lexicographic order (a, b, c, d); the canonical element order.
    bool operator<(const Mat2& o) const { return m < o.m; }

    std::string str() const; // "[a,b;c,d]"
};

/// A finite subgroup of GL_2(F_p), stored as the sorted deduplicated list
/// of its elements. Generators are retained for provenance.
class MatGroup {
public:
    MatGroup(std::uint32_t p, std::vector<Mat2> elements,
             std::vector<Mat2> generators);

    std::uint32_t modulus() const { return p_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<Mat2>& elements() const { return elements_; }
    const std::vector<Mat2>& generators() const { return generators_; }
    bool contains(const Mat2& g) const;
    /// Index of g in the sorted element list; element order as a permutation
    /// basis for Cayley-style computations.
    std::optional<std::size_t> index_of(const Mat2& g) const;

private:
    std::uint32_t p_;
    std::vector<Mat2> elements_;   // sorted entry-lexicographically
    std::vector<Mat2> generators_;
};

/// Breadth-first closure of the generated subgroup. Fails if the group
/// would exceed `cap` elements.
MatGroup closure(std::span<const Mat2> generators, std::size_t cap = 1'000'000);

/// The generators used to realize SL_2(F_3) inside SL_2(F_p), built from
/// the canonical solution of alpha^2 + beta^2 = -1:
///   g1 = (0 -1; 1 0),  g2 = (alpha beta; beta -alpha),
///   g3 = 1/2 (alpha+beta-1  beta-alpha-1; beta-alpha+1  -alpha-beta-1),
/// and the two extra normalizer generators
///   n1 = (1 -1; 1 1),  n2 = (alpha beta-1; beta+1 -alpha).
/// The quaternion identification is i = g1, j = g2, k = -g1*g2, u = g3.
struct Sl23Generators {
    Mat2 g1, g2, g3;
    Mat2 n1, n2;
};
Sl23Generators sl23_generators(std::uint32_t p);

/// The subgroup H = <g1, g2, g3> of SL_2(F_p), isomorphic to SL_2(F_3).
/// Postconditions (checked): order 24 and every determinant 1.
MatGroup build_sl23(std::uint32_t p);

/// Isomorphism-class certificate by element-order profile.
struct GroupIsoClass {
    enum class Tag { Quaternion8, SL2F3, S4, A4, CyclicN, Other };
    Tag tag = Tag::Other;
    unsigned cyclic_n = 0;                    // set iff tag == CyclicN
    std::map<unsigned, std::size_t> order_profile;
    std::string name() const;
    bool operator==(const GroupIsoClass& o) const { return tag == o.tag && cyclic_n == o.cyclic_n; }
};

/// The quotient of a scalar-saturated matrix group by the scalars, with each
/// coset represented by its entry-lexicographically smallest member.
class ScalarQuotient {
public:
    explicit ScalarQuotient(const MatGroup& g);
    /// A sub-quotient given directly by canonical representatives (e.g. the
    /// square-determinant part of a normalizer quotient).
    ScalarQuotient(std::uint32_t p, std::vector<Mat2> canonical_reps);
    std::uint32_t modulus() const { return p_; }
    std::size_t order() const { return reps_.size(); }
    const std::vector<Mat2>& representatives() const { return reps_; }
    Mat2 canonical(const Mat2& g) const;
    Mat2 multiply(const Mat2& a, const Mat2& b) const;

private:
    std::uint32_t p_;
    std::vector<Mat2> reps_; // sorted canonical representatives
};

GroupIsoClass identify(const MatGroup& group);
GroupIsoClass identify(const ScalarQuotient& quotient);

/// Centralizer of `group` inside GL_2(F_p): full scan for p <= 31, linear
/// commutant solve against the generators otherwise.
MatGroup centralizer(const MatGroup& group, std::uint32_t p);

/// The p-1 scalar matrices, i.e. the center of GL_2(F_p).
MatGroup center_of_gl2(std::uint32_t p);

/// Exact normalizer of H in GL_2(F_p) by scanning every invertible matrix.
/// Only for p <= 31; beyond that use normalizer_generated.
MatGroup normalizer_bruteforce(const MatGroup& h, std::uint32_t p);

/// Normalizer built from generators: the closure of H, n1, n2 and the
/// scalars. Every element is verified to normalize H.
MatGroup normalizer_generated(const MatGroup& h, std::uint32_t p);

/// Everything the normalizer lemma asserts about N_G(H) for one prime.
struct LemmaReport {
    std::uint32_t p = 0;
    int legendre_2_p = 0;
    std::uint32_t alpha = 0;              // the pair behind g2, g3, n2
    std::uint32_t beta = 0;
    bool alpha_beta_nonzero = false;      // false is unavoidable for p = 5
    std::size_t quotient_order = 0;       // |N/C|, must be 24
    GroupIsoClass quotient_class;         // must be S4
    std::uint32_t det_n1 = 0;             // must be 2
    std::uint32_t det_n2 = 0;             // must be 2
    std::size_t square_det_count = 0;     // over all of N
    std::size_t nonsquare_det_count = 0;
    std::optional<bool> a4_check;         // engaged iff (2/p) = -1
};

/// Verifies the normalizer lemma for one prime and returns the evidence.
/// Any violated clause raises VerificationError naming the clause.
LemmaReport verify_normalizer_lemma(std::uint32_t p);

} // namespace fermat3p
