#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "fermat3p/matgroup.hpp"
#include "fermat3p/numutil.hpp"

namespace fermat3p {

class FqPoint;

/// Long Weierstrass curve over a finite field context, valid in any
/// characteristic (including 2). Nonsingularity is checked at construction.
class FqCurve : public std::enable_shared_from_this<FqCurve> {
public:
    static std::shared_ptr<const FqCurve> make(const FqContextPtr& field,
                                               FqElem a1, FqElem a2, FqElem a3,
                                               FqElem a4, FqElem a6);
    /// Convenience constructor with small integer coefficients.
    static std::shared_ptr<const FqCurve> make(const FqContextPtr& field,
                                               std::int64_t a1, std::int64_t a2,
                                               std::int64_t a3, std::int64_t a4,
                                               std::int64_t a6);

    const FqContextPtr& field() const { return field_; }
    const FqElem& a1() const { return a1_; }
    const FqElem& a2() const { return a2_; }
    const FqElem& a3() const { return a3_; }
    const FqElem& a4() const { return a4_; }
    const FqElem& a6() const { return a6_; }
    FqElem discriminant() const;

    FqPoint infinity() const;
    /// Affine point; throws unless it satisfies the curve equation.
    FqPoint point(const FqElem& x, const FqElem& y) const;
    bool on_curve(const FqElem& x, const FqElem& y) const;

    /// All rational points including infinity, in deterministic order
    /// (infinity first, then by (x, y) enumeration order). Fields larger
    /// than 10^6 elements are rejected.
    std::vector<FqPoint> points() const;

    bool same_as(const FqCurve& o) const;
    std::string str() const;

private:
    FqCurve(FqContextPtr field, FqElem a1, FqElem a2, FqElem a3, FqElem a4,
            FqElem a6);
    FqContextPtr field_;
    FqElem a1_, a2_, a3_, a4_, a6_;
};

using FqCurvePtr = std::shared_ptr<const FqCurve>;

/// A point of an FqCurve: infinity or an affine pair, carrying its curve.
class FqPoint {
public:
    FqPoint() = default; // invalid placeholder
    bool is_infinity() const { return infinity_; }
    const FqElem& x() const;
    const FqElem& y() const;
    const FqCurvePtr& curve() const { return curve_; }

    FqPoint operator-() const;
    bool operator==(const FqPoint& o) const;
    bool operator!=(const FqPoint& o) const { return !(*this == o); }
    std::string str() const;

private:
    friend class FqCurve;
    friend FqPoint add(const FqPoint&, const FqPoint&);
    FqCurvePtr curve_;
    bool infinity_ = true;
    FqElem x_, y_;
};

/// Group law (chord-tangent, long Weierstrass formulas; works in char 2).
FqPoint add(const FqPoint& p, const FqPoint& q);
FqPoint scalar_mul(std::int64_t n, const FqPoint& p);

/// Exact order of a point in the Mordell-Weil group of its curve.
unsigned point_order(const FqPoint& p, unsigned cap = 10'000'000);

/// Basis (P, Q) of the rational p-torsion with e(P, Q) = zeta, the fixed
/// primitive p-th root of unity (lexicographically smallest in the field).
struct TorsionBasis {
    FqPoint P, Q;
    std::uint32_t p = 0;
    FqElem zeta;
};

/// Requires E[p] fully rational over the curve's field: p^2 | #E and
/// exactly p^2 points killed by p. Otherwise instructs to extend the field.
TorsionBasis torsion_basis(const FqCurvePtr& curve, std::uint32_t p);

/// Weil pairing e_p(P, Q) via Miller's algorithm with deterministic
/// offset points drawn from the curve enumeration (retry cap 16).
FqElem weil_pairing(const FqPoint& p_pt, const FqPoint& q_pt, std::uint32_t p);

/// Curve substitution (x, y) -> (u^2 x + s^2, u^3 y + u^2 s x + t) mapping
/// the curve to itself; the check is by coefficient comparison.
class CurveAutomorphism {
public:
    CurveAutomorphism(FqCurvePtr curve, FqElem u, FqElem s, FqElem t);

    const FqElem& u() const { return u_; }
    const FqElem& s() const { return s_; }
    const FqElem& t() const { return t_; }
    const FqCurvePtr& curve() const { return curve_; }

    FqPoint apply(const FqPoint& pt) const;
    /// this after other.
    CurveAutomorphism compose(const CurveAutomorphism& other) const;
    bool is_identity() const;
    unsigned order() const;
    bool operator==(const CurveAutomorphism& o) const;
    std::string str() const;

private:
    FqCurvePtr curve_;
    FqElem u_, s_, t_;
};

/// The full automorphism group of y^2 + y = x^3 over F_4, by exhaustive
/// (u, s, t) search. Exactly 24 must survive; anything else throws.
std::vector<CurveAutomorphism> automorphisms_f4();

/// The curve y^2 + y = x^3 over the standard F_4 context.
FqCurvePtr supersingular_f4_curve();

/// Matrix of the automorphism acting on the basis (P, Q), column
/// convention: aut(P) = m00 P + m10 Q, aut(Q) = m01 P + m11 Q.
Mat2 psi_map(const CurveAutomorphism& aut, const TorsionBasis& basis);

} // namespace fermat3p
