#include "fermat3p/ffcurve.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace fermat3p {

namespace {

constexpr std::uint64_t kFieldCap = 1'000'000;

FqElem fq_int(const FqContextPtr& f, std::int64_t n) {
    return FqElem::from_int(f, n);
}

} // namespace

// ----------------------------------------------------------------- FqCurve

FqCurve::FqCurve(FqContextPtr field, FqElem a1, FqElem a2, FqElem a3, FqElem a4,
                 FqElem a6)
    : field_(std::move(field)), a1_(std::move(a1)), a2_(std::move(a2)),
      a3_(std::move(a3)), a4_(std::move(a4)), a6_(std::move(a6)) {}

std::shared_ptr<const FqCurve> FqCurve::make(const FqContextPtr& field, FqElem a1,
                                             FqElem a2, FqElem a3, FqElem a4,
                                             FqElem a6) {
    auto curve = std::shared_ptr<FqCurve>(new FqCurve(
        field, std::move(a1), std::move(a2), std::move(a3), std::move(a4),
        std::move(a6)));
    if (curve->discriminant().is_zero()) {
        throw InvalidInput("singular curve over F_" + std::to_string(field->p()) +
                           "^" + std::to_string(field->degree()));
    }
    return curve;
}

std::shared_ptr<const FqCurve> FqCurve::make(const FqContextPtr& field,
                                             std::int64_t a1, std::int64_t a2,
                                             std::int64_t a3, std::int64_t a4,
                                             std::int64_t a6) {
    return make(field, fq_int(field, a1), fq_int(field, a2), fq_int(field, a3),
                fq_int(field, a4), fq_int(field, a6));
}

FqElem FqCurve::discriminant() const {
    const FqElem b2 = a1_ * a1_ + fq_int(field_, 4) * a2_;
    const FqElem b4 = fq_int(field_, 2) * a4_ + a1_ * a3_;
    const FqElem b6 = a3_ * a3_ + fq_int(field_, 4) * a6_;
    const FqElem b8 = a1_ * a1_ * a6_ + fq_int(field_, 4) * a2_ * a6_ -
                      a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_;
    return -(b2 * b2 * b8) - fq_int(field_, 8) * b4 * b4 * b4 -
           fq_int(field_, 27) * b6 * b6 + fq_int(field_, 9) * b2 * b4 * b6;
}

FqPoint FqCurve::infinity() const {
    FqPoint pt;
    pt.curve_ = shared_from_this();
    pt.infinity_ = true;
    return pt;
}

bool FqCurve::on_curve(const FqElem& x, const FqElem& y) const {
    const FqElem lhs = y * y + a1_ * x * y + a3_ * y;
    const FqElem rhs = x * x * x + a2_ * x * x + a4_ * x + a6_;
    return lhs == rhs;
}

FqPoint FqCurve::point(const FqElem& x, const FqElem& y) const {
    if (!on_curve(x, y)) {
        throw InvalidInput("point (" + x.str() + ", " + y.str() +
                           ") is not on " + str());
    }
    FqPoint pt;
    pt.curve_ = shared_from_this();
    pt.infinity_ = false;
    pt.x_ = x;
    pt.y_ = y;
    return pt;
}

std::vector<FqPoint> FqCurve::points() const {
    const std::uint64_t q = field_->size();
    if (q > kFieldCap) {
        throw CapExceeded("point enumeration limited to fields of size <= 10^6");
    }
    std::vector<FqPoint> pts;
    pts.push_back(infinity());

    // value -> preimages under y |-> y^2, and (char 2) under z |-> z^2 + z
    std::unordered_map<std::uint64_t, std::vector<FqElem>> squares;
    std::unordered_map<std::uint64_t, std::vector<FqElem>> artin_schreier;
    for (std::uint64_t i = 0; i < q; ++i) {
        FqElem v = FqElem::element(field_, i);
        squares[(v * v).index()].push_back(v);
        if (field_->p() == 2) {
            artin_schreier[(v * v + v).index()].push_back(v);
        }
    }

    const bool char2 = field_->p() == 2;
    const FqElem half =
        char2 ? FqElem::zero(field_) : fq_int(field_, 2).inverse();
    for (std::uint64_t i = 0; i < q; ++i) {
        const FqElem x = FqElem::element(field_, i);
        // y^2 + c y = d
        const FqElem c = a1_ * x + a3_;
        const FqElem d = x * x * x + a2_ * x * x + a4_ * x + a6_;
        std::vector<FqElem> ys;
        if (char2) {
            if (c.is_zero()) {
                // squaring is a bijection in characteristic 2
                ys.push_back(d.pow(q / 2));
            } else {
                const FqElem e = d * (c * c).inverse();
                auto it = artin_schreier.find(e.index());
                if (it != artin_schreier.end()) {
                    for (const auto& z : it->second) ys.push_back(c * z);
                }
            }
        } else {
            // complete the square: (y + c/2)^2 = d + c^2/4
            const FqElem v = d + c * c * half * half;
            auto it = squares.find(v.index());
            if (it != squares.end()) {
                for (const auto& w : it->second) ys.push_back(w - c * half);
            }
        }
        std::sort(ys.begin(), ys.end());
        ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
        for (const auto& y : ys) pts.push_back(point(x, y));
    }
    return pts;
}

bool FqCurve::same_as(const FqCurve& o) const {
    return field_->same_as(*o.field_) && a1_ == o.a1_ && a2_ == o.a2_ &&
           a3_ == o.a3_ && a4_ == o.a4_ && a6_ == o.a6_;
}

std::string FqCurve::str() const {
    std::ostringstream os;
    os << "[" << a1_.str() << "," << a2_.str() << "," << a3_.str() << ","
       << a4_.str() << "," << a6_.str() << "] / F_" << field_->p();
    if (field_->degree() > 1) os << "^" << field_->degree();
    return os.str();
}

// ----------------------------------------------------------------- FqPoint

const FqElem& FqPoint::x() const {
    if (infinity_) throw InvalidInput("the point at infinity has no x");
    return x_;
}

const FqElem& FqPoint::y() const {
    if (infinity_) throw InvalidInput("the point at infinity has no y");
    return y_;
}

FqPoint FqPoint::operator-() const {
    if (infinity_) return *this;
    // -(x, y) = (x, -y - a1 x - a3)
    return curve_->point(x_, -y_ - curve_->a1() * x_ - curve_->a3());
}

bool FqPoint::operator==(const FqPoint& o) const {
    if (!curve_ || !o.curve_) throw InvalidInput("uninitialized point");
    if (!curve_->same_as(*o.curve_)) return false;
    if (infinity_ || o.infinity_) return infinity_ == o.infinity_;
    return x_ == o.x_ && y_ == o.y_;
}

std::string FqPoint::str() const {
    if (infinity_) return "O";
    return "(" + x_.str() + ", " + y_.str() + ")";
}

FqPoint add(const FqPoint& p, const FqPoint& q) {
    if (!p.curve_ || !q.curve_) throw InvalidInput("uninitialized point");
    if (!p.curve_->same_as(*q.curve_)) {
        throw InvalidInput("cannot add points of different curves");
    }
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    const FqCurve& e = *p.curve_;
    const FqContextPtr& f = e.field();
    const FqElem &x1 = p.x_, &y1 = p.y_, &x2 = q.x_, &y2 = q.y_;

    // q == -p ?
    if (x1 == x2 && y2 == -y1 - e.a1() * x1 - e.a3()) return p.curve_->infinity();

    FqElem lam = FqElem::zero(f), nu = FqElem::zero(f);
    if (p == q) {
        const FqElem den = y1 + y1 + e.a1() * x1 + e.a3();
        const FqElem di = den.inverse();
        lam = (fq_int(f, 3) * x1 * x1 + fq_int(f, 2) * e.a2() * x1 + e.a4() -
               e.a1() * y1) * di;
        nu = (-(x1 * x1 * x1) + e.a4() * x1 + fq_int(f, 2) * e.a6() -
              e.a3() * y1) * di;
    } else {
        const FqElem di = (x2 - x1).inverse();
        lam = (y2 - y1) * di;
        nu = (y1 * x2 - y2 * x1) * di;
    }
    const FqElem x3 = lam * lam + e.a1() * lam - e.a2() - x1 - x2;
    const FqElem y3 = -(lam + e.a1()) * x3 - nu - e.a3();
    return p.curve_->point(x3, y3);
}

FqPoint scalar_mul(std::int64_t n, const FqPoint& p) {
    if (!p.curve()) throw InvalidInput("uninitialized point");
    FqPoint base = p;
    if (n < 0) {
        base = -p;
        n = -n;
    }
    FqPoint acc = p.curve()->infinity();
    while (n) {
        if (n & 1) acc = add(acc, base);
        base = add(base, base);
        n >>= 1;
    }
    return acc;
}

unsigned point_order(const FqPoint& p, unsigned cap) {
    FqPoint t = p;
    unsigned n = 1;
    while (!t.is_infinity()) {
        t = add(t, p);
        ++n;
        if (n > cap) throw CapExceeded("point order exceeds cap");
    }
    return n;
}

// ------------------------------------------------------------ Weil pairing

namespace {

/// Value at X of the normalized function with divisor
/// (T) + (U) - (T+U) - (O): the line through T and U over the vertical at
/// T+U. Empty when X hits a zero or pole.
std::optional<FqElem> line_quotient(const FqPoint& t, const FqPoint& u,
                                    const FqPoint& x) {
    const FqCurve& e = *t.curve();
    const FqContextPtr& f = e.field();
    const FqPoint s = add(t, u);
    if (s.is_infinity()) {
        // vertical line through t
        const FqElem v = x.x() - t.x();
        if (v.is_zero()) return std::nullopt;
        return v;
    }
    FqElem lam = FqElem::zero(f);
    if (t == u) {
        const FqElem den = t.y() + t.y() + e.a1() * t.x() + e.a3();
        lam = (fq_int(f, 3) * t.x() * t.x() + fq_int(f, 2) * e.a2() * t.x() +
               e.a4() - e.a1() * t.y()) * den.inverse();
    } else {
        lam = (u.y() - t.y()) * (u.x() - t.x()).inverse();
    }
    const FqElem num = x.y() - t.y() - lam * (x.x() - t.x());
    const FqElem den = x.x() - s.x();
    if (num.is_zero() || den.is_zero()) return std::nullopt;
    return num * den.inverse();
}

/// Miller function f_{n,P} evaluated at the affine point X.
std::optional<FqElem> miller(const FqPoint& p, std::uint32_t n, const FqPoint& x) {
    const FqContextPtr& f = p.curve()->field();
    FqElem acc = FqElem::one(f);
    FqPoint t = p;
    bool leading = true;
    for (int bit = 31; bit >= 0; --bit) {
        if (leading) {
            if ((n >> bit) & 1) leading = false;
            continue;
        }
        auto g = line_quotient(t, t, x);
        if (!g) return std::nullopt;
        acc = acc * acc * *g;
        t = add(t, t);
        if ((n >> bit) & 1) {
            auto h = line_quotient(t, p, x);
            if (!h) return std::nullopt;
            acc = acc * *h;
            t = add(t, p);
        }
    }
    return acc;
}

} // namespace

FqElem weil_pairing(const FqPoint& p_pt, const FqPoint& q_pt, std::uint32_t p) {
    if (!p_pt.curve() || !q_pt.curve()) throw InvalidInput("uninitialized point");
    if (!p_pt.curve()->same_as(*q_pt.curve())) {
        throw InvalidInput("weil_pairing: points on different curves");
    }
    const FqContextPtr& f = p_pt.curve()->field();
    if (!is_prime(p)) throw InvalidInput("weil_pairing: torsion order must be prime");
    if (f->p() == p) {
        throw InvalidInput("weil_pairing: torsion prime equals field characteristic");
    }
    if (p_pt.is_infinity() || q_pt.is_infinity()) return FqElem::one(f);
    if (!scalar_mul(p, p_pt).is_infinity() || !scalar_mul(p, q_pt).is_infinity()) {
        throw InvalidInput("weil_pairing: points are not p-torsion");
    }

    const auto pts = p_pt.curve()->points();
    int tries = 0;
    for (const auto& s : pts) {
        if (s.is_infinity()) continue;
        if (++tries > 16) break;
        const FqPoint qs = add(q_pt, s);
        const FqPoint pms = add(p_pt, -s);
        if (qs.is_infinity() || pms.is_infinity()) continue;
        const auto f1 = miller(p_pt, p, qs);
        const auto f2 = miller(p_pt, p, s);
        const auto f3 = miller(q_pt, p, pms);
        const auto f4 = miller(q_pt, p, -s);
        if (!f1 || !f2 || !f3 || !f4) continue;
        return *f1 * f2->inverse() * *f4 * f3->inverse();
    }
    throw VerificationError(
        "weil_pairing: degenerate evaluation persisted past the retry cap");
}

// ----------------------------------------------------------- torsion basis

TorsionBasis torsion_basis(const FqCurvePtr& curve, std::uint32_t p) {
    if (!is_prime(p)) throw InvalidInput("torsion order must be prime");
    const auto pts = curve->points();
    const std::uint64_t n = pts.size();
    const std::uint64_t p2 = static_cast<std::uint64_t>(p) * p;
    if (n % p2 != 0) {
        throw InvalidInput("torsion_basis: p^2 does not divide #E = " +
                           std::to_string(n) + "; extend the field");
    }
    std::vector<FqPoint> killed;
    for (const auto& pt : pts) {
        if (scalar_mul(p, pt).is_infinity()) killed.push_back(pt);
    }
    if (killed.size() != p2) {
        throw InvalidInput("torsion_basis: E[p] is not fully rational here (" +
                           std::to_string(killed.size()) + " of " +
                           std::to_string(p2) +
                           " division points); extend the field");
    }
    TorsionBasis basis;
    basis.p = p;
    const FqContextPtr& f = curve->field();
    for (const auto& cand : killed) {
        if (!cand.is_infinity()) {
            basis.P = cand;
            break;
        }
    }
    FqElem pairing = FqElem::one(f);
    for (const auto& cand : killed) {
        if (cand.is_infinity()) continue;
        pairing = weil_pairing(basis.P, cand, p);
        if (pairing != FqElem::one(f)) {
            basis.Q = cand;
            break;
        }
    }
    if (basis.Q.curve() == nullptr) {
        throw VerificationError("torsion_basis: no independent point found");
    }
    // Normalize so that e(P, Q) equals the fixed primitive root zeta_p,
    // chosen as the lexicographically smallest primitive p-th root here.
    FqElem zeta0 = pairing;
    FqElem power = pairing;
    for (std::uint32_t k = 2; k < p; ++k) {
        power = power * pairing;
        if (power != FqElem::one(f) && power < zeta0) zeta0 = power;
    }
    std::uint32_t m = 1;
    power = pairing;
    while (power != zeta0) {
        power = power * pairing;
        ++m;
        if (m >= p) {
            throw std::logic_error("primitive root normalization failed");
        }
    }
    basis.Q = scalar_mul(m, basis.Q);
    basis.zeta = weil_pairing(basis.P, basis.Q, p);
    if (basis.zeta != zeta0 || basis.zeta.pow(p) != FqElem::one(f)) {
        throw VerificationError("torsion_basis: pairing normalization failed");
    }
    return basis;
}

// ------------------------------------------------------------ automorphisms

namespace {

/// Coefficients of the curve obtained from `e` by the standard substitution
/// x = U^2 x' + R, y = U^3 y' + U^2 S x' + T.
std::array<FqElem, 5> transformed_coefficients(const FqCurve& e, const FqElem& u,
                                               const FqElem& r, const FqElem& s,
                                               const FqElem& t) {
    const FqContextPtr& f = e.field();
    const FqElem u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    const FqElem two = fq_int(f, 2), three = fq_int(f, 3);
    const FqElem na1 = (e.a1() + two * s) * u.inverse();
    const FqElem na2 =
        (e.a2() - s * e.a1() + three * r - s * s) * u2.inverse();
    const FqElem na3 = (e.a3() + r * e.a1() + two * t) * u3.inverse();
    const FqElem na4 = (e.a4() - s * e.a3() + two * r * e.a2() -
                        (t + r * s) * e.a1() + three * r * r - two * s * t) *
                       u4.inverse();
    const FqElem na6 = (e.a6() + r * e.a4() + r * r * e.a2() + r * r * r -
                        t * e.a3() - t * t - r * t * e.a1()) *
                       u6.inverse();
    return {na1, na2, na3, na4, na6};
}

bool substitution_preserves(const FqCurve& e, const FqElem& u, const FqElem& s,
                            const FqElem& t) {
    if (u.is_zero()) return false;
    const auto c = transformed_coefficients(e, u, s * s, s, t);
    return c[0] == e.a1() && c[1] == e.a2() && c[2] == e.a3() &&
           c[3] == e.a4() && c[4] == e.a6();
}

} // namespace

CurveAutomorphism::CurveAutomorphism(FqCurvePtr curve, FqElem u, FqElem s,
                                     FqElem t)
    : curve_(std::move(curve)), u_(std::move(u)), s_(std::move(s)),
      t_(std::move(t)) {
    if (!curve_) throw InvalidInput("automorphism of a null curve");
    if (!substitution_preserves(*curve_, u_, s_, t_)) {
        throw InvalidInput("substitution (u=" + u_.str() + ", s=" + s_.str() +
                           ", t=" + t_.str() + ") does not preserve " +
                           curve_->str());
    }
}

FqPoint CurveAutomorphism::apply(const FqPoint& pt) const {
    if (pt.is_infinity()) return pt;
    if (!pt.curve()->same_as(*curve_)) {
        throw InvalidInput("automorphism applied to a point of another curve");
    }
    const FqElem u2 = u_ * u_, u3 = u2 * u_;
    const FqElem x = u2 * pt.x() + s_ * s_;
    const FqElem y = u3 * pt.y() + u2 * s_ * pt.x() + t_;
    return curve_->point(x, y);
}

CurveAutomorphism CurveAutomorphism::compose(const CurveAutomorphism& other) const {
    if (!curve_->same_as(*other.curve_)) {
        throw InvalidInput("composing automorphisms of different curves");
    }
    // (this after other); closed form valid in characteristic 2, where this
    // parametrization lives.
    const FqElem u = u_ * other.u_;
    const FqElem s = u_ * other.s_ + s_;
    const FqElem t = u_ * u_ * u_ * other.t_ +
                     u_ * u_ * s_ * other.s_ * other.s_ + t_;
    return CurveAutomorphism(curve_, u, s, t);
}

bool CurveAutomorphism::is_identity() const {
    return u_ == FqElem::one(curve_->field()) && s_.is_zero() && t_.is_zero();
}

unsigned CurveAutomorphism::order() const {
    CurveAutomorphism acc = *this;
    unsigned n = 1;
    while (!acc.is_identity()) {
        acc = acc.compose(*this);
        ++n;
        if (n > 1000) throw std::logic_error("runaway automorphism order");
    }
    return n;
}

bool CurveAutomorphism::operator==(const CurveAutomorphism& o) const {
    return curve_->same_as(*o.curve_) && u_ == o.u_ && s_ == o.s_ && t_ == o.t_;
}

std::string CurveAutomorphism::str() const {
    return "(u=" + u_.str() + ", s=" + s_.str() + ", t=" + t_.str() + ")";
}

FqCurvePtr supersingular_f4_curve() {
    static const FqCurvePtr curve = [] {
        auto f4 = FqContext::standard(2, 2);
        return FqCurve::make(f4, 0, 0, 1, 0, 0); // y^2 + y = x^3
    }();
    return curve;
}

std::vector<CurveAutomorphism> automorphisms_f4() {
    FqCurvePtr e = supersingular_f4_curve();
    const FqContextPtr& f = e->field();
    std::vector<CurveAutomorphism> found;
    for (std::uint64_t ui = 1; ui < 4; ++ui) {
        const FqElem u = FqElem::element(f, ui);
        for (std::uint64_t si = 0; si < 4; ++si) {
            const FqElem s = FqElem::element(f, si);
            for (std::uint64_t ti = 0; ti < 4; ++ti) {
                const FqElem t = FqElem::element(f, ti);
                if (substitution_preserves(*e, u, s, t)) {
                    found.emplace_back(e, u, s, t);
                }
            }
        }
    }
    if (found.size() != 24) {
        throw VerificationError("Aut(y^2+y=x^3 / F_4) enumeration found " +
                                std::to_string(found.size()) +
                                " substitutions, expected 24");
    }
    return found;
}

Mat2 psi_map(const CurveAutomorphism& aut, const TorsionBasis& basis) {
    const std::uint32_t p = basis.p;
    const FqPoint ip = aut.apply(basis.P);
    const FqPoint iq = aut.apply(basis.Q);
    auto decompose = [&](const FqPoint& r) -> std::pair<std::uint32_t, std::uint32_t> {
        for (std::uint32_t i = 0; i < p; ++i) {
            for (std::uint32_t j = 0; j < p; ++j) {
                if (add(scalar_mul(i, basis.P), scalar_mul(j, basis.Q)) == r) {
                    return {i, j};
                }
            }
        }
        throw VerificationError("psi_map: image not in the span of the basis");
    };
    const auto [a, c] = decompose(ip);
    const auto [b, d] = decompose(iq);
    return Mat2::make(p, a, b, c, d);
}

} // namespace fermat3p
