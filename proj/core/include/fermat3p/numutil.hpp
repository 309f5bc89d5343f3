#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fermat3p/errors.hpp"

namespace fermat3p {

/// Arbitrary-precision signed integer. All integer arithmetic in this
/// library is exact; nothing is ever rounded or silently truncated.
using ExactInt = boost::multiprecision::cpp_int;

/// Exact rational number (always kept in lowest terms by the backend).
using Rational = boost::multiprecision::cpp_rational;

/// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime(std::uint64_t n);

/// Legendre symbol (a/p) for an odd prime p: +1 for a nonzero square,
/// -1 for a nonsquare, 0 iff p | a. Even or composite p is rejected.
int legendre(const ExactInt& a, std::uint32_t p);

/// Largest e with ell^e | n, for n != 0 and ell prime.
long valuation(const ExactInt& n, std::uint32_t ell);

/// An element of the prime field F_p, always stored reduced to [0, p).
/// p is verified prime at construction. Mixed-modulus arithmetic throws.
class FpElem {
public:
    FpElem(const ExactInt& value, std::uint32_t p);
    FpElem(std::int64_t value, std::uint32_t p);

    std::uint32_t value() const { return v_; }
    std::uint32_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    FpElem operator+(const FpElem& o) const;
    FpElem operator-(const FpElem& o) const;
    FpElem operator*(const FpElem& o) const;
    FpElem operator-() const;
    FpElem inverse() const;
    FpElem pow(std::uint64_t e) const;

    bool operator==(const FpElem& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const FpElem& o) const { return !(*this == o); }

private:
    void check_same(const FpElem& o) const;
    std::uint32_t p_;
    std::uint32_t v_;
};

/// Square root in F_p (p odd), via Tonelli-Shanks. Returns the smaller of
/// the two roots so the result is deterministic; empty iff a is a nonsquare.
std::optional<FpElem> sqrt_mod(const FpElem& a);

/// Smallest positive nonsquare mod p (the fixed nonsquare r_p).
std::uint32_t smallest_nonsquare(std::uint32_t p);

/// The deterministic pair (alpha, beta) with alpha^2 + beta^2 = -1 mod p:
/// smallest alpha >= 0 admitting a solution, then the smallest beta.
/// A zero component is permitted (and unavoidable for p = 5).
std::pair<FpElem, FpElem> find_alpha_beta(std::uint32_t p);

/// One congruence condition: a set of residues modulo a fixed modulus.
struct ResidueCondition {
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> residues; // each reduced to [0, modulus)
};

/// Union of the given conditions, lifted to the lcm of all moduli.
/// Residues come back sorted; the empty condition list lifts to the
/// empty set mod 1.
struct LiftedClasses {
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> residues;
};
LiftedClasses crt_classes(const std::vector<ResidueCondition>& conditions);

/// Context of the finite field F_{p^k} = F_p[x]/(f) for a monic irreducible
/// f of degree k <= 6. Irreducibility is verified at construction.
class FqContext {
public:
    /// F_p[x]/(f) with caller-supplied f (little-endian coefficients,
    /// monic, length k+1).
    static std::shared_ptr<const FqContext> with_polynomial(
        std::uint32_t p, std::vector<std::uint32_t> monic_poly);

    /// The canonical context for F_{p^k}: the defining polynomial is the
    /// irreducible monic polynomial x^k + c_{k-1} x^{k-1} + ... + c_0 with
    /// the smallest value of c_0 + c_1 p + ... + c_{k-1} p^{k-1}.
    static std::shared_ptr<const FqContext> standard(std::uint32_t p,
                                                     std::uint32_t k);

    std::uint32_t p() const { return p_; }
    std::uint32_t degree() const { return k_; }
    std::uint64_t size() const { return q_; } // p^k
    const std::vector<std::uint32_t>& polynomial() const { return poly_; }

    bool same_as(const FqContext& o) const;

private:
    FqContext(std::uint32_t p, std::vector<std::uint32_t> poly);
    std::uint32_t p_;
    std::uint32_t k_;
    std::uint64_t q_;
    std::vector<std::uint32_t> poly_;
};

using FqContextPtr = std::shared_ptr<const FqContext>;

/// An element of F_{p^k}, stored as the coefficient vector of its
/// representative polynomial (little-endian, length k).
class FqElem {
public:
    FqElem() = default; // invalid placeholder; any arithmetic throws
    FqElem(FqContextPtr ctx, std::vector<std::uint32_t> coeffs);

    static FqElem zero(const FqContextPtr& ctx);
    static FqElem one(const FqContextPtr& ctx);
    static FqElem from_int(const FqContextPtr& ctx, std::int64_t n);
    /// Element number `index` in enumeration order: coefficients are the
    /// base-p digits of index (c0 least significant).
    static FqElem element(const FqContextPtr& ctx, std::uint64_t index);
    /// The class of x itself (a generator of the field over F_p whenever
    /// the defining polynomial is primitive; in any case a root of it).
    static FqElem gen(const FqContextPtr& ctx);

    const FqContextPtr& context() const { return ctx_; }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }
    std::uint64_t index() const; // inverse of element()
    bool is_zero() const;

    FqElem operator+(const FqElem& o) const;
    FqElem operator-(const FqElem& o) const;
    FqElem operator*(const FqElem& o) const;
    FqElem operator-() const;
    FqElem inverse() const;
    FqElem pow(std::uint64_t e) const;

    bool operator==(const FqElem& o) const;
    bool operator!=(const FqElem& o) const { return !(*this == o); }
    /// Enumeration (index) order; the canonical order for deterministic
    /// choices such as the fixed primitive root.
    bool operator<(const FqElem& o) const;

    /// Render as a polynomial in the generator symbol, e.g. "0", "1", "g",
    /// "g+1", "g^2+g".
    std::string str() const;

private:
    void check_compatible(const FqElem& o) const;
    FqContextPtr ctx_;
    std::vector<std::uint32_t> c_;
};

} // namespace fermat3p
