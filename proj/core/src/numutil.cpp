#include "fermat3p/numutil.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fermat3p {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint32_t require_prime(std::uint32_t p) {
    if (!is_prime(p)) {
        throw InvalidInput("modulus " + std::to_string(p) + " is not prime");
    }
    return p;
}

std::uint32_t reduce_exact(const ExactInt& a, std::uint32_t p) {
    ExactInt r = a % p;
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // This witness set is known to be deterministic for all n < 3.3e24,
    // far beyond the 64-bit range.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

int legendre(const ExactInt& a, std::uint32_t p) {
    require_prime(p);
    if (p == 2) throw InvalidInput("legendre symbol requires an odd prime");
    std::uint64_t r = reduce_exact(a, p);
    if (r == 0) return 0;
    std::uint64_t e = powmod64(r, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

long valuation(const ExactInt& n, std::uint32_t ell) {
    require_prime(ell);
    if (n == 0) {
        throw InvalidInput("valuation of 0 is infinite; handle separately");
    }
    ExactInt m = abs(n);
    long v = 0;
    ExactInt q, r;
    while (true) {
        divide_qr(m, ExactInt(ell), q, r);
        if (r != 0) break;
        m = q;
        ++v;
    }
    return v;
}

// ---------------------------------------------------------------- FpElem

FpElem::FpElem(const ExactInt& value, std::uint32_t p)
    : p_(require_prime(p)), v_(reduce_exact(value, p)) {}

FpElem::FpElem(std::int64_t value, std::uint32_t p)
    : p_(require_prime(p)) {
    std::int64_t r = value % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    v_ = static_cast<std::uint32_t>(r);
}

void FpElem::check_same(const FpElem& o) const {
    if (p_ != o.p_) {
        throw InvalidInput("mixed moduli " + std::to_string(p_) + " and " +
                           std::to_string(o.p_));
    }
}

FpElem FpElem::operator+(const FpElem& o) const {
    check_same(o);
    std::uint64_t s = static_cast<std::uint64_t>(v_) + o.v_;
    if (s >= p_) s -= p_;
    return FpElem(static_cast<std::int64_t>(s), p_);
}

FpElem FpElem::operator-(const FpElem& o) const {
    check_same(o);
    std::uint64_t s = static_cast<std::uint64_t>(v_) + p_ - o.v_;
    if (s >= p_) s -= p_;
    return FpElem(static_cast<std::int64_t>(s), p_);
}

FpElem FpElem::operator*(const FpElem& o) const {
    check_same(o);
    return FpElem(static_cast<std::int64_t>(
                      mulmod64(v_, o.v_, p_)), p_);
}

FpElem FpElem::operator-() const {
    return FpElem(static_cast<std::int64_t>(v_ == 0 ? 0 : p_ - v_), p_);
}

FpElem FpElem::pow(std::uint64_t e) const {
    return FpElem(static_cast<std::int64_t>(powmod64(v_, e, p_)), p_);
}

FpElem FpElem::inverse() const {
    if (v_ == 0) throw InvalidInput("inverse of 0 mod " + std::to_string(p_));
    return pow(p_ - 2);
}

std::optional<FpElem> sqrt_mod(const FpElem& a) {
    std::uint32_t p = a.modulus();
    if (p == 2) throw InvalidInput("sqrt_mod requires an odd prime modulus");
    if (a.is_zero()) return FpElem(std::int64_t(0), p);
    if (powmod64(a.value(), (p - 1) / 2, p) != 1) return std::nullopt;

    std::uint64_t root;
    if (p % 4 == 3) {
        root = powmod64(a.value(), (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks.
        std::uint64_t q = p - 1;
        int s = 0;
        while ((q & 1) == 0) { q >>= 1; ++s; }
        std::uint64_t z = smallest_nonsquare(p);
        std::uint64_t m = s;
        std::uint64_t c = powmod64(z, q, p);
        std::uint64_t t = powmod64(a.value(), q, p);
        std::uint64_t r = powmod64(a.value(), (q + 1) / 2, p);
        while (t != 1) {
            std::uint64_t i = 0, tt = t;
            while (tt != 1) { tt = mulmod64(tt, tt, p); ++i; }
            std::uint64_t b = c;
            for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod64(b, b, p);
            m = i;
            c = mulmod64(b, b, p);
            t = mulmod64(t, c, p);
            r = mulmod64(r, b, p);
        }
        root = r;
    }
    std::uint64_t other = p - root;
    return FpElem(static_cast<std::int64_t>(std::min(root, other)), p);
}

std::uint32_t smallest_nonsquare(std::uint32_t p) {
    require_prime(p);
    if (p == 2) throw InvalidInput("no nonsquare exists mod 2");
    for (std::uint32_t z = 2; z < p; ++z) {
        if (powmod64(z, (p - 1) / 2, p) != 1) return z;
    }
    throw std::logic_error("unreachable: every odd prime has a nonsquare");
}

std::pair<FpElem, FpElem> find_alpha_beta(std::uint32_t p) {
    require_prime(p);
    if (p < 3) throw InvalidInput("find_alpha_beta requires p >= 3");
    for (std::uint32_t alpha = 0; alpha < p; ++alpha) {
        FpElem a(static_cast<std::int64_t>(alpha), p);
        FpElem need = -(FpElem(std::int64_t(1), p) + a * a);
        if (auto beta = sqrt_mod(need)) {
            return {a, *beta};
        }
    }
    throw std::logic_error("alpha^2 + beta^2 = -1 is always solvable mod p");
}

LiftedClasses crt_classes(const std::vector<ResidueCondition>& conditions) {
    constexpr std::uint64_t kModulusCap = 10'000'000;
    LiftedClasses out;
    if (conditions.empty()) return out;

    for (const auto& c : conditions) {
        if (c.modulus == 0) throw InvalidInput("condition modulus must be positive");
        for (auto r : c.residues) {
            if (r >= c.modulus) {
                throw InvalidInput("residue " + std::to_string(r) +
                                   " not reduced mod " + std::to_string(c.modulus));
            }
        }
        std::uint64_t l = std::lcm(out.modulus, c.modulus);
        if (l > kModulusCap) {
            throw CapExceeded("lcm of moduli exceeds enumeration cap " +
                              std::to_string(kModulusCap));
        }
        out.modulus = l;
    }
    std::vector<std::uint64_t> classes;
    for (const auto& c : conditions) {
        const std::uint64_t copies = out.modulus / c.modulus;
        for (auto r : c.residues) {
            for (std::uint64_t k = 0; k < copies; ++k) {
                classes.push_back(r + k * c.modulus);
            }
        }
    }
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    out.residues = std::move(classes);
    return out;
}

// ------------------------------------------------------- polynomials / Fq

namespace {

using Poly = std::vector<std::uint32_t>; // little-endian over F_p

void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
        }
    }
    // reduce modulo the monic polynomial `mod`
    const std::size_t k = mod.size() - 1;
    for (std::size_t d = acc.size(); d-- > k;) {
        std::uint64_t lead = acc[d] % p;
        if (!lead) continue;
        acc[d] = 0;
        for (std::size_t i = 0; i < k; ++i) {
            std::uint64_t sub = (lead * mod[i]) % p;
            acc[d - k + i] = (acc[d - k + i] + p - sub % p) % p;
        }
    }
    Poly r(acc.begin(), acc.begin() + std::min(acc.size(), k));
    for (auto& x : r) x %= p;
    poly_trim(r);
    return r;
}

Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        a[i] = (a[i] + p - b[i]) % p;
    }
    poly_trim(a);
    return a;
}

Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
    // remainder of a by b (b need not be monic)
    poly_trim(a);
    std::uint64_t lead_inv = powmod64(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
        std::uint64_t c = mulmod64(a.back(), lead_inv, p);
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            std::uint64_t sub = mulmod64(c, b[i], p);
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        poly_trim(a);
        if (a.empty()) break;
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Rabin irreducibility test for a monic f of degree k over F_p:
/// f is irreducible iff x^(p^k) = x mod f and, for every prime q | k,
/// gcd(x^(p^(k/q)) - x, f) is constant.
bool poly_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t k = f.size() - 1;
    if (k == 0) return false;
    auto frob_power = [&](std::uint32_t d) {
        // x^(p^d) mod f by d successive p-th powers
        Poly r{0, 1};
        r = poly_mod(r, f, p);
        for (std::uint32_t i = 0; i < d; ++i) {
            Poly acc{1};
            Poly base = r;
            std::uint64_t e = p;
            while (e) {
                if (e & 1) acc = poly_mulmod(acc, base, f, p);
                base = poly_mulmod(base, base, f, p);
                e >>= 1;
            }
            r = acc;
        }
        return r;
    };
    Poly x{0, 1};
    x = poly_mod(x, f, p);
    if (frob_power(static_cast<std::uint32_t>(k)) != x) return false;
    for (std::uint32_t q : {2u, 3u, 5u}) {
        if (k % q != 0) continue;
        Poly g = poly_gcd(poly_sub(frob_power(static_cast<std::uint32_t>(k / q)), x, p), f, p);
        if (g.size() > 1) return false;
    }
    return true;
}

} // namespace

FqContext::FqContext(std::uint32_t p, std::vector<std::uint32_t> poly)
    : p_(p), k_(static_cast<std::uint32_t>(poly.size() - 1)), poly_(std::move(poly)) {
    q_ = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        if (q_ > (std::uint64_t(1) << 62) / p_) {
            throw CapExceeded("field size p^k does not fit in 62 bits");
        }
        q_ *= p_;
    }
}

std::shared_ptr<const FqContext> FqContext::with_polynomial(
    std::uint32_t p, std::vector<std::uint32_t> monic_poly) {
    require_prime(p);
    if (monic_poly.size() < 2 || monic_poly.size() > 7) {
        throw InvalidInput("defining polynomial degree must be in [1, 6]");
    }
    for (auto& c : monic_poly) c %= p;
    if (monic_poly.back() != 1) {
        throw InvalidInput("defining polynomial must be monic");
    }
    if (!poly_irreducible(monic_poly, p)) {
        throw InvalidInput("defining polynomial is reducible over F_p");
    }
    return std::shared_ptr<const FqContext>(
        new FqContext(p, std::move(monic_poly)));
}

std::shared_ptr<const FqContext> FqContext::standard(std::uint32_t p,
                                                     std::uint32_t k) {
    require_prime(p);
    if (k < 1 || k > 6) throw InvalidInput("extension degree must be in [1, 6]");
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t n = 0; n < count; ++n) {
        std::vector<std::uint32_t> f(k + 1, 0);
        std::uint64_t m = n;
        for (std::uint32_t i = 0; i < k; ++i) { f[i] = m % p; m /= p; }
        f[k] = 1;
        if (poly_irreducible(f, p)) {
            return std::shared_ptr<const FqContext>(new FqContext(p, std::move(f)));
        }
    }
    throw std::logic_error("an irreducible polynomial of each degree exists");
}

bool FqContext::same_as(const FqContext& o) const {
    return p_ == o.p_ && poly_ == o.poly_;
}

// ---------------------------------------------------------------- FqElem

FqElem::FqElem(FqContextPtr ctx, std::vector<std::uint32_t> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (!ctx_) throw InvalidInput("null field context");
    if (c_.size() > ctx_->degree()) {
        throw InvalidInput("coefficient vector longer than field degree");
    }
    c_.resize(ctx_->degree(), 0);
    for (auto& x : c_) x %= ctx_->p();
}

FqElem FqElem::zero(const FqContextPtr& ctx) { return FqElem(ctx, {}); }

FqElem FqElem::one(const FqContextPtr& ctx) { return FqElem(ctx, {1}); }

FqElem FqElem::from_int(const FqContextPtr& ctx, std::int64_t n) {
    std::int64_t r = n % static_cast<std::int64_t>(ctx->p());
    if (r < 0) r += ctx->p();
    return FqElem(ctx, {static_cast<std::uint32_t>(r)});
}

FqElem FqElem::element(const FqContextPtr& ctx, std::uint64_t index) {
    if (index >= ctx->size()) throw InvalidInput("field element index out of range");
    std::vector<std::uint32_t> c(ctx->degree(), 0);
    for (std::uint32_t i = 0; i < ctx->degree(); ++i) {
        c[i] = static_cast<std::uint32_t>(index % ctx->p());
        index /= ctx->p();
    }
    return FqElem(ctx, std::move(c));
}

FqElem FqElem::gen(const FqContextPtr& ctx) {
    if (ctx->degree() < 2) return from_int(ctx, 0);
    std::vector<std::uint32_t> c(ctx->degree(), 0);
    c[1] = 1;
    return FqElem(ctx, std::move(c));
}

std::uint64_t FqElem::index() const {
    std::uint64_t idx = 0;
    for (std::size_t i = c_.size(); i-- > 0;) idx = idx * ctx_->p() + c_[i];
    return idx;
}

bool FqElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::uint32_t x) { return x == 0; });
}

void FqElem::check_compatible(const FqElem& o) const {
    if (!ctx_ || !o.ctx_) throw InvalidInput("uninitialized field element");
    if (ctx_.get() == o.ctx_.get()) return;
    if (!ctx_->same_as(*o.ctx_)) {
        throw InvalidInput("field elements from different contexts");
    }
}

FqElem FqElem::operator+(const FqElem& o) const {
    check_compatible(o);
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        r[i] = (c_[i] + o.c_[i]) % ctx_->p();
    }
    return FqElem(ctx_, std::move(r));
}

FqElem FqElem::operator-(const FqElem& o) const {
    check_compatible(o);
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        r[i] = (c_[i] + ctx_->p() - o.c_[i]) % ctx_->p();
    }
    return FqElem(ctx_, std::move(r));
}

FqElem FqElem::operator-() const {
    if (!ctx_) throw InvalidInput("uninitialized field element");
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        r[i] = (ctx_->p() - c_[i]) % ctx_->p();
    }
    return FqElem(ctx_, std::move(r));
}

FqElem FqElem::operator*(const FqElem& o) const {
    check_compatible(o);
    Poly r = poly_mulmod(Poly(c_.begin(), c_.end()),
                         Poly(o.c_.begin(), o.c_.end()),
                         ctx_->polynomial(), ctx_->p());
    return FqElem(ctx_, std::vector<std::uint32_t>(r.begin(), r.end()));
}

FqElem FqElem::pow(std::uint64_t e) const {
    if (!ctx_) throw InvalidInput("uninitialized field element");
    FqElem result = one(ctx_);
    FqElem base = *this;
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

FqElem FqElem::inverse() const {
    if (is_zero()) throw InvalidInput("inverse of zero field element");
    return pow(ctx_->size() - 2);
}

bool FqElem::operator==(const FqElem& o) const {
    check_compatible(o);
    return c_ == o.c_;
}

bool FqElem::operator<(const FqElem& o) const {
    check_compatible(o);
    // enumeration order: compare digits from the most significant down,
    // matching index()
    return std::lexicographical_compare(c_.rbegin(), c_.rend(), o.c_.rbegin(),
                                        o.c_.rend());
}

std::string FqElem::str() const {
    if (!ctx_) return "?";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (!c_[i]) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || c_[i] != 1) os << c_[i];
        if (i >= 1) {
            if (c_[i] != 1) os << "*";
            os << "g";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

} // namespace fermat3p
