#include "fermat3p/matgroup.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_set>

namespace fermat3p {

namespace {

std::uint32_t reduce64(std::int64_t v, std::uint32_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
}

std::uint64_t inv_mod(std::uint64_t a, std::uint32_t p) {
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

struct Mat2Hash {
    std::size_t operator()(const Mat2& g) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : g.m) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

std::uint32_t smallest_primitive_root(std::uint32_t p) {
    if (p == 2) return 1;
    std::uint32_t n = p - 1;
    std::vector<std::uint32_t> prime_factors;
    for (std::uint32_t q = 2; static_cast<std::uint64_t>(q) * q <= n; ++q) {
        if (n % q == 0) {
            prime_factors.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) prime_factors.push_back(n);
    for (std::uint32_t g = 2; g < p; ++g) {
        bool primitive = true;
        for (auto q : prime_factors) {
            std::uint64_t r = 1, b = g, e = (p - 1) / q;
            while (e) {
                if (e & 1) r = r * b % p;
                b = b * b % p;
                e >>= 1;
            }
            if (r == 1) { primitive = false; break; }
        }
        if (primitive) return g;
    }
    return 1;
}

void require_same_modulus(const Mat2& a, const Mat2& b) {
    if (a.p != b.p) throw InvalidInput("matrices over different prime fields");
}

} // namespace

Mat2 Mat2::make(std::uint32_t p, std::int64_t a, std::int64_t b,
                std::int64_t c, std::int64_t d) {
    if (!is_prime(p)) throw InvalidInput("matrix modulus must be prime");
    Mat2 g;
    g.p = p;
    g.m = {reduce64(a, p), reduce64(b, p), reduce64(c, p), reduce64(d, p)};
    return g;
}

Mat2 Mat2::identity(std::uint32_t p) { return make(p, 1, 0, 0, 1); }

Mat2 Mat2::scalar(std::uint32_t p, std::int64_t lambda) {
    return make(p, lambda, 0, 0, lambda);
}

std::uint32_t Mat2::det() const {
    std::uint64_t ad = static_cast<std::uint64_t>(m[0]) * m[3] % p;
    std::uint64_t bc = static_cast<std::uint64_t>(m[1]) * m[2] % p;
    return static_cast<std::uint32_t>((ad + p - bc) % p);
}

Mat2 Mat2::operator*(const Mat2& o) const {
    require_same_modulus(*this, o);
    auto mul2 = [this](std::uint32_t x, std::uint32_t y, std::uint32_t z,
                       std::uint32_t w) {
        return static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(x) * y + static_cast<std::uint64_t>(z) * w) % p);
    };
    Mat2 r;
    r.p = p;
    r.m = {mul2(m[0], o.m[0], m[1], o.m[2]), mul2(m[0], o.m[1], m[1], o.m[3]),
           mul2(m[2], o.m[0], m[3], o.m[2]), mul2(m[2], o.m[1], m[3], o.m[3])};
    return r;
}

Mat2 Mat2::inverse() const {
    std::uint32_t dt = det();
    if (dt == 0) throw InvalidInput("matrix is singular");
    std::uint64_t di = inv_mod(dt, p);
    Mat2 r;
    r.p = p;
    r.m = {static_cast<std::uint32_t>(m[3] * di % p),
           static_cast<std::uint32_t>((p - m[1]) % p * di % p),
           static_cast<std::uint32_t>((p - m[2]) % p * di % p),
           static_cast<std::uint32_t>(m[0] * di % p)};
    return r;
}

unsigned Mat2::order() const {
    if (det() == 0) throw InvalidInput("order of a singular matrix");
    const Mat2 id = identity(p);
    Mat2 t = *this;
    unsigned n = 1;
    while (t != id) {
        t = t * *this;
        ++n;
        if (n > 4'000'000'000u) throw std::logic_error("runaway order computation");
    }
    return n;
}

std::string Mat2::str() const {
    std::ostringstream os;
    os << "[" << m[0] << "," << m[1] << ";" << m[2] << "," << m[3] << "]";
    return os.str();
}

// --------------------------------------------------------------- MatGroup

MatGroup::MatGroup(std::uint32_t p, std::vector<Mat2> elements,
                   std::vector<Mat2> generators)
    : p_(p), elements_(std::move(elements)), generators_(std::move(generators)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()),
                    elements_.end());
    for (const auto& g : elements_) {
        if (g.p != p_) throw InvalidInput("group element modulus mismatch");
        if (g.det() == 0) throw InvalidInput("group element is singular");
    }
}

bool MatGroup::contains(const Mat2& g) const {
    return std::binary_search(elements_.begin(), elements_.end(), g);
}

std::optional<std::size_t> MatGroup::index_of(const Mat2& g) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
    if (it == elements_.end() || *it != g) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
}

MatGroup closure(std::span<const Mat2> generators, std::size_t cap) {
    if (generators.empty()) throw InvalidInput("closure needs at least one generator");
    const std::uint32_t p = generators[0].p;
    for (const auto& g : generators) {
        if (g.p != p) throw InvalidInput("closure generators over different fields");
        if (g.det() == 0) throw InvalidInput("closure generator is singular");
    }
    std::unordered_set<Mat2, Mat2Hash> seen;
    std::vector<Mat2> frontier{Mat2::identity(p)};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<Mat2> next;
        for (const auto& x : frontier) {
            for (const auto& g : generators) {
                Mat2 y = x * g;
                if (seen.insert(y).second) {
                    if (seen.size() > cap) {
                        throw CapExceeded("group closure exceeds cap of " +
                                          std::to_string(cap) + " elements");
                    }
                    next.push_back(y);
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<Mat2> elems(seen.begin(), seen.end());
    return MatGroup(p, std::move(elems),
                    std::vector<Mat2>(generators.begin(), generators.end()));
}

Sl23Generators sl23_generators(std::uint32_t p) {
    auto [alpha, beta] = find_alpha_beta(p);
    const std::int64_t a = alpha.value();
    const std::int64_t b = beta.value();
    const std::int64_t half = static_cast<std::int64_t>(inv_mod(2, p));
    Sl23Generators g;
    g.g1 = Mat2::make(p, 0, -1, 1, 0);
    g.g2 = Mat2::make(p, a, b, b, -a);
    g.g3 = Mat2::make(p, half * (a + b - 1), half * (b - a - 1),
                      half * (b - a + 1), half * (-a - b - 1));
    g.n1 = Mat2::make(p, 1, -1, 1, 1);
    g.n2 = Mat2::make(p, a, b - 1, b + 1, -a);
    return g;
}

MatGroup build_sl23(std::uint32_t p) {
    if (p < 3) throw InvalidInput("build_sl23 requires an odd prime");
    Sl23Generators gen = sl23_generators(p);
    std::array<Mat2, 3> gens{gen.g1, gen.g2, gen.g3};
    MatGroup h = closure(gens);
    if (h.order() != 24) {
        throw VerificationError("build_sl23: group order " +
                                std::to_string(h.order()) + " != 24");
    }
    for (const auto& e : h.elements()) {
        if (e.det() != 1) {
            throw VerificationError("build_sl23: element with det != 1");
        }
    }
    return h;
}

// ------------------------------------------------------------ recognition

std::string GroupIsoClass::name() const {
    switch (tag) {
        case Tag::Quaternion8: return "Q8";
        case Tag::SL2F3: return "SL2(F3)";
        case Tag::S4: return "S4";
        case Tag::A4: return "A4";
        case Tag::CyclicN: return "C" + std::to_string(cyclic_n);
        case Tag::Other: return "other";
    }
    return "other";
}

namespace {

/// Order profile plus the SL_2(F_3) Sylow-2 test over an abstract finite
/// group given by an index-multiplication callback.
GroupIsoClass identify_indexed(
    std::size_t n, std::size_t id,
    const std::function<std::size_t(std::size_t, std::size_t)>& mul) {
    if (n > 10'000) throw InvalidInput("identify: group order exceeds 10^4");
    GroupIsoClass cls;
    std::vector<unsigned> orders(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t t = i;
        unsigned o = 1;
        while (t != id) {
            t = mul(t, i);
            ++o;
        }
        orders[i] = o;
        cls.order_profile[o]++;
    }
    auto profile_is = [&](std::initializer_list<std::pair<unsigned, std::size_t>> want) {
        if (cls.order_profile.size() != want.size()) return false;
        for (auto [o, c] : want) {
            auto it = cls.order_profile.find(o);
            if (it == cls.order_profile.end() || it->second != c) return false;
        }
        return true;
    };

    if (n == 8 && profile_is({{1, 1}, {2, 1}, {4, 6}})) {
        cls.tag = GroupIsoClass::Tag::Quaternion8;
        return cls;
    }
    if (n == 24) {
        // SL_2(F_3) iff the elements of 2-power order form the unique
        // subgroup of order 8 and that subgroup is the quaternion group.
        std::vector<std::size_t> twopow;
        std::map<unsigned, std::size_t> subprofile;
        for (std::size_t i = 0; i < n; ++i) {
            unsigned o = orders[i];
            if ((o & (o - 1)) == 0) {
                twopow.push_back(i);
                subprofile[o]++;
            }
        }
        if (twopow.size() == 8) {
            bool closed = true;
            for (auto x : twopow) {
                for (auto y : twopow) {
                    std::size_t z = mul(x, y);
                    if (!std::binary_search(twopow.begin(), twopow.end(), z)) {
                        closed = false;
                        break;
                    }
                }
                if (!closed) break;
            }
            if (closed && subprofile == std::map<unsigned, std::size_t>{{1, 1}, {2, 1}, {4, 6}}) {
                cls.tag = GroupIsoClass::Tag::SL2F3;
                return cls;
            }
        }
        if (profile_is({{1, 1}, {2, 9}, {3, 8}, {4, 6}})) {
            cls.tag = GroupIsoClass::Tag::S4;
            return cls;
        }
    }
    if (n == 12 && profile_is({{1, 1}, {2, 3}, {3, 8}})) {
        cls.tag = GroupIsoClass::Tag::A4;
        return cls;
    }
    if (cls.order_profile.rbegin()->first == n) {
        cls.tag = GroupIsoClass::Tag::CyclicN;
        cls.cyclic_n = static_cast<unsigned>(n);
        return cls;
    }
    cls.tag = GroupIsoClass::Tag::Other;
    return cls;
}

} // namespace

ScalarQuotient::ScalarQuotient(const MatGroup& g) : p_(g.modulus()) {
    reps_.reserve(g.order());
    for (const auto& e : g.elements()) reps_.push_back(canonical(e));
    std::sort(reps_.begin(), reps_.end());
    reps_.erase(std::unique(reps_.begin(), reps_.end()), reps_.end());
}

ScalarQuotient::ScalarQuotient(std::uint32_t p, std::vector<Mat2> canonical_reps)
    : p_(p), reps_(std::move(canonical_reps)) {
    std::sort(reps_.begin(), reps_.end());
    reps_.erase(std::unique(reps_.begin(), reps_.end()), reps_.end());
    for (const auto& r : reps_) {
        if (r.p != p_ || canonical(r) != r) {
            throw InvalidInput("ScalarQuotient: representative not canonical");
        }
    }
}

Mat2 ScalarQuotient::canonical(const Mat2& g) const {
    // Scaling by lambda makes the first nonzero entry run over all of
    // F_p^x, so the lexicographically smallest multiple is the one whose
    // first nonzero entry equals 1.
    for (int i = 0; i < 4; ++i) {
        if (g.m[i] == 0) continue;
        std::uint64_t lam = inv_mod(g.m[i], p_);
        Mat2 r;
        r.p = p_;
        for (int j = 0; j < 4; ++j) {
            r.m[j] = static_cast<std::uint32_t>(lam * g.m[j] % p_);
        }
        return r;
    }
    throw InvalidInput("ScalarQuotient: zero matrix has no canonical form");
}

Mat2 ScalarQuotient::multiply(const Mat2& a, const Mat2& b) const {
    return canonical(a * b);
}

GroupIsoClass identify(const MatGroup& group) {
    const auto& elems = group.elements();
    auto id_idx = group.index_of(Mat2::identity(group.modulus()));
    if (!id_idx) throw InvalidInput("identify: group without identity");
    return identify_indexed(
        elems.size(), *id_idx, [&](std::size_t i, std::size_t j) {
            auto k = group.index_of(elems[i] * elems[j]);
            if (!k) throw InvalidInput("identify: set not closed under multiplication");
            return *k;
        });
}

GroupIsoClass identify(const ScalarQuotient& quotient) {
    const auto& reps = quotient.representatives();
    auto find = [&](const Mat2& g) {
        auto it = std::lower_bound(reps.begin(), reps.end(), g);
        if (it == reps.end() || *it != g) {
            throw InvalidInput("identify: quotient not closed under multiplication");
        }
        return static_cast<std::size_t>(it - reps.begin());
    };
    std::size_t id = find(quotient.canonical(Mat2::identity(quotient.modulus())));
    return identify_indexed(reps.size(), id, [&](std::size_t i, std::size_t j) {
        return find(quotient.multiply(reps[i], reps[j]));
    });
}

// ---------------------------------------------------- centralizer / center

MatGroup center_of_gl2(std::uint32_t p) {
    if (!is_prime(p)) throw InvalidInput("modulus must be prime");
    std::vector<Mat2> elems;
    elems.reserve(p - 1);
    for (std::uint32_t lam = 1; lam < p; ++lam) {
        elems.push_back(Mat2::scalar(p, lam));
    }
    std::vector<Mat2> gens{Mat2::scalar(p, smallest_primitive_root(p))};
    return MatGroup(p, std::move(elems), std::move(gens));
}

namespace {

void for_each_gl2(std::uint32_t p, const std::function<void(const Mat2&)>& fn) {
    Mat2 g;
    g.p = p;
    for (std::uint32_t a = 0; a < p; ++a)
        for (std::uint32_t b = 0; b < p; ++b)
            for (std::uint32_t c = 0; c < p; ++c)
                for (std::uint32_t d = 0; d < p; ++d) {
                    g.m = {a, b, c, d};
                    if (g.det() != 0) fn(g);
                }
}

} // namespace

MatGroup centralizer(const MatGroup& group, std::uint32_t p) {
    if (group.modulus() != p) throw InvalidInput("centralizer modulus mismatch");
    if (p <= 31) {
        std::vector<Mat2> found;
        for_each_gl2(p, [&](const Mat2& g) {
            for (const auto& h : group.elements()) {
                if (g * h != h * g) return;
            }
            found.push_back(g);
        });
        return MatGroup(p, std::move(found), {});
    }
    // Solve the linear commutation system against the generators. Writing
    // X = (x0 x1; x2 x3), the condition M X = X M is linear in the x_i.
    const auto& gens = group.generators().empty() ? group.elements()
                                                  : group.generators();
    std::vector<std::array<std::uint32_t, 4>> rows;
    for (const auto& g : gens) {
        const std::int64_t a = g.m[0], b = g.m[1], c = g.m[2], d = g.m[3];
        // The four entries of MX - XM as linear forms in (x0, x1, x2, x3):
        //   (0,0):  -c x1 + b x2
        //   (0,1):  -b x0 + (a-d) x1 + b x3
        //   (1,0):   c x0 + (d-a) x2 - c x3
        //   (1,1):   c x1 - b x2
        rows.push_back({0, reduce64(-c, p), reduce64(b, p), 0});
        rows.push_back({reduce64(-b, p), reduce64(a - d, p), 0, reduce64(b, p)});
        rows.push_back({reduce64(c, p), 0, reduce64(d - a, p), reduce64(-c, p)});
        rows.push_back({0, reduce64(c, p), reduce64(-b, p), 0});
    }
    // Gaussian elimination over F_p to a basis of the null space.
    std::size_t rank = 0;
    std::array<int, 4> pivot_of_col{-1, -1, -1, -1};
    for (int col = 0; col < 4 && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        std::uint64_t inv = inv_mod(rows[rank][col], p);
        for (auto& x : rows[rank]) x = static_cast<std::uint32_t>(x * inv % p);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            std::uint64_t f = rows[r][col];
            for (int j = 0; j < 4; ++j) {
                rows[r][j] = static_cast<std::uint32_t>(
                    (rows[r][j] + (p - static_cast<std::uint32_t>(
                                           f * rows[rank][j] % p))) % p);
            }
        }
        pivot_of_col[col] = static_cast<int>(rank);
        ++rank;
    }
    std::vector<std::array<std::uint32_t, 4>> basis;
    for (int col = 0; col < 4; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::array<std::uint32_t, 4> v{0, 0, 0, 0};
        v[col] = 1;
        for (int c2 = 0; c2 < 4; ++c2) {
            if (pivot_of_col[c2] >= 0) {
                std::uint32_t coef = rows[pivot_of_col[c2]][col];
                v[c2] = (p - coef) % p;
            }
        }
        basis.push_back(v);
    }
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        combos *= p;
        if (combos > 2'000'000) {
            throw CapExceeded("centralizer solution space too large to enumerate");
        }
    }
    std::vector<Mat2> found;
    for (std::uint64_t n = 0; n < combos; ++n) {
        std::uint64_t m = n;
        std::array<std::uint64_t, 4> x{0, 0, 0, 0};
        for (const auto& v : basis) {
            std::uint64_t coef = m % p;
            m /= p;
            for (int j = 0; j < 4; ++j) x[j] = (x[j] + coef * v[j]) % p;
        }
        Mat2 g;
        g.p = p;
        g.m = {static_cast<std::uint32_t>(x[0]), static_cast<std::uint32_t>(x[1]),
               static_cast<std::uint32_t>(x[2]), static_cast<std::uint32_t>(x[3])};
        if (g.det() != 0) found.push_back(g);
    }
    return MatGroup(p, std::move(found), {});
}

// ------------------------------------------------------------- normalizer

MatGroup normalizer_bruteforce(const MatGroup& h, std::uint32_t p) {
    if (p > 31) {
        throw InvalidInput("normalizer_bruteforce is limited to p <= 31; "
                           "use normalizer_generated");
    }
    if (h.modulus() != p) throw InvalidInput("normalizer modulus mismatch");
    std::vector<Mat2> found;
    for_each_gl2(p, [&](const Mat2& g) {
        Mat2 gi = g.inverse();
        for (const auto& x : h.elements()) {
            if (!h.contains(g * x * gi)) return;
        }
        found.push_back(g);
    });
    return MatGroup(p, std::move(found), {});
}

namespace {

bool normalizes(const Mat2& g, const MatGroup& h) {
    Mat2 gi = g.inverse();
    for (const auto& x : h.elements()) {
        if (!h.contains(g * x * gi)) return false;
    }
    return true;
}

/// Closure of {g1, g2, g3, n1, n2}; covers a transversal of the scalars
/// inside the full normalizer.
MatGroup normalizer_core(const Sl23Generators& gen) {
    std::array<Mat2, 5> gens{gen.g1, gen.g2, gen.g3, gen.n1, gen.n2};
    return closure(gens);
}

} // namespace

MatGroup normalizer_generated(const MatGroup& h, std::uint32_t p) {
    Sl23Generators gen = sl23_generators(p);
    MatGroup expected = build_sl23(p);
    if (h.elements() != expected.elements()) {
        throw InvalidInput("normalizer_generated requires H = build_sl23(p)");
    }
    MatGroup core = normalizer_core(gen);
    for (const auto& k : core.elements()) {
        if (!normalizes(k, h)) {
            throw VerificationError("normalizer_generated: element " + k.str() +
                                    " fails to normalize H");
        }
    }
    // Saturate with the scalars: the full normalizer is core * C(G), a
    // disjoint union of cosets lambda * core over a transversal.
    std::vector<bool> covered(p, false);
    std::vector<std::uint32_t> core_scalars;
    for (std::uint32_t lam = 1; lam < p; ++lam) {
        if (core.contains(Mat2::scalar(p, lam))) core_scalars.push_back(lam);
    }
    std::vector<Mat2> elems;
    elems.reserve(static_cast<std::size_t>(24) * (p - 1));
    for (std::uint32_t lam = 1; lam < p; ++lam) {
        if (covered[lam]) continue;
        for (auto s : core_scalars) {
            covered[static_cast<std::uint64_t>(s) * lam % p] = true;
        }
        for (const auto& k : core.elements()) {
            Mat2 g;
            g.p = p;
            for (int i = 0; i < 4; ++i) {
                g.m[i] = static_cast<std::uint32_t>(
                    static_cast<std::uint64_t>(lam) * k.m[i] % p);
            }
            elems.push_back(g);
        }
    }
    std::vector<Mat2> gens{gen.g1, gen.g2, gen.g3, gen.n1, gen.n2,
                           Mat2::scalar(p, smallest_primitive_root(p))};
    return MatGroup(p, std::move(elems), std::move(gens));
}

LemmaReport verify_normalizer_lemma(std::uint32_t p) {
    if (p < 3 || !is_prime(p)) {
        throw InvalidInput("verify_normalizer_lemma requires an odd prime");
    }
    Sl23Generators gen = sl23_generators(p);
    MatGroup h = build_sl23(p);
    if (identify(h).tag != GroupIsoClass::Tag::SL2F3) {
        throw VerificationError("normalizer lemma: H does not have the "
                                "SL2(F3) order profile");
    }
    MatGroup core = normalizer_core(gen);
    for (const auto& k : core.elements()) {
        if (!normalizes(k, h)) {
            throw VerificationError("normalizer lemma: generated element " +
                                    k.str() + " does not normalize H");
        }
    }

    LemmaReport rep;
    rep.p = p;
    rep.legendre_2_p = legendre(2, p);
    auto [alpha, beta] = find_alpha_beta(p);
    rep.alpha = alpha.value();
    rep.beta = beta.value();
    rep.alpha_beta_nonzero = !alpha.is_zero() && !beta.is_zero();
    rep.det_n1 = gen.n1.det();
    rep.det_n2 = gen.n2.det();
    if (rep.det_n1 != 2 % p || rep.det_n2 != 2 % p) {
        throw VerificationError("normalizer lemma: det(n1), det(n2) must be 2");
    }

    ScalarQuotient q(core);
    rep.quotient_order = q.order();
    if (rep.quotient_order != 24) {
        throw VerificationError("normalizer lemma: |N/C| = " +
                                std::to_string(rep.quotient_order) + " != 24");
    }
    rep.quotient_class = identify(q);
    if (rep.quotient_class.tag != GroupIsoClass::Tag::S4) {
        throw VerificationError("normalizer lemma: N/C is " +
                                rep.quotient_class.name() + ", expected S4");
    }

    // det square classes are constant on cosets of the center, so counting
    // over the 24 canonical representatives scales by |C(G)| = p-1.
    std::vector<Mat2> square_reps;
    std::size_t square_q = 0;
    for (const auto& r : q.representatives()) {
        if (legendre(r.det(), p) == 1) {
            ++square_q;
            square_reps.push_back(r);
        }
    }
    rep.square_det_count = square_q * (p - 1);
    rep.nonsquare_det_count = (24 - square_q) * (p - 1);

    if (rep.legendre_2_p == 1) {
        if (square_q != 24) {
            throw VerificationError(
                "normalizer lemma clause (a): nonsquare determinant found "
                "although (2/p) = 1");
        }
    } else {
        rep.a4_check = false;
        if (square_q != 12) {
            throw VerificationError(
                "normalizer lemma clause (b): square-determinant part has "
                "index != 2");
        }
        for (const auto& x : square_reps) {
            for (const auto& y : square_reps) {
                Mat2 z = q.multiply(x, y);
                if (!std::binary_search(square_reps.begin(), square_reps.end(), z)) {
                    throw VerificationError(
                        "normalizer lemma clause (b): square-determinant part "
                        "is not a subgroup");
                }
            }
        }
        GroupIsoClass cls = identify(ScalarQuotient(p, square_reps));
        if (cls.tag != GroupIsoClass::Tag::A4) {
            throw VerificationError(
                "normalizer lemma clause (b): square-determinant image is not A4");
        }
        rep.a4_check = true;
    }
    return rep;
}

} // namespace fermat3p
