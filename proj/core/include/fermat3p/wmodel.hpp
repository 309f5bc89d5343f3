#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermat3p/numutil.hpp"

namespace fermat3p {

/// Integral long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
/// Construction rejects singular models (disc = 0).
struct WeierstrassModel {
    ExactInt a1, a2, a3, a4, a6;

    static WeierstrassModel make(ExactInt a1, ExactInt a2, ExactInt a3,
                                 ExactInt a4, ExactInt a6);
    /// Parse the CLI model format "a1,a2,a3,a4,a6".
    static WeierstrassModel parse(const std::string& csv);

    bool operator==(const WeierstrassModel& o) const = default;
    std::string str() const;
};

/// The standard quantities attached to a model. Relations checked on
/// construction: c4^3 - c6^2 = 1728 disc and 4 b8 = b2 b6 - b4^2.
struct InvariantData {
    ExactInt b2, b4, b6, b8, c4, c6, disc;
    Rational j; // exact, reduced
};

InvariantData invariants(const WeierstrassModel& model);

/// Valuation of a nonzero rational at ell; empty means the value was 0
/// (valuation +infinity).
std::optional<long> valuation_opt(const ExactInt& n, std::uint32_t ell);

enum class ReductionType {
    Good,
    PotentiallyGood,
    Multiplicative,
    PotentiallyMultiplicative,
    AdditiveOther,
};
std::string reduction_type_name(ReductionType t);

/// Local picture of one model at one prime. `minimal` states that the
/// described model admits no further u = ell reduction.
struct LocalData {
    std::uint32_t ell = 0;
    std::optional<long> v_c4;   // empty iff c4 = 0
    std::optional<long> v_c6;   // empty iff c6 = 0
    long v_disc = 0;
    bool minimal = false;
    ReductionType reduction = ReductionType::AdditiveOther;
};

/// Classify from minimal-at-ell local data:
///   Good                      iff v(disc) = 0
///   PotentiallyGood           iff v(j) >= 0 and not good
///   Multiplicative            iff v(j) < 0 and v(c4) = 0
///   PotentiallyMultiplicative iff v(j) < 0 and v(c4) > 0
ReductionType reduction_type(const LocalData& local);

/// Build an integral model with the exact invariants (c4, c6), searching
/// the twelve residue candidates for b2. Throws VerificationError when no
/// integral model with these invariants exists.
WeierstrassModel model_from_invariants(const ExactInt& c4, const ExactInt& c6);

/// Quadratic twist by squarefree d != 0, as an integral model whose
/// invariants are exactly (d^2 c4, d^3 c6, d^6 disc). For d not congruent
/// to 1 mod 4 such a model can fail to exist 2-adically; that case throws.
WeierstrassModel quadratic_twist(const WeierstrassModel& model, const ExactInt& d);

/// Standard change of variables x = u^2 x' + r, y = u^3 y' + u^2 s x' + t.
/// The substituted model must come out integral; otherwise the offending
/// coefficient is named in the error.
WeierstrassModel rescale(const WeierstrassModel& model, const Rational& u,
                         const Rational& r, const Rational& s, const Rational& t);

/// Repeatedly strips u = ell from the model while v(c4) >= 4, v(c6) >= 6,
/// v(disc) >= 12 and the reduced invariant pair is still integrally
/// representable. Returns the ell-minimal model and its local data.
std::pair<WeierstrassModel, LocalData> minimalize_at(const WeierstrassModel& model,
                                                     std::uint32_t ell);

/// Inertia field classification at 2 for potentially good reduction,
/// looked up by (v2(disc_min), v2(c4_min)).
struct InertiaImage {
    enum class Kind { SL2F3, Unknown };
    Kind kind = Kind::Unknown;
    std::string group_tag;  // e.g. "SL2F3"; empty when no row matched
    bool external = false;  // true when the row came from a user table
    std::string source;     // citation carried by the row
    std::string detail;
};

class InertiaTable {
public:
    struct Row {
        long v2_delta = 0;
        long v2_c4 = 0;
        std::string group_tag;
        std::string source_citation;
        bool external = false;
    };

    /// The built-in certified table. It contains exactly one row,
    /// (4, 5) -> SL2F3 (Kraus 1990).
    static const InertiaTable& certified();

    /// Certified rows plus rows parsed from a JSON array of objects
    /// {v2_delta, v2_c4, group_tag, source_citation}. Rows without a
    /// source_citation are rejected.
    static InertiaTable with_extra_rows_json(const std::string& json_text);

    const std::vector<Row>& rows() const { return rows_; }
    std::optional<Row> lookup(long v2_delta, long v2_c4) const;

private:
    std::vector<Row> rows_;
};

/// Requires local data of a 2-minimal model with potentially good
/// reduction; rejects anything else.
InertiaImage inertia_image_at_2(const LocalData& local_at_2,
                                const InertiaTable& table = InertiaTable::certified());

} // namespace fermat3p
