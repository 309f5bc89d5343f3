#include "fermat3p/wmodel.hpp"

#include <json.hpp>

#include <sstream>

namespace fermat3p {

namespace {

ExactInt mod_pos(const ExactInt& x, long m) {
    ExactInt r = x % m;
    if (r < 0) r += m;
    return r;
}

} // namespace

WeierstrassModel WeierstrassModel::make(ExactInt a1, ExactInt a2, ExactInt a3,
                                        ExactInt a4, ExactInt a6) {
    WeierstrassModel m{std::move(a1), std::move(a2), std::move(a3),
                       std::move(a4), std::move(a6)};
    invariants(m); // rejects singular models
    return m;
}

WeierstrassModel WeierstrassModel::parse(const std::string& csv) {
    std::vector<ExactInt> vals;
    std::string token;
    std::istringstream is(csv);
    while (std::getline(is, token, ',')) {
        try {
            vals.emplace_back(token);
        } catch (const std::exception&) {
            throw InvalidInput("cannot parse model coefficient '" + token + "'");
        }
    }
    if (vals.size() != 5) {
        throw InvalidInput("model format is a1,a2,a3,a4,a6 (got " +
                           std::to_string(vals.size()) + " values)");
    }
    return make(vals[0], vals[1], vals[2], vals[3], vals[4]);
}

std::string WeierstrassModel::str() const {
    std::ostringstream os;
    os << a1 << "," << a2 << "," << a3 << "," << a4 << "," << a6;
    return os.str();
}

InvariantData invariants(const WeierstrassModel& model) {
    const ExactInt &a1 = model.a1, &a2 = model.a2, &a3 = model.a3,
                   &a4 = model.a4, &a6 = model.a6;
    InvariantData d;
    d.b2 = a1 * a1 + 4 * a2;
    d.b4 = 2 * a4 + a1 * a3;
    d.b6 = a3 * a3 + 4 * a6;
    d.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    d.c4 = d.b2 * d.b2 - 24 * d.b4;
    d.c6 = -d.b2 * d.b2 * d.b2 + 36 * d.b2 * d.b4 - 216 * d.b6;
    d.disc = -d.b2 * d.b2 * d.b8 - 8 * d.b4 * d.b4 * d.b4 - 27 * d.b6 * d.b6 +
             9 * d.b2 * d.b4 * d.b6;
    if (d.disc == 0) {
        throw InvalidInput("singular model (zero discriminant): " + model.str());
    }
    if (d.c4 * d.c4 * d.c4 - d.c6 * d.c6 != 1728 * d.disc ||
        4 * d.b8 != d.b2 * d.b6 - d.b4 * d.b4) {
        throw std::logic_error("invariant relations violated");
    }
    // constructed by division: the two-argument rational constructor does
    // not accept a negative denominator
    d.j = Rational(d.c4 * d.c4 * d.c4) / Rational(d.disc);
    return d;
}

std::optional<long> valuation_opt(const ExactInt& n, std::uint32_t ell) {
    if (n == 0) return std::nullopt;
    return valuation(n, ell);
}

std::string reduction_type_name(ReductionType t) {
    switch (t) {
        case ReductionType::Good: return "good";
        case ReductionType::PotentiallyGood: return "potentially good";
        case ReductionType::Multiplicative: return "multiplicative";
        case ReductionType::PotentiallyMultiplicative: return "potentially multiplicative";
        case ReductionType::AdditiveOther: return "additive (other)";
    }
    return "additive (other)";
}

ReductionType reduction_type(const LocalData& local) {
    if (local.v_disc == 0) return ReductionType::Good;
    if (!local.v_c4) return ReductionType::PotentiallyGood; // j = 0
    const long vj = 3 * *local.v_c4 - local.v_disc;
    if (vj >= 0) return ReductionType::PotentiallyGood;
    return *local.v_c4 == 0 ? ReductionType::Multiplicative
                            : ReductionType::PotentiallyMultiplicative;
}

namespace {

std::optional<WeierstrassModel> try_model_from_invariants(const ExactInt& c4,
                                                          const ExactInt& c6) {
    const ExactInt lhs = c4 * c4 * c4 - c6 * c6;
    if (lhs == 0 || lhs % 1728 != 0) return std::nullopt;
    // Any integral model can be r-shifted (b2 -> b2 + 12r) into this window.
    for (long b2v = -5; b2v <= 6; ++b2v) {
        ExactInt b2 = b2v;
        if ((b2 * b2 - c4) % 24 != 0) continue;
        ExactInt b4 = (b2 * b2 - c4) / 24;
        ExactInt num = -b2 * b2 * b2 + 36 * b2 * b4 - c6;
        if (num % 216 != 0) continue;
        ExactInt b6 = num / 216;
        ExactInt b2m4 = mod_pos(b2, 4);
        ExactInt b6m4 = mod_pos(b6, 4);
        if (b2m4 > 1 || b6m4 > 1) continue;
        ExactInt a1 = b2m4;
        ExactInt a3 = b6m4;
        if (mod_pos(b4 - a1 * a3, 2) != 0) continue;
        ExactInt a2 = (b2 - a1) / 4;
        ExactInt a4 = (b4 - a1 * a3) / 2;
        ExactInt a6 = (b6 - a3) / 4;
        WeierstrassModel m{a1, a2, a3, a4, a6};
        InvariantData inv = invariants(m);
        if (inv.c4 == c4 && inv.c6 == c6) return m;
    }
    return std::nullopt;
}

} // namespace

WeierstrassModel model_from_invariants(const ExactInt& c4, const ExactInt& c6) {
    if (c4 * c4 * c4 == c6 * c6) {
        throw InvalidInput("invariants with c4^3 = c6^2 are singular");
    }
    if (auto m = try_model_from_invariants(c4, c6)) return *m;
    std::ostringstream os;
    os << "no integral model has invariants c4=" << c4 << ", c6=" << c6;
    throw VerificationError(os.str());
}

namespace {

bool is_squarefree(const ExactInt& d) {
    ExactInt n = abs(d);
    if (n > ExactInt(1'000'000'000'000LL)) {
        throw CapExceeded("squarefree check limited to |d| <= 10^12");
    }
    for (ExactInt q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            n /= q;
            if (n % q == 0) return false;
        }
    }
    return true;
}

} // namespace

WeierstrassModel quadratic_twist(const WeierstrassModel& model, const ExactInt& d) {
    if (d == 0) throw InvalidInput("twist by 0 is not a twist");
    if (!is_squarefree(d)) {
        std::ostringstream os;
        os << "twist parameter " << d << " is not squarefree";
        throw InvalidInput(os.str());
    }
    InvariantData inv = invariants(model);
    auto m = try_model_from_invariants(d * d * inv.c4, d * d * d * inv.c6);
    if (!m) {
        std::ostringstream os;
        os << "twist of " << model.str() << " by " << d
           << " admits no integral model with the exact twisted invariants "
              "(2-adic obstruction)";
        throw VerificationError(os.str());
    }
    InvariantData got = invariants(*m);
    ExactInt d6 = d * d * d;
    d6 *= d6;
    if (got.disc != d6 * inv.disc) {
        throw std::logic_error("twist covariance violated");
    }
    return *m;
}

WeierstrassModel rescale(const WeierstrassModel& model, const Rational& u,
                         const Rational& r, const Rational& s, const Rational& t) {
    if (u == 0) throw InvalidInput("rescale with u = 0");
    const Rational a1 = Rational(model.a1), a2 = Rational(model.a2),
                   a3 = Rational(model.a3), a4 = Rational(model.a4),
                   a6 = Rational(model.a6);
    const Rational u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    const Rational na1 = (a1 + 2 * s) / u;
    const Rational na2 = (a2 - s * a1 + 3 * r - s * s) / u2;
    const Rational na3 = (a3 + r * a1 + 2 * t) / u3;
    const Rational na4 =
        (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u4;
    const Rational na6 =
        (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6;
    const char* names[] = {"a1", "a2", "a3", "a4", "a6"};
    const Rational* vals[] = {&na1, &na2, &na3, &na4, &na6};
    for (int i = 0; i < 5; ++i) {
        if (denominator(*vals[i]) != 1) {
            throw InvalidInput(std::string("rescale: coefficient ") + names[i] +
                               " of the substituted model is not integral");
        }
    }
    return WeierstrassModel::make(numerator(na1), numerator(na2), numerator(na3),
                                  numerator(na4), numerator(na6));
}

std::pair<WeierstrassModel, LocalData> minimalize_at(const WeierstrassModel& model,
                                                     std::uint32_t ell) {
    if (!is_prime(ell)) throw InvalidInput("minimalize_at needs a prime");
    WeierstrassModel cur = model;
    ExactInt l4 = ExactInt(ell) * ell * ell * ell;
    ExactInt l6 = l4 * ell * ell;
    while (true) {
        InvariantData inv = invariants(cur);
        auto vc4 = valuation_opt(inv.c4, ell);
        auto vc6 = valuation_opt(inv.c6, ell);
        long vd = valuation(inv.disc, ell);
        if ((vc4 && *vc4 < 4) || (vc6 && *vc6 < 6) || vd < 12) break;
        // For ell in {2, 3} the reduced pair can fail to be integrally
        // representable even though the valuations allow it; that is
        // exactly the case where the model is already minimal.
        auto next = try_model_from_invariants(inv.c4 / l4, inv.c6 / l6);
        if (!next) break;
        cur = *next;
    }
    InvariantData inv = invariants(cur);
    LocalData local;
    local.ell = ell;
    local.v_c4 = valuation_opt(inv.c4, ell);
    local.v_c6 = valuation_opt(inv.c6, ell);
    local.v_disc = valuation(inv.disc, ell);
    local.minimal = true;
    local.reduction = reduction_type(local);
    return {cur, local};
}

// ------------------------------------------------------------ inertia table

const InertiaTable& InertiaTable::certified() {
    static const InertiaTable table = [] {
        InertiaTable t;
        t.rows_.push_back(Row{4, 5, "SL2F3", "Kraus 1990", false});
        return t;
    }();
    return table;
}

InertiaTable InertiaTable::with_extra_rows_json(const std::string& json_text) {
    InertiaTable t = certified();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(std::string("inertia table: invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw InvalidInput("inertia table must be a JSON array");
    for (const auto& item : doc) {
        Row row;
        if (!item.contains("v2_delta") || !item.contains("v2_c4") ||
            !item.contains("group_tag")) {
            throw InvalidInput("inertia table row needs v2_delta, v2_c4, group_tag");
        }
        row.v2_delta = item.at("v2_delta").get<long>();
        row.v2_c4 = item.at("v2_c4").get<long>();
        row.group_tag = item.at("group_tag").get<std::string>();
        if (!item.contains("source_citation") ||
            !item.at("source_citation").is_string() ||
            item.at("source_citation").get<std::string>().empty()) {
            throw InvalidInput("inertia table row without source_citation rejected");
        }
        row.source_citation = item.at("source_citation").get<std::string>();
        row.external = true;
        t.rows_.push_back(std::move(row));
    }
    return t;
}

std::optional<InertiaTable::Row> InertiaTable::lookup(long v2_delta,
                                                      long v2_c4) const {
    for (const auto& row : rows_) {
        if (row.v2_delta == v2_delta && row.v2_c4 == v2_c4) return row;
    }
    return std::nullopt;
}

InertiaImage inertia_image_at_2(const LocalData& local_at_2,
                                const InertiaTable& table) {
    if (local_at_2.ell != 2 || !local_at_2.minimal) {
        throw InvalidInput("inertia_image_at_2 needs 2-minimal local data");
    }
    if (local_at_2.reduction != ReductionType::PotentiallyGood) {
        throw InvalidInput("inertia_image_at_2 requires potentially good "
                           "reduction at 2, got " +
                           reduction_type_name(local_at_2.reduction));
    }
    InertiaImage img;
    if (!local_at_2.v_c4) {
        img.detail = "c4 = 0 matches no table row";
        return img;
    }
    auto row = table.lookup(local_at_2.v_disc, *local_at_2.v_c4);
    if (!row) {
        img.detail = "(v2(disc_min), v2(c4)) = (" + std::to_string(local_at_2.v_disc) +
                     ", " + std::to_string(*local_at_2.v_c4) +
                     ") is not in the classification table";
        return img;
    }
    img.group_tag = row->group_tag;
    img.external = row->external;
    img.source = row->source_citation;
    if (row->group_tag == "SL2F3") {
        img.kind = InertiaImage::Kind::SL2F3;
        img.detail = row->external ? "externally sourced row" : "certified row";
    } else {
        img.detail = "table row has group " + row->group_tag;
    }
    return img;
}

} // namespace fermat3p
