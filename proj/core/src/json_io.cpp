#include "fermat3p/json_io.hpp"

#include <json.hpp>

#include <sstream>

namespace fermat3p {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kIndent = 2;

ordered_json opt_long(const std::optional<long>& v) {
    if (!v) return nullptr;
    return *v;
}

ordered_json local_data_json(const LocalData& local) {
    ordered_json j;
    j["ell"] = local.ell;
    j["v_c4"] = opt_long(local.v_c4);
    j["v_c6"] = opt_long(local.v_c6);
    j["v_disc"] = local.v_disc;
    j["minimal"] = local.minimal;
    j["reduction_type"] = reduction_type_name(local.reduction);
    return j;
}

ordered_json trace_json(const std::vector<TraceStep>& trace) {
    ordered_json arr = ordered_json::array();
    for (const auto& step : trace) {
        ordered_json s;
        s["step"] = step.step;
        s["quantity"] = step.quantity;
        s["value"] = step.value;
        s["citation"] = step.citation;
        arr.push_back(std::move(s));
    }
    return arr;
}

ordered_json verdict_json_obj(const VerdictReport& report) {
    ordered_json j;
    j["p"] = report.p;
    j["status"] = verdict_status_name(report.status);
    j["trace"] = trace_json(report.trace);
    return j;
}

ordered_json lemma_json_obj(const LemmaReport& report) {
    ordered_json j;
    j["p"] = report.p;
    j["legendre_2_p"] = report.legendre_2_p;
    j["quotient_order"] = report.quotient_order;
    j["quotient_class"] = report.quotient_class.name();
    j["det_n1"] = report.det_n1;
    j["det_n2"] = report.det_n2;
    ordered_json counts;
    counts["square"] = report.square_det_count;
    counts["nonsquare"] = report.nonsquare_det_count;
    j["square_class_counts"] = std::move(counts);
    j["a4_check"] = report.a4_check ? ordered_json(*report.a4_check)
                                    : ordered_json(nullptr);
    return j;
}

std::string dump(const ordered_json& j) { return j.dump(kIndent) + "\n"; }

} // namespace

std::string exact_str(const ExactInt& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::string rational_str(const Rational& v) {
    std::ostringstream os;
    os << numerator(v) << "/" << denominator(v);
    return os.str();
}

std::string rational_decimal(const Rational& v, unsigned digits) {
    // fixed-point decimal expansion, truncated
    ExactInt num = numerator(v);
    ExactInt den = denominator(v);
    bool neg = num < 0;
    if (neg) num = -num;
    ExactInt ip = num / den;
    ExactInt rem = num % den;
    std::ostringstream os;
    if (neg && (ip != 0 || rem != 0)) os << "-";
    os << ip;
    if (digits > 0) {
        os << ".";
        for (unsigned i = 0; i < digits; ++i) {
            rem *= 10;
            os << rem / den;
            rem %= den;
        }
    }
    return os.str();
}

std::string lemma_report_json(const LemmaReport& report) {
    return dump(lemma_json_obj(report));
}

std::string lemma_reports_json(const std::vector<LemmaReport>& reports) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) arr.push_back(lemma_json_obj(r));
    return dump(arr);
}

std::string verdict_report_json(const VerdictReport& report) {
    return dump(verdict_json_obj(report));
}

std::string range_summary_json(const RangeSummary& summary) {
    ordered_json j;
    j["lo"] = summary.lo;
    j["hi"] = summary.hi;
    j["eliminated"] = summary.eliminated;
    j["inconclusive"] = summary.inconclusive;
    ordered_json arr = ordered_json::array();
    for (const auto& v : summary.verdicts) arr.push_back(verdict_json_obj(v));
    j["verdicts"] = std::move(arr);
    return dump(j);
}

std::string invariants_json(const WeierstrassModel& model,
                            const InvariantData& inv,
                            const std::optional<LocalSection>& local) {
    ordered_json j;
    j["model"] = model.str();
    j["b2"] = exact_str(inv.b2);
    j["b4"] = exact_str(inv.b4);
    j["b6"] = exact_str(inv.b6);
    j["b8"] = exact_str(inv.b8);
    j["c4"] = exact_str(inv.c4);
    j["c6"] = exact_str(inv.c6);
    j["disc"] = exact_str(inv.disc);
    j["j"] = rational_str(inv.j);
    if (local) {
        ordered_json l = local_data_json(local->local);
        l["minimal_model"] = local->minimal_model.str();
        if (local->inertia) {
            ordered_json inertia;
            inertia["group"] = local->inertia->kind == InertiaImage::Kind::SL2F3
                                   ? "SL2F3"
                                   : "unknown";
            inertia["external"] = local->inertia->external;
            inertia["source"] = local->inertia->source;
            inertia["detail"] = local->inertia->detail;
            l["inertia_image"] = std::move(inertia);
        }
        j["local"] = std::move(l);
    }
    return dump(j);
}

std::string frey_json(const FreyInstance& inst, const ValuationChainRecord& rec) {
    ordered_json j;
    j["a"] = exact_str(inst.a);
    j["b"] = exact_str(inst.b);
    j["s"] = exact_str(inst.s);
    j["model"] = inst.model.str();
    j["v3_s"] = rec.v3_s;
    ordered_json frey;
    frey["v2_disc_min"] = rec.v2_disc_min;
    frey["v2_c4_min"] = rec.v2_c4_min;
    frey["v3_c4"] = rec.v3_c4;
    frey["v3_c6"] = rec.v3_c6;
    frey["v3_disc"] = rec.v3_disc;
    j["frey"] = std::move(frey);
    ordered_json twist;
    twist["v3_c4"] = rec.twist_v3_c4;
    twist["v3_c6"] = rec.twist_v3_c6;
    twist["v3_disc"] = rec.twist_v3_disc;
    twist["v3_disc_min"] = rec.twist_v3_disc_min;
    twist["v2_disc_min"] = rec.twist_v2_disc_min;
    twist["v2_c4_min"] = rec.twist_v2_c4_min;
    twist["multiplicative_at_3"] = rec.multiplicative_at_3;
    j["twist_by_minus3"] = std::move(twist);
    j["congruence_ok"] = rec.congruence_ok;
    return dump(j);
}

std::string density_json(const CongruenceSet& set, const Rational& density) {
    ordered_json j;
    ordered_json conds = ordered_json::array();
    for (const auto& c : set.conditions()) {
        ordered_json cj;
        cj["modulus"] = c.modulus;
        cj["residues"] = c.residues;
        conds.push_back(std::move(cj));
    }
    j["conditions"] = std::move(conds);
    j["density"] = rational_str(density);
    j["density_decimal"] = rational_decimal(density);
    return dump(j);
}

std::string automorphisms_json(
    const std::vector<std::pair<CurveAutomorphism, Mat2>>& auts) {
    ordered_json arr = ordered_json::array();
    for (const auto& [aut, mat] : auts) {
        ordered_json a;
        a["u"] = aut.u().str();
        a["s"] = aut.s().str();
        a["t"] = aut.t().str();
        a["order"] = aut.order();
        a["psi"] = mat.str();
        a["det"] = mat.det();
        arr.push_back(std::move(a));
    }
    ordered_json j;
    j["curve"] = supersingular_f4_curve()->str();
    j["count"] = auts.size();
    j["automorphisms"] = std::move(arr);
    return dump(j);
}

std::vector<ResidueCondition> parse_congruence_conditions(
    const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(std::string("congruence file: invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) {
        throw InvalidInput("congruence file must be a JSON array of conditions");
    }
    std::vector<ResidueCondition> out;
    for (const auto& item : doc) {
        if (!item.contains("modulus") || !item.contains("residues") ||
            !item.at("residues").is_array()) {
            throw InvalidInput("each condition needs {modulus, residues[]}");
        }
        ResidueCondition c;
        c.modulus = item.at("modulus").get<std::uint64_t>();
        for (const auto& r : item.at("residues")) {
            c.residues.push_back(r.get<std::uint64_t>());
        }
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace fermat3p
