#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermat3p/fermatchain.hpp"
#include "fermat3p/ffcurve.hpp"
#include "fermat3p/matgroup.hpp"
#include "fermat3p/symplectic.hpp"
#include "fermat3p/wmodel.hpp"

namespace fermat3p {

/// JSON renderings of the reporting types. Field order is fixed and
/// integers that may exceed 64 bits are emitted as decimal strings, so
/// identical inputs always produce byte-identical output.

std::string exact_str(const ExactInt& v);
std::string rational_str(const Rational& v); // "num/den", reduced
std::string rational_decimal(const Rational& v, unsigned digits = 12);

std::string lemma_report_json(const LemmaReport& report);
std::string lemma_reports_json(const std::vector<LemmaReport>& reports);

std::string verdict_report_json(const VerdictReport& report);
std::string range_summary_json(const RangeSummary& summary);

/// Invariants payload; when local data is supplied the serialization also
/// carries the minimal model, its local valuations and (at 2, potentially
/// good) the inertia classification.
struct LocalSection {
    LocalData local;
    WeierstrassModel minimal_model;
    std::optional<InertiaImage> inertia;
};
std::string invariants_json(const WeierstrassModel& model,
                            const InvariantData& inv,
                            const std::optional<LocalSection>& local);

std::string frey_json(const FreyInstance& inst, const ValuationChainRecord& rec);

std::string density_json(const CongruenceSet& set, const Rational& density);

std::string automorphisms_json(
    const std::vector<std::pair<CurveAutomorphism, Mat2>>& auts);

/// Parse the congruence-conditions file format: a JSON array of
/// {"modulus": m, "residues": [r, ...]}.
std::vector<ResidueCondition> parse_congruence_conditions(const std::string& json_text);

} // namespace fermat3p
