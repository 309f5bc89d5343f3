// Command line surface for the library: exact invariants, Frey-curve
// valuation chains, per-exponent verdicts for x^3 + y^3 = z^p, group-lemma
// verification, the Weil-pairing oracle and congruence densities.
//
// Exit codes: 0 success, 1 failed verification or contradiction check,
// 2 invalid input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "fermat3p/fermatchain.hpp"
#include "fermat3p/ffcurve.hpp"
#include "fermat3p/json_io.hpp"
#include "fermat3p/matgroup.hpp"
#include "fermat3p/symplectic.hpp"
#include "fermat3p/wmodel.hpp"

using namespace fermat3p;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& json_text, bool want_json,
          const std::string& out_path, const std::string& human_summary) {
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw InvalidInput("cannot write file: " + out_path);
        out << json_text;
    }
    if (want_json) {
        std::cout << json_text;
    } else {
        std::cout << human_summary;
    }
}

std::string verdict_summary(const VerdictReport& v) {
    std::ostringstream os;
    os << "p = " << v.p << ": " << verdict_status_name(v.status) << "\n";
    for (const auto& step : v.trace) {
        os << "  " << step.step << ": " << step.quantity << " = " << step.value
           << "  [" << step.citation << "]\n";
    }
    return os.str();
}

std::string lemma_summary(const LemmaReport& rep) {
    std::ostringstream os;
    os << "p = " << rep.p << ": (2/p) = " << rep.legendre_2_p
       << ", (alpha, beta) = (" << rep.alpha << ", " << rep.beta << ")"
       << (rep.alpha_beta_nonzero ? "" : " [zero component]")
       << ", |N/C| = " << rep.quotient_order << " ("
       << rep.quotient_class.name() << ")"
       << ", det(n1) = " << rep.det_n1 << ", det(n2) = " << rep.det_n2
       << ", det classes over N: " << rep.square_det_count << " square / "
       << rep.nonsquare_det_count << " nonsquare";
    if (rep.a4_check) {
        os << ", A4 part: " << (*rep.a4_check ? "verified" : "FAILED");
    }
    os << "\n";
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{
        "fermat3p: symplectic p-torsion criteria and the Frey-curve "
        "obstruction chain for x^3 + y^3 = z^p"};
    app.require_subcommand(1);
    app.fallthrough(); // --json / --out may follow the subcommand

    bool want_json = false;
    std::string out_path;
    app.add_flag("--json", want_json, "print JSON instead of the summary");
    app.add_option("--out", out_path, "also write the JSON payload to a file");

    // invariants
    auto* cmd_inv = app.add_subcommand(
        "invariants", "exact invariants of an integral model a1,a2,a3,a4,a6");
    std::string model_csv;
    std::optional<std::uint32_t> at_ell;
    std::string inertia_path;
    cmd_inv->add_option("--model", model_csv, "model coefficients a1,a2,a3,a4,a6")
        ->required();
    cmd_inv->add_option("--at", at_ell, "also minimalize at this prime");
    cmd_inv->add_option("--inertia-table", inertia_path,
                        "JSON file with extra inertia classification rows");

    // frey
    auto* cmd_frey = app.add_subcommand(
        "frey", "Frey curve of (a, b) and its valuation chain");
    std::string a_str, b_str;
    cmd_frey->add_option("--a", a_str, "first cube")->required();
    cmd_frey->add_option("--b", b_str, "second cube")->required();

    // classify
    auto* cmd_classify = app.add_subcommand(
        "classify", "per-exponent verdict for x^3 + y^3 = z^p");
    std::optional<std::uint32_t> p_opt;
    std::vector<std::uint64_t> range;
    cmd_classify->add_option("--p", p_opt, "single prime exponent");
    cmd_classify->add_option("--range", range, "prime range LO HI")
        ->expected(2);

    // verify-lemma
    auto* cmd_lemma = app.add_subcommand(
        "verify-lemma", "verify the normalizer lemma for SL_2(F_3) in GL_2(F_p)");
    std::optional<std::uint32_t> lemma_p;
    std::optional<std::uint32_t> lemma_pmax;
    bool brute = false;
    cmd_lemma->add_option("--p", lemma_p, "single odd prime");
    cmd_lemma->add_option("--pmax", lemma_pmax, "verify all primes 3..N");
    cmd_lemma->add_flag("--brute-force", brute,
                        "also compare against the full GL_2(F_p) scan (p <= 31)");

    // weil-oracle
    app.add_subcommand("weil-oracle",
                       "exhaustive r(phi) = det check on the F_4 curve, p = 3");

    // aut-f4
    app.add_subcommand("aut-f4",
                       "list the 24 automorphisms of y^2 + y = x^3 over F_4");

    // density
    auto* cmd_density = app.add_subcommand(
        "density", "exact Dirichlet density of a congruence-condition file");
    std::string cond_path;
    cmd_density->add_option("--conditions", cond_path, "JSON conditions file")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the parse error
        return 2;
    }

    if (cmd_inv->parsed()) {
        WeierstrassModel model = WeierstrassModel::parse(model_csv);
        InvariantData inv = invariants(model);
        std::optional<LocalSection> section;
        if (at_ell) {
            auto [min_model, local] = minimalize_at(model, *at_ell);
            LocalSection s{local, min_model, std::nullopt};
            if (*at_ell == 2 && local.reduction == ReductionType::PotentiallyGood) {
                InertiaTable table = inertia_path.empty()
                                         ? InertiaTable::certified()
                                         : InertiaTable::with_extra_rows_json(
                                               slurp(inertia_path));
                s.inertia = inertia_image_at_2(local, table);
            }
            section = std::move(s);
        }
        std::ostringstream human;
        human << "model [" << model.str() << "]\n"
              << "  c4 = " << exact_str(inv.c4) << ", c6 = " << exact_str(inv.c6)
              << ", disc = " << exact_str(inv.disc)
              << ", j = " << rational_str(inv.j) << "\n";
        if (section) {
            human << "  at " << section->local.ell << ": v(c4) = "
                  << (section->local.v_c4 ? std::to_string(*section->local.v_c4)
                                          : std::string("inf"))
                  << ", v(disc_min) = " << section->local.v_disc << ", "
                  << reduction_type_name(section->local.reduction)
                  << ", minimal model [" << section->minimal_model.str() << "]\n";
            if (section->inertia) {
                human << "  inertia image at 2: "
                      << (section->inertia->kind == InertiaImage::Kind::SL2F3
                              ? "SL2(F3)"
                              : "unknown")
                      << " (" << section->inertia->detail << ")\n";
            }
        }
        emit(invariants_json(model, inv, section), want_json, out_path,
             human.str());
        return 0;
    }

    if (cmd_frey->parsed()) {
        FreyInstance inst = frey_curve(ExactInt(a_str), ExactInt(b_str));
        ValuationChainRecord rec = valuation_chain(inst);
        std::ostringstream human;
        human << "E_(" << a_str << "," << b_str << "): model ["
              << inst.model.str() << "], s = " << exact_str(inst.s)
              << ", v3(s) = " << rec.v3_s << "\n"
              << "  v2(disc_min) = " << rec.v2_disc_min
              << ", v3(c4, c6, disc) = (" << rec.v3_c4 << ", " << rec.v3_c6
              << ", " << rec.v3_disc << ")\n"
              << "  twist by -3: v3(c4, c6, disc) = (" << rec.twist_v3_c4
              << ", " << rec.twist_v3_c6 << ", " << rec.twist_v3_disc
              << "), minimal v3(disc_min) = " << rec.twist_v3_disc_min
              << (rec.multiplicative_at_3 ? ", multiplicative at 3" : "")
              << "\n  congruence v3(disc_min) = -3 + 2 v3(s): "
              << (rec.congruence_ok ? "ok" : "FAILED") << "\n";
        emit(frey_json(inst, rec), want_json, out_path, human.str());
        return 0;
    }

    if (cmd_classify->parsed()) {
        if (p_opt && !range.empty()) {
            throw InvalidInput("classify takes --p or --range, not both");
        }
        if (p_opt) {
            VerdictReport v = obstruction_verdict(*p_opt);
            emit(verdict_report_json(v), want_json, out_path, verdict_summary(v));
            return 0;
        }
        if (range.size() == 2) {
            RangeSummary sum = classify_range(range[0], range[1]);
            std::ostringstream human;
            human << "primes in [" << sum.lo << ", " << sum.hi
                  << "]: " << sum.verdicts.size() << " examined, "
                  << sum.eliminated << " eliminated, " << sum.inconclusive
                  << " inconclusive\n";
            for (const auto& v : sum.verdicts) {
                human << "  p = " << v.p << ": " << verdict_status_name(v.status)
                      << "\n";
            }
            emit(range_summary_json(sum), want_json, out_path, human.str());
            return 0;
        }
        throw InvalidInput("classify needs --p P or --range LO HI");
    }

    if (cmd_lemma->parsed()) {
        if (lemma_p.has_value() == lemma_pmax.has_value()) {
            throw InvalidInput("verify-lemma needs exactly one of --p or --pmax");
        }
        std::vector<std::uint32_t> ps;
        if (lemma_p) {
            ps.push_back(*lemma_p);
        } else {
            for (std::uint32_t q = 3; q <= *lemma_pmax; ++q) {
                if (is_prime(q)) ps.push_back(q);
            }
        }
        std::vector<LemmaReport> reports;
        std::ostringstream human;
        for (auto q : ps) {
            LemmaReport rep = verify_normalizer_lemma(q);
            if (brute) {
                MatGroup h = build_sl23(q);
                if (normalizer_bruteforce(h, q).elements() !=
                    normalizer_generated(h, q).elements()) {
                    throw VerificationError(
                        "brute-force and generated normalizers differ at p = " +
                        std::to_string(q));
                }
                human << "p = " << q << ": brute-force normalizer matches\n";
            }
            human << lemma_summary(rep);
            reports.push_back(std::move(rep));
        }
        const std::string js = reports.size() == 1
                                   ? lemma_report_json(reports[0])
                                   : lemma_reports_json(reports);
        emit(js, want_json, out_path, human.str());
        return 0;
    }

    if (app.get_subcommand("weil-oracle")->parsed()) {
        TorsionBasis basis = torsion_basis(supersingular_f4_curve(), 3);
        int checked = 0;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c)
                    for (int d = 0; d < 3; ++d) {
                        Mat2 m = Mat2::make(3, a, b, c, d);
                        if (m.det() == 0) continue;
                        oracle_r_of_phi(m, basis); // throws on mismatch
                        ++checked;
                    }
        std::cout << "PASS: r(phi) = det(M) for all " << checked
                  << " matrices in GL_2(F_3) on y^2 + y = x^3 over F_4\n";
        return 0;
    }

    if (app.get_subcommand("aut-f4")->parsed()) {
        TorsionBasis basis = torsion_basis(supersingular_f4_curve(), 3);
        auto auts = automorphisms_f4();
        std::vector<std::pair<CurveAutomorphism, Mat2>> rows;
        std::ostringstream human;
        human << "Aut(y^2 + y = x^3 / F_4): " << auts.size()
              << " substitutions (x, y) -> (u^2 x + s^2, u^3 y + u^2 s x + t)\n";
        for (const auto& aut : auts) {
            Mat2 m = psi_map(aut, basis);
            human << "  u = " << aut.u().str() << ", s = " << aut.s().str()
                  << ", t = " << aut.t().str() << ", order " << aut.order()
                  << ", psi = " << m.str() << "\n";
            rows.emplace_back(aut, m);
        }
        emit(automorphisms_json(rows), want_json, out_path, human.str());
        return 0;
    }

    if (cmd_density->parsed()) {
        CongruenceSet set(parse_congruence_conditions(slurp(cond_path)));
        Rational d = dirichlet_density(set);
        std::ostringstream human;
        human << "density = " << rational_str(d) << " = " << rational_decimal(d)
              << "\n";
        emit(density_json(set, d), want_json, out_path, human.str());
        return 0;
    }

    throw InvalidInput("no subcommand given");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
