// cvhide: closed-form vs numeric cross-checks and report sweeps for
// continuous-variable state discrimination, data hiding, and teleportation
// error budgets.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "cvhide/commands.hpp"
#include "cvhide/discrimination.hpp"
#include "cvhide/verify.hpp"

namespace {

struct CommonOpts {
    std::string out;
    std::string format = "text";
    double tail_tol = 1e-12;
    int jobs = cvhide::default_jobs();
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--out", opts.out, "Write the report to this path instead of stdout");
    cmd->add_option("--format", opts.format, "Output format: json, csv, or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--tail-tol", opts.tail_tol, "Fock-tail mass kept below this when truncating")
        ->check(CLI::Range(1e-15, 1e-2));
    cmd->add_option("--jobs", opts.jobs, "Rows computed concurrently (default: CVHIDE_JOBS or 1)")
        ->check(CLI::Range(1, 256));
}

int emit(const cvhide::Table& table, const CommonOpts& opts, const std::string& command,
         const std::vector<std::pair<std::string, std::string>>& params) {
    std::string body;
    if (opts.format == "csv")
        body = cvhide::to_csv(table);
    else if (opts.format == "json")
        body = cvhide::to_json(table, command, params);
    else
        body = cvhide::to_text(table);
    if (opts.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(opts.out, std::ios::binary);
        if (!f) {
            std::cerr << "cvhide: cannot open " << opts.out << " for writing\n";
            return 2;
        }
        f << body;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous-variable data-hiding numerics"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "Run every closed-form cross-check");
    CommonOpts vopts;
    std::string only;
    add_common(verify, vopts);
    verify->add_option("--only", only, "Run only checks whose name contains this substring");

    // thermal-table
    auto* thermal = app.add_subcommand("thermal-table", "Thermal-pair bias table");
    CommonOpts topts;
    std::string nu_range = "0:2:0.5", mu_range = "0.5:5:0.5";
    add_common(thermal, topts);
    thermal->add_option("--nu", nu_range, "nu values, start:stop:step or single value");
    thermal->add_option("--mu", mu_range, "mu values, start:stop:step or single value");
    thermal->footer(
        "columns: nu, mu, n0, half_trace_cf, half_trace_num, delta_trace, half_wl1_cf,\n"
        "         half_wl1_num, delta_wl1, half_het_cf, half_het_num, delta_het,\n"
        "         half_hom_cf, half_hom_num, delta_hom, ratio_b1_bhet, cutoff\n"
        "(rows cover every nu < mu pair; _cf columns are closed forms, _num their\n"
        "independent numeric paths)");

    // even-odd
    auto* evenodd = app.add_subcommand("even-odd", "Even/odd pair hiding table");
    CommonOpts eopts;
    std::string lam_range = "0:0.9:0.1";
    add_common(evenodd, eopts);
    evenodd->add_option("--lambda", lam_range, "lambda values, start:stop:step");
    evenodd->footer("columns: lambda, beta_1, half_wl1_num, gocc_bound_cf, delta, cutoff");

    // fock-hom
    auto* fockhom = app.add_subcommand("fock-hom", "Consecutive-Fock homodyne distances");
    CommonOpts fopts;
    std::string n_range = "0:20:1";
    add_common(fockhom, fopts);
    fockhom->add_option("--n", n_range, "n values, start:stop:step");
    fockhom->footer("columns: n, hom_l1, asymptote, delta");

    // bk-budget
    auto* budget = app.add_subcommand("bk-budget", "Teleportation resource planning");
    CommonOpts bopts;
    std::string eps_range = "0.1";
    double b_energy = 0.0, b_eta = 1.0, b_r = -1.0;
    int b_m = 1;
    bool b_refined = false;
    add_common(budget, bopts);
    budget->add_option("--eps", eps_range, "target accuracy values, start:stop:step");
    budget->add_option("--energy", b_energy, "input-state mean photon number");
    budget->add_option("--m", b_m, "number of modes")->check(CLI::Range(1, 64));
    budget->add_option("--eta", b_eta, "fixed detection efficiency (solve for squeezing)");
    budget->add_option("--r", b_r, "fixed squeezing (solve for efficiency)");
    budget->add_flag("--refined", b_refined, "bisect the refined bound instead of the linear one");
    budget->footer(
        "columns: E, m, eps, eta (or r_fixed), lambda_star, r (or eta_required),\n"
        "         squeezing_db");

    // locc-bound
    auto* locc = app.add_subcommand("locc-bound", "Energy-limited LOCC bias lower bound");
    CommonOpts lopts;
    std::string energy_range = "0:10:1";
    double l_beta1 = 1.0;
    int l_m = 1;
    add_common(locc, lopts);
    locc->add_option("--beta1", l_beta1, "Helstrom bias of the scheme")
        ->check(CLI::Range(0.0, 1.0));
    locc->add_option("--energy", energy_range, "energy values, start:stop:step");
    locc->add_option("--m", l_m, "number of modes")->check(CLI::Range(1, 64));
    locc->footer("columns: beta_1, E, m, gamma_E, c_m, locc_lower_bound");

    try {
        app.parse(argc, argv);

        if (*verify) {
            const auto results = cvhide::run_verification(only, vopts.jobs);
            const std::string report = cvhide::verification_report(results);
            if (vopts.out.empty()) {
                std::cout << report;
            } else {
                std::ofstream f(vopts.out, std::ios::binary);
                f << report;
            }
            return cvhide::all_passed(results) ? 0 : 1;
        }
        if (*thermal) {
            const auto t = cvhide::thermal_table(cvhide::parse_range(nu_range),
                                                 cvhide::parse_range(mu_range), topts.tail_tol,
                                                 topts.jobs);
            return emit(t, topts, "thermal-table", {{"nu", nu_range}, {"mu", mu_range}});
        }
        if (*evenodd) {
            const auto t = cvhide::even_odd_table(cvhide::parse_range(lam_range), eopts.tail_tol,
                                                  eopts.jobs);
            return emit(t, eopts, "even-odd", {{"lambda", lam_range}});
        }
        if (*fockhom) {
            const auto t = cvhide::fock_hom_table(cvhide::parse_int_range(n_range), fopts.jobs);
            return emit(t, fopts, "fock-hom", {{"n", n_range}});
        }
        if (*budget) {
            cvhide::BudgetQuery q;
            q.energy = b_energy;
            q.m = b_m;
            q.use_refined = b_refined;
            if (b_r >= 0.0) {
                q.fixed = cvhide::BudgetQuery::Fixed::r;
                q.r = b_r;
            } else {
                q.fixed = cvhide::BudgetQuery::Fixed::eta;
                q.eta = b_eta;
            }
            const auto t = cvhide::bk_budget_table(cvhide::parse_range(eps_range), q);
            return emit(t, bopts, "bk-budget",
                        {{"eps", eps_range},
                         {"energy", cvhide::format_sig12(b_energy)},
                         {"m", std::to_string(b_m)}});
        }
        if (*locc) {
            const auto t =
                cvhide::locc_bound_table(l_beta1, cvhide::parse_range(energy_range), l_m);
            return emit(t, lopts, "locc-bound",
                        {{"beta1", cvhide::format_sig12(l_beta1)},
                         {"energy", energy_range},
                         {"m", std::to_string(l_m)}});
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const cvhide::invalid_parameter& e) {
        std::cerr << "cvhide: " << e.what() << '\n';
        return 2;
    } catch (const cvhide::infeasible_budget& e) {
        std::cerr << "cvhide: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "cvhide: numeric failure: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
