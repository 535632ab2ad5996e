#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schurkit/io.hpp"

namespace {

using schurkit::Json;

std::uint64_t seed_from_env() {
    const char* raw = std::getenv("SCHURKIT_SEED");
    if (raw == nullptr || *raw == '\0') return 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == nullptr || *end != '\0')
        throw schurkit::ParseError("SCHURKIT_SEED is not a nonnegative integer");
    return v;
}

Json matrix_list_json(const std::vector<schurkit::CMatrix>& ms) {
    Json out = Json::array();
    for (const auto& m : ms) out.push_back(schurkit::matrix_to_json(m));
    return out;
}

struct Invocation {
    std::string command;
    Json inputs = Json::array();   // parsed file contents, in argument order
    Json options = Json::object();
    Json results = Json::object();
    Json warnings = Json::array();
};

Json make_report(const Invocation& inv, const schurkit::Tolerances& tol) {
    Json digest_basis = Json::array(
        {inv.command, inv.inputs, inv.options, schurkit::tolerances_to_json(tol)});
    return Json{{"command", inv.command},
                {"inputs_digest", schurkit::digest_hex(digest_basis)},
                {"results", inv.results},
                {"tolerances", schurkit::tolerances_to_json(tol)},
                {"warnings", inv.warnings}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"schurkit: Schur parameters, shorted operators and interpolation"};
    app.require_subcommand(1);
    app.fallthrough(); // let global options (--out, tolerances) appear after the subcommand

    schurkit::Tolerances tol;
    std::string out_path;
    app.add_option("--out", out_path, "write the JSON report to this file as well");
    app.add_option("--rank-tol", tol.rank_rel_tol, "relative rank / pseudo-inverse cutoff");
    app.add_option("--match-tol", tol.match_tol, "tolerance for identity verification");
    app.add_option("--slack", tol.contraction_slack, "slack above 1 accepted as contractive");

    std::string problem_path, matrix_path, subspace_path, colligation_path, input_path, dest_path;
    int order = -1, levels = -1, nmax = 8, verify_order = 4;
    std::string verify_mode = "main1";
    Eigen::Index gen_m = 2, gen_h = 4;
    std::uint64_t seed = 0;
    bool seed_given = false;

    auto* c_validate = app.add_subcommand("validate", "solvability of interpolation data");
    c_validate->add_option("problem", problem_path, "problem JSON file")->required();

    auto* c_unique = app.add_subcommand("uniqueness", "uniqueness verdict for solvable data");
    c_unique->add_option("problem", problem_path, "problem JSON file")->required();

    auto* c_central = app.add_subcommand("central", "central solution coefficients");
    c_central->add_option("problem", problem_path, "problem JSON file")->required();
    c_central->add_option("--order", order, "truncation order of the output (default N+1)");

    auto* c_params = app.add_subcommand("schur-params", "Schur parameters of the data");
    c_params->add_option("problem", problem_path, "problem JSON file")->required();
    c_params->add_option("--levels", levels, "number of levels to compute (default N)");

    auto* c_shorted = app.add_subcommand("shorted", "shorted operator of a PSD matrix");
    c_shorted->add_option("psd", matrix_path, "PSD matrix JSON file")->required();
    c_shorted->add_option("subspace", subspace_path, "subspace JSON file ({\"basis\": ...})")
        ->required();

    auto* c_col = app.add_subcommand("colligation", "unitary system node checks");
    c_col->add_option("node", colligation_path, "colligation JSON file")->required();
    c_col->add_option("--verify", verify_mode, "main1 | zeta1 | simplicity")
        ->check(CLI::IsMember({"main1", "zeta1", "simplicity"}));
    c_col->add_option("--nmax", nmax, "levels checked by main1 (default 8)");
    c_col->add_option("--order", verify_order, "verification order for zeta1 (default 4)");

    auto* c_limits = app.add_subcommand("limits", "shorted-defect sequences and their limits");
    c_limits->add_option("input", input_path, "choice-sequence or problem JSON file")->required();
    c_limits->add_option("--nmax", nmax, "deepest level (default 8)");

    auto* c_gen = app.add_subcommand("gen-colligation", "write a random unitary colligation");
    c_gen->add_option("--m", gen_m, "input dimension")->required();
    c_gen->add_option("--state", gen_h, "state dimension")->required();
    auto* seed_opt = c_gen->add_option("--seed", seed, "RNG seed (default $SCHURKIT_SEED or 0)");
    c_gen->add_option("--dest", dest_path, "output colligation JSON file")->required();

    try {
        app.parse(argc, argv);
        seed_given = seed_opt->count() > 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    Invocation inv;
    try {
        if (c_validate->parsed()) {
            inv.command = "validate";
            Json in = schurkit::load_json_file(problem_path);
            inv.inputs.push_back(in);
            auto p = schurkit::problem_from_json(in);
            auto v = schurkit::validate(p, tol);
            inv.results = Json{{"solvable", v.solvable}, {"sigma_max", v.sigma_max}};
        } else if (c_unique->parsed()) {
            inv.command = "uniqueness";
            Json in = schurkit::load_json_file(problem_path);
            inv.inputs.push_back(in);
            auto p = schurkit::problem_from_json(in);
            auto v = schurkit::uniqueness(p, tol);
            inv.results = Json{{"unique", v.unique},
                               {"M_side_zero", v.M_side_zero},
                               {"N_side_zero", v.N_side_zero},
                               {"M_witness", v.M_witness},
                               {"N_witness", v.N_witness},
                               {"terminating_index", v.terminating_index
                                                         ? Json(*v.terminating_index)
                                                         : Json(nullptr)}};
        } else if (c_central->parsed()) {
            inv.command = "central";
            Json in = schurkit::load_json_file(problem_path);
            inv.inputs.push_back(in);
            auto p = schurkit::problem_from_json(in);
            const int n = static_cast<int>(p.coeffs.size()) - 1;
            const int k = order >= 0 ? order : n + 1;
            inv.options["order"] = k;
            auto series = schurkit::central_solution(p, k, tol);
            inv.results = Json{{"central", schurkit::series_to_json(series)}};
        } else if (c_params->parsed()) {
            inv.command = "schur-params";
            Json in = schurkit::load_json_file(problem_path);
            inv.inputs.push_back(in);
            auto p = schurkit::problem_from_json(in);
            const int n = static_cast<int>(p.coeffs.size()) - 1;
            const int l = levels >= 0 ? levels : n;
            inv.options["levels"] = l;
            auto cs = schurkit::operator_schur_params(schurkit::problem_series(p), l, tol);
            inv.results = Json{{"sequence", schurkit::sequence_to_json(cs)},
                               {"terminated", schurkit::terminated(cs)}};
            if (cs.m == 1 && cs.n == 1) {
                Json g = Json::array();
                for (const auto& mat : cs.gammas)
                    g.push_back(Json::array({mat(0, 0).real(), mat(0, 0).imag()}));
                inv.results["scalar_gammas"] = g;
            }
        } else if (c_shorted->parsed()) {
            inv.command = "shorted";
            Json in_s = schurkit::load_json_file(matrix_path);
            Json in_k = schurkit::load_json_file(subspace_path);
            inv.inputs.push_back(in_s);
            inv.inputs.push_back(in_k);
            auto s = schurkit::matrix_from_json(in_s);
            auto k = schurkit::subspace_from_json(in_k, tol);
            auto res = schurkit::shorted_operator(s, k, tol);
            inv.results = Json{{"full", schurkit::matrix_to_json(res.full)},
                               {"compressed", schurkit::matrix_to_json(res.compressed)},
                               {"numerical_rank", res.numerical_rank}};
        } else if (c_col->parsed()) {
            inv.command = "colligation";
            Json in = schurkit::load_json_file(colligation_path);
            inv.inputs.push_back(in);
            inv.options["verify"] = verify_mode;
            auto col = schurkit::colligation_from_json(in, tol);
            if (verify_mode == "main1") {
                inv.options["nmax"] = nmax;
                auto rep = schurkit::verify_main1(col, nmax, tol);
                inv.results = Json{{"skipped", rep.skipped},
                                   {"max_residual_M", rep.max_residual_M},
                                   {"max_residual_N", rep.max_residual_N}};
                if (rep.skipped)
                    inv.warnings.push_back("colligation not simple; identity not claimed");
            } else if (verify_mode == "zeta1") {
                inv.options["order"] = verify_order;
                auto rep = schurkit::associated_system(col, verify_order, tol);
                inv.results =
                    Json{{"system", schurkit::colligation_to_json(rep.system)},
                         {"unitarity_residual", rep.unitarity_residual},
                         {"transfer_residual", rep.transfer_residual},
                         {"theta1_constant_nonunitary", rep.theta1_constant_nonunitary}};
                if (rep.theta1_constant_nonunitary)
                    inv.warnings.push_back(
                        "first associated function is a constant non-unitary contraction");
            } else {
                auto rep = schurkit::simplicity_check(col, tol);
                inv.results =
                    Json{{"simple", rep.simple}, {"cnu_defect_dim", rep.cnu_defect_dim}};
            }
        } else if (c_limits->parsed()) {
            inv.command = "limits";
            Json in = schurkit::load_json_file(input_path);
            inv.inputs.push_back(in);
            inv.options["nmax"] = nmax;
            schurkit::ChoiceSequence cs;
            if (in.is_object() && in.contains("gammas")) {
                cs = schurkit::sequence_from_json(in);
            } else {
                auto p = schurkit::problem_from_json(in);
                cs = schurkit::operator_schur_params(
                    schurkit::problem_series(p), static_cast<int>(p.coeffs.size()) - 1, tol);
            }
            auto diag = schurkit::limit_diagnostics(cs, nmax, tol);
            inv.results = Json{{"M_sequence", matrix_list_json(diag.M_sequence)},
                               {"N_sequence", matrix_list_json(diag.N_sequence)},
                               {"M_limit_est", diag.M_limit_est},
                               {"N_limit_est", diag.N_limit_est},
                               {"observable_at_truncation", diag.observable},
                               {"controllable_at_truncation", diag.controllable},
                               {"monotonicity_violation", diag.monotonicity_violation}};
        } else if (c_gen->parsed()) {
            inv.command = "gen-colligation";
            const std::uint64_t use_seed = seed_given ? seed : seed_from_env();
            inv.options = Json{{"m", gen_m}, {"h", gen_h}, {"seed", use_seed}};
            auto col = schurkit::random_colligation(gen_m, gen_h, use_seed);
            schurkit::write_json_file(dest_path, schurkit::colligation_to_json(col));
            inv.results = Json{{"dest", dest_path}, {"m", col.m}, {"h", col.h}, {"seed", use_seed}};
        }

        Json report = make_report(inv, tol);
        std::cout << report.dump(2) << "\n";
        if (!out_path.empty()) schurkit::write_json_file(out_path, report);
        return 0;
    } catch (const schurkit::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const schurkit::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
