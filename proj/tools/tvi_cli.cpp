// Command-line front end: every subcommand reads a problem or game document,
// runs one operation, and prints a single machine-readable JSON report on
// stdout. Human-readable summaries go to stderr so stdout stays scriptable.
//
// Exit codes: 0 = success / NotFalsified / solution found,
//             1 = falsified / not a solution / no convergence,
//             2 = usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tvi/tvi.hpp"

namespace {

using tvi::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

tvi::Vector parse_csv_vector(const std::string& text) {
    tvi::Vector v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const double val = std::stod(item, &pos);
        v.push_back(val);
    }
    if (v.empty()) throw std::runtime_error("empty vector argument");
    return v;
}

void emit(const json& report, const std::string& summary) {
    std::cout << report.dump(2) << "\n";
    std::cerr << summary << "\n";
}

json solve_report_json(const tvi::SolveReport& rep) {
    return json{{"status", tvi::to_string(rep.status)},
                {"x", rep.x},
                {"residual", rep.residual},
                {"iterations", rep.iterations},
                {"x0_was_projected", rep.x0_was_projected},
                {"residual_trace", rep.residual_trace}};
}

json verdict_json(const tvi::Verdict& v) {
    json j{{"falsified", v.falsified}, {"samples_tested", v.samples_tested}};
    if (v.falsified) {
        j["value"] = v.value;
        j["witness_x"] = v.witness_x;
        if (!v.witness_y.empty()) j["witness_y"] = v.witness_y;
    }
    return j;
}

struct CommonFlags {
    std::string problem_path;
    std::string game_path;
    double tol = 1e-8;
    std::size_t max_iters = 100000;
    std::uint64_t seed = 0;
    std::size_t samples = 10000;
    std::size_t starts = 10;
    double spread = 1.0;
    std::string x_text;
    std::string method = "extragradient";
};

tvi::SolverParams solver_params(const CommonFlags& f) {
    tvi::SolverParams p;
    p.tol = f.tol;
    p.max_iters = f.max_iters;
    p.seed = f.seed;
    return p;
}

tvi::SolveReport run_solver(const tvi::TviProblem& P, const tvi::Vector& x0,
                            const CommonFlags& f) {
    const auto params = solver_params(f);
    if (f.method == "fixed-point") return tvi::solve_fixed_point(P, x0, params);
    if (f.method == "extragradient") return tvi::solve_extragradient(P, x0, params);
    throw std::runtime_error("unknown method: " + f.method);
}

json echo_inputs(const CommonFlags& f) {
    json j{{"tol", f.tol}, {"max_iters", f.max_iters}, {"seed", f.seed}};
    if (!f.problem_path.empty()) j["problem"] = f.problem_path;
    if (!f.game_path.empty()) j["game"] = f.game_path;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tensor variational inequality solver and analysis toolkit"};
    app.require_subcommand(1);

    CommonFlags f;
    int exit_code = 0;

    auto add_problem_opts = [&](CLI::App* cmd) {
        cmd->add_option("--problem", f.problem_path, "problem document (JSON)")->required();
        cmd->add_option("--tol", f.tol, "residual/feasibility tolerance");
        cmd->add_option("--seed", f.seed, "RNG seed");
    };

    auto* solve = app.add_subcommand("solve", "solve a TVI");
    add_problem_opts(solve);
    solve->add_option("--max-iters", f.max_iters, "iteration budget");
    solve->add_option("--x0", f.x_text, "starting point as comma-separated values");
    solve->add_option("--method", f.method, "extragradient | fixed-point");
    solve->callback([&] {
        const auto P = tvi::parse_problem(read_file(f.problem_path));
        const tvi::Vector x0 = f.x_text.empty() ? P.X.project(tvi::Vector(P.dim(), 0.0))
                                                : parse_csv_vector(f.x_text);
        const auto rep = run_solver(P, x0, f);
        json out{{"command", "solve"}, {"inputs", echo_inputs(f)}, {"result", solve_report_json(rep)}};
        out["inputs"]["method"] = f.method;
        emit(out, std::string("solve: ") + tvi::to_string(rep.status) +
                      ", residual = " + std::to_string(rep.residual));
        exit_code = rep.status == tvi::SolveStatus::Converged ? 0 : 1;
    });

    auto* verify = app.add_subcommand("verify", "verify a candidate solution");
    add_problem_opts(verify);
    verify->add_option("--x", f.x_text, "candidate point (comma-separated)")->required();
    verify->callback([&] {
        const auto P = tvi::parse_problem(read_file(f.problem_path));
        const auto x = parse_csv_vector(f.x_text);
        const auto rep = tvi::verify_solution(P, x, f.tol);
        json out{{"command", "verify"},
                 {"inputs", echo_inputs(f)},
                 {"result",
                  {{"is_solution", rep.is_solution}, {"residual", rep.residual}, {"F_at_x", rep.F_at_x}}}};
        emit(out, std::string("verify: ") + (rep.is_solution ? "solution" : "not a solution") +
                      ", residual = " + std::to_string(rep.residual));
        exit_code = rep.is_solution ? 0 : 1;
    });

    auto* residual = app.add_subcommand("residual", "natural residual at a point");
    add_problem_opts(residual);
    residual->add_option("--x", f.x_text, "point (comma-separated)")->required();
    residual->callback([&] {
        const auto P = tvi::parse_problem(read_file(f.problem_path));
        const auto x = parse_csv_vector(f.x_text);
        const double r = tvi::natural_residual(P, x);
        json out{{"command", "residual"},
                 {"inputs", echo_inputs(f)},
                 {"result", {{"residual", r}, {"F_at_x", tvi::eval_map(P, x)}}}};
        emit(out, "residual = " + std::to_string(r));
        exit_code = 0;
    });

    auto make_check = [&](const char* name, const char* title, bool spd) {
        auto* cmd = app.add_subcommand(name, title);
        add_problem_opts(cmd);
        cmd->add_option("--samples", f.samples, "number of random samples");
        cmd->callback([&, spd, name] {
            const auto P = tvi::parse_problem(read_file(f.problem_path));
            const tvi::Verdict v = spd ? tvi::check_spd_on(P.A, P.X, f.samples, f.seed)
                                       : tvi::check_pd_on(P.A, P.X, f.samples, f.seed);
            json out{{"command", name}, {"inputs", echo_inputs(f)}, {"result", verdict_json(v)}};
            out["inputs"]["samples"] = f.samples;
            emit(out, std::string(name) + ": " + (v.falsified ? "Falsified" : "NotFalsified") +
                          " after " + std::to_string(v.samples_tested) + " samples");
            exit_code = v.falsified ? 1 : 0;
        });
    };
    make_check("check-pd", "falsify positive definiteness on X", false);
    make_check("check-spd", "falsify strict positive definiteness on X", true);

    auto* modulus = app.add_subcommand("modulus", "sampled strong-monotonicity modulus bound");
    add_problem_opts(modulus);
    modulus->add_option("--samples", f.samples, "number of random pairs");
    modulus->callback([&] {
        const auto P = tvi::parse_problem(read_file(f.problem_path));
        const auto est = tvi::estimate_strong_modulus(P, f.samples, f.seed);
        json out{{"command", "modulus"},
                 {"inputs", echo_inputs(f)},
                 {"result",
                  {{"c_hat", est.c_hat},
                   {"argmin_x", est.argmin_pair.first},
                   {"argmin_y", est.argmin_pair.second}}}};
        out["inputs"]["samples"] = f.samples;
        emit(out, "modulus: c_hat <= " + std::to_string(est.c_hat));
        exit_code = 0;
    });

    auto* gus = app.add_subcommand("gus-probe", "multistart uniqueness probe");
    add_problem_opts(gus);
    gus->add_option("--max-iters", f.max_iters, "iteration budget per start");
    gus->add_option("--starts", f.starts, "number of random starts");
    gus->add_option("--spread", f.spread, "start sampling radius");
    gus->callback([&] {
        const auto P = tvi::parse_problem(read_file(f.problem_path));
        const auto rep = tvi::gus_probe(P, f.starts, f.spread, solver_params(f));
        json clusters = json::array();
        for (const auto& c : rep.clusters)
            clusters.push_back(json{{"representative", c.representative}, {"count", c.count}});
        json failures = json::array();
        for (const auto& fr : rep.failed_runs)
            failures.push_back(solve_report_json(fr));
        json out{{"command", "gus-probe"},
                 {"inputs", echo_inputs(f)},
                 {"result",
                  {{"clusters", clusters},
                   {"converged_runs", rep.converged_runs},
                   {"failed_runs", failures}}}};
        out["inputs"]["starts"] = f.starts;
        out["inputs"]["spread"] = f.spread;
        emit(out, "gus-probe: " + std::to_string(rep.clusters.size()) + " cluster(s), " +
                      std::to_string(rep.converged_runs) + "/" + std::to_string(f.starts) +
                      " runs converged");
        exit_code = rep.converged_runs > 0 ? 0 : 1;
    });

    auto add_game_opts = [&](CLI::App* cmd) {
        cmd->add_option("--game", f.game_path, "game document (JSON)")->required();
        cmd->add_option("--tol", f.tol, "tolerance");
        cmd->add_option("--seed", f.seed, "RNG seed");
    };

    auto* gcompile = app.add_subcommand("game-compile", "reduce a game to a TVI document");
    add_game_opts(gcompile);
    gcompile->callback([&] {
        const auto G = tvi::parse_game(read_file(f.game_path));
        const auto P = tvi::to_tvi(G);
        json out = tvi::serialize_problem(P);
        emit(out, "game-compile: order " + std::to_string(P.order()) + ", dim " +
                      std::to_string(P.dim()));
        exit_code = 0;
    });

    auto* gsolve = app.add_subcommand("game-solve", "solve a game via its TVI reduction");
    add_game_opts(gsolve);
    gsolve->add_option("--max-iters", f.max_iters, "iteration budget");
    gsolve->add_option("--x0", f.x_text, "starting profile (comma-separated)");
    gsolve->add_option("--method", f.method, "extragradient | fixed-point");
    gsolve->callback([&] {
        const auto G = tvi::parse_game(read_file(f.game_path));
        const auto P = tvi::to_tvi(G);
        const tvi::Vector x0 = f.x_text.empty() ? P.X.project(tvi::Vector(P.dim(), 0.0))
                                                : parse_csv_vector(f.x_text);
        const auto rep = run_solver(P, x0, f);
        const auto nash = tvi::verify_nash(G, rep.x, f.tol);
        json blocks = json::array();
        for (std::size_t k = 0; k < G.players(); ++k) {
            const auto b = G.block(rep.x, k);
            blocks.push_back(tvi::Vector(b.begin(), b.end()));
        }
        json out{{"command", "game-solve"},
                 {"inputs", echo_inputs(f)},
                 {"result",
                  {{"solve", solve_report_json(rep)},
                   {"strategies", blocks},
                   {"is_equilibrium", nash.is_equilibrium},
                   {"per_player_residuals", nash.per_player_residuals}}}};
        emit(out, std::string("game-solve: ") + tvi::to_string(rep.status) +
                      (nash.is_equilibrium ? ", equilibrium" : ", not an equilibrium"));
        exit_code =
            (rep.status == tvi::SolveStatus::Converged && nash.is_equilibrium) ? 0 : 1;
    });

    auto* gverify = app.add_subcommand("game-verify", "verify a Nash equilibrium candidate");
    add_game_opts(gverify);
    gverify->add_option("--x", f.x_text, "strategy profile (comma-separated)")->required();
    gverify->callback([&] {
        const auto G = tvi::parse_game(read_file(f.game_path));
        const auto x = parse_csv_vector(f.x_text);
        const auto nash = tvi::verify_nash(G, x, f.tol);
        json out{{"command", "game-verify"},
                 {"inputs", echo_inputs(f)},
                 {"result",
                  {{"is_equilibrium", nash.is_equilibrium},
                   {"per_player_residuals", nash.per_player_residuals}}}};
        emit(out, std::string("game-verify: ") +
                      (nash.is_equilibrium ? "equilibrium" : "not an equilibrium"));
        exit_code = nash.is_equilibrium ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const tvi::ParseError& e) {
        std::cerr << "input error at " << (e.location().empty() ? "/" : e.location()) << ": "
                  << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
