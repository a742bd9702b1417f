// Copyright 2026 The tempnet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// tempnet command-line frontend.
//
// Exit codes: 0 success, 1 I/O or parse failure, 2 validation/build failure,
// 3 infeasible, 4 solver numerical failure.

#include <CLI11.hpp>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "tempnet/dynamics.hpp"
#include "tempnet/ecp_builder.hpp"
#include "tempnet/log.hpp"
#include "tempnet/risk_bound.hpp"
#include "tempnet/scenarios.hpp"
#include "tempnet/solver.hpp"
#include "tempnet/sparsity.hpp"

namespace {

using nlohmann::ordered_json;
using namespace tempnet;

constexpr const char* kVersion = "0.1.0";

struct CliError : std::runtime_error {
    int code;
    CliError(int code_, const std::string& msg) : std::runtime_error(msg), code(code_) {}
};

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw CliError(1, "cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

struct Manifest {
    std::string command;
    std::string scenario;
    ordered_json overrides = ordered_json::object();
    std::uint64_t seed = 0;
    std::filesystem::path out_dir;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void write() const {
        ordered_json j;
        j["command"] = command;
        j["scenario"] = scenario;
        j["overrides"] = overrides;
        j["seed"] = seed;
        j["out_dir"] = out_dir.string();
        j["tool_version"] = kVersion;
        j["wall_time_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_atomic(out_dir / "manifest.json", j.dump(2) + "\n");
    }
};

std::filesystem::path ensure_out_dir(const std::string& out) {
    std::filesystem::path dir(out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw CliError(1, "cannot create output directory " + dir.string());
    return dir;
}

TemporalNetwork load(const std::string& path, bool allow_row_sum) {
    ValidateOptions opts;
    opts.allow_row_sum_violation = allow_row_sum;
    return load_scenario(path, opts);
}

// "1.5", "1.5:25" or "1,2,3,4:25" -> per-step budgets (+ optional total)
void apply_budget_overrides(TemporalNetwork& net, const std::string& text) {
    std::string steps = text, total;
    if (auto pos = text.find(':'); pos != std::string::npos) {
        steps = text.substr(0, pos);
        total = text.substr(pos + 1);
    }
    std::vector<double> vals;
    std::stringstream ss(steps);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
    if (vals.size() == 1) {
        net.globals.budget_per_step.assign(net.K(), vals[0]);
    } else if (static_cast<int>(vals.size()) == net.K()) {
        net.globals.budget_per_step = vals;
    } else {
        throw CliError(2, "budget override needs 1 or K values");
    }
    if (!total.empty()) {
        net.globals.budget_total = std::stod(total);
    } else {
        double sum = 0.0;
        for (double v : net.globals.budget_per_step) sum += v;
        net.globals.budget_total = sum;
    }
}

ordered_json rates_to_json(const TemporalNetwork& net, const RateSchedule& rates) {
    ordered_json j;
    j["beta"] = ordered_json::array();
    for (size_t e = 0; e < net.edges.size(); ++e) {
        ordered_json steps = ordered_json::array();
        for (int k = 0; k < net.K(); ++k) {
            if (net.edges[e].per_step[k])
                steps.push_back(rates.beta[k][e]);
            else
                steps.push_back(nullptr);
        }
        j["beta"].push_back({{"from", net.edges[e].from + 1},
                             {"to", net.edges[e].to + 1},
                             {"per_step", steps}});
    }
    j["delta"] = ordered_json::array();
    for (int k = 0; k < net.K(); ++k) j["delta"].push_back(rates.delta[k]);
    return j;
}

RateSchedule rates_from_json(const TemporalNetwork& net, const ordered_json& j) {
    RateSchedule r = nominal_rates(net);
    for (const auto& je : j.at("beta")) {
        int from = je.at("from").get<int>() - 1;
        int to = je.at("to").get<int>() - 1;
        int eid = -1;
        for (size_t e = 0; e < net.edges.size(); ++e)
            if (net.edges[e].from == from && net.edges[e].to == to) eid = static_cast<int>(e);
        if (eid < 0) throw CliError(2, "rates file references an unknown edge");
        const auto& steps = je.at("per_step");
        for (int k = 0; k < net.K(); ++k)
            if (!steps.at(k).is_null()) r.beta[k][eid] = steps.at(k).get<double>();
    }
    const auto& jd = j.at("delta");
    for (int k = 0; k < net.K(); ++k)
        for (int i = 0; i < net.n(); ++i) r.delta[k][i] = jd.at(k).at(i).get<double>();
    validate_rates(net, r);
    return r;
}

ordered_json certificate_to_json(const RiskCertificate& cert, const CertificateReport& rep,
                                 const Eigen::VectorXd& x_hat) {
    ordered_json j;
    j["mode"] = cert.mode == HorizonMode::Finite ? "finite" : "infinite";
    j["p"] = ordered_json::array();
    for (const auto& p : cert.p) {
        std::vector<double> row(p.data(), p.data() + p.size());
        j["p"].push_back(row);
    }
    Eigen::VectorXd R = cert.p[0].cwiseProduct(x_hat);
    j["max_risk"] = R.size() ? R.maxCoeff() : 0.0;
    j["total_risk"] = R.sum();
    j["verification"] = {{"max_violation", rep.max_violation},
                         {"nonneg_violation", rep.nonneg_violation},
                         {"tol", rep.tol},
                         {"pass", rep.pass}};
    return j;
}

std::string fmt_csv(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, static_cast<size_t>(end - buf));
}

void write_risk_csv(const Eigen::VectorXd& R, const std::filesystem::path& path) {
    std::ostringstream os;
    os << "node,risk\n";
    for (int i = 0; i < R.size(); ++i) os << (i + 1) << ',' << fmt_csv(R[i]) << '\n';
    write_atomic(path, os.str());
}

ordered_json allocation_to_json(const TemporalNetwork& net, const AllocationResult& a,
                                const std::string& problem) {
    ordered_json j;
    j["problem"] = problem;
    j["status"] = to_string(a.status);
    j["objective"] = a.objective;
    j["max_risk"] = a.max_risk;
    j["total_risk"] = a.total_risk;
    j["residuals"] = {{"primal_feas", a.residuals.primal_feas},
                      {"dual_feas", a.residuals.dual_feas},
                      {"rel_gap", a.residuals.rel_gap}};
    j["iterations"] = a.iterations;
    j["budget_used"] = a.budget_used;
    j["budget_used_total"] = a.budget_used_total;
    j["u"] = ordered_json::array();
    for (int k = 0; k < net.K(); ++k)
        for (size_t e = 0; e < net.edges.size(); ++e)
            if (a.u_amount[k][e] > 1e-12)
                j["u"].push_back({{"k", k + 1},
                                  {"from", net.edges[e].from + 1},
                                  {"to", net.edges[e].to + 1},
                                  {"amount", a.u_amount[k][e]}});
    j["v"] = ordered_json::array();
    for (int k = 0; k < net.K(); ++k)
        for (int i = 0; i < net.n(); ++i)
            if (a.v_amount[k][i] > 1e-12)
                j["v"].push_back({{"k", k + 1}, {"node", i + 1}, {"amount", a.v_amount[k][i]}});
    j["rates"] = rates_to_json(net, a.rates);
    j["certificate"] = certificate_to_json(a.certificate, a.verification, net.x_hat_vector());
    return j;
}

void write_allocation_csv(const TemporalNetwork& net, const AllocationResult& a,
                          const std::filesystem::path& path) {
    std::ostringstream os;
    os << "k,type,from,to,amount\n";
    for (int k = 0; k < net.K(); ++k) {
        for (size_t e = 0; e < net.edges.size(); ++e)
            if (a.u_amount[k][e] > 1e-12)
                os << (k + 1) << ",edge," << (net.edges[e].from + 1) << ','
                   << (net.edges[e].to + 1) << ',' << fmt_csv(a.u_amount[k][e]) << '\n';
        for (int i = 0; i < net.n(); ++i)
            if (a.v_amount[k][i] > 1e-12)
                os << (k + 1) << ",node," << (i + 1) << ",," << fmt_csv(a.v_amount[k][i]) << '\n';
    }
    write_atomic(path, os.str());
}

int status_exit_code(SolveStatus st) {
    switch (st) {
        case SolveStatus::Optimal: return 0;
        case SolveStatus::Infeasible: return 3;
        default: return 4;
    }
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& scenario, bool allow_row_sum) {
    TemporalNetwork net = load(scenario, allow_row_sum);
    std::cout << "valid: n=" << net.n() << " K=" << net.K() << " edges=" << net.edges.size()
              << "\n";
    return 0;
}

int cmd_bound(const std::string& scenario, const std::string& rates_file,
              const std::string& mode_override, const std::string& out, bool allow_row_sum) {
    TemporalNetwork net = load(scenario, allow_row_sum);
    if (mode_override == "finite") net.globals.horizon_mode = HorizonMode::Finite;
    if (mode_override == "infinite") net.globals.horizon_mode = HorizonMode::Infinite;

    RateSchedule rates = nominal_rates(net);
    if (!rates_file.empty()) {
        std::ifstream in(rates_file);
        if (!in) throw CliError(1, "cannot open rates file " + rates_file);
        ordered_json j = ordered_json::parse(in);
        rates = rates_from_json(net, j.contains("rates") ? j["rates"] : j);
    }

    Manifest mf;
    mf.command = "bound";
    mf.scenario = scenario;
    mf.out_dir = ensure_out_dir(out);
    mf.overrides["rates"] = rates_file;
    mf.overrides["mode"] = mode_override;

    RiskCertificate cert = net.globals.horizon_mode == HorizonMode::Finite
                               ? tight_certificate(net, rates)
                               : infinite_certificate(net, rates);
    CertificateReport rep = verify_certificate(cert, net, rates, 1e-9);
    Eigen::VectorXd R = risk_vector(cert, net.x_hat_vector());

    write_atomic(mf.out_dir / "certificate.json",
                 certificate_to_json(cert, rep, net.x_hat_vector()).dump(2) + "\n");
    write_risk_csv(R, mf.out_dir / "risk.csv");
    mf.write();
    std::cout << "max_risk " << max_risk(R) << "\ntotal_risk " << total_risk(R) << "\nverified "
              << (rep.pass ? "yes" : "no") << "\n";
    return 0;
}

int cmd_simulate(const std::string& scenario, const std::string& kind_name, int runs,
                 std::uint64_t seed, const std::string& rates_file, const std::string& out,
                 bool allow_row_sum) {
    TemporalNetwork net = load(scenario, allow_row_sum);
    TrajectoryKind kind;
    if (kind_name == "nonlinear")
        kind = TrajectoryKind::Nonlinear;
    else if (kind_name == "linear")
        kind = TrajectoryKind::Linear;
    else if (kind_name == "stochastic")
        kind = TrajectoryKind::StochasticSample;
    else
        throw CliError(2, "unknown kind '" + kind_name + "'");

    RateSchedule rates = nominal_rates(net);
    if (!rates_file.empty()) {
        std::ifstream in(rates_file);
        if (!in) throw CliError(1, "cannot open rates file " + rates_file);
        ordered_json j = ordered_json::parse(in);
        rates = rates_from_json(net, j.contains("rates") ? j["rates"] : j);
    }

    Manifest mf;
    mf.command = "simulate";
    mf.scenario = scenario;
    mf.seed = seed;
    mf.out_dir = ensure_out_dir(out);
    mf.overrides["kind"] = kind_name;
    mf.overrides["runs"] = runs;
    mf.overrides["rates"] = rates_file;

    Eigen::VectorXd x1 = net.x_hat_vector();
    Trajectory traj = simulate(net, rates, x1, kind, seed);
    std::ostringstream os;
    write_trajectory_csv(traj, os);
    write_atomic(mf.out_dir / "trajectory.csv", os.str());

    if (kind == TrajectoryKind::StochasticSample && runs > 1) {
        MonteCarloSummary mc = monte_carlo(net, rates, x1, runs, seed);
        ordered_json j = {{"runs", mc.runs},
                          {"seed", mc.seed},
                          {"mean_cost", mc.mean_cost},
                          {"stderr", mc.stderr_mean}};
        write_atomic(mf.out_dir / "mc.json", j.dump(2) + "\n");
        std::cout << "mean_cost " << mc.mean_cost << " stderr " << mc.stderr_mean << "\n";
    } else {
        CostReport cost = trajectory_cost(traj, net.cost_vector(), net.globals.alpha);
        std::cout << "cost " << cost.total << "\n";
    }
    mf.write();
    return 0;
}

int cmd_allocate(const std::string& scenario, const std::string& problem, double gamma,
                 const std::string& budget_overrides, const std::string& mode_override,
                 const std::string& box_mode, bool tie, const std::string& out,
                 const std::string& dump_file, bool allow_row_sum) {
    TemporalNetwork net = load(scenario, allow_row_sum);
    if (!budget_overrides.empty()) apply_budget_overrides(net, budget_overrides);
    if (mode_override == "finite") net.globals.horizon_mode = HorizonMode::Finite;
    if (mode_override == "infinite") net.globals.horizon_mode = HorizonMode::Infinite;

    BuildOptions opts;
    opts.box_mode = box_mode == "per_step" ? BoxMode::PerStep : BoxMode::Cumulative;
    opts.tie_node_resources = tie;

    Manifest mf;
    mf.command = "allocate";
    mf.scenario = scenario;
    mf.out_dir = ensure_out_dir(out);
    mf.overrides = {{"problem", problem},           {"gamma", gamma},
                    {"budget", budget_overrides},   {"mode", mode_override},
                    {"box_mode", box_mode},         {"tie_node_resources", tie}};

    BuildResult br;
    if (problem == "risk") {
        br = build_problem1(net, opts);
    } else if (problem == "budget") {
        if (!(gamma > 0.0)) throw CliError(2, "--problem budget requires --gamma > 0");
        br = build_problem2(net, gamma, opts);
    } else {
        throw CliError(2, "--problem must be 'risk' or 'budget'");
    }
    if (!dump_file.empty()) {
        std::ostringstream os;
        br.program.dump(os);
        write_atomic(dump_file, os.str());
    }

    Solution sol = solve(br.program);
    AllocationResult alloc = recover(sol, br.book, net, opts);
    write_atomic(mf.out_dir / "allocation.json",
                 allocation_to_json(net, alloc, problem).dump(2) + "\n");
    write_allocation_csv(net, alloc, mf.out_dir / "allocation.csv");
    write_atomic(mf.out_dir / "certificate.json",
                 certificate_to_json(alloc.certificate, alloc.verification, net.x_hat_vector())
                         .dump(2) +
                     "\n");
    write_risk_csv(risk_vector(alloc.certificate, net.x_hat_vector()), mf.out_dir / "risk.csv");
    mf.write();

    std::cout << "status " << to_string(sol.status) << "\nobjective " << sol.obj_primal
              << "\nmax_risk " << alloc.max_risk << "\nbudget_used " << alloc.budget_used_total
              << "\n";
    if (sol.status == SolveStatus::Infeasible)
        std::cout << "infeasibility certificate: dual objective " << sol.obj_dual << "\n";
    return status_exit_code(sol.status);
}

int cmd_sparsify(const std::string& scenario, double gamma, double support_bound, double epsilon,
                 int qmax, bool relax_budgets, const std::string& box_mode, bool tie,
                 const std::string& out, bool allow_row_sum) {
    TemporalNetwork net = load(scenario, allow_row_sum);

    ReweightSettings settings;
    settings.epsilon = epsilon;
    settings.max_iters = qmax;
    settings.relax_budgets = relax_budgets;
    settings.build.box_mode = box_mode == "per_step" ? BoxMode::PerStep : BoxMode::Cumulative;
    settings.build.tie_node_resources = tie;
    if (gamma > 0.0) {
        settings.problem = ProblemKind::ResourceMin;
        settings.gamma = gamma;
    } else if (support_bound >= 0.0) {
        settings.problem = ProblemKind::RiskMin;
        settings.support_bound = support_bound;
    } else {
        throw CliError(2, "sparsify needs --gamma (risk bound) or --M (support bound)");
    }

    Manifest mf;
    mf.command = "sparsify";
    mf.scenario = scenario;
    mf.out_dir = ensure_out_dir(out);
    mf.overrides = {{"gamma", gamma},     {"M", support_bound},
                    {"epsilon", epsilon}, {"qmax", qmax},
                    {"relax_budgets", relax_budgets}, {"box_mode", box_mode}};

    ReweightResult res = reweighted_l1(net, settings);

    ordered_json trace = ordered_json::array();
    for (const auto& it : res.trace)
        trace.push_back({{"q", it.q},
                         {"support_size", it.support_size},
                         {"objective", it.objective},
                         {"max_risk", it.max_risk},
                         {"status", to_string(it.status)},
                         {"residuals",
                          {{"primal_feas", it.residuals.primal_feas},
                           {"dual_feas", it.residuals.dual_feas},
                           {"rel_gap", it.residuals.rel_gap}}}});
    ordered_json jt = {{"iterations", trace},
                       {"converged", res.converged},
                       {"stop_reason", res.stop_reason}};
    write_atomic(mf.out_dir / "sparsify_trace.json", jt.dump(2) + "\n");

    std::string problem = settings.problem == ProblemKind::ResourceMin ? "budget" : "risk";
    write_atomic(mf.out_dir / "allocation.json",
                 allocation_to_json(net, res.final, problem).dump(2) + "\n");
    write_allocation_csv(net, res.final, mf.out_dir / "allocation.csv");
    write_atomic(mf.out_dir / "certificate.json",
                 certificate_to_json(res.final.certificate, res.final.verification,
                                     net.x_hat_vector())
                         .dump(2) +
                     "\n");
    mf.write();

    std::cout << "iterations " << res.trace.size() << "\nfinal_support "
              << res.trace.back().support_size << "\nstop " << res.stop_reason << "\n";
    return 0;
}

int cmd_generate(const std::string& family, const std::string& spec_file,
                 const std::string& out_file) {
    TemporalNetwork net = generate_from_spec_file(family, spec_file);
    save_scenario(net, out_file);
    std::cout << "wrote " << out_file << " (n=" << net.n() << " K=" << net.K()
              << " edges=" << net.edges.size() << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tempnet: certified risk bounds and sparse resource allocation for "
                 "spreading processes on temporal-switching networks"};
    app.require_subcommand(1);

    bool allow_row_sum = false;
    app.add_flag("--allow-row-sum", allow_row_sum,
                 "accept scenarios whose h*sum(beta_hi) row sums reach 1 (risk bounds stay "
                 "valid; the nonlinear model may leave [0,1])");

    std::string scenario, out = "out";

    auto* validate_cmd = app.add_subcommand("validate", "check a scenario file");
    validate_cmd->add_option("scenario", scenario)->required();

    auto* bound_cmd = app.add_subcommand("bound", "compute and verify a risk certificate");
    std::string rates_file, mode_override;
    bound_cmd->add_option("scenario", scenario)->required();
    bound_cmd->add_option("--rates", rates_file, "allocation.json (or rates object) to bound at");
    bound_cmd->add_option("--mode", mode_override)->check(CLI::IsMember({"finite", "infinite"}));
    bound_cmd->add_option("--out", out);

    auto* sim_cmd = app.add_subcommand("simulate", "roll out trajectories");
    std::string kind = "nonlinear";
    int runs = 1;
    std::uint64_t seed = 0;
    sim_cmd->add_option("scenario", scenario)->required();
    sim_cmd->add_option("--kind", kind)
        ->check(CLI::IsMember({"nonlinear", "linear", "stochastic"}));
    sim_cmd->add_option("--runs", runs);
    sim_cmd->add_option("--seed", seed);
    sim_cmd->add_option("--rates", rates_file);
    sim_cmd->add_option("--out", out);

    auto* alloc_cmd = app.add_subcommand("allocate", "solve a resource-allocation problem");
    std::string problem = "risk", budget_overrides, box_mode = "cumulative", dump_file;
    double gamma = 0.0;
    bool tie = false;
    alloc_cmd->add_option("scenario", scenario)->required();
    alloc_cmd->add_option("--problem", problem)->check(CLI::IsMember({"risk", "budget"}));
    alloc_cmd->add_option("--gamma", gamma,
                          "risk bound for --problem budget, in probability-cost units (bounds "
                          "every R_i = p_i^1 x_i)");
    alloc_cmd->add_option("--budget-overrides", budget_overrides,
                          "per-step budget(s), optionally :total (e.g. 1.5 or 1,2,3,4:8)");
    alloc_cmd->add_option("--mode", mode_override)->check(CLI::IsMember({"finite", "infinite"}));
    alloc_cmd->add_option("--box-mode", box_mode)
        ->check(CLI::IsMember({"cumulative", "per_step"}));
    alloc_cmd->add_flag("--tie-node-resources", tie);
    alloc_cmd->add_option("--dump-program", dump_file);
    alloc_cmd->add_option("--out", out);

    auto* sparse_cmd = app.add_subcommand("sparsify", "reweighted-l1 support minimization");
    double s_gamma = 0.0, s_bound = -1.0, epsilon = 1e-4;
    int qmax = 10;
    bool relax = false, s_tie = false;
    std::string s_box = "cumulative";
    sparse_cmd->add_option("scenario", scenario)->required();
    sparse_cmd->add_option("--gamma", s_gamma, "risk bound (Problem-2 variant)");
    sparse_cmd->add_option("--M", s_bound, "support bound (Problem-1 variant)");
    sparse_cmd->add_option("--epsilon", epsilon);
    sparse_cmd->add_option("--qmax", qmax);
    sparse_cmd->add_flag("--relax-budgets", relax);
    sparse_cmd->add_option("--box-mode", s_box)->check(CLI::IsMember({"cumulative", "per_step"}));
    sparse_cmd->add_flag("--tie-node-resources", s_tie);
    sparse_cmd->add_option("--out", out);

    auto* gen_cmd = app.add_subcommand("generate", "build a scenario from a generator spec");
    std::string family, spec_file, out_file = "scenario.json";
    gen_cmd->add_option("family", family)
        ->required()
        ->check(CLI::IsMember({"wildfire", "air", "influence"}));
    gen_cmd->add_option("--spec", spec_file)->required();
    gen_cmd->add_option("--out-file", out_file);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate_cmd) return cmd_validate(scenario, allow_row_sum);
        if (*bound_cmd) return cmd_bound(scenario, rates_file, mode_override, out, allow_row_sum);
        if (*sim_cmd)
            return cmd_simulate(scenario, kind, runs, seed, rates_file, out, allow_row_sum);
        if (*alloc_cmd)
            return cmd_allocate(scenario, problem, gamma, budget_overrides, mode_override,
                                box_mode, tie, out, dump_file, allow_row_sum);
        if (*sparse_cmd)
            return cmd_sparsify(scenario, s_gamma, s_bound, epsilon, qmax, relax, s_box, s_tie,
                                out, allow_row_sum);
        if (*gen_cmd) return cmd_generate(family, spec_file, out_file);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BuildError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SparsifyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::string(e.what()).find("infeasible") != std::string::npos ? 3 : 4;
    } catch (const DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
