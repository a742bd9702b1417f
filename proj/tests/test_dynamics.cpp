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

#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "tempnet/dynamics.hpp"
#include "tempnet/scenarios.hpp"

using namespace tempnet;

namespace {

TemporalNetwork chain2() {
    TemporalNetwork net;
    net.globals.n = 2;
    net.globals.K = 1;
    net.globals.h = 0.24;
    net.globals.alpha = 0.93;
    net.globals.delta_bar = 1.0;
    net.globals.budget_per_step = {0.0};
    net.nodes.resize(2);
    for (auto& nd : net.nodes) {
        nd.cost = 1.0;
        nd.x_hat = 1.0;
        nd.per_step.assign(1, {0.2, 0.9, 1.0});
    }
    Edge e;
    e.from = 1;
    e.to = 0;
    e.per_step.assign(1, EdgeStepParams{0.0035, 0.35, 1.0});
    net.edges.push_back(e);
    validate(net);
    return net;
}

}  // namespace

TEST_CASE("nonlinear step fixed points and hand values") {
    TemporalNetwork net = chain2();
    RateSchedule rates = nominal_rates(net);

    Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
    CHECK(step_nonlinear(zero, net, 0, rates).isZero());

    Eigen::VectorXd x(2);
    x << 0.0, 1.0;
    Eigen::VectorXd next = step_nonlinear(x, net, 0, rates);
    CHECK(next[0] == doctest::Approx(0.084).epsilon(1e-12));
    CHECK(next[1] == doctest::Approx(0.952).epsilon(1e-12));

    // here the linear step coincides because x_1 = 0 kills the bilinear term
    Eigen::VectorXd lin = step_linear(x, build_state_matrix(net, 0, rates));
    CHECK((next - lin).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("single node pure recovery") {
    TemporalNetwork net;
    net.globals.n = 1;
    net.globals.K = 1;
    net.globals.h = 0.24;
    net.globals.alpha = 0.93;
    net.globals.delta_bar = 1.0;
    net.globals.budget_per_step = {0.0};
    net.nodes.resize(1);
    net.nodes[0].cost = 1.0;
    net.nodes[0].x_hat = 1.0;
    net.nodes[0].per_step.assign(1, {0.2, 0.9, 1.0});
    validate(net);
    Eigen::VectorXd x(1);
    x << 1.0;
    CHECK(step_nonlinear(x, net, 0, nominal_rates(net))[0] == doctest::Approx(0.952));
}

TEST_CASE("forward invariance and linear dominance on random instances") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        TemporalNetwork net = testing::random_network(rng);
        RateSchedule rates = testing::random_rates(net, rng);
        Eigen::VectorXd x1(net.n());
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = 0; i < net.n(); ++i) x1[i] = unit(rng);

        Trajectory nl = simulate(net, rates, x1, TrajectoryKind::Nonlinear);
        Trajectory li = simulate(net, rates, x1, TrajectoryKind::Linear);
        REQUIRE(nl.states.size() == static_cast<size_t>(net.K() + 1));
        for (size_t k = 0; k < nl.states.size(); ++k) {
            CHECK(nl.states[k].minCoeff() >= 0.0);
            CHECK(nl.states[k].maxCoeff() <= 1.0 + 1e-15);
            CHECK((li.states[k] - nl.states[k]).minCoeff() >= -1e-12);
        }
    }
}

TEST_CASE("raising beta raises and raising delta lowers linear trajectories") {
    std::mt19937_64 rng(37);
    TemporalNetwork net = testing::random_network(rng, 10, 4);
    RateSchedule rates = testing::random_rates(net, rng);
    Eigen::VectorXd x1 = Eigen::VectorXd::Constant(net.n(), 0.5);
    Trajectory base = simulate(net, rates, x1, TrajectoryKind::Linear);

    if (!net.edges_at[0].empty()) {
        RateSchedule up = rates;
        int e = net.edges_at[0][0];
        up.beta[0][e] = net.edges[e].per_step[0]->beta_hi;
        Trajectory t = simulate(net, up, x1, TrajectoryKind::Linear);
        for (size_t k = 0; k < t.states.size(); ++k)
            CHECK((t.states[k] - base.states[k]).minCoeff() >= -1e-12);
    }
    {
        RateSchedule up = rates;
        up.delta[0][0] = net.nodes[0].per_step[0].delta_hi;
        Trajectory t = simulate(net, up, x1, TrajectoryKind::Linear);
        for (size_t k = 0; k < t.states.size(); ++k)
            CHECK((base.states[k] - t.states[k]).minCoeff() >= -1e-12);
    }
}

TEST_CASE("trajectory cost uses alpha^{k-1} stage discounting") {
    Trajectory traj;
    traj.kind = TrajectoryKind::Nonlinear;
    for (int k = 0; k < 5; ++k) traj.states.push_back(Eigen::VectorXd::Ones(1));
    Eigen::VectorXd c(1);
    c << 1.0;
    CostReport rep = trajectory_cost(traj, c, 0.93);
    CHECK(rep.per_step.size() == 4);
    CHECK(rep.total == doctest::Approx(1.0 + 0.93 + 0.8649 + 0.804357).epsilon(1e-12));

    c << 0.0;
    CHECK(trajectory_cost(traj, c, 0.93).total == 0.0);

    Trajectory zero;
    for (int k = 0; k < 5; ++k) zero.states.push_back(Eigen::VectorXd::Zero(1));
    c << 1.0;
    CHECK(trajectory_cost(zero, c, 0.93).total == 0.0);
}

TEST_CASE("stochastic simulation is seeded and reproducible") {
    TemporalNetwork net = gen_influence(testing::toy7_spec());
    RateSchedule rates = nominal_rates(net);
    Eigen::VectorXd x1 = Eigen::VectorXd::Ones(7);
    Trajectory a = simulate(net, rates, x1, TrajectoryKind::StochasticSample, 99);
    Trajectory b = simulate(net, rates, x1, TrajectoryKind::StochasticSample, 99);
    Trajectory c = simulate(net, rates, x1, TrajectoryKind::StochasticSample, 100);
    bool identical = true, differs = false;
    for (size_t k = 0; k < a.states.size(); ++k) {
        identical = identical && a.states[k] == b.states[k];
        differs = differs || a.states[k] != c.states[k];
    }
    CHECK(identical);
    CHECK(differs);  // different seed should give a different sample path
}

TEST_CASE("single-node recovery frequency matches the Bernoulli mean") {
    TemporalNetwork net;
    net.globals.n = 1;
    net.globals.K = 1;
    net.globals.h = 0.24;
    net.globals.alpha = 1.0;
    net.globals.delta_bar = 1.0;
    net.globals.budget_per_step = {0.0};
    net.nodes.resize(1);
    net.nodes[0].cost = 1.0;
    net.nodes[0].x_hat = 1.0;
    net.nodes[0].per_step.assign(1, {0.2, 0.9, 1.0});  // h*delta = 0.048
    validate(net);

    const int runs = 100000;
    Eigen::VectorXd x1 = Eigen::VectorXd::Ones(1);
    Eigen::VectorXd mean =
        monte_carlo_state_mean(net, nominal_rates(net), x1, 2, runs, 4242, false);
    double recovered = 1.0 - mean[0];
    // 3-sigma binomial bound around 0.048
    CHECK(recovered == doctest::Approx(0.048).epsilon(0.065));
    CHECK(std::abs(recovered - 0.048) < 3.0 * std::sqrt(0.048 * 0.952 / runs));
}

TEST_CASE("one-step stochastic mean tracks the mean-field prediction") {
    TemporalNetwork net = gen_influence(testing::toy7_spec());
    RateSchedule rates = nominal_rates(net);
    Eigen::VectorXd x1(7);
    x1 << 1, 0, 1, 0, 0, 1, 0;  // deterministic start
    const int runs = 40000;
    Eigen::VectorXd mc = monte_carlo_state_mean(net, rates, x1, 2, runs, 7, false);
    Eigen::VectorXd mf = step_nonlinear(x1, net, 0, rates);
    for (int i = 0; i < 7; ++i)
        CHECK(std::abs(mc[i] - mf[i]) < 4.0 / std::sqrt(static_cast<double>(runs)));
}

TEST_CASE("all-zero start stays zero for every kind") {
    TemporalNetwork net = gen_influence(testing::toy7_spec());
    RateSchedule rates = nominal_rates(net);
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(7);
    for (auto kind :
         {TrajectoryKind::Nonlinear, TrajectoryKind::Linear, TrajectoryKind::StochasticSample}) {
        Trajectory t = simulate(net, rates, zero, kind, 1);
        for (const auto& x : t.states) CHECK(x.isZero());
    }
}

TEST_CASE("trajectory CSV export shape") {
    TemporalNetwork net = chain2();
    Trajectory t = simulate(net, nominal_rates(net), Eigen::VectorXd::Zero(2),
                            TrajectoryKind::Linear);
    std::ostringstream os;
    write_trajectory_csv(t, os);
    std::string text = os.str();
    CHECK(text.substr(0, 16) == "step,node,value\n");
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 2);
}
