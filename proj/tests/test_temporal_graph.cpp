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

#include <filesystem>

#include "oracles.hpp"
#include "tempnet/scenarios.hpp"
#include "tempnet/temporal_graph.hpp"

using namespace tempnet;

namespace {

TemporalNetwork single_node(double delta = 0.2, double h = 0.24, double alpha = 0.93, int K = 1) {
    TemporalNetwork net;
    net.globals.n = 1;
    net.globals.K = K;
    net.globals.h = h;
    net.globals.alpha = alpha;
    net.globals.delta_bar = 1.0;
    net.globals.budget_per_step.assign(K, 0.0);
    net.globals.budget_total = 0.0;
    net.nodes.resize(1);
    net.nodes[0].cost = 1.0;
    net.nodes[0].x_hat = 1.0;
    net.nodes[0].per_step.assign(K, {delta, 0.9, 1.0});
    validate(net);
    return net;
}

}  // namespace

TEST_CASE("toy 7-node scenario loads and validates") {
    TemporalNetwork net = gen_influence(testing::toy7_spec());
    CHECK(net.n() == 7);
    CHECK(net.K() == 4);
    // homogeneous rates everywhere
    for (int k = 0; k < net.K(); ++k)
        for (int e : net.edges_at[k]) CHECK(net.edges[e].per_step[k]->beta_hi == 0.35);
}

TEST_CASE("row-sum violation is rejected and overridable") {
    TemporalNetwork net;
    net.globals.n = 2;
    net.globals.K = 1;
    net.globals.h = 0.5;
    net.globals.alpha = 1.0;
    net.globals.delta_bar = 1.0;  // h*delta_bar = 0.5 < 1
    net.globals.budget_per_step = {0.0};
    net.nodes.resize(2);
    for (auto& nd : net.nodes) {
        nd.cost = 1.0;
        nd.x_hat = 0.5;
        nd.per_step.assign(1, {0.2, 0.5, 1.0});
    }
    Edge e;
    e.from = 1;
    e.to = 0;
    e.per_step.assign(1, EdgeStepParams{0.1, 2.4, 1.0});  // h*sum = 1.2
    net.edges.push_back(e);

    TemporalNetwork copy = net;
    CHECK_THROWS_WITH_AS(validate(copy), doctest::Contains("row_sum"), ValidationError);
    ValidateOptions opts;
    opts.allow_row_sum_violation = true;
    TemporalNetwork copy2 = net;
    CHECK_NOTHROW(validate(copy2, opts));
}

TEST_CASE("degenerate single isolated node is valid") {
    CHECK_NOTHROW(single_node());
}

TEST_CASE("state matrix matches the definition") {
    SUBCASE("n=1") {
        TemporalNetwork net = single_node();
        auto A = build_state_matrix(net, 0, nominal_rates(net));
        CHECK(A.coeff(0, 0) == doctest::Approx(0.952).epsilon(1e-12));
    }
    SUBCASE("n=2 chain") {
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
        Edge e;  // spread from node 2 into node 1
        e.from = 1;
        e.to = 0;
        e.per_step.assign(1, EdgeStepParams{0.0035, 0.35, 1.0});
        net.edges.push_back(e);
        validate(net);
        Eigen::MatrixXd A = Eigen::MatrixXd(build_state_matrix(net, 0, nominal_rates(net)));
        CHECK(A(0, 0) == doctest::Approx(0.952));
        CHECK(A(0, 1) == doctest::Approx(0.084));
        CHECK(A(1, 0) == 0.0);
        CHECK(A(1, 1) == doctest::Approx(0.952));
    }
    SUBCASE("toy step 1 against the dense oracle") {
        TemporalNetwork net = gen_influence(testing::toy7_spec());
        RateSchedule rates = nominal_rates(net);
        Eigen::MatrixXd A = Eigen::MatrixXd(build_state_matrix(net, 0, rates));
        Eigen::MatrixXd D = testing::dense_state_matrix(net, 0, rates);
        CHECK((A - D).cwiseAbs().maxCoeff() == 0.0);
        // row i sums to 1 - h*delta_i + h*sum_j beta_ij; each entry lies in [0,1)
        for (int i = 0; i < 7; ++i) {
            double indeg_beta = 0.0;
            for (int e : net.in_edges_at[0][i]) indeg_beta += rates.beta[0][e];
            CHECK(A.row(i).sum() ==
                  doctest::Approx(1.0 - 0.24 * rates.delta[0][i] + 0.24 * indeg_beta));
        }
        CHECK(A.minCoeff() >= 0.0);
        CHECK(A.maxCoeff() < 1.0);
    }
}

TEST_CASE("state matrix entries stay in [0,1) on random validated instances") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        TemporalNetwork net = testing::random_network(rng);
        RateSchedule rates = testing::random_rates(net, rng);
        for (int k = 0; k < net.K(); ++k) {
            Eigen::MatrixXd A = Eigen::MatrixXd(build_state_matrix(net, k, rates));
            CHECK(A.minCoeff() >= 0.0);
            CHECK(A.maxCoeff() < 1.0);
        }
    }
}

TEST_CASE("scenario file round-trip is exact") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        TemporalNetwork net = testing::random_network(rng);
        std::string text = scenario_to_json(net);
        TemporalNetwork back = scenario_from_json(text);
        REQUIRE(back.n() == net.n());
        REQUIRE(back.K() == net.K());
        CHECK(back.globals.h == net.globals.h);
        CHECK(back.globals.alpha == net.globals.alpha);
        CHECK(back.globals.delta_bar == net.globals.delta_bar);
        CHECK(back.globals.budget_total == net.globals.budget_total);
        REQUIRE(back.edges.size() == net.edges.size());
        for (size_t e = 0; e < net.edges.size(); ++e) {
            CHECK(back.edges[e].from == net.edges[e].from);
            CHECK(back.edges[e].to == net.edges[e].to);
            for (int k = 0; k < net.K(); ++k) {
                REQUIRE(back.edges[e].per_step[k].has_value() ==
                        net.edges[e].per_step[k].has_value());
                if (net.edges[e].per_step[k]) {
                    CHECK(back.edges[e].per_step[k]->beta_hi == net.edges[e].per_step[k]->beta_hi);
                    CHECK(back.edges[e].per_step[k]->beta_lo == net.edges[e].per_step[k]->beta_lo);
                    CHECK(back.edges[e].per_step[k]->w_spread ==
                          net.edges[e].per_step[k]->w_spread);
                }
            }
        }
        for (int i = 0; i < net.n(); ++i) {
            CHECK(back.nodes[i].cost == net.nodes[i].cost);
            CHECK(back.nodes[i].x_hat == net.nodes[i].x_hat);
            for (int k = 0; k < net.K(); ++k) {
                CHECK(back.nodes[i].per_step[k].delta_lo == net.nodes[i].per_step[k].delta_lo);
                CHECK(back.nodes[i].per_step[k].delta_hi == net.nodes[i].per_step[k].delta_hi);
                CHECK(back.nodes[i].per_step[k].w_rec == net.nodes[i].per_step[k].w_rec);
            }
        }
    }
}

TEST_CASE("parse errors and validation errors are distinguished") {
    CHECK_THROWS_AS(scenario_from_json("{not json"), ParseError);
    CHECK_THROWS_AS(scenario_from_json("{\"globals\":{}}"), ParseError);
    // h*delta_bar >= 1
    TemporalNetwork net = single_node();
    net.globals.delta_bar = 5.0;
    std::string text = scenario_to_json(net);
    CHECK_THROWS_WITH_AS(scenario_from_json(text), doctest::Contains("h_delta_bar"),
                         ValidationError);
}

TEST_CASE("snapshot averaging") {
    TemporalNetwork net = gen_influence(testing::toy7_spec());
    Snapshot s1 = snapshot_of(net, 0);
    Snapshot s2 = snapshot_of(net, 2);

    SUBCASE("lambda=1 returns the first snapshot") {
        Snapshot avg = average_snapshot(s1, s2, 1.0);
        for (const auto& e : avg.edges) {
            bool in_s1 = false;
            for (const auto& f : s1.edges)
                if (f.from == e.from && f.to == e.to) {
                    in_s1 = true;
                    CHECK(e.params.beta_hi == doctest::Approx(f.params.beta_hi));
                }
            if (!in_s1) CHECK(e.params.beta_hi <= 1e-12);  // zero-filled union edge
        }
    }
    SUBCASE("midpoint of a shared edge") {
        Snapshot a = s1, b = s1;
        a.edges[0].params.beta_hi = 0.2;
        b.edges[0].params.beta_hi = 0.4;
        Snapshot avg = average_snapshot(a, b, 0.5);
        for (const auto& e : avg.edges)
            if (e.from == a.edges[0].from && e.to == a.edges[0].to)
                CHECK(e.params.beta_hi == doctest::Approx(0.3));
    }
    SUBCASE("edge present on one side only averages against zero") {
        Snapshot empty;
        empty.n = s1.n;
        empty.nodes = s1.nodes;
        Snapshot a = s1;
        a.edges[0].params.beta_hi = 0.2;
        Snapshot avg = average_snapshot(a, empty, 0.5);
        for (const auto& e : avg.edges)
            if (e.from == a.edges[0].from && e.to == a.edges[0].to)
                CHECK(e.params.beta_hi == doctest::Approx(0.1));
    }
    SUBCASE("mismatched node sets fail") {
        Snapshot small;
        small.n = 3;
        CHECK_THROWS_AS(average_snapshot(s1, small, 0.5), ValidationError);
    }
}

TEST_CASE("rate schedules are validated against their boxes") {
    TemporalNetwork net = gen_influence(testing::toy7_spec());
    RateSchedule rates = nominal_rates(net);
    CHECK_NOTHROW(validate_rates(net, rates));
    rates.beta[0][net.edges_at[0][0]] *= 2.0;
    CHECK_THROWS_AS(validate_rates(net, rates), ValidationError);
}
