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

#include <cmath>
#include <fstream>

#include "oracles.hpp"
#include "tempnet/scenarios.hpp"

using namespace tempnet;

namespace {

WildfireSpec small_fire(int rows = 4, int cols = 5) {
    WildfireSpec spec;
    spec.rows = rows;
    spec.cols = cols;
    spec.veg.assign(static_cast<size_t>(rows) * cols, 'G');
    spec.K = 2;
    spec.budget_per_step = {10.0, 10.0};
    spec.budget_total = 20.0;
    spec.cost.assign(static_cast<size_t>(rows) * cols, 0.001);
    spec.x_hat.assign(static_cast<size_t>(rows) * cols, 0.01);
    spec.wind = {{1, 0.0, 0.0}, {2, 4.0, 225.0}};
    return spec;
}

}  // namespace

TEST_CASE("influence generator") {
    SUBCASE("homogeneous rates everywhere") {
        TemporalNetwork net = gen_influence(testing::toy7_spec());
        for (int k = 0; k < net.K(); ++k) {
            for (int e : net.edges_at[k]) {
                CHECK(net.edges[e].per_step[k]->beta_hi == 0.35);
                CHECK(net.edges[e].per_step[k]->beta_lo == doctest::Approx(0.0035));
            }
            for (int i = 0; i < net.n(); ++i)
                CHECK(net.nodes[i].per_step[k].delta_lo == 0.2);
        }
    }
    SUBCASE("static mode equals repeating the first snapshot") {
        InfluenceSpec spec = testing::toy7_spec();
        spec.structure = InfluenceSpec::Structure::Static;
        TemporalNetwork net = gen_influence(spec);
        for (int k = 1; k < net.K(); ++k) {
            REQUIRE(net.edges_at[k].size() == net.edges_at[0].size());
            for (size_t e = 0; e < net.edges.size(); ++e)
                CHECK(net.edges[e].per_step[k].has_value() ==
                      net.edges[e].per_step[0].has_value());
        }
    }
    SUBCASE("average mode matches the elementwise union mean") {
        InfluenceSpec spec = testing::toy7_spec();
        spec.structure = InfluenceSpec::Structure::Average;
        TemporalNetwork avg = gen_influence(spec);
        TemporalNetwork tmp = gen_influence(testing::toy7_spec());
        // oracle: count step presence per directed pair over the union
        std::map<std::pair<int, int>, int> presence;
        for (const Edge& e : tmp.edges)
            for (int k = 0; k < tmp.K(); ++k)
                if (e.per_step[k]) presence[{e.from, e.to}]++;
        for (const Edge& e : avg.edges) {
            double expect = 0.35 * presence[{e.from, e.to}] / tmp.K();
            for (int k = 0; k < avg.K(); ++k)
                CHECK(e.per_step[k]->beta_hi == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    SUBCASE("out-of-range edge is rejected") {
        InfluenceSpec spec = testing::toy7_spec();
        spec.step_edges[0].push_back({0, 9});
        CHECK_THROWS_AS(gen_influence(spec), ValidationError);
    }
}

TEST_CASE("wildfire generator") {
    SUBCASE("vegetation factors") {
        CHECK(vegetation_factor('W') == 0.0);
        CHECK(vegetation_factor('D') == 0.1);
        CHECK(vegetation_factor('G') == 1.0);
        CHECK(vegetation_factor('E') == 1.4);
        CHECK_THROWS_AS(vegetation_factor('X'), ValidationError);
    }
    SUBCASE("no wind leaves beta at the vegetation baseline") {
        WildfireSpec spec = small_fire();
        TemporalNetwork net = gen_wildfire(spec);
        // horizontal grass->grass edge at step 1: beta = 0.5
        int id_a = 0 * spec.cols + 1, id_b = 0 * spec.cols + 2;
        bool found = false;
        for (int e : net.edges_at[0]) {
            if (net.edges[e].from == id_a && net.edges[e].to == id_b) {
                found = true;
                CHECK(net.edges[e].per_step[0]->beta_hi == doctest::Approx(0.5).epsilon(1e-12));
            }
        }
        CHECK(found);
    }
    SUBCASE("diagonal edges carry the 1/sqrt(2) correction") {
        WildfireSpec spec = small_fire();
        TemporalNetwork net = gen_wildfire(spec);
        int id_a = 0 * spec.cols + 1, id_b = 1 * spec.cols + 2;
        for (int e : net.edges_at[0])
            if (net.edges[e].from == id_a && net.edges[e].to == id_b)
                CHECK(net.edges[e].per_step[0]->beta_hi ==
                      doctest::Approx(0.35355).epsilon(1e-4));
    }
    SUBCASE("water cells have no incident edges") {
        WildfireSpec spec = small_fire();
        spec.veg[1 * spec.cols + 1] = 'W';
        TemporalNetwork net = gen_wildfire(spec);
        int water = 1 * spec.cols + 1;
        for (const Edge& e : net.edges) {
            CHECK(e.from != water);
            CHECK(e.to != water);
        }
    }
    SUBCASE("windless spread is direction-symmetric") {
        WildfireSpec spec = small_fire();
        TemporalNetwork net = gen_wildfire(spec);
        std::map<std::pair<int, int>, double> beta;
        for (int e : net.edges_at[0])
            beta[{net.edges[e].from, net.edges[e].to}] = net.edges[e].per_step[0]->beta_hi;
        for (const auto& [key, b] : beta) {
            auto rev = beta.find({key.second, key.first});
            REQUIRE(rev != beta.end());
            CHECK(rev->second == doctest::Approx(b).epsilon(1e-12));
        }
    }
    SUBCASE("wind boosts downwind edges and damps upwind ones") {
        // wind toward south (180): southward edges boosted
        const double down = wind_factor(4.0, 180.0, 180.0, 0.045, 0.131);
        const double up = wind_factor(4.0, 180.0, 0.0, 0.045, 0.131);
        const double cross = wind_factor(4.0, 180.0, 90.0, 0.045, 0.131);
        CHECK(down > 1.0);
        CHECK(up < cross);
        CHECK(cross < down);
        CHECK(wind_factor(0.0, 123.0, 7.0, 0.045, 0.131) == 1.0);
    }
    SUBCASE("mid-step wind change averages the two snapshots") {
        WildfireSpec spec = small_fire();
        spec.K = 1;
        spec.budget_per_step = {10.0};
        // same step twice: calm and a strong southerly (toward north, 0 deg)
        spec.wind = {{1, 0.0, 0.0}, {1, 8.0, 0.0}};
        TemporalNetwork net = gen_wildfire(spec);

        WildfireSpec calm = spec;
        calm.wind = {{1, 0.0, 0.0}};
        WildfireSpec windy = spec;
        windy.wind = {{1, 8.0, 0.0}};
        TemporalNetwork a = gen_wildfire(calm);
        TemporalNetwork b = gen_wildfire(windy);
        std::map<std::pair<int, int>, double> ba, bb;
        for (int e : a.edges_at[0]) ba[{a.edges[e].from, a.edges[e].to}] = a.edges[e].per_step[0]->beta_hi;
        for (int e : b.edges_at[0]) bb[{b.edges[e].from, b.edges[e].to}] = b.edges[e].per_step[0]->beta_hi;
        for (int e : net.edges_at[0]) {
            auto key = std::make_pair(net.edges[e].from, net.edges[e].to);
            CHECK(net.edges[e].per_step[0]->beta_hi ==
                  doctest::Approx(0.5 * (ba[key] + bb[key])).epsilon(1e-12));
        }
    }
    SUBCASE("forecast shorter than the horizon fails") {
        WildfireSpec spec = small_fire();
        spec.wind = {{1, 0.0, 0.0}};
        CHECK_THROWS_AS(gen_wildfire(spec), ValidationError);
    }
    SUBCASE("paper parameters validate at h=0.25") {
        TemporalNetwork net = gen_wildfire(small_fire());
        CHECK(net.globals.h == 0.25);
    }
}

TEST_CASE("air network generator") {
    RouteTable routes;
    auto add = [&](const std::string& a, const std::string& b, long long pax) {
        routes.routes.push_back({a, b, pax});
    };
    add("PHL", "NYC", 2200000);
    add("NYC", "PHL", 2100000);
    add("PHL", "ORD", 600000);
    add("ORD", "PHL", 580000);
    add("PHL", "BOS", 150000);
    add("BOS", "PHL", 140000);
    add("PHL", "PIT", 40000);
    add("PIT", "PHL", 38000);
    add("NYC", "ORD", 1500000);
    add("EWR", "ORD", 200000);   // aliased into NYC
    add("PHL", "SBN", 9000);     // below the cutoff
    std::map<std::string, std::string> alias = {{"EWR", "NYC"}};

    AirNetworkSpec spec;
    spec.outbreak_city = "PHL";
    spec.budget_per_step.assign(7, 5.0);
    spec.budget_total = 25.0;

    AirNetwork air = gen_air_network(routes, alias, spec);
    const TemporalNetwork& net = air.net;

    SUBCASE("small routes are omitted and aliases merged") {
        for (const auto& c : air.city_of_node) CHECK(c != "SBN");
        for (const auto& c : air.city_of_node) CHECK(c != "EWR");
        CHECK(net.n() == 5);  // PHL NYC ORD BOS PIT
    }
    SUBCASE("daily routes fly every day; small ones follow their pattern") {
        for (const Edge& e : net.edges) {
            int days = 0;
            for (int k = 0; k < 7; ++k) days += e.per_step[k].has_value();
            long long pax = 0;
            for (const auto& r : routes.routes) {
                std::string o = alias.count(r.origin) ? alias.at(r.origin) : r.origin;
                std::string d = alias.count(r.dest) ? alias.at(r.dest) : r.dest;
                if (air.city_of_node[e.from] == o && air.city_of_node[e.to] == d)
                    pax += r.passengers;
            }
            int want = pax >= 1000000 ? 7 : pax >= 300000 ? 4 : pax >= 100000 ? 3 : 2;
            CHECK(days == want);
        }
    }
    SUBCASE("rates and matrix entries match the paper's parameters") {
        RateSchedule rates = nominal_rates(net);
        Eigen::MatrixXd A = Eigen::MatrixXd(build_state_matrix(net, 1, rates));  // Monday
        for (int i = 0; i < net.n(); ++i)
            CHECK(A(i, i) == doctest::Approx(1.0 - 0.02 * 0.0631).epsilon(1e-12));
        bool off = false;
        for (int e : net.edges_at[1]) {
            off = true;
            CHECK(A(net.edges[e].to, net.edges[e].from) == doctest::Approx(0.005).epsilon(1e-12));
        }
        CHECK(off);
        CHECK(A(0, 0) == doctest::Approx(0.998738).epsilon(1e-9));
    }
    SUBCASE("outbreak city carries x_hat = 1, others 0") {
        for (int i = 0; i < net.n(); ++i)
            CHECK(net.nodes[i].x_hat == (air.city_of_node[i] == "PHL" ? 1.0 : 0.0));
    }
    SUBCASE("costs are normalized passenger shares") {
        double maxc = 0;
        for (int i = 0; i < net.n(); ++i) maxc = std::max(maxc, net.nodes[i].cost);
        CHECK(maxc == 1.0);
        for (int i = 0; i < net.n(); ++i) CHECK(net.nodes[i].cost > 0.0);
    }
    SUBCASE("weekly periodicity beyond 7 steps") {
        AirNetworkSpec long_spec = spec;
        long_spec.K = 10;
        long_spec.budget_per_step.assign(10, 5.0);
        AirNetwork air10 = gen_air_network(routes, alias, long_spec);
        for (const Edge& e : air10.net.edges)
            for (int k = 0; k + 7 < 10; ++k)
                CHECK(e.per_step[k].has_value() == e.per_step[k + 7].has_value());
    }
    SUBCASE("node control is disabled by default") {
        for (int i = 0; i < net.n(); ++i)
            CHECK(net.nodes[i].per_step[0].delta_hi == net.nodes[i].per_step[0].delta_lo);
    }
    SUBCASE("unknown outbreak city is rejected") {
        AirNetworkSpec bad = spec;
        bad.outbreak_city = "LAX";
        CHECK_THROWS_AS(gen_air_network(routes, alias, bad), ValidationError);
    }
}

TEST_CASE("generated networks pass validation at the paper parameter sets") {
    CHECK_NOTHROW(gen_influence(testing::toy7_spec()));  // h = 0.24
    CHECK_NOTHROW(gen_wildfire(small_fire()));           // h = 0.25
    RouteTable routes;
    routes.routes.push_back({"A", "B", 50000});
    routes.routes.push_back({"B", "A", 50000});
    AirNetworkSpec spec;  // h = 0.02
    spec.budget_per_step.assign(7, 1.0);
    CHECK_NOTHROW(gen_air_network(routes, {}, spec));
}
