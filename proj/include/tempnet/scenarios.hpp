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

#ifndef TEMPNET_SCENARIOS_HPP
#define TEMPNET_SCENARIOS_HPP

#include <map>

#include "tempnet/temporal_graph.hpp"

namespace tempnet {

// ---------------------------------------------------------------------------
// Small influence networks (homogeneous rates, explicit edge lists)

struct InfluenceSpec {
    enum class Structure { Temporal, Static, Average };
    int n = 0;
    // one edge list per step, entries are 0-based (from, to)
    std::vector<std::vector<std::pair<int, int>>> step_edges;
    double beta = 0.35;
    double delta = 0.2;
    double h = 0.24;
    double alpha = 0.93;
    double delta_bar = 1.0;
    std::vector<double> budget_per_step;
    double budget_total = 0.0;
    HorizonMode horizon_mode = HorizonMode::Finite;
    Structure structure = Structure::Temporal;
    std::vector<double> cost;
    std::vector<double> x_hat;
    // controllability floors: beta_lo = ratio*beta_hi and
    // delta_hi = delta_bar - headroom*(delta_bar - delta_lo)
    double beta_lo_ratio = 0.01;
    double delta_headroom_ratio = 0.01;
    double w_spread = 1.0;
    double w_rec = 1.0;
};

TemporalNetwork gen_influence(const InfluenceSpec& spec);

// ---------------------------------------------------------------------------
// Wildfire grids (8-neighbor cellular topology, wind-modulated spread)

struct WildfireSpec {
    int rows = 0, cols = 0;
    std::string veg;  // rows*cols, row-major, codes W/D/G/E
    int K = 1;
    double h = 0.25;
    double alpha = 0.9;
    double delta = 0.5;
    double delta_bar = 1.0;
    double beta_b = 0.5;
    // wind response exp(V*(c1 + c2*(cos phi - 1))); defaults follow the
    // cellular-automaton fire literature, fully configurable
    double c1 = 0.045;
    double c2 = 0.131;
    std::vector<double> budget_per_step;
    double budget_total = 0.0;
    HorizonMode horizon_mode = HorizonMode::Finite;
    std::vector<double> cost;   // per cell, row-major
    std::vector<double> x_hat;  // per cell
    struct Wind {
        int step = 1;      // 1-based; two entries on one step average 50/50
        double speed = 0;  // m/s
        double dir_deg = 0;  // compass bearing the wind blows TOWARD (N=0,E=90)
    };
    std::vector<Wind> wind;
    double beta_lo_ratio = 0.01;
    double delta_headroom_ratio = 0.01;
    double w_spread = 1.0;
    double w_rec = 1.0;
};

double vegetation_factor(char code);  // W=0, D=0.1, G=1, E=1.4
double wind_factor(double speed, double wind_dir_deg, double edge_bearing_deg, double c1,
                   double c2);

TemporalNetwork gen_wildfire(const WildfireSpec& spec);

// ---------------------------------------------------------------------------
// Periodic air-traffic networks from route tables

struct RouteTable {
    struct Route {
        std::string origin, dest;
        long long passengers = 0;
    };
    std::vector<Route> routes;
};

RouteTable load_routes_csv(const std::filesystem::path& path);
std::map<std::string, std::string> load_alias_csv(const std::filesystem::path& path);

struct AirNetworkSpec {
    double beta = 0.25;
    double delta = 0.0631;
    double h = 0.02;
    double alpha = 0.9;
    double delta_bar = 1.0;
    int K = 7;  // snapshots ordered Sunday..Saturday, periodic for K > 7
    std::vector<double> budget_per_step;
    double budget_total = 0.0;
    HorizonMode horizon_mode = HorizonMode::Finite;
    std::string outbreak_city;
    long long min_passengers = 10000;  // routes below are omitted
    // passenger thresholds onto 3, 4 and 7 weekly flight days (2 otherwise)
    long long days3_threshold = 100000;
    long long days4_threshold = 300000;
    long long days7_threshold = 1000000;
    bool allow_node_control = false;  // paper controls routes only
    double beta_lo_ratio = 0.01;
    double delta_headroom_ratio = 0.01;
    double w_spread = 1.0;
    double w_rec = 1.0;
};

struct AirNetwork {
    TemporalNetwork net;
    std::vector<std::string> city_of_node;  // canonical codes, node order
};

AirNetwork gen_air_network(const RouteTable& routes,
                           const std::map<std::string, std::string>& alias,
                           const AirNetworkSpec& spec);

// ---------------------------------------------------------------------------
// Generator spec files (JSON; relative paths resolve against the spec file)

TemporalNetwork generate_from_spec_file(const std::string& family,
                                        const std::filesystem::path& spec_path);

}  // namespace tempnet

#endif  // TEMPNET_SCENARIOS_HPP
