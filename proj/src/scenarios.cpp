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

#include "tempnet/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tempnet {

namespace {

NodeStepParams node_step(double delta, double delta_bar, double headroom, double w_rec) {
    NodeStepParams p;
    p.delta_lo = delta;
    p.delta_hi = delta_bar - headroom * (delta_bar - delta);
    p.w_rec = w_rec;
    return p;
}

EdgeStepParams edge_step(double beta_hi, double lo_ratio, double w) {
    EdgeStepParams p;
    p.beta_hi = beta_hi;
    p.beta_lo = lo_ratio * beta_hi;
    p.w_spread = w;
    return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// Influence networks

TemporalNetwork gen_influence(const InfluenceSpec& spec) {
    if (spec.n < 1) throw ValidationError("node_count", "influence spec needs n >= 1");
    if (spec.step_edges.empty())
        throw ValidationError("horizon", "influence spec needs at least one edge list");
    const int K = static_cast<int>(spec.step_edges.size());

    TemporalNetwork net;
    net.globals.n = spec.n;
    net.globals.K = K;
    net.globals.h = spec.h;
    net.globals.alpha = spec.alpha;
    net.globals.delta_bar = spec.delta_bar;
    net.globals.budget_per_step = spec.budget_per_step;
    if (net.globals.budget_per_step.empty())
        net.globals.budget_per_step.assign(K, 0.0);
    net.globals.budget_total = spec.budget_total;
    net.globals.horizon_mode = spec.horizon_mode;

    net.nodes.resize(spec.n);
    for (int i = 0; i < spec.n; ++i) {
        net.nodes[i].cost = i < static_cast<int>(spec.cost.size()) ? spec.cost[i] : 0.0;
        net.nodes[i].x_hat = i < static_cast<int>(spec.x_hat.size()) ? spec.x_hat[i] : 0.0;
        net.nodes[i].per_step.assign(
            K, node_step(spec.delta, spec.delta_bar, spec.delta_headroom_ratio, spec.w_rec));
    }

    auto lists = spec.step_edges;
    if (spec.structure == InfluenceSpec::Structure::Static)
        lists.assign(K, spec.step_edges[0]);

    std::map<std::pair<int, int>, Edge> edges;
    const EdgeStepParams ep = edge_step(spec.beta, spec.beta_lo_ratio, spec.w_spread);
    for (int k = 0; k < K; ++k) {
        for (auto [from, to] : lists[k]) {
            if (from < 0 || from >= spec.n || to < 0 || to >= spec.n)
                throw ValidationError("node_index", "edge references out-of-range node", k + 1,
                                      to + 1, from + 1);
            Edge& e = edges[{from, to}];
            if (e.per_step.empty()) {
                e.from = from;
                e.to = to;
                e.per_step.assign(K, std::nullopt);
            }
            e.per_step[k] = ep;
        }
    }
    for (auto& [key, e] : edges) net.edges.push_back(std::move(e));

    if (spec.structure == InfluenceSpec::Structure::Average) {
        // fold the K snapshots into their mean, then repeat it
        net.finalize();
        Snapshot acc = snapshot_of(net, 0);
        for (int k = 1; k < K; ++k) {
            double lambda = static_cast<double>(k) / (k + 1);  // running mean
            acc = average_snapshot(acc, snapshot_of(net, k), lambda);
        }
        net.edges.clear();
        for (const auto& se : acc.edges) {
            Edge e;
            e.from = se.from;
            e.to = se.to;
            e.per_step.assign(K, se.params);
            net.edges.push_back(std::move(e));
        }
        for (int i = 0; i < spec.n; ++i) net.nodes[i].per_step.assign(K, acc.nodes[i]);
    }

    validate(net);
    return net;
}

// ---------------------------------------------------------------------------
// Wildfire grids

double vegetation_factor(char code) {
    switch (code) {
        case 'W': return 0.0;
        case 'D': return 0.1;
        case 'G': return 1.0;
        case 'E': return 1.4;
        default:
            throw ValidationError("vegetation", std::string("unknown vegetation code '") + code +
                                                    "' (expected W, D, G or E)");
    }
}

double wind_factor(double speed, double wind_dir_deg, double edge_bearing_deg, double c1,
                   double c2) {
    if (speed == 0.0) return 1.0;
    const double phi = (wind_dir_deg - edge_bearing_deg) * std::numbers::pi / 180.0;
    return std::exp(speed * (c1 + c2 * (std::cos(phi) - 1.0)));
}

namespace {

struct CellEdge {
    int from, to;
    double bearing;
    bool diagonal;
};

std::vector<CellEdge> grid_edges(const WildfireSpec& spec) {
    std::vector<CellEdge> out;
    const int R = spec.rows, C = spec.cols;
    auto id = [&](int r, int c) { return r * C + c; };
    for (int r = 0; r < R; ++r) {
        for (int c = 0; c < C; ++c) {
            if (spec.veg[id(r, c)] == 'W') continue;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    int rr = r + dr, cc = c + dc;
                    if (rr < 0 || rr >= R || cc < 0 || cc >= C) continue;
                    if (spec.veg[id(rr, cc)] == 'W') continue;
                    // bearing of travel from (r,c) to (rr,cc); north = -row
                    double bearing =
                        std::atan2(static_cast<double>(dc), static_cast<double>(-dr)) * 180.0 /
                        std::numbers::pi;
                    out.push_back({id(r, c), id(rr, cc), bearing, dr != 0 && dc != 0});
                }
            }
        }
    }
    return out;
}

Snapshot wildfire_snapshot(const WildfireSpec& spec, const std::vector<CellEdge>& cell_edges,
                           double speed, double dir) {
    Snapshot s;
    s.n = spec.rows * spec.cols;
    s.nodes.assign(s.n, node_step(spec.delta, spec.delta_bar, spec.delta_headroom_ratio,
                                  spec.w_rec));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const CellEdge& ce : cell_edges) {
        double beta = spec.beta_b * vegetation_factor(spec.veg[ce.to]) *
                      wind_factor(speed, dir, ce.bearing, spec.c1, spec.c2);
        if (ce.diagonal) beta *= inv_sqrt2;
        if (beta <= 0.0) continue;
        s.edges.push_back({ce.from, ce.to, edge_step(beta, spec.beta_lo_ratio, spec.w_spread)});
    }
    return s;
}

}  // namespace

TemporalNetwork gen_wildfire(const WildfireSpec& spec) {
    const int n = spec.rows * spec.cols;
    if (spec.rows < 1 || spec.cols < 1)
        throw ValidationError("node_count", "wildfire grid must be non-empty");
    if (static_cast<int>(spec.veg.size()) != n)
        throw ValidationError("vegetation", "vegetation map size must be rows*cols");
    for (char c : spec.veg) vegetation_factor(c);
    if (spec.cost.size() != static_cast<size_t>(n) || spec.x_hat.size() != static_cast<size_t>(n))
        throw ValidationError("cost_nonneg", "cost and x_hat maps must cover every cell");

    // group forecast rows by step; two rows on one step mean a mid-step change
    std::vector<std::vector<WildfireSpec::Wind>> by_step(spec.K);
    for (const auto& w : spec.wind) {
        if (w.step < 1) throw ValidationError("wind", "wind forecast steps are 1-based");
        if (w.step <= spec.K) by_step[w.step - 1].push_back(w);
    }
    for (int k = 0; k < spec.K; ++k) {
        if (by_step[k].empty())
            throw ValidationError("wind", "wind forecast shorter than horizon", k + 1);
        if (by_step[k].size() > 2)
            throw ValidationError("wind", "at most two wind conditions per step", k + 1);
    }

    const auto cell_edges = grid_edges(spec);
    std::vector<Snapshot> snaps;
    snaps.reserve(spec.K);
    for (int k = 0; k < spec.K; ++k) {
        Snapshot s = wildfire_snapshot(spec, cell_edges, by_step[k][0].speed, by_step[k][0].dir_deg);
        if (by_step[k].size() == 2) {
            Snapshot s2 =
                wildfire_snapshot(spec, cell_edges, by_step[k][1].speed, by_step[k][1].dir_deg);
            s = average_snapshot(s, s2, 0.5);
        }
        snaps.push_back(std::move(s));
    }

    TemporalNetwork net;
    net.globals.n = n;
    net.globals.K = spec.K;
    net.globals.h = spec.h;
    net.globals.alpha = spec.alpha;
    net.globals.delta_bar = spec.delta_bar;
    net.globals.budget_per_step = spec.budget_per_step;
    if (net.globals.budget_per_step.empty()) net.globals.budget_per_step.assign(spec.K, 0.0);
    net.globals.budget_total = spec.budget_total;
    net.globals.horizon_mode = spec.horizon_mode;
    net.nodes.resize(n);
    for (int i = 0; i < n; ++i) {
        net.nodes[i].cost = spec.cost[i];
        net.nodes[i].x_hat = spec.x_hat[i];
        net.nodes[i].per_step.resize(spec.K);
    }
    std::map<std::pair<int, int>, Edge> edges;
    for (int k = 0; k < spec.K; ++k) {
        for (int i = 0; i < n; ++i) net.nodes[i].per_step[k] = snaps[k].nodes[i];
        for (const auto& se : snaps[k].edges) {
            Edge& e = edges[{se.from, se.to}];
            if (e.per_step.empty()) {
                e.from = se.from;
                e.to = se.to;
                e.per_step.assign(spec.K, std::nullopt);
            }
            e.per_step[k] = se.params;
        }
    }
    for (auto& [key, e] : edges) net.edges.push_back(std::move(e));

    validate(net);
    return net;
}

// ---------------------------------------------------------------------------
// Air networks

RouteTable load_routes_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open route table: " + path.string());
    RouteTable table;
    std::string line;
    bool header = true;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.back() == '\r') {
            if (!line.empty()) line.pop_back();
            if (line.empty()) continue;
        }
        std::stringstream ss(line);
        std::string a, b, p;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, p))
            throw ParseError("route table line " + std::to_string(lineno) +
                             ": expected origin,destination,passengers");
        if (header) {
            header = false;
            if (a == "origin") continue;  // header row optional
        }
        RouteTable::Route r;
        r.origin = a;
        r.dest = b;
        try {
            r.passengers = std::stoll(p);
        } catch (...) {
            throw ParseError("route table line " + std::to_string(lineno) +
                             ": bad passenger count '" + p + "'");
        }
        table.routes.push_back(std::move(r));
    }
    return table;
}

std::map<std::string, std::string> load_alias_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open alias table: " + path.string());
    std::map<std::string, std::string> alias;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b))
            throw ParseError("alias table: expected code,canonical");
        if (header) {
            header = false;
            if (a == "code") continue;
        }
        alias[a] = b;
    }
    return alias;
}

AirNetwork gen_air_network(const RouteTable& routes,
                           const std::map<std::string, std::string>& alias,
                           const AirNetworkSpec& spec) {
    auto canon = [&](const std::string& code) {
        auto it = alias.find(code);
        return it == alias.end() ? code : it->second;
    };

    // canonicalize, filter, merge parallel routes
    std::map<std::pair<std::string, std::string>, long long> merged;
    for (const auto& r : routes.routes) {
        std::string o = canon(r.origin), d = canon(r.dest);
        if (o == d) continue;
        merged[{o, d}] += r.passengers;
    }
    std::erase_if(merged, [&](const auto& kv) { return kv.second < spec.min_passengers; });
    if (merged.empty()) throw ValidationError("route_table", "no routes left after filtering");

    std::set<std::string> cities;
    for (const auto& [od, p] : merged) {
        cities.insert(od.first);
        cities.insert(od.second);
    }
    std::vector<std::string> city_of_node(cities.begin(), cities.end());
    std::map<std::string, int> node_of;
    for (size_t i = 0; i < city_of_node.size(); ++i) node_of[city_of_node[i]] = static_cast<int>(i);
    if (!spec.outbreak_city.empty() && !node_of.count(canon(spec.outbreak_city)))
        throw ValidationError("route_table", "outbreak city '" + spec.outbreak_city +
                                                 "' does not appear in the route table");

    const int n = static_cast<int>(city_of_node.size());
    const int K = spec.K;

    // day patterns within Sunday(0)..Saturday(6)
    auto flight_days = [&](long long pax) -> std::vector<int> {
        if (pax >= spec.days7_threshold) return {0, 1, 2, 3, 4, 5, 6};
        if (pax >= spec.days4_threshold) return {1, 2, 4, 6};  // Mon Tue Thu Sat
        if (pax >= spec.days3_threshold) return {1, 3, 5};     // Mon Wed Fri
        return {1, 4};                                         // Mon Thu
    };

    // costs: normalized passengers served per city
    std::vector<double> served(n, 0.0);
    for (const auto& [od, p] : merged) {
        served[node_of[od.first]] += static_cast<double>(p);
        served[node_of[od.second]] += static_cast<double>(p);
    }
    double maxserved = *std::max_element(served.begin(), served.end());

    TemporalNetwork net;
    net.globals.n = n;
    net.globals.K = K;
    net.globals.h = spec.h;
    net.globals.alpha = spec.alpha;
    net.globals.delta_bar = spec.delta_bar;
    net.globals.budget_per_step = spec.budget_per_step;
    if (net.globals.budget_per_step.empty()) net.globals.budget_per_step.assign(K, 0.0);
    net.globals.budget_total = spec.budget_total;
    net.globals.horizon_mode = spec.horizon_mode;
    net.nodes.resize(n);
    const std::string outbreak = spec.outbreak_city.empty() ? "" : canon(spec.outbreak_city);
    for (int i = 0; i < n; ++i) {
        net.nodes[i].cost = served[i] / maxserved;
        net.nodes[i].x_hat = city_of_node[i] == outbreak ? 1.0 : 0.0;
        double dhi = spec.allow_node_control
                         ? spec.delta_bar - spec.delta_headroom_ratio * (spec.delta_bar - spec.delta)
                         : spec.delta;
        NodeStepParams p;
        p.delta_lo = spec.delta;
        p.delta_hi = dhi;
        p.w_rec = spec.w_rec;
        net.nodes[i].per_step.assign(K, p);
    }

    const EdgeStepParams ep = edge_step(spec.beta, spec.beta_lo_ratio, spec.w_spread);
    for (const auto& [od, pax] : merged) {
        Edge e;
        e.from = node_of[od.first];
        e.to = node_of[od.second];
        e.per_step.assign(K, std::nullopt);
        for (int day : flight_days(pax))
            for (int k = day; k < K; k += 7) e.per_step[k] = ep;
        net.edges.push_back(std::move(e));
    }

    validate(net);
    return {std::move(net), std::move(city_of_node)};
}

// ---------------------------------------------------------------------------
// Spec files

namespace {

using nlohmann::ordered_json;

ordered_json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open spec file: " + path.string());
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("JSON parse error in ") + path.string() + ": " + e.what());
    }
}

HorizonMode mode_of(const std::string& s) {
    if (s == "finite") return HorizonMode::Finite;
    if (s == "infinite") return HorizonMode::Infinite;
    throw ParseError("horizon_mode must be 'finite' or 'infinite'");
}

std::vector<double> grid_values(const ordered_json& j, int rows, int cols,
                                const std::string& what) {
    const int n = rows * cols;
    std::vector<double> out;
    if (j.is_array()) {
        out = j.get<std::vector<double>>();
        if (static_cast<int>(out.size()) != n)
            throw ParseError(what + " array must have rows*cols entries");
        return out;
    }
    if (!j.is_object() || !j.contains("default"))
        throw ParseError(what + " must be an array or {default, cells}");
    out.assign(n, j["default"].get<double>());
    if (j.contains("cells")) {
        for (const auto& cell : j["cells"]) {
            int r = cell.at(0).get<int>(), c = cell.at(1).get<int>();
            if (r < 0 || r >= rows || c < 0 || c >= cols)
                throw ParseError(what + " cell (" + std::to_string(r) + "," + std::to_string(c) +
                                 ") out of range (0-based)");
            out[r * cols + c] = cell.at(2).get<double>();
        }
    }
    return out;
}

TemporalNetwork influence_from_file(const ordered_json& j) {
    InfluenceSpec spec;
    spec.n = j.at("n").get<int>();
    spec.beta = j.value("beta", spec.beta);
    spec.delta = j.value("delta", spec.delta);
    spec.h = j.value("h", spec.h);
    spec.alpha = j.value("alpha", spec.alpha);
    spec.delta_bar = j.value("delta_bar", spec.delta_bar);
    if (j.contains("budget_per_step"))
        spec.budget_per_step = j["budget_per_step"].get<std::vector<double>>();
    spec.budget_total = j.value("budget_total", 0.0);
    spec.horizon_mode = mode_of(j.value("horizon_mode", "finite"));
    std::string structure = j.value("structure", "temporal");
    spec.structure = structure == "static"    ? InfluenceSpec::Structure::Static
                     : structure == "average" ? InfluenceSpec::Structure::Average
                                              : InfluenceSpec::Structure::Temporal;
    spec.cost = j.at("cost").get<std::vector<double>>();
    spec.x_hat = j.at("x_hat").get<std::vector<double>>();
    spec.beta_lo_ratio = j.value("beta_lo_ratio", spec.beta_lo_ratio);
    spec.delta_headroom_ratio = j.value("delta_headroom_ratio", spec.delta_headroom_ratio);
    spec.w_spread = j.value("w_spread", 1.0);
    spec.w_rec = j.value("w_rec", 1.0);
    for (const auto& step : j.at("steps")) {
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : step)
            edges.emplace_back(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);  // 1-based ids
        spec.step_edges.push_back(std::move(edges));
    }
    return gen_influence(spec);
}

TemporalNetwork wildfire_from_file(const ordered_json& j, const std::filesystem::path& dir) {
    WildfireSpec spec;
    spec.rows = j.at("rows").get<int>();
    spec.cols = j.at("cols").get<int>();
    if (j.contains("veg_file")) {
        std::ifstream in(dir / j["veg_file"].get<std::string>());
        if (!in) throw ParseError("cannot open vegetation map");
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            spec.veg += line;
        }
    } else {
        for (const auto& row : j.at("veg")) spec.veg += row.get<std::string>();
    }
    spec.K = j.at("K").get<int>();
    spec.h = j.value("h", spec.h);
    spec.alpha = j.value("alpha", spec.alpha);
    spec.delta = j.value("delta", spec.delta);
    spec.delta_bar = j.value("delta_bar", spec.delta_bar);
    spec.beta_b = j.value("beta_b", spec.beta_b);
    spec.c1 = j.value("c1", spec.c1);
    spec.c2 = j.value("c2", spec.c2);
    if (j.contains("budget_per_step"))
        spec.budget_per_step = j["budget_per_step"].get<std::vector<double>>();
    spec.budget_total = j.value("budget_total", 0.0);
    spec.horizon_mode = mode_of(j.value("horizon_mode", "finite"));
    spec.cost = grid_values(j.at("cost"), spec.rows, spec.cols, "cost");
    spec.x_hat = grid_values(j.at("x_hat"), spec.rows, spec.cols, "x_hat");
    if (j.contains("wind_csv")) {
        std::ifstream in(dir / j["wind_csv"].get<std::string>());
        if (!in) throw ParseError("cannot open wind forecast");
        std::string line;
        bool header = true;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::stringstream ss(line);
            std::string a, b, c;
            std::getline(ss, a, ',');
            std::getline(ss, b, ',');
            std::getline(ss, c);
            if (header) {
                header = false;
                if (a == "step") continue;
            }
            spec.wind.push_back({std::stoi(a), std::stod(b), std::stod(c)});
        }
    } else {
        for (const auto& w : j.at("wind"))
            spec.wind.push_back({w.at("step").get<int>(), w.at("speed").get<double>(),
                                 w.at("dir").get<double>()});
    }
    spec.beta_lo_ratio = j.value("beta_lo_ratio", spec.beta_lo_ratio);
    spec.delta_headroom_ratio = j.value("delta_headroom_ratio", spec.delta_headroom_ratio);
    spec.w_spread = j.value("w_spread", 1.0);
    spec.w_rec = j.value("w_rec", 1.0);
    return gen_wildfire(spec);
}

TemporalNetwork air_from_file(const ordered_json& j, const std::filesystem::path& dir) {
    AirNetworkSpec spec;
    spec.beta = j.value("beta", spec.beta);
    spec.delta = j.value("delta", spec.delta);
    spec.h = j.value("h", spec.h);
    spec.alpha = j.value("alpha", spec.alpha);
    spec.delta_bar = j.value("delta_bar", spec.delta_bar);
    spec.K = j.value("K", spec.K);
    if (j.contains("budget_per_step"))
        spec.budget_per_step = j["budget_per_step"].get<std::vector<double>>();
    spec.budget_total = j.value("budget_total", 0.0);
    spec.horizon_mode = mode_of(j.value("horizon_mode", "finite"));
    spec.outbreak_city = j.value("outbreak_city", std::string());
    spec.min_passengers = j.value("min_passengers", spec.min_passengers);
    if (j.contains("thresholds")) {
        spec.days3_threshold = j["thresholds"].value("days3", spec.days3_threshold);
        spec.days4_threshold = j["thresholds"].value("days4", spec.days4_threshold);
        spec.days7_threshold = j["thresholds"].value("days7", spec.days7_threshold);
    }
    spec.allow_node_control = j.value("allow_node_control", false);
    spec.beta_lo_ratio = j.value("beta_lo_ratio", spec.beta_lo_ratio);
    spec.delta_headroom_ratio = j.value("delta_headroom_ratio", spec.delta_headroom_ratio);
    spec.w_spread = j.value("w_spread", 1.0);
    spec.w_rec = j.value("w_rec", 1.0);
    RouteTable routes = load_routes_csv(dir / j.at("routes_csv").get<std::string>());
    std::map<std::string, std::string> alias;
    if (j.contains("alias_csv")) alias = load_alias_csv(dir / j["alias_csv"].get<std::string>());
    return gen_air_network(routes, alias, spec).net;
}

}  // namespace

TemporalNetwork generate_from_spec_file(const std::string& family,
                                        const std::filesystem::path& spec_path) {
    ordered_json j = parse_file(spec_path);
    const std::filesystem::path dir = spec_path.parent_path();
    try {
        if (family == "influence") return influence_from_file(j);
        if (family == "wildfire") return wildfire_from_file(j, dir);
        if (family == "air") return air_from_file(j, dir);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad ") + family + " spec: " + e.what());
    }
    throw ParseError("unknown scenario family '" + family + "' (influence|wildfire|air)");
}

}  // namespace tempnet
