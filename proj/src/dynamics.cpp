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

#include "tempnet/dynamics.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace tempnet {

namespace {

// splitmix64; used to derive independent per-run streams from (seed, run).
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next_u64() {
        state += 0x9e3779b97f4a7c15ULL;
        return mix64(state);
    }
    // uniform in [0,1) with 53 bits; platform-independent
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
};

void check_x(const Eigen::VectorXd& x, int n) {
    if (x.size() != n) throw std::invalid_argument("state vector has wrong dimension");
}

}  // namespace

Eigen::VectorXd step_nonlinear(const Eigen::VectorXd& x, const TemporalNetwork& net, int k,
                               const RateSchedule& rates) {
    check_x(x, net.n());
    const double h = net.globals.h;
    Eigen::VectorXd out(net.n());
    for (int i = 0; i < net.n(); ++i) {
        double inflow = 0.0;
        for (int e : net.in_edges_at[k][i]) inflow += rates.beta[k][e] * x[net.edges[e].from];
        out[i] = x[i] + h * (1.0 - x[i]) * inflow - h * rates.delta[k][i] * x[i];
    }
    return out;
}

Eigen::VectorXd step_linear(const Eigen::VectorXd& x, const Eigen::SparseMatrix<double>& A) {
    return A * x;
}

namespace {

Eigen::VectorXd step_stochastic(const Eigen::VectorXd& x, const TemporalNetwork& net, int k,
                                const RateSchedule& rates, Rng& rng) {
    const double h = net.globals.h;
    Eigen::VectorXd out(net.n());
    for (int i = 0; i < net.n(); ++i) {
        if (x[i] > 0.5) {
            // infected: recovers w.p. h*delta
            out[i] = (rng.next_unit() < h * rates.delta[k][i]) ? 0.0 : 1.0;
        } else {
            bool infected = false;
            for (int e : net.in_edges_at[k][i]) {
                if (x[net.edges[e].from] > 0.5 && rng.next_unit() < h * rates.beta[k][e])
                    infected = true;
            }
            out[i] = infected ? 1.0 : 0.0;
        }
    }
    return out;
}

}  // namespace

Trajectory simulate(const TemporalNetwork& net, const RateSchedule& rates,
                    const Eigen::VectorXd& x1, TrajectoryKind kind, std::uint64_t seed) {
    check_x(x1, net.n());
    Trajectory traj;
    traj.kind = kind;
    traj.states.reserve(net.K() + 1);

    Eigen::VectorXd x = x1;
    if (kind == TrajectoryKind::StochasticSample)
        for (int i = 0; i < x.size(); ++i) x[i] = x[i] > 0.5 ? 1.0 : 0.0;
    traj.states.push_back(x);

    Rng rng(mix64(seed ^ 0x7e3a9d1f22c4b6ULL));
    for (int k = 0; k < net.K(); ++k) {
        switch (kind) {
            case TrajectoryKind::Nonlinear:
                x = step_nonlinear(x, net, k, rates);
                break;
            case TrajectoryKind::Linear:
                x = step_linear(x, build_state_matrix(net, k, rates));
                break;
            case TrajectoryKind::StochasticSample:
                x = step_stochastic(x, net, k, rates, rng);
                break;
        }
        traj.states.push_back(x);
    }
    return traj;
}

CostReport trajectory_cost(const Trajectory& traj, const Eigen::VectorXd& cost, double alpha) {
    if (traj.states.size() < 2) throw std::invalid_argument("trajectory must hold x^1..x^{K+1}");
    const int K = static_cast<int>(traj.states.size()) - 1;
    CostReport r;
    r.per_step.reserve(K);
    double discount = 1.0;
    for (int k = 0; k < K; ++k) {
        if (traj.states[k].size() != cost.size())
            throw std::invalid_argument("cost vector dimension mismatch");
        double stage = discount * cost.dot(traj.states[k]);
        r.per_step.push_back(stage);
        r.total += stage;
        discount *= alpha;
    }
    return r;
}

MonteCarloSummary monte_carlo(const TemporalNetwork& net, const RateSchedule& rates,
                              const Eigen::VectorXd& x1, int runs, std::uint64_t seed,
                              bool sample_initial) {
    check_x(x1, net.n());
    if (runs < 1) throw std::invalid_argument("runs must be >= 1");
    const Eigen::VectorXd cost = net.cost_vector();
    double sum = 0.0, sumsq = 0.0;
    for (int r = 0; r < runs; ++r) {
        std::uint64_t run_seed = mix64(seed) ^ mix64(static_cast<std::uint64_t>(r) + 1);
        Eigen::VectorXd x0 = x1;
        if (sample_initial) {
            Rng init(mix64(run_seed ^ 0x5bd1e995ULL));
            for (int i = 0; i < x0.size(); ++i) x0[i] = init.next_unit() < x1[i] ? 1.0 : 0.0;
        }
        Trajectory t = simulate(net, rates, x0, TrajectoryKind::StochasticSample, run_seed);
        double c = trajectory_cost(t, cost, net.globals.alpha).total;
        sum += c;
        sumsq += c * c;
    }
    MonteCarloSummary s;
    s.runs = runs;
    s.seed = seed;
    s.mean_cost = sum / runs;
    double var = runs > 1 ? std::max(0.0, (sumsq - sum * sum / runs) / (runs - 1)) : 0.0;
    s.stderr_mean = std::sqrt(var / runs);
    return s;
}

Eigen::VectorXd monte_carlo_state_mean(const TemporalNetwork& net, const RateSchedule& rates,
                                       const Eigen::VectorXd& x1, int step, int runs,
                                       std::uint64_t seed, bool sample_initial) {
    if (step < 1 || step > net.K() + 1) throw std::invalid_argument("step out of range");
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(net.n());
    for (int r = 0; r < runs; ++r) {
        std::uint64_t run_seed = mix64(seed) ^ mix64(static_cast<std::uint64_t>(r) + 1);
        Eigen::VectorXd x0 = x1;
        if (sample_initial) {
            Rng init(mix64(run_seed ^ 0x5bd1e995ULL));
            for (int i = 0; i < x0.size(); ++i) x0[i] = init.next_unit() < x1[i] ? 1.0 : 0.0;
        }
        Trajectory t = simulate(net, rates, x0, TrajectoryKind::StochasticSample, run_seed);
        acc += t.states[step - 1];
    }
    return acc / runs;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
    os << "step,node,value\n";
    char buf[32];
    for (size_t k = 0; k < traj.states.size(); ++k) {
        for (int i = 0; i < traj.states[k].size(); ++i) {
            auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), traj.states[k][i]);
            os << (k + 1) << ',' << (i + 1) << ',' << std::string_view(buf, end - buf) << '\n';
        }
    }
}

}  // namespace tempnet
