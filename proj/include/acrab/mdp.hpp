#pragma once

#include <Eigen/Dense>
#include <vector>

#include "acrab/rng.hpp"

namespace acrab {

enum class RewardKind { Deterministic, Bernoulli };

/// Finite discounted MDP with dense transition tensor P[a](s, s'), mean
/// rewards in [0, 1], and a per-(s, a) reward kind (0 = deterministic,
/// 1 = Bernoulli with the given mean).
struct TabularMdp {
    Eigen::MatrixXd reward_mean;             // S x A
    Eigen::MatrixXi reward_kind;             // S x A, 0 or 1
    std::vector<Eigen::MatrixXd> transition; // A entries, each S x S
    Eigen::VectorXd initial_dist;            // S
    double discount = 0.0;

    int n_states() const { return static_cast<int>(reward_mean.rows()); }
    int n_actions() const { return static_cast<int>(reward_mean.cols()); }
    double v_max() const { return 1.0 / (1.0 - discount); }

    /// Throws std::invalid_argument when any structural invariant fails
    /// (row-stochastic transitions, normalized rho, rewards in [0,1], gamma < 1).
    void validate() const;
};

struct Policy {
    Eigen::MatrixXd probs;  // S x A, rows sum to 1

    int n_states() const { return static_cast<int>(probs.rows()); }
    int n_actions() const { return static_cast<int>(probs.cols()); }
    void validate() const;

    static Policy uniform(int n_states, int n_actions);
    /// Same deterministic action in every state.
    static Policy deterministic(int n_states, int n_actions, int action);
    /// Per-state deterministic actions.
    static Policy deterministic(int n_states, int n_actions, const std::vector<int>& actions);
};

struct OccupancyMeasure {
    Eigen::MatrixXd d;  // S x A, sums to 1

    /// State marginal d(s).
    Eigen::VectorXd state_marginal() const { return d.rowwise().sum(); }
};

struct QFunction {
    Eigen::MatrixXd q;  // S x A
};

/// f(s, pi) = sum_a pi(a|s) f(s, a), per state.
Eigen::VectorXd value_under_policy(const Policy& pi, const Eigen::MatrixXd& f);

/// Discounted state-action occupancy d^pi by direct linear solve of the flow
/// balance d = (1-gamma) rho + gamma P_pi^T d. Exact up to solver precision;
/// throws std::runtime_error if the residual exceeds 1e-8.
OccupancyMeasure compute_occupancy(const TabularMdp& mdp, const Policy& pi);

/// Q^pi by solving (I - gamma P_pi) V = r_pi and expanding one Bellman step.
QFunction compute_q(const TabularMdp& mdp, const Policy& pi);

/// V^pi per state.
Eigen::VectorXd compute_v(const TabularMdp& mdp, const Policy& pi);

/// J(pi) = (1-gamma) E_rho[V^pi].
double j_value(const TabularMdp& mdp, const Policy& pi);

/// One application of the Bellman operator: r + gamma E_{s'}[f(s', pi)].
Eigen::MatrixXd bellman_apply(const TabularMdp& mdp, const Policy& pi, const Eigen::MatrixXd& f);

/// J of the uniform mixture of the given policies (mean of the J values).
double mixture_j_value(const TabularMdp& mdp, const std::vector<Policy>& policies);

struct RolloutEstimate {
    double j_hat = 0.0;
    double std_err = 0.0;
    double truncation_bias_bound = 0.0;
    int horizon = 0;
};

/// Monte-Carlo estimate of J(pi) from truncated trajectories; used only as a
/// cross-check against the linear-solve path. Horizon is chosen so the
/// truncated tail is below 1e-8 * V_max.
RolloutEstimate rollout_j_estimate(const TabularMdp& mdp, const Policy& pi, int n_trajectories,
                                   CounterRng& rng);

/// Exact optimal deterministic policy via policy iteration.
Policy optimal_policy(const TabularMdp& mdp);

}  // namespace acrab
