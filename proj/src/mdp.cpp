#include "acrab/mdp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace acrab {

namespace {
constexpr double kStochasticTol = 1e-12;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// P_pi(s, s') = sum_a pi(a|s) P[a](s, s').
Eigen::MatrixXd policy_kernel(const TabularMdp& mdp, const Policy& pi) {
    const int S = mdp.n_states();
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(S, S);
    for (int a = 0; a < mdp.n_actions(); ++a)
        k += pi.probs.col(a).asDiagonal() * mdp.transition[static_cast<size_t>(a)];
    return k;
}
}  // namespace

void TabularMdp::validate() const {
    const int S = n_states(), A = n_actions();
    require(S >= 1 && A >= 1, "mdp: empty state or action space");
    require(discount >= 0.0 && discount < 1.0, "mdp: discount must be in [0,1)");
    require(static_cast<int>(transition.size()) == A, "mdp: transition tensor has wrong arity");
    require(reward_kind.rows() == S && reward_kind.cols() == A, "mdp: reward_kind shape");
    require(initial_dist.size() == S, "mdp: initial_dist shape");
    for (int a = 0; a < A; ++a) {
        const auto& P = transition[static_cast<size_t>(a)];
        require(P.rows() == S && P.cols() == S, "mdp: transition slice shape");
        for (int s = 0; s < S; ++s) {
            require(P.row(s).minCoeff() >= 0.0, "mdp: negative transition probability");
            require(std::fabs(P.row(s).sum() - 1.0) <= kStochasticTol,
                    "mdp: transition row does not sum to 1");
        }
    }
    require(initial_dist.minCoeff() >= 0.0, "mdp: negative initial probability");
    require(std::fabs(initial_dist.sum() - 1.0) <= kStochasticTol,
            "mdp: initial distribution does not sum to 1");
    require(reward_mean.minCoeff() >= 0.0 && reward_mean.maxCoeff() <= 1.0,
            "mdp: rewards must lie in [0,1]");
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a)
            require(reward_kind(s, a) == 0 || reward_kind(s, a) == 1, "mdp: bad reward kind");
}

void Policy::validate() const {
    require(probs.rows() >= 1 && probs.cols() >= 1, "policy: empty");
    for (int s = 0; s < n_states(); ++s) {
        require(probs.row(s).minCoeff() >= 0.0, "policy: negative probability");
        require(std::fabs(probs.row(s).sum() - 1.0) <= kStochasticTol,
                "policy: row does not sum to 1");
    }
}

Policy Policy::uniform(int n_states, int n_actions) {
    Policy pi;
    pi.probs = Eigen::MatrixXd::Constant(n_states, n_actions, 1.0 / n_actions);
    return pi;
}

Policy Policy::deterministic(int n_states, int n_actions, int action) {
    return deterministic(n_states, n_actions, std::vector<int>(static_cast<size_t>(n_states), action));
}

Policy Policy::deterministic(int n_states, int n_actions, const std::vector<int>& actions) {
    require(static_cast<int>(actions.size()) == n_states, "policy: one action per state required");
    Policy pi;
    pi.probs = Eigen::MatrixXd::Zero(n_states, n_actions);
    for (int s = 0; s < n_states; ++s) {
        require(actions[static_cast<size_t>(s)] >= 0 && actions[static_cast<size_t>(s)] < n_actions,
                "policy: action index out of range");
        pi.probs(s, actions[static_cast<size_t>(s)]) = 1.0;
    }
    return pi;
}

Eigen::VectorXd value_under_policy(const Policy& pi, const Eigen::MatrixXd& f) {
    if (f.rows() != pi.probs.rows() || f.cols() != pi.probs.cols())
        throw std::invalid_argument("value_under_policy: shape mismatch");
    return (pi.probs.array() * f.array()).rowwise().sum();
}

OccupancyMeasure compute_occupancy(const TabularMdp& mdp, const Policy& pi) {
    const int S = mdp.n_states(), A = mdp.n_actions();
    const Eigen::MatrixXd k = policy_kernel(mdp, pi);
    const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(S, S) - mdp.discount * k.transpose();
    const Eigen::VectorXd rhs = (1.0 - mdp.discount) * mdp.initial_dist;
    const Eigen::VectorXd ds = lhs.partialPivLu().solve(rhs);
    if ((lhs * ds - rhs).lpNorm<Eigen::Infinity>() > 1e-8)
        throw std::runtime_error("compute_occupancy: linear solve residual too large");
    OccupancyMeasure occ;
    occ.d.resize(S, A);
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a) occ.d(s, a) = ds(s) * pi.probs(s, a);
    return occ;
}

Eigen::VectorXd compute_v(const TabularMdp& mdp, const Policy& pi) {
    const int S = mdp.n_states();
    const Eigen::VectorXd r_pi = value_under_policy(pi, mdp.reward_mean);
    const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(S, S) - mdp.discount * policy_kernel(mdp, pi);
    const Eigen::VectorXd v = lhs.partialPivLu().solve(r_pi);
    if ((lhs * v - r_pi).lpNorm<Eigen::Infinity>() > 1e-8)
        throw std::runtime_error("compute_v: linear solve residual too large");
    return v;
}

QFunction compute_q(const TabularMdp& mdp, const Policy& pi) {
    const int S = mdp.n_states(), A = mdp.n_actions();
    const Eigen::VectorXd v = compute_v(mdp, pi);
    QFunction qf;
    qf.q.resize(S, A);
    for (int a = 0; a < A; ++a)
        qf.q.col(a) = mdp.reward_mean.col(a) + mdp.discount * mdp.transition[static_cast<size_t>(a)] * v;
    if ((qf.q - bellman_apply(mdp, pi, qf.q)).lpNorm<Eigen::Infinity>() > 1e-10)
        throw std::runtime_error("compute_q: Bellman residual too large");
    return qf;
}

double j_value(const TabularMdp& mdp, const Policy& pi) {
    return (1.0 - mdp.discount) * mdp.initial_dist.dot(compute_v(mdp, pi));
}

Eigen::MatrixXd bellman_apply(const TabularMdp& mdp, const Policy& pi, const Eigen::MatrixXd& f) {
    if (f.rows() != mdp.n_states() || f.cols() != mdp.n_actions())
        throw std::invalid_argument("bellman_apply: shape mismatch");
    const Eigen::VectorXd f_pi = value_under_policy(pi, f);
    Eigen::MatrixXd out(mdp.n_states(), mdp.n_actions());
    for (int a = 0; a < mdp.n_actions(); ++a)
        out.col(a) = mdp.reward_mean.col(a) + mdp.discount * mdp.transition[static_cast<size_t>(a)] * f_pi;
    return out;
}

double mixture_j_value(const TabularMdp& mdp, const std::vector<Policy>& policies) {
    if (policies.empty()) throw std::invalid_argument("mixture_j_value: empty list");
    double s = 0;
    for (const auto& pi : policies) s += j_value(mdp, pi);
    return s / static_cast<double>(policies.size());
}

RolloutEstimate rollout_j_estimate(const TabularMdp& mdp, const Policy& pi, int n_trajectories,
                                   CounterRng& rng) {
    if (n_trajectories < 1) throw std::invalid_argument("rollout_j_estimate: need trajectories");
    const int S = mdp.n_states(), A = mdp.n_actions();
    RolloutEstimate est;
    est.horizon = (mdp.discount == 0.0)
                      ? 1
                      : static_cast<int>(std::ceil(std::log(1e-8) / std::log(mdp.discount)));
    est.truncation_bias_bound = std::pow(mdp.discount, est.horizon) * mdp.v_max();

    // Flatten CDFs once; sampling stays bit-stable across platforms.
    std::vector<double> rho_cdf(static_cast<size_t>(S));
    double acc = 0;
    for (int s = 0; s < S; ++s) rho_cdf[static_cast<size_t>(s)] = (acc += mdp.initial_dist(s));
    std::vector<std::vector<double>> pi_cdf(static_cast<size_t>(S), std::vector<double>(static_cast<size_t>(A)));
    for (int s = 0; s < S; ++s) {
        acc = 0;
        for (int a = 0; a < A; ++a) pi_cdf[static_cast<size_t>(s)][static_cast<size_t>(a)] = (acc += pi.probs(s, a));
    }
    std::vector<std::vector<double>> p_cdf(static_cast<size_t>(S * A), std::vector<double>(static_cast<size_t>(S)));
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a) {
            acc = 0;
            for (int s2 = 0; s2 < S; ++s2)
                p_cdf[static_cast<size_t>(s * A + a)][static_cast<size_t>(s2)] =
                    (acc += mdp.transition[static_cast<size_t>(a)](s, s2));
        }

    double sum = 0, sumsq = 0;
    for (int t = 0; t < n_trajectories; ++t) {
        int s = rng.next_from_cdf(rho_cdf);
        double ret = 0, disc = 1.0;
        for (int h = 0; h < est.horizon; ++h) {
            const int a = rng.next_from_cdf(pi_cdf[static_cast<size_t>(s)]);
            double r = mdp.reward_mean(s, a);
            if (mdp.reward_kind(s, a) == 1) r = rng.next_bernoulli(r) ? 1.0 : 0.0;
            ret += disc * r;
            disc *= mdp.discount;
            if (disc == 0.0) break;
            s = rng.next_from_cdf(p_cdf[static_cast<size_t>(s * A + a)]);
        }
        const double x = (1.0 - mdp.discount) * ret;
        sum += x;
        sumsq += x * x;
    }
    est.j_hat = sum / n_trajectories;
    const double var = (sumsq - sum * sum / n_trajectories) / std::max(1, n_trajectories - 1);
    est.std_err = std::sqrt(std::max(0.0, var) / n_trajectories);
    return est;
}

Policy optimal_policy(const TabularMdp& mdp) {
    const int S = mdp.n_states(), A = mdp.n_actions();
    std::vector<int> actions(static_cast<size_t>(S), 0);
    for (int iter = 0; iter < 1000; ++iter) {
        const Policy pi = Policy::deterministic(S, A, actions);
        const QFunction qf = compute_q(mdp, pi);
        bool changed = false;
        for (int s = 0; s < S; ++s) {
            int best = 0;
            for (int a = 1; a < A; ++a)
                if (qf.q(s, a) > qf.q(s, best) + 1e-13) best = a;
            if (best != actions[static_cast<size_t>(s)]) {
                actions[static_cast<size_t>(s)] = best;
                changed = true;
            }
        }
        if (!changed) return pi;
    }
    throw std::runtime_error("optimal_policy: policy iteration failed to converge");
}

}  // namespace acrab
