#include "acrab/objectives.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace acrab {

AggregatedData AggregatedData::build(const OfflineDataset& data) {
    if (data.tuples.empty()) throw std::invalid_argument("aggregate: empty dataset");
    AggregatedData agg;
    agg.n = data.n();
    agg.n_states = data.n_states;
    agg.n_actions = data.n_actions;
    agg.count = Eigen::MatrixXd::Zero(agg.n_states, agg.n_actions);
    agg.reward_sum = Eigen::MatrixXd::Zero(agg.n_states, agg.n_actions);
    agg.reward_sq_sum = Eigen::MatrixXd::Zero(agg.n_states, agg.n_actions);
    agg.next_count.assign(static_cast<size_t>(agg.n_actions),
                          Eigen::MatrixXd::Zero(agg.n_states, agg.n_states));
    agg.next_reward_sum.assign(static_cast<size_t>(agg.n_actions),
                               Eigen::MatrixXd::Zero(agg.n_states, agg.n_states));
    for (const auto& t : data.tuples) {
        agg.count(t.s, t.a) += 1.0;
        agg.reward_sum(t.s, t.a) += t.r;
        agg.reward_sq_sum(t.s, t.a) += t.r * t.r;
        agg.next_count[static_cast<size_t>(t.a)](t.s, t.s_next) += 1.0;
        agg.next_reward_sum[static_cast<size_t>(t.a)](t.s, t.s_next) += t.r;
    }
    return agg;
}

double l_pop(const DataDistribution& mu, const Policy& pi, const Eigen::MatrixXd& f) {
    if (f.rows() != mu.mu.rows() || f.cols() != mu.mu.cols())
        throw std::invalid_argument("l_pop: shape mismatch");
    const Eigen::VectorXd f_pi = value_under_policy(pi, f);
    const Eigen::VectorXd mu_s = mu.mu.rowwise().sum();
    return mu_s.dot(f_pi) - (mu.mu.array() * f.array()).sum();
}

double weighted_bellman_mean_pop(const TabularMdp& mdp, const DataDistribution& mu,
                                 const Policy& pi, const Eigen::MatrixXd& f,
                                 const Eigen::MatrixXd& w) {
    const Eigen::MatrixXd resid = f - bellman_apply(mdp, pi, f);
    return (mu.mu.array() * w.array() * resid.array()).sum();
}

EvalMax e_pop(const TabularMdp& mdp, const DataDistribution& mu, const Policy& pi,
              const Eigen::MatrixXd& f, const WeightClass& w_class) {
    if (w_class.members.empty()) throw std::invalid_argument("e_pop: empty weight class");
    const Eigen::MatrixXd resid = f - bellman_apply(mdp, pi, f);
    EvalMax best;
    for (int i = 0; i < w_class.size(); ++i) {
        const double v =
            std::fabs((mu.mu.array() * w_class.members[static_cast<size_t>(i)].array() * resid.array()).sum());
        if (best.argmax_w < 0 || v > best.value) {
            best.value = v;
            best.argmax_w = i;
        }
    }
    return best;
}

double l_emp(const AggregatedData& data, const Policy& pi, const Eigen::MatrixXd& f) {
    const Eigen::VectorXd f_pi = value_under_policy(pi, f);
    const Eigen::VectorXd cnt_s = data.count.rowwise().sum();
    return (cnt_s.dot(f_pi) - (data.count.array() * f.array()).sum()) / data.n;
}

double l_emp(const OfflineDataset& data, const Policy& pi, const Eigen::MatrixXd& f) {
    return l_emp(AggregatedData::build(data), pi, f);
}

double weighted_td_mean(const AggregatedData& data, const Policy& pi, const Eigen::MatrixXd& f,
                        const Eigen::MatrixXd& w, double discount) {
    const Eigen::VectorXd f_pi = value_under_policy(pi, f);
    // sum_i w(s_i,a_i) (f(s_i,a_i) - r_i - gamma f(s'_i, pi))
    double total = (w.array() * (data.count.array() * f.array() - data.reward_sum.array())).sum();
    if (discount != 0.0) {
        for (int a = 0; a < data.n_actions; ++a) {
            const Eigen::VectorXd pushed = data.next_count[static_cast<size_t>(a)] * f_pi;
            total -= discount * (w.col(a).array() * pushed.array()).sum();
        }
    }
    return total / data.n;
}

EvalMax e_emp(const AggregatedData& data, const Policy& pi, const Eigen::MatrixXd& f,
              const WeightClass& w_class, double discount) {
    if (w_class.members.empty()) throw std::invalid_argument("e_emp: empty weight class");
    EvalMax best;
    for (int i = 0; i < w_class.size(); ++i) {
        const double v =
            std::fabs(weighted_td_mean(data, pi, f, w_class.members[static_cast<size_t>(i)], discount));
        if (best.argmax_w < 0 || v > best.value) {
            best.value = v;
            best.argmax_w = i;
        }
    }
    return best;
}

EvalMax e_emp(const OfflineDataset& data, const Policy& pi, const Eigen::MatrixXd& f,
              const WeightClass& w_class, double discount) {
    return e_emp(AggregatedData::build(data), pi, f, w_class, discount);
}

double e_emp_rpi(const AggregatedData& data, const Policy& pi, const Eigen::MatrixXd& f,
                 double discount) {
    const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(data.n_states, data.n_actions);
    return std::fabs(weighted_td_mean(data, pi, f, ones, discount));
}

double e_emp_rpi(const OfflineDataset& data, const Policy& pi, const Eigen::MatrixXd& f,
                 double discount) {
    return e_emp_rpi(AggregatedData::build(data), pi, f, discount);
}

double atac_squared_term(const AggregatedData& data, const Policy& pi, const Eigen::MatrixXd& g,
                         const Eigen::MatrixXd& f, double discount) {
    // (g - r - gamma f')^2 = g^2 + r^2 + gamma^2 f'^2 - 2 g r - 2 gamma g f' + 2 gamma r f'
    const Eigen::VectorXd f_pi = value_under_policy(pi, f);
    double total = (data.count.array() * g.array().square()).sum() + data.reward_sq_sum.sum() -
                   2.0 * (data.reward_sum.array() * g.array()).sum();
    if (discount != 0.0) {
        for (int a = 0; a < data.n_actions; ++a) {
            const auto& nc = data.next_count[static_cast<size_t>(a)];
            const auto& nr = data.next_reward_sum[static_cast<size_t>(a)];
            total += discount * discount * (nc * f_pi.array().square().matrix()).sum();
            total -= 2.0 * discount * (g.col(a).array() * (nc * f_pi).array()).sum();
            total += 2.0 * discount * (nr * f_pi).sum();
        }
    }
    return total / data.n;
}

double e_emp_atac(const AggregatedData& data, const Policy& pi, const Eigen::MatrixXd& f,
                  const ValueClass& f_class, double discount) {
    if (f_class.members.empty()) throw std::invalid_argument("e_emp_atac: empty value class");
    const double own = atac_squared_term(data, pi, f, f, discount);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& g : f_class.members)
        best = std::min(best, atac_squared_term(data, pi, g, f, discount));
    return own - best;
}

double e_emp_atac(const OfflineDataset& data, const Policy& pi, const Eigen::MatrixXd& f,
                  const ValueClass& f_class, double discount) {
    return e_emp_atac(AggregatedData::build(data), pi, f, f_class, discount);
}

PerfDecomposition perf_decomposition(const TabularMdp& mdp, const DataDistribution& mu,
                                     const Policy& pi, const Policy& pi_hat,
                                     const Eigen::MatrixXd& f) {
    const Eigen::MatrixXd t_hat_f = bellman_apply(mdp, pi_hat, f);
    const Eigen::MatrixXd d_pi = compute_occupancy(mdp, pi).d;
    const Eigen::VectorXd d_pi_s = d_pi.rowwise().sum();
    const Eigen::MatrixXd q_hat = compute_q(mdp, pi_hat).q;

    PerfDecomposition out;
    out.mu_bellman = (mu.mu.array() * (f - t_hat_f).array()).sum();
    out.pi_bellman_rev = (d_pi.array() * (t_hat_f - f).array()).sum();
    out.action_gap = d_pi_s.dot(value_under_policy(pi, f) - value_under_policy(pi_hat, f));
    out.l_gap = l_pop(mu, pi_hat, f) - l_pop(mu, pi_hat, q_hat);
    return out;
}

}  // namespace acrab
