#pragma once

#include "acrab/hypothesis.hpp"
#include "acrab/mdp.hpp"
#include "acrab/offline_data.hpp"

namespace acrab {

enum class RegularizerKind { WeightedAvgBellman, RpiAvgBellman, AtacSquared };

struct CriticObjectiveSpec {
    double beta = 2.0;
    RegularizerKind kind = RegularizerKind::WeightedAvgBellman;
};

struct ObjectiveBreakdown {
    double l_value = 0.0;
    double e_value = 0.0;
    int argmax_w = -1;  // -1 when the regularizer carries no weight witness
    double total = 0.0;
};

/// Sufficient statistics of a dataset: every empirical objective here is a
/// linear or quadratic function of the rewards, so per-(s,a,s') counts and
/// reward moments reproduce the tuple-loop values exactly up to summation
/// order. Built once per dataset; evaluation cost is then independent of N.
struct AggregatedData {
    int n = 0;
    int n_states = 0;
    int n_actions = 0;
    Eigen::MatrixXd count;        // (s,a) visit counts
    Eigen::MatrixXd reward_sum;   // sum of r over visits of (s,a)
    Eigen::MatrixXd reward_sq_sum;
    std::vector<Eigen::MatrixXd> next_count;       // [a](s,s') transition counts
    std::vector<Eigen::MatrixXd> next_reward_sum;  // [a](s,s') sum of r on those tuples

    static AggregatedData build(const OfflineDataset& data);
};

// ---- Population objectives (exact expectations; serve as oracles) ----

/// L_mu(pi, f) = E_mu[f(s,pi) - f(s,a)].
double l_pop(const DataDistribution& mu, const Policy& pi, const Eigen::MatrixXd& f);

struct EvalMax {
    double value = 0.0;
    int argmax_w = -1;
};

/// E_mu(pi, f) = max_w |E_mu[w (f - T^pi f)]|, exhaustive over W; ties break
/// to the lowest index.
EvalMax e_pop(const TabularMdp& mdp, const DataDistribution& mu, const Policy& pi,
              const Eigen::MatrixXd& f, const WeightClass& w_class);

/// Signed population inner product E_mu[w (f - T^pi f)].
double weighted_bellman_mean_pop(const TabularMdp& mdp, const DataDistribution& mu,
                                 const Policy& pi, const Eigen::MatrixXd& f,
                                 const Eigen::MatrixXd& w);

// ---- Empirical objectives ----

/// L_D(pi, f) = (1/N) sum (f(s,pi) - f(s,a)).
double l_emp(const AggregatedData& data, const Policy& pi, const Eigen::MatrixXd& f);
double l_emp(const OfflineDataset& data, const Policy& pi, const Eigen::MatrixXd& f);

/// Signed empirical statistic E_D[w(s,a) (f(s,a) - r - gamma f(s',pi))];
/// unbiased for the population inner product above.
double weighted_td_mean(const AggregatedData& data, const Policy& pi, const Eigen::MatrixXd& f,
                        const Eigen::MatrixXd& w, double discount);

/// E_D(pi, f) = max_w |weighted_td_mean|; ties to the lowest index.
EvalMax e_emp(const AggregatedData& data, const Policy& pi, const Eigen::MatrixXd& f,
              const WeightClass& w_class, double discount);
EvalMax e_emp(const OfflineDataset& data, const Policy& pi, const Eigen::MatrixXd& f,
              const WeightClass& w_class, double discount);

/// Unweighted |E_D[f(s,a) - r - gamma f(s',pi)]|; identical to e_emp with the
/// all-ones weight class.
double e_emp_rpi(const AggregatedData& data, const Policy& pi, const Eigen::MatrixXd& f,
                 double discount);
double e_emp_rpi(const OfflineDataset& data, const Policy& pi, const Eigen::MatrixXd& f,
                 double discount);

/// Raw squared TD term E_D[(g(s,a) - r - gamma f(s',pi))^2].
double atac_squared_term(const AggregatedData& data, const Policy& pi, const Eigen::MatrixXd& g,
                         const Eigen::MatrixXd& f, double discount);

/// ATAC regularizer with the double-sampling correction:
/// raw(f,f) - min over g in F of raw(g,f). Nonnegative whenever f is a member.
double e_emp_atac(const AggregatedData& data, const Policy& pi, const Eigen::MatrixXd& f,
                  const ValueClass& f_class, double discount);
double e_emp_atac(const OfflineDataset& data, const Policy& pi, const Eigen::MatrixXd& f,
                  const ValueClass& f_class, double discount);

// ---- Performance difference decomposition ----

/// The four terms whose sum equals J(pi) - J(pi_hat) exactly when mu is the
/// occupancy of a behavior policy:
///   mu_bellman      = E_mu[(f - T^{pi_hat} f)(s,a)]
///   pi_bellman_rev  = E_{d^pi}[(T^{pi_hat} f - f)(s,a)]
///   action_gap      = E_{s~d^pi}[f(s,pi) - f(s,pi_hat)]
///   l_gap           = L_mu(pi_hat, f) - L_mu(pi_hat, Q^{pi_hat})
struct PerfDecomposition {
    double mu_bellman = 0.0;
    double pi_bellman_rev = 0.0;
    double action_gap = 0.0;
    double l_gap = 0.0;

    double sum() const { return mu_bellman + pi_bellman_rev + action_gap + l_gap; }
};

PerfDecomposition perf_decomposition(const TabularMdp& mdp, const DataDistribution& mu,
                                     const Policy& pi, const Policy& pi_hat,
                                     const Eigen::MatrixXd& f);

}  // namespace acrab
