#pragma once

#include <iosfwd>
#include <optional>

#include "acrab/objectives.hpp"

namespace acrab {

struct SolverConfig {
    double beta = 2.0;
    int k_iters = 500;
    double eta = 0.0;  // <= 0 selects auto: sqrt(ln|A| / K) / v_max
    RegularizerKind kind = RegularizerKind::WeightedAvgBellman;
    uint64_t seed = 0;

    void validate() const;
};

enum class ActorMode { NoRegret, BestResponse };

struct IterationTrace {
    int critic_idx = -1;
    double l_emp = 0.0;
    double e_emp = 0.0;
    int argmax_w = -1;
    Policy policy;            // the actor iterate the critic responded to
    Eigen::MatrixXd critic_f; // snapshot of the chosen critic table
};

/// Full trace of one solver run. For NoRegret mode the mixture is the list of
/// iterates pi_1..pi_K; for BestResponse it is the single chosen policy.
struct RunRecord {
    ActorMode mode = ActorMode::NoRegret;
    RegularizerKind kind = RegularizerKind::WeightedAvgBellman;
    double beta = 0.0;
    double eta = 0.0;
    std::vector<IterationTrace> iterations;
    std::vector<Policy> mixture;
    int chosen_policy = -1;  // BestResponse only

    /// Exact J of the output: mean of iterate J values (NoRegret) or the
    /// chosen policy's J (BestResponse).
    double output_j(const TabularMdp& mdp) const;
};

/// Exhaustive argmin over F of l_emp + beta * regularizer; ties break to the
/// lowest index. Pass the weight class only for WeightedAvgBellman.
int critic_step(const AggregatedData& data, const Policy& pi, const ValueClass& f_class,
                const WeightClass* w_class, const CriticObjectiveSpec& spec, double discount,
                ObjectiveBreakdown* breakdown = nullptr);

/// Multiplicative-weights update pi'(a|s) proportional to pi(a|s) exp(eta f(s,a)),
/// stabilized per state by subtracting the row max before exponentiation.
Policy npg_update(const Policy& pi, const Eigen::MatrixXd& f, double eta);

double resolve_eta(const SolverConfig& config, int n_actions, double v_max);

RunRecord run_acrab(const OfflineDataset& data, const ValueClass& f_class,
                    const WeightClass& w_class, const SolverConfig& config, double discount);
RunRecord run_acrab_rpi(const OfflineDataset& data, const ValueClass& f_class,
                        const SolverConfig& config, double discount);
RunRecord run_atac(const OfflineDataset& data, const ValueClass& f_class,
                   const SolverConfig& config, double discount);

/// Stackelberg best response over an explicit finite policy class: for each
/// candidate, solve the critic, then pick argmax of l_emp(pi, f^pi) (ties to
/// the lowest index). One IterationTrace per candidate.
RunRecord run_best_response(const OfflineDataset& data, const std::vector<Policy>& candidates,
                            const ValueClass& f_class, const WeightClass* w_class,
                            const SolverConfig& config, double discount);

/// Average regret of the trace against a fixed comparator:
/// (1/K) sum_k E_{d^comparator}[f_k(s, comparator) - f_k(s, pi_k)].
double measure_regret(const RunRecord& record, const Policy& comparator, const TabularMdp& mdp);

/// CSV trace `iter,critic_idx,l_emp,e_emp,j_iterate`; j_iterate is filled
/// from the mdp when provided, else left empty.
void write_trace_csv(const RunRecord& record, const TabularMdp* mdp, std::ostream& out);

}  // namespace acrab
