#pragma once

#include <optional>
#include <vector>

#include "acrab/mdp.hpp"
#include "acrab/offline_data.hpp"

namespace acrab {

/// Finite explicit class of value tables f: (s,a) -> [0, v_max].
struct ValueClass {
    std::vector<Eigen::MatrixXd> members;
    double v_max = 1.0;

    int size() const { return static_cast<int>(members.size()); }
    void validate() const;
};

/// Finite class of nonnegative weight tables; must contain the all-ones table.
struct WeightClass {
    std::vector<Eigen::MatrixXd> members;
    double b_w = 1.0;

    int size() const { return static_cast<int>(members.size()); }
    /// Index of the all-ones member, or -1.
    int all_ones_index() const;
    void validate() const;
};

struct AuditPolicySet {
    std::vector<Policy> members;

    int size() const { return static_cast<int>(members.size()); }
    void validate() const;
};

/// Concentrability value; finite == false marks a coverage violation
/// (d^target > 0 on a state-action pair where mu == 0) with the witness pair.
struct ConcentrabilityValue {
    double value = 0.0;
    bool finite = true;
    int bad_s = -1;
    int bad_a = -1;
};

/// l2 single-policy concentrability ||d^target/mu||_{2,mu}. The returned
/// identity_check is E_{d^target}[w^target], which must equal value^2; the
/// function throws std::runtime_error if the two routes disagree beyond 1e-10.
struct CL2Result : ConcentrabilityValue {
    double identity_check = 0.0;
};
CL2Result c_l2(const TabularMdp& mdp, const Policy& target, const DataDistribution& mu);

ConcentrabilityValue c_linf(const TabularMdp& mdp, const Policy& target, const DataDistribution& mu);

struct BellmanConcentrability {
    double value = 0.0;
    int witness_f = -1;
    bool degenerate = false;  // all members have (near) zero Bellman error under mu
};
BellmanConcentrability c_bellman(const TabularMdp& mdp, const Policy& target,
                                 const DataDistribution& mu, const ValueClass& f_class);

/// Bundled report; construction re-verifies c_l2 <= c_linf and c_l2^2 <= c_linf.
struct ConcentrabilityReport {
    CL2Result l2;
    ConcentrabilityValue linf;
    BellmanConcentrability bellman;

    static ConcentrabilityReport build(const TabularMdp& mdp, const Policy& target,
                                       const DataDistribution& mu, const ValueClass& f_class);
};

/// Realizability defect of the value class over the audit set:
/// max over audited pi of min over f of max over admissible nu = d^{pi'} of
/// ||f - T^pi f||^2_{2,nu}. Zero iff every audited Q^pi lies in F.
double audit_realizability_f(const TabularMdp& mdp, const ValueClass& f_class,
                             const AuditPolicySet& policies);

/// C*_l2 = max over members of ||w||_{2,mu}; throws if the all-ones table is missing.
double audit_weight_class(const WeightClass& w_class, const DataDistribution& mu);

struct WRealizability {
    bool realizable = false;
    double best_distance = 0.0;
    int best_index = -1;
};

/// Whether d^target/mu matches some member of W within sup-norm 1e-9.
/// Throws std::runtime_error on a coverage violation.
WRealizability audit_w_realizability(const TabularMdp& mdp, const Policy& target,
                                     const DataDistribution& mu, const WeightClass& w_class);

/// Exact marginalized importance weights d^target/mu. Throws on coverage violation.
Eigen::MatrixXd importance_weights(const TabularMdp& mdp, const Policy& target,
                                   const DataDistribution& mu);

}  // namespace acrab
