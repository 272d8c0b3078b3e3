#include "acrab/hypothesis.hpp"

#include <cmath>
#include <stdexcept>

namespace acrab {

namespace {
// mu entries below this are treated as exact zeros (unsupported pairs).
constexpr double kSupportEps = 1e-14;
constexpr double kMassEps = 1e-12;
}  // namespace

void ValueClass::validate() const {
    if (members.empty()) throw std::invalid_argument("value class: empty");
    for (const auto& f : members)
        if (f.minCoeff() < 0.0 || f.maxCoeff() > v_max + 1e-12)
            throw std::invalid_argument("value class: member outside [0, v_max]");
}

int WeightClass::all_ones_index() const {
    for (int i = 0; i < size(); ++i) {
        const auto& w = members[static_cast<size_t>(i)];
        if ((w.array() - 1.0).abs().maxCoeff() <= 1e-12) return i;
    }
    return -1;
}

void WeightClass::validate() const {
    if (members.empty()) throw std::invalid_argument("weight class: empty");
    if (all_ones_index() < 0) throw std::invalid_argument("weight class: missing all-ones member");
    for (const auto& w : members)
        if (w.minCoeff() < 0.0 || w.maxCoeff() > b_w + 1e-12)
            throw std::invalid_argument("weight class: member outside [0, b_w]");
}

void AuditPolicySet::validate() const {
    if (members.empty()) throw std::invalid_argument("audit set: empty");
    for (const auto& pi : members) pi.validate();
}

Eigen::MatrixXd importance_weights(const TabularMdp& mdp, const Policy& target,
                                   const DataDistribution& mu) {
    const Eigen::MatrixXd d = compute_occupancy(mdp, target).d;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d.rows(), d.cols());
    for (int s = 0; s < d.rows(); ++s)
        for (int a = 0; a < d.cols(); ++a) {
            if (mu.mu(s, a) > kSupportEps) {
                w(s, a) = d(s, a) / mu.mu(s, a);
            } else if (d(s, a) > kMassEps) {
                throw std::runtime_error("importance_weights: target not covered by mu at (" +
                                         std::to_string(s) + "," + std::to_string(a) + ")");
            }
        }
    return w;
}

CL2Result c_l2(const TabularMdp& mdp, const Policy& target, const DataDistribution& mu) {
    const Eigen::MatrixXd d = compute_occupancy(mdp, target).d;
    CL2Result res;
    double sq = 0, identity = 0;
    for (int s = 0; s < d.rows(); ++s)
        for (int a = 0; a < d.cols(); ++a) {
            if (mu.mu(s, a) > kSupportEps) {
                const double w = d(s, a) / mu.mu(s, a);
                sq += w * w * mu.mu(s, a);
                identity += d(s, a) * w;
            } else if (d(s, a) > kMassEps) {
                res.finite = false;
                res.bad_s = s;
                res.bad_a = a;
                res.value = std::numeric_limits<double>::infinity();
                return res;
            }
        }
    res.value = std::sqrt(sq);
    res.identity_check = identity;
    if (std::fabs(std::sqrt(identity) - res.value) > 1e-10)
        throw std::runtime_error("c_l2: identity E_d[w] != ||w||^2 violated");
    return res;
}

ConcentrabilityValue c_linf(const TabularMdp& mdp, const Policy& target,
                            const DataDistribution& mu) {
    const Eigen::MatrixXd d = compute_occupancy(mdp, target).d;
    ConcentrabilityValue res;
    for (int s = 0; s < d.rows(); ++s)
        for (int a = 0; a < d.cols(); ++a) {
            if (mu.mu(s, a) > kSupportEps) {
                res.value = std::max(res.value, d(s, a) / mu.mu(s, a));
            } else if (d(s, a) > kMassEps) {
                res.finite = false;
                res.bad_s = s;
                res.bad_a = a;
                res.value = std::numeric_limits<double>::infinity();
                return res;
            }
        }
    return res;
}

BellmanConcentrability c_bellman(const TabularMdp& mdp, const Policy& target,
                                 const DataDistribution& mu, const ValueClass& f_class) {
    const Eigen::MatrixXd d = compute_occupancy(mdp, target).d;
    BellmanConcentrability res;
    res.degenerate = true;
    for (int i = 0; i < f_class.size(); ++i) {
        const Eigen::MatrixXd resid =
            f_class.members[static_cast<size_t>(i)] -
            bellman_apply(mdp, target, f_class.members[static_cast<size_t>(i)]);
        const double den = (mu.mu.array() * resid.array().square()).sum();
        if (std::sqrt(std::max(0.0, den)) <= 1e-12) continue;
        const double num = (d.array() * resid.array().square()).sum();
        const double ratio = num / den;
        if (res.degenerate || ratio > res.value) {
            res.value = ratio;
            res.witness_f = i;
        }
        res.degenerate = false;
    }
    if (res.degenerate)
        throw std::invalid_argument("c_bellman: every member has zero Bellman error under mu");
    return res;
}

ConcentrabilityReport ConcentrabilityReport::build(const TabularMdp& mdp, const Policy& target,
                                                   const DataDistribution& mu,
                                                   const ValueClass& f_class) {
    ConcentrabilityReport rep;
    rep.l2 = c_l2(mdp, target, mu);
    rep.linf = c_linf(mdp, target, mu);
    rep.bellman = c_bellman(mdp, target, mu, f_class);
    if (rep.l2.finite && rep.linf.finite) {
        if (rep.l2.value > rep.linf.value + 1e-9 ||
            rep.l2.value * rep.l2.value > rep.linf.value + 1e-9)
            throw std::runtime_error("concentrability report: ordering inequalities violated");
    }
    return rep;
}

double audit_realizability_f(const TabularMdp& mdp, const ValueClass& f_class,
                             const AuditPolicySet& policies) {
    if (f_class.members.empty() || policies.members.empty())
        throw std::invalid_argument("audit_realizability_f: empty inputs");
    std::vector<Eigen::MatrixXd> occupancies;
    occupancies.reserve(policies.members.size());
    for (const auto& pi : policies.members) occupancies.push_back(compute_occupancy(mdp, pi).d);

    double worst_over_pi = 0.0;
    for (const auto& pi : policies.members) {
        double best_f = std::numeric_limits<double>::infinity();
        for (const auto& f : f_class.members) {
            const Eigen::MatrixXd resid = f - bellman_apply(mdp, pi, f);
            double worst_nu = 0.0;
            for (const auto& nu : occupancies)
                worst_nu = std::max(worst_nu, (nu.array() * resid.array().square()).sum());
            best_f = std::min(best_f, worst_nu);
        }
        worst_over_pi = std::max(worst_over_pi, best_f);
    }
    return worst_over_pi;
}

double audit_weight_class(const WeightClass& w_class, const DataDistribution& mu) {
    if (w_class.members.empty()) throw std::invalid_argument("audit_weight_class: empty class");
    if (w_class.all_ones_index() < 0)
        throw std::invalid_argument("audit_weight_class: missing all-ones member");
    double worst = 0.0;
    for (const auto& w : w_class.members)
        worst = std::max(worst, std::sqrt((mu.mu.array() * w.array().square()).sum()));
    return worst;
}

WRealizability audit_w_realizability(const TabularMdp& mdp, const Policy& target,
                                     const DataDistribution& mu, const WeightClass& w_class) {
    const Eigen::MatrixXd w_target = importance_weights(mdp, target, mu);
    WRealizability res;
    res.best_distance = std::numeric_limits<double>::infinity();
    for (int i = 0; i < w_class.size(); ++i) {
        // Compare on the support of mu only; unsupported pairs carry no data.
        double dist = 0.0;
        const auto& w = w_class.members[static_cast<size_t>(i)];
        for (int s = 0; s < w.rows(); ++s)
            for (int a = 0; a < w.cols(); ++a)
                if (mu.mu(s, a) > kSupportEps)
                    dist = std::max(dist, std::fabs(w(s, a) - w_target(s, a)));
        if (dist < res.best_distance) {
            res.best_distance = dist;
            res.best_index = i;
        }
    }
    res.realizable = res.best_distance <= 1e-9;
    return res;
}

}  // namespace acrab
