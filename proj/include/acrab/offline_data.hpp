#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "acrab/mdp.hpp"

namespace acrab {

struct Transition {
    int s = 0;
    int a = 0;
    double r = 0.0;
    int s_next = 0;
};

/// Immutable i.i.d. dataset of (s, a, r, s') tuples drawn from the exact
/// discounted occupancy of a behavior policy.
struct OfflineDataset {
    std::vector<Transition> tuples;
    int n_states = 0;
    int n_actions = 0;
    uint64_t seed = 0;
    std::string source;

    int n() const { return static_cast<int>(tuples.size()); }
    void validate(const TabularMdp& mdp) const;
};

/// The data distribution mu: exact occupancy of the behavior policy.
struct DataDistribution {
    Eigen::MatrixXd mu;  // S x A
};

DataDistribution exact_mu(const TabularMdp& mdp, const Policy& behavior);

/// (s, a) drawn categorically from the exact occupancy d^behavior, r from the
/// reward model, s' from P. Fully reproducible from (inputs, seed).
OfflineDataset sample_dataset(const TabularMdp& mdp, const Policy& behavior, int n, uint64_t seed);

/// Variant with stratified (s, a) counts: each pair appears exactly
/// round(n * mu(s,a)) times (largest-remainder apportionment), matching the
/// convention P_mu(a) = P_D(a); rewards and next states are still sampled.
OfflineDataset sample_dataset_exact_freq(const TabularMdp& mdp, const Policy& behavior, int n,
                                         uint64_t seed);

double empirical_mean(const OfflineDataset& data, const std::function<double(const Transition&)>& g);

/// CSV with header `s,a,r,s_next`.
void write_dataset_csv(const OfflineDataset& data, std::ostream& out);
OfflineDataset read_dataset_csv(std::istream& in);

}  // namespace acrab
