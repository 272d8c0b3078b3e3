#include "acrab/offline_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace acrab {

namespace {

double sample_reward(const TabularMdp& mdp, int s, int a, CounterRng& rng) {
    const double m = mdp.reward_mean(s, a);
    if (mdp.reward_kind(s, a) == 1) return rng.next_bernoulli(m) ? 1.0 : 0.0;
    return m;
}

int sample_next_state(const TabularMdp& mdp, int s, int a, CounterRng& rng) {
    const auto& row = mdp.transition[static_cast<size_t>(a)].row(s);
    std::vector<double> cdf(static_cast<size_t>(mdp.n_states()));
    double acc = 0;
    for (int s2 = 0; s2 < mdp.n_states(); ++s2) cdf[static_cast<size_t>(s2)] = (acc += row(s2));
    return rng.next_from_cdf(cdf);
}

}  // namespace

void OfflineDataset::validate(const TabularMdp& mdp) const {
    if (n_states != mdp.n_states() || n_actions != mdp.n_actions())
        throw std::invalid_argument("dataset: dimension mismatch with mdp");
    for (const auto& t : tuples) {
        if (t.s < 0 || t.s >= n_states || t.a < 0 || t.a >= n_actions || t.s_next < 0 ||
            t.s_next >= n_states)
            throw std::invalid_argument("dataset: index out of range");
        if (mdp.reward_kind(t.s, t.a) == 1) {
            if (t.r != 0.0 && t.r != 1.0)
                throw std::invalid_argument("dataset: Bernoulli reward outside {0,1}");
        } else if (t.r != mdp.reward_mean(t.s, t.a)) {
            throw std::invalid_argument("dataset: deterministic reward mismatch");
        }
    }
}

DataDistribution exact_mu(const TabularMdp& mdp, const Policy& behavior) {
    return DataDistribution{compute_occupancy(mdp, behavior).d};
}

OfflineDataset sample_dataset(const TabularMdp& mdp, const Policy& behavior, int n, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_dataset: n must be >= 1");
    const int S = mdp.n_states(), A = mdp.n_actions();
    const DataDistribution dist = exact_mu(mdp, behavior);

    std::vector<double> cdf(static_cast<size_t>(S * A));
    double acc = 0;
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a) cdf[static_cast<size_t>(s * A + a)] = (acc += dist.mu(s, a));

    CounterRng rng(seed, /*stream=*/0x0FF1CEDA7Aull);
    OfflineDataset data;
    data.n_states = S;
    data.n_actions = A;
    data.seed = seed;
    data.source = "iid";
    data.tuples.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int flat = rng.next_from_cdf(cdf);
        const int s = flat / A, a = flat % A;
        Transition t;
        t.s = s;
        t.a = a;
        t.r = sample_reward(mdp, s, a, rng);
        t.s_next = sample_next_state(mdp, s, a, rng);
        data.tuples.push_back(t);
    }
    return data;
}

OfflineDataset sample_dataset_exact_freq(const TabularMdp& mdp, const Policy& behavior, int n,
                                         uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_dataset_exact_freq: n must be >= 1");
    const int S = mdp.n_states(), A = mdp.n_actions();
    const DataDistribution dist = exact_mu(mdp, behavior);

    // Largest-remainder apportionment of n over the support of mu.
    struct Cell {
        int s, a;
        double target;
        int count;
        double frac;
    };
    std::vector<Cell> cells;
    int allocated = 0;
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a) {
            const double t = n * dist.mu(s, a);
            if (t <= 0.0) continue;
            Cell c{s, a, t, static_cast<int>(std::floor(t)), 0.0};
            c.frac = t - c.count;
            allocated += c.count;
            cells.push_back(c);
        }
    std::vector<size_t> order(cells.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t i, size_t j) { return cells[i].frac > cells[j].frac; });
    for (size_t k = 0; allocated < n; ++k, ++allocated) cells[order[k % order.size()]].count++;

    CounterRng rng(seed, /*stream=*/0x57A7F1EDull);
    OfflineDataset data;
    data.n_states = S;
    data.n_actions = A;
    data.seed = seed;
    data.source = "exact-freq";
    data.tuples.reserve(static_cast<size_t>(n));
    for (const auto& c : cells)
        for (int i = 0; i < c.count; ++i) {
            Transition t;
            t.s = c.s;
            t.a = c.a;
            t.r = sample_reward(mdp, c.s, c.a, rng);
            t.s_next = sample_next_state(mdp, c.s, c.a, rng);
            data.tuples.push_back(t);
        }
    return data;
}

double empirical_mean(const OfflineDataset& data, const std::function<double(const Transition&)>& g) {
    if (data.tuples.empty()) throw std::invalid_argument("empirical_mean: empty dataset");
    double s = 0;
    for (const auto& t : data.tuples) s += g(t);
    return s / static_cast<double>(data.tuples.size());
}

void write_dataset_csv(const OfflineDataset& data, std::ostream& out) {
    out << "s,a,r,s_next\n";
    char buf[64];
    for (const auto& t : data.tuples) {
        std::snprintf(buf, sizeof(buf), "%.17g", t.r);
        out << t.s << ',' << t.a << ',' << buf << ',' << t.s_next << '\n';
    }
}

OfflineDataset read_dataset_csv(std::istream& in) {
    OfflineDataset data;
    data.source = "csv";
    std::string line;
    if (!std::getline(in, line) || line != "s,a,r,s_next")
        throw std::invalid_argument("dataset csv: bad header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        Transition t;
        char c1, c2, c3;
        if (!(ss >> t.s >> c1 >> t.a >> c2 >> t.r >> c3 >> t.s_next) || c1 != ',' || c2 != ',' ||
            c3 != ',')
            throw std::invalid_argument("dataset csv: bad row: " + line);
        data.tuples.push_back(t);
        data.n_states = std::max({data.n_states, t.s + 1, t.s_next + 1});
        data.n_actions = std::max(data.n_actions, t.a + 1);
    }
    return data;
}

}  // namespace acrab
