#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace diew {

// Bell-experiment shape: n parties, m settings per party, d outcomes.
// Settings are 1-based at every interface (internally 0-based); binary
// outcomes are the labels +1/-1, mapped to indices 0/1.  Tuples over
// parties are flattened with party 1 as the fastest-running index.
struct Scenario {
    int n_parties = 0;
    int m_settings = 0;
    int d_outcomes = 0;

    Scenario() = default;
    Scenario(int n, int m, int d) : n_parties(n), m_settings(m), d_outcomes(d) {
        if (n < 1 || m < 1 || d < 2)
            throw std::invalid_argument("Scenario: need n>=1, m>=1, d>=2");
    }

    bool operator==(const Scenario& o) const = default;

    std::size_t setting_tuples() const { return ipow(m_settings, n_parties); }
    std::size_t outcome_tuples() const { return ipow(d_outcomes, n_parties); }

    // flattened index of a 0-based settings tuple, party 0 fastest
    std::size_t setting_index(const std::vector<int>& x) const {
        return tuple_index(x, m_settings);
    }
    std::size_t outcome_index(const std::vector<int>& a) const {
        return tuple_index(a, d_outcomes);
    }
    std::vector<int> setting_tuple(std::size_t idx) const {
        return index_tuple(idx, m_settings, n_parties);
    }
    std::vector<int> outcome_tuple(std::size_t idx) const {
        return index_tuple(idx, d_outcomes, n_parties);
    }

    static std::size_t ipow(int base, int exp) {
        std::size_t r = 1;
        for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
        return r;
    }
    static std::size_t tuple_index(const std::vector<int>& t, int radix) {
        std::size_t idx = 0, stride = 1;
        for (int v : t) {
            idx += stride * static_cast<std::size_t>(v);
            stride *= static_cast<std::size_t>(radix);
        }
        return idx;
    }
    static std::vector<int> index_tuple(std::size_t idx, int radix, int len) {
        std::vector<int> t(len);
        for (int i = 0; i < len; ++i) {
            t[i] = static_cast<int>(idx % radix);
            idx /= radix;
        }
        return t;
    }
};

// Nonempty set of party indices (0-based), kept sorted.  Also used as a
// bipartition block, in which case it must be proper.
struct PartySubset {
    std::vector<int> members;

    explicit PartySubset(std::vector<int> m);
    static PartySubset from_mask(unsigned mask, int n_parties);
    unsigned mask() const;
    int size() const { return static_cast<int>(members.size()); }
    bool contains(int p) const;
    PartySubset complement(int n_parties) const;
    bool operator==(const PartySubset& o) const = default;
};

// Joint probability table P(a|x).  Row layout: one row per settings tuple,
// one column per outcome tuple, both flattened party-0-fastest.
struct Behavior {
    Scenario scenario;
    std::vector<double> p;  // size setting_tuples()*outcome_tuples()

    Behavior() = default;
    Behavior(Scenario sc, std::vector<double> probs);

    double& at(std::size_t x_idx, std::size_t a_idx) {
        return p[x_idx * scenario.outcome_tuples() + a_idx];
    }
    double at(std::size_t x_idx, std::size_t a_idx) const {
        return p[x_idx * scenario.outcome_tuples() + a_idx];
    }

    static Behavior uniform(const Scenario& sc);
};

struct ValidationReport {
    double max_negativity = 0.0;      // max(0, -min entry)
    double max_norm_residual = 0.0;   // max |sum_a P(a|x) - 1|
    double max_nosig_residual = 0.0;  // max no-signalling violation
    bool ok(double tol = 1e-9) const {
        return max_negativity <= tol && max_norm_residual <= tol;
    }
};

// Full and marginal correlators of a binary-outcome behavior.  Tables are
// indexed by the subset's settings tuple (members in sorted order, first
// member fastest).  `full` is the all-parties table.
struct CorrelatorSet {
    Scenario scenario;
    std::vector<double> full;                       // size m^n
    std::vector<std::vector<double>> by_mask;       // index: subset mask; empty entries unused

    CorrelatorSet() = default;
    explicit CorrelatorSet(const Scenario& sc);

    unsigned full_mask() const { return (1u << scenario.n_parties) - 1u; }
    const std::vector<double>& table(unsigned mask) const;
    std::vector<double>& table(unsigned mask);
    double& at(unsigned mask, const std::vector<int>& x_sub);
    double at(unsigned mask, const std::vector<int>& x_sub) const;
};

CorrelatorSet correlators_from_behavior(const Behavior& b);
Behavior behavior_from_correlators(const CorrelatorSet& c);
ValidationReport validate(const Behavior& b);
Behavior mix_with_noise(const Behavior& b, double visibility);

}  // namespace diew
