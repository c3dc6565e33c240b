#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diew/quantum.hpp"
#include "diew/scenario.hpp"

namespace diew {

// Linear functional on correlators with named bounds.  `full` holds the
// coefficient on each full-correlator E(x); `marginal[mask]` (optional,
// produced by dual-certificate extraction) holds coefficients on subset
// correlators.  Bounds live in `named_bounds` and are stored metadata:
// they are never recomputed silently.
struct WitnessCoefficients {
    Scenario scenario;
    std::vector<double> full;                  // size m^n
    std::vector<std::vector<double>> marginal; // by subset mask; empty = no marginal terms
    std::map<std::string, double> named_bounds;

    WitnessCoefficients() = default;
    explicit WitnessCoefficients(const Scenario& sc)
        : scenario(sc), full(sc.setting_tuples(), 0.0),
          marginal(1u << sc.n_parties) {}

    bool has_marginal_terms() const;
    std::optional<double> bound(const std::string& name) const;
    int nonzero_count() const;
    // local <= biseparable <= svetlichny <= algebraic for the stored subset
    bool bounds_consistent() const;
};

struct SignVector {
    std::array<int, 3> gamma;  // entries +-1
};

// coefficient sequence with f(0..2) = 1,1,0 and f(k+3) = -f(k), any integer k
int f_coeff(int k);

// sum of full correlators E(x) over settings tuples with sum(x_i) = k (1-based x)
double e_sum(const CorrelatorSet& c, int k);

// the n-party three-setting witness; bounds: biseparable 2*3^(n-3/2),
// svetlichny 4*3^(n-2), quantum_max 3^(n-1/2), algebraic 2*3^(n-1)
WitnessCoefficients build_In(int n);
// shifted variant I_n^j with coefficient f(sum(x)-n+j); j=0 gives build_In
WitnessCoefficients build_In_shifted(int n, int j);

double evaluate(const WitnessCoefficients& w, const CorrelatorSet& c);

// equatorial settings with phase ((x-1)/3 - 1/(6n))*pi on every party
MeasurementAssignment paper_ghz_settings(int n);

// biseparable state and settings saturating the biseparable bound of I_n
std::pair<DensityMatrix, MeasurementAssignment> tight_bisep_construction(int n);

// two-setting tripartite witness E(111)-E(122)-E(212)-E(221), settings X<->1, Y<->2
WitnessCoefficients mermin_witness();

// Returns {analytic, born}: the two-qubit-pair construction whose value under
// a biased third-party measurement equals 2*sqrt(1+sin^2 theta).
std::pair<double, double> biased_mermin_demo(double theta);

// bipartite reduction: coefficient g_gamma(x+y) with g_gamma(k) = sum_z gamma_z f(k+z-3)
WitnessCoefficients chained_reduction(const SignVector& gamma);

// relabelling that maps `w` onto scale * target (input permutations, per-input
// outcome flips, optional party swap); searched exhaustively
struct Relabeling {
    bool swap_parties = false;
    std::array<std::vector<int>, 2> input_perm;   // new setting = perm[party][old]
    std::array<std::vector<int>, 2> outcome_flip; // +-1 per party per (old) setting
    double scale = 1.0;
};
std::optional<Relabeling> find_bipartite_relabeling(const WitnessCoefficients& w,
                                                    const WitnessCoefficients& target);
// the 3-input chained inequality (classical bound 4, quantum bound 3*sqrt(3))
WitnessCoefficients chained3_inequality();

struct InductionReport {
    int samples = 0;
    double max_value = 0.0;
    double bound = 0.0;  // 3 * max I_n over biseparable = 2*3^(n-1/2)
    bool ok = false;
};
// random (n+1)-party biseparable product behaviors vs the I_{n+1} bound
InductionReport induction_check(int n, int samples, std::uint64_t seed);

// random biseparable behavior sampler shared by tests and certification:
// mixture of `terms` product behaviors across random bipartitions, qubit
// blocks with random pure states and random Bloch settings
Behavior random_biseparable_behavior(const Scenario& sc, std::uint64_t seed, int terms = 1);

}  // namespace diew
