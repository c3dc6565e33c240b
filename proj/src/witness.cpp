#include "diew/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "diew/rng.hpp"

namespace diew {

bool WitnessCoefficients::has_marginal_terms() const {
    for (const auto& tab : marginal)
        for (double v : tab)
            if (v != 0.0) return true;
    return false;
}

std::optional<double> WitnessCoefficients::bound(const std::string& name) const {
    auto it = named_bounds.find(name);
    if (it == named_bounds.end()) return std::nullopt;
    return it->second;
}

int WitnessCoefficients::nonzero_count() const {
    int c = 0;
    for (double v : full)
        if (v != 0.0) ++c;
    return c;
}

bool WitnessCoefficients::bounds_consistent() const {
    static const char* chain[] = {"local", "biseparable", "svetlichny", "algebraic"};
    double prev = -1e300;
    for (const char* name : chain) {
        auto b = bound(name);
        if (!b) continue;
        if (*b < prev - 1e-12) return false;
        prev = *b;
    }
    return true;
}

int f_coeff(int k) {
    static const int table[6] = {1, 1, 0, -1, -1, 0};
    int r = k % 6;
    if (r < 0) r += 6;
    return table[r];
}

double e_sum(const CorrelatorSet& c, int k) {
    const Scenario& sc = c.scenario;
    double s = 0.0;
    for (std::size_t xi = 0; xi < sc.setting_tuples(); ++xi) {
        auto x = sc.setting_tuple(xi);
        int sum = sc.n_parties;  // 1-based labels
        for (int v : x) sum += v;
        if (sum == k) s += c.full[xi];
    }
    return s;
}

WitnessCoefficients build_In_shifted(int n, int j) {
    if (n < 2) throw std::invalid_argument("build_In: need n >= 2");
    Scenario sc(n, 3, 2);
    WitnessCoefficients w(sc);
    for (std::size_t xi = 0; xi < sc.setting_tuples(); ++xi) {
        auto x = sc.setting_tuple(xi);
        int sum0 = 0;  // sum(x_i) - n for 1-based labels
        for (int v : x) sum0 += v;
        w.full[xi] = f_coeff(sum0 + j);
    }
    return w;
}

WitnessCoefficients build_In(int n) {
    WitnessCoefficients w = build_In_shifted(n, 0);
    w.named_bounds["biseparable"] = 2.0 * std::pow(3.0, n - 1.5);
    w.named_bounds["svetlichny"] = 4.0 * std::pow(3.0, n - 2);
    w.named_bounds["quantum_max"] = std::pow(3.0, n - 0.5);
    w.named_bounds["algebraic"] = 2.0 * std::pow(3.0, n - 1);
    return w;
}

double evaluate(const WitnessCoefficients& w, const CorrelatorSet& c) {
    if (!(w.scenario == c.scenario))
        throw std::invalid_argument("evaluate: witness/correlator scenario mismatch");
    double v = 0.0;
    for (std::size_t i = 0; i < w.full.size(); ++i) v += w.full[i] * c.full[i];
    for (unsigned mask = 1; mask + 1 < (1u << w.scenario.n_parties); ++mask) {
        if (mask >= w.marginal.size() || w.marginal[mask].empty()) continue;
        const auto& coef = w.marginal[mask];
        const auto& tab = c.table(mask);
        for (std::size_t i = 0; i < coef.size(); ++i) v += coef[i] * tab[i];
    }
    return v;
}

MeasurementAssignment paper_ghz_settings(int n) {
    if (n < 2) throw std::invalid_argument("paper_ghz_settings: need n >= 2");
    std::vector<std::vector<BinaryObservable>> obs(n);
    for (int p = 0; p < n; ++p)
        for (int x = 1; x <= 3; ++x) {
            double phase = ((x - 1) / 3.0 - 1.0 / (6.0 * n)) * std::numbers::pi;
            obs[p].push_back(equatorial_observable(phase));
        }
    return MeasurementAssignment::from_observables(obs);
}

std::pair<DensityMatrix, MeasurementAssignment> tight_bisep_construction(int n) {
    if (n < 3) throw std::invalid_argument("tight_bisep_construction: need n >= 3");
    CMat zero_proj = CMat::Zero(2, 2);
    zero_proj(0, 0) = 1.0;
    DensityMatrix state(kron(ghz_state(n - 1, 2).rho, zero_proj));
    std::vector<std::vector<BinaryObservable>> obs(n);
    for (int p = 0; p < n - 1; ++p)
        for (int x = 1; x <= 3; ++x) {
            double phase = ((x - 1) / 3.0 + 1.0 / (6.0 * (n - 1))) * std::numbers::pi;
            obs[p].push_back(equatorial_observable(phase));
        }
    for (int x = 1; x <= 3; ++x) obs[n - 1].push_back(bloch_observable(0.0, 0.0));  // sigma_z
    return {state, MeasurementAssignment::from_observables(obs)};
}

WitnessCoefficients mermin_witness() {
    Scenario sc(3, 2, 2);
    WitnessCoefficients w(sc);
    auto set = [&](int x, int y, int z, double v) {
        w.full[sc.setting_index({x - 1, y - 1, z - 1})] = v;
    };
    set(1, 1, 1, 1.0);
    set(1, 2, 2, -1.0);
    set(2, 1, 2, -1.0);
    set(2, 2, 1, -1.0);
    w.named_bounds["local"] = 2.0;
    w.named_bounds["biseparable"] = 2.0 * std::numbers::sqrt2;
    w.named_bounds["svetlichny"] = 4.0;
    w.named_bounds["algebraic"] = 4.0;
    w.named_bounds["qubit_bisep"] = 2.0;
    return w;
}

std::pair<double, double> biased_mermin_demo(double theta) {
    const double phi = std::atan(std::sin(theta));
    CVec pair = CVec::Zero(4);
    pair(0) = 1.0;
    pair(3) = std::exp(Cplx(0.0, -phi));
    CVec plus(2);
    plus << 1.0, 1.0;
    CVec psi = CVec::Zero(8);
    {
        CMat pm = pair * pair.adjoint();
        CMat qm = plus * plus.adjoint();
        CMat full = kron(pm, qm);
        full /= full.trace();
        DensityMatrix rho(full);
        BinaryObservable X = equatorial_observable(0.0);
        BinaryObservable Y = equatorial_observable(std::numbers::pi / 2);
        BinaryObservable Y3{std::cos(theta) * equatorial_observable(std::numbers::pi / 2).mat +
                            std::sin(theta) * equatorial_observable(0.0).mat};
        MeasurementAssignment meas =
            MeasurementAssignment::from_observables({{X, Y}, {X, Y}, {X, Y3}});
        Behavior b = born_behavior(rho, meas);
        double born = evaluate(mermin_witness(), correlators_from_behavior(b));
        double analytic = 2.0 * std::sqrt(1.0 + std::sin(theta) * std::sin(theta));
        return {analytic, born};
    }
}

WitnessCoefficients chained_reduction(const SignVector& gamma) {
    Scenario sc(2, 3, 2);
    WitnessCoefficients w(sc);
    auto g = [&](int k) {
        int v = 0;
        for (int z = 1; z <= 3; ++z) v += gamma.gamma[z - 1] * f_coeff(k + z - 3);
        return v;
    };
    for (int x = 1; x <= 3; ++x)
        for (int y = 1; y <= 3; ++y)
            w.full[sc.setting_index({x - 1, y - 1})] = g(x + y);
    return w;
}

WitnessCoefficients chained3_inequality() {
    Scenario sc(2, 3, 2);
    WitnessCoefficients w(sc);
    auto set = [&](int x, int y, double v) { w.full[sc.setting_index({x - 1, y - 1})] = v; };
    set(1, 1, 1.0);
    set(2, 1, 1.0);
    set(2, 2, 1.0);
    set(3, 2, 1.0);
    set(3, 3, 1.0);
    set(1, 3, -1.0);
    w.named_bounds["local"] = 4.0;
    w.named_bounds["quantum_max"] = 3.0 * std::sqrt(3.0);
    w.named_bounds["algebraic"] = 6.0;
    return w;
}

std::optional<Relabeling> find_bipartite_relabeling(const WitnessCoefficients& w,
                                                    const WitnessCoefficients& target) {
    const Scenario& sc = w.scenario;
    if (sc.n_parties != 2 || !(target.scenario == sc)) return std::nullopt;
    const int m = sc.m_settings;
    std::vector<int> base(m);
    for (int i = 0; i < m; ++i) base[i] = i;

    double wmax = 0.0, tmax = 0.0;
    for (double v : w.full) wmax = std::max(wmax, std::abs(v));
    for (double v : target.full) tmax = std::max(tmax, std::abs(v));
    if (wmax == 0.0 || tmax == 0.0) return std::nullopt;
    const double scale = wmax / tmax;

    std::vector<std::vector<int>> perms;
    std::vector<int> p = base;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    for (int swap = 0; swap < 2; ++swap)
        for (const auto& pa : perms)
            for (const auto& pb : perms)
                for (unsigned fa = 0; fa < (1u << m); ++fa)
                    for (unsigned fb = 0; fb < (1u << m); ++fb) {
                        bool ok = true;
                        for (int x = 0; x < m && ok; ++x)
                            for (int y = 0; y < m && ok; ++y) {
                                double v = swap ? w.full[sc.setting_index({y, x})]
                                                : w.full[sc.setting_index({x, y})];
                                double sgn = ((fa >> x) & 1u ? -1.0 : 1.0) *
                                             ((fb >> y) & 1u ? -1.0 : 1.0);
                                double want =
                                    scale * target.full[sc.setting_index({pa[x], pb[y]})];
                                if (std::abs(sgn * v - want) > 1e-12) ok = false;
                            }
                        if (ok) {
                            Relabeling r;
                            r.swap_parties = swap != 0;
                            r.input_perm = {pa, pb};
                            r.outcome_flip = {std::vector<int>(m), std::vector<int>(m)};
                            for (int x = 0; x < m; ++x) {
                                r.outcome_flip[0][x] = (fa >> x) & 1u ? -1 : 1;
                                r.outcome_flip[1][x] = (fb >> x) & 1u ? -1 : 1;
                            }
                            r.scale = scale;
                            return r;
                        }
                    }
    return std::nullopt;
}

namespace {

CVec random_pure_state(int dim, std::mt19937_64& eng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CVec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Cplx(g(eng), g(eng));
    return v.normalized();
}

BinaryObservable random_bloch(std::mt19937_64& eng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double theta = std::acos(2.0 * u(eng) - 1.0);
    double phi = 2.0 * std::numbers::pi * u(eng);
    return bloch_observable(theta, phi);
}

// Born behavior of a random pure state on the given party subset (qubits),
// with random Bloch settings per party
Behavior random_block_behavior(int n_block, int m_settings, std::mt19937_64& eng) {
    DensityMatrix rho = DensityMatrix::pure(random_pure_state(1 << n_block, eng));
    std::vector<std::vector<BinaryObservable>> obs(n_block);
    for (int p = 0; p < n_block; ++p)
        for (int x = 0; x < m_settings; ++x) obs[p].push_back(random_bloch(eng));
    return born_behavior(rho, MeasurementAssignment::from_observables(obs));
}

// product of two block behaviors, blocks given by sorted member lists
Behavior product_behavior(const Scenario& sc, const std::vector<int>& block_a,
                          const Behavior& ba, const std::vector<int>& block_b,
                          const Behavior& bb) {
    Behavior out = Behavior::uniform(sc);
    for (std::size_t xi = 0; xi < sc.setting_tuples(); ++xi) {
        auto x = sc.setting_tuple(xi);
        std::vector<int> xa, xb;
        for (int p : block_a) xa.push_back(x[p]);
        for (int p : block_b) xb.push_back(x[p]);
        std::size_t xai = ba.scenario.setting_index(xa);
        std::size_t xbi = bb.scenario.setting_index(xb);
        for (std::size_t ai = 0; ai < sc.outcome_tuples(); ++ai) {
            auto a = sc.outcome_tuple(ai);
            std::vector<int> aa, ab;
            for (int p : block_a) aa.push_back(a[p]);
            for (int p : block_b) ab.push_back(a[p]);
            out.at(xi, ai) = ba.at(xai, ba.scenario.outcome_index(aa)) *
                             bb.at(xbi, bb.scenario.outcome_index(ab));
        }
    }
    return out;
}

Behavior random_product_behavior(const Scenario& sc, std::mt19937_64& eng) {
    const int n = sc.n_parties;
    std::uniform_int_distribution<unsigned> pick(1, (1u << n) - 2);
    unsigned mask = pick(eng);
    auto block_a = PartySubset::from_mask(mask, n);
    auto block_b = block_a.complement(n);
    Behavior ba = random_block_behavior(block_a.size(), sc.m_settings, eng);
    Behavior bb = random_block_behavior(block_b.size(), sc.m_settings, eng);
    return product_behavior(sc, block_a.members, ba, block_b.members, bb);
}

}  // namespace

Behavior random_biseparable_behavior(const Scenario& sc, std::uint64_t seed, int terms) {
    auto eng = make_engine(seed);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::vector<double> wts(terms);
    double tot = 0.0;
    for (double& v : wts) tot += (v = u(eng));
    Behavior out = Behavior::uniform(sc);
    std::fill(out.p.begin(), out.p.end(), 0.0);
    for (int t = 0; t < terms; ++t) {
        Behavior part = random_product_behavior(sc, eng);
        for (std::size_t i = 0; i < out.p.size(); ++i) out.p[i] += wts[t] / tot * part.p[i];
    }
    return out;
}

InductionReport induction_check(int n, int samples, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("induction_check: need n >= 3");
    InductionReport rep;
    rep.samples = samples;
    rep.bound = 3.0 * 2.0 * std::pow(3.0, n - 1.5);  // = 2*3^(n-1/2)
    WitnessCoefficients w = build_In(n + 1);
    Scenario sc(n + 1, 3, 2);
    SeedSequence seq(seed);
    double worst = -1e300;
    for (int s = 0; s < samples; ++s) {
        Behavior b = random_biseparable_behavior(sc, seq.next(), 1);
        worst = std::max(worst, evaluate(w, correlators_from_behavior(b)));
    }
    rep.max_value = worst;
    rep.ok = worst <= rep.bound + 1e-7;
    return rep;
}

}  // namespace diew
