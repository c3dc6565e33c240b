#include "diew/lhv.hpp"

#include <cmath>
#include <complex>
#include <future>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "diew/rng.hpp"

namespace diew {

namespace {
using Cd = std::complex<double>;

// pair outcome distribution by the Born rule on cos(a/2)|00>+sin(a/2)e^{-ib}|11>
// for Bloch observables (t1,p1) x (t2,p2); returns P(++), P(+-), P(-+), P(--)
std::array<double, 4> pair_probs(double alpha, double beta, double t1, double p1, double t2,
                                 double p2) {
    const double c = std::cos(alpha / 2), s = std::sin(alpha / 2);
    const Cd amp00(c, 0.0);
    const Cd amp11 = s * std::exp(Cd(0.0, -beta));
    // single-qubit Bloch observable O = [[cos t, sin t e^{-i p}],[sin t e^{i p}, -cos t]]
    auto obs = [](double t, double p) {
        std::array<Cd, 4> o;  // row-major 2x2
        o[0] = std::cos(t);
        o[1] = std::sin(t) * std::exp(Cd(0.0, -p));
        o[2] = std::sin(t) * std::exp(Cd(0.0, p));
        o[3] = -std::cos(t);
        return o;
    };
    auto o1 = obs(t1, p1), o2 = obs(t2, p2);
    // <O1 x O2>, <O1 x 1>, <1 x O2> on the pair state
    // state components: psi_00 = amp00, psi_11 = amp11
    // <O1O2> = |a00|^2 o1_00 o2_00 + |a11|^2 o1_11 o2_11 + 2 Re(conj(a00) a11 o1_01 o2_01)
    double e12 = (std::norm(amp00) * (o1[0] * o2[0]).real() +
                  std::norm(amp11) * (o1[3] * o2[3]).real() +
                  2.0 * (std::conj(amp00) * amp11 * o1[1] * o2[1]).real());
    double e1 = std::norm(amp00) * o1[0].real() + std::norm(amp11) * o1[3].real();
    double e2 = std::norm(amp00) * o2[0].real() + std::norm(amp11) * o2[3].real();
    std::array<double, 4> p;
    int idx = 0;
    for (int a : {+1, -1})
        for (int b : {+1, -1})
            p[idx++] = 0.25 * (1.0 + a * e1 + b * e2 + a * b * e12);
    return p;
}

}  // namespace

std::array<double, 3> HiddenState::lambda() const {
    return {std::sin(alpha) * std::cos(beta), std::sin(alpha) * std::sin(beta),
            std::cos(alpha)};
}

std::array<double, 3> MeasurementDirections::vec(int party) const {
    return {std::sin(theta[party]) * std::cos(phi[party]),
            std::sin(theta[party]) * std::sin(phi[party]), std::cos(theta[party])};
}

HiddenState sample_hidden(std::mt19937_64& eng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    HiddenState h;
    h.alone = static_cast<int>(u(eng) * 3.0);
    if (h.alone > 2) h.alone = 2;
    h.alpha = std::acos(2.0 * u(eng) - 1.0);
    h.beta = 2.0 * std::numbers::pi * u(eng);
    for (int i = 0; i < 3; ++i) h.signs[i] = u(eng) < kSignPlusProbability ? 1 : -1;
    return h;
}

HiddenState sample_hidden(std::uint64_t seed) {
    auto eng = make_engine(seed);
    return sample_hidden(eng);
}

std::array<int, 3> simulate_round(const HiddenState& h, const MeasurementDirections& dirs,
                                  std::mt19937_64& eng) {
    // paired parties in increasing order; h.alone computes sign(lambda . dir)
    int pa = -1, pb = -1;
    for (int p = 0; p < 3; ++p) {
        if (p == h.alone) continue;
        (pa < 0 ? pa : pb) = p;
    }
    auto probs = pair_probs(h.alpha, h.beta, dirs.theta[pa], dirs.phi[pa], dirs.theta[pb],
                            dirs.phi[pb]);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = u(eng);
    int cell = 3;
    for (int i = 0; i < 4; ++i) {
        if (r < probs[i]) {
            cell = i;
            break;
        }
        r -= probs[i];
    }
    std::array<int, 3> raw;
    raw[pa] = (cell / 2 == 0) ? 1 : -1;
    raw[pb] = (cell % 2 == 0) ? 1 : -1;
    auto lam = h.lambda();
    auto dir = dirs.vec(h.alone);
    double dot = lam[0] * dir[0] + lam[1] * dir[1] + lam[2] * dir[2];
    raw[h.alone] = dot >= 0.0 ? 1 : -1;
    // each output carries the two signs naming its party:
    // A <- s_AB s_AC, B <- s_AB s_BC, C <- s_AC s_BC
    const int sAB = h.signs[0], sAC = h.signs[1], sBC = h.signs[2];
    return {sAB * sAC * raw[0], sAB * sBC * raw[1], sAC * sBC * raw[2]};
}

CorrelatorSet analytic_correlators(const MeasurementDirections& dirs) {
    Scenario sc(3, 1, 2);
    CorrelatorSet c(sc);
    auto ct = [&](int p) { return std::cos(dirs.theta[p]); };
    for (int p = 0; p < 3; ++p) c.by_mask[1u << p][0] = 0.0;
    c.by_mask[0b011][0] = 0.5 * ct(0) * ct(1);
    c.by_mask[0b101][0] = 0.5 * ct(0) * ct(2);
    c.by_mask[0b110][0] = 0.5 * ct(1) * ct(2);
    c.full[0] = 0.5 * std::sin(dirs.theta[0]) * std::sin(dirs.theta[1]) *
                std::sin(dirs.theta[2]) * std::cos(dirs.phi[0] + dirs.phi[1] + dirs.phi[2]);
    return c;
}

MonteCarloResult monte_carlo_correlators(const MeasurementDirections& dirs,
                                         std::uint64_t n_rounds, std::uint64_t seed,
                                         int n_threads) {
    if (n_rounds < 1) throw std::invalid_argument("monte_carlo_correlators: need rounds >= 1");
    constexpr std::uint64_t kBatch = 1 << 15;
    const std::uint64_t n_batches = (n_rounds + kBatch - 1) / kBatch;
    SeedSequence seq(seed);
    std::vector<std::uint64_t> batch_seed(n_batches);
    for (auto& s : batch_seed) s = seq.next();

    // sums of the 7 outcome products per batch; batch partition is fixed so
    // the result does not depend on the thread count
    auto run_batch = [&](std::uint64_t bi) {
        std::array<std::int64_t, 7> sums{};
        auto eng = make_engine(batch_seed[bi]);
        std::uint64_t count =
            std::min(kBatch, n_rounds - bi * kBatch);
        for (std::uint64_t r = 0; r < count; ++r) {
            HiddenState h = sample_hidden(eng);
            auto out = simulate_round(h, dirs, eng);
            sums[0] += out[0];
            sums[1] += out[1];
            sums[2] += out[2];
            sums[3] += out[0] * out[1];
            sums[4] += out[0] * out[2];
            sums[5] += out[1] * out[2];
            sums[6] += out[0] * out[1] * out[2];
        }
        return sums;
    };

    std::array<std::int64_t, 7> total{};
    if (n_threads <= 1) {
        for (std::uint64_t bi = 0; bi < n_batches; ++bi) {
            auto s = run_batch(bi);
            for (int i = 0; i < 7; ++i) total[i] += s[i];
        }
    } else {
        std::vector<std::future<std::array<std::int64_t, 7>>> futs;
        std::uint64_t next = 0;
        while (next < n_batches) {
            futs.clear();
            for (int t = 0; t < n_threads && next < n_batches; ++t, ++next)
                futs.push_back(std::async(std::launch::async, run_batch, next));
            for (auto& f : futs) {
                auto s = f.get();
                for (int i = 0; i < 7; ++i) total[i] += s[i];
            }
        }
    }

    MonteCarloResult res;
    res.estimate = CorrelatorSet(Scenario(3, 1, 2));
    res.std_error = CorrelatorSet(Scenario(3, 1, 2));
    res.n_rounds = n_rounds;
    res.seed = seed;
    const double N = static_cast<double>(n_rounds);
    auto put = [&](unsigned mask, int k) {
        double mean = total[k] / N;
        double var = N > 1 ? (N / (N - 1.0)) * std::max(0.0, 1.0 - mean * mean) : 0.0;
        double se = std::sqrt(var / N);
        if (mask == res.estimate.full_mask()) {
            res.estimate.full[0] = mean;
            res.std_error.full[0] = se;
        } else {
            res.estimate.by_mask[mask][0] = mean;
            res.std_error.by_mask[mask][0] = se;
        }
    };
    put(0b001, 0);
    put(0b010, 1);
    put(0b100, 2);
    put(0b011, 3);
    put(0b101, 4);
    put(0b110, 5);
    put(0b111, 6);
    return res;
}

}  // namespace diew
