#include "diew/scenario.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace diew {

PartySubset::PartySubset(std::vector<int> m) : members(std::move(m)) {
    if (members.empty()) throw std::invalid_argument("PartySubset: empty");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
}

PartySubset PartySubset::from_mask(unsigned mask, int n_parties) {
    std::vector<int> m;
    for (int i = 0; i < n_parties; ++i)
        if (mask & (1u << i)) m.push_back(i);
    return PartySubset(std::move(m));
}

unsigned PartySubset::mask() const {
    unsigned v = 0;
    for (int i : members) v |= 1u << i;
    return v;
}

bool PartySubset::contains(int p) const {
    return std::binary_search(members.begin(), members.end(), p);
}

PartySubset PartySubset::complement(int n_parties) const {
    std::vector<int> m;
    for (int i = 0; i < n_parties; ++i)
        if (!contains(i)) m.push_back(i);
    return PartySubset(std::move(m));
}

Behavior::Behavior(Scenario sc, std::vector<double> probs)
    : scenario(sc), p(std::move(probs)) {
    if (p.size() != scenario.setting_tuples() * scenario.outcome_tuples())
        throw std::invalid_argument("Behavior: table size does not match scenario");
}

Behavior Behavior::uniform(const Scenario& sc) {
    Behavior b;
    b.scenario = sc;
    b.p.assign(sc.setting_tuples() * sc.outcome_tuples(),
               1.0 / static_cast<double>(sc.outcome_tuples()));
    return b;
}

CorrelatorSet::CorrelatorSet(const Scenario& sc) : scenario(sc) {
    if (sc.d_outcomes != 2)
        throw std::invalid_argument("CorrelatorSet: only binary outcomes have correlators");
    by_mask.assign(1u << sc.n_parties, {});
    for (unsigned mask = 1; mask < by_mask.size(); ++mask) {
        int k = static_cast<int>(std::popcount(mask));
        by_mask[mask].assign(Scenario::ipow(sc.m_settings, k), 0.0);
    }
    full = std::vector<double>(Scenario::ipow(sc.m_settings, sc.n_parties), 0.0);
}

const std::vector<double>& CorrelatorSet::table(unsigned mask) const {
    if (mask == full_mask()) return full;
    return by_mask.at(mask);
}
std::vector<double>& CorrelatorSet::table(unsigned mask) {
    if (mask == full_mask()) return full;
    return by_mask.at(mask);
}
double& CorrelatorSet::at(unsigned mask, const std::vector<int>& x_sub) {
    return table(mask)[Scenario::tuple_index(x_sub, scenario.m_settings)];
}
double CorrelatorSet::at(unsigned mask, const std::vector<int>& x_sub) const {
    return table(mask)[Scenario::tuple_index(x_sub, scenario.m_settings)];
}

namespace {

// product of +-1 outcomes over the parties in mask; outcome index 0 <-> +1
inline int outcome_sign(std::size_t a_idx, unsigned mask, int n) {
    int s = 1;
    for (int i = 0; i < n; ++i)
        if ((mask & (1u << i)) && ((a_idx >> i) & 1u)) s = -s;
    return s;
}

}  // namespace

CorrelatorSet correlators_from_behavior(const Behavior& b) {
    const Scenario& sc = b.scenario;
    if (sc.d_outcomes != 2)
        throw std::invalid_argument(
            "correlators_from_behavior: defined for binary outcomes only (d=2)");
    CorrelatorSet c(sc);
    const int n = sc.n_parties;
    const std::size_t nx = sc.setting_tuples(), na = sc.outcome_tuples();
    // per full settings tuple and mask, the signed sum over outcomes
    std::vector<double> signed_sum(nx);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        for (std::size_t xi = 0; xi < nx; ++xi) {
            double s = 0.0;
            for (std::size_t ai = 0; ai < na; ++ai)
                s += b.at(xi, ai) * outcome_sign(ai, mask, n);
            signed_sum[xi] = s;
        }
        if (mask == c.full_mask()) {
            c.full = signed_sum;
            continue;
        }
        // marginal table: average over complement settings (they coincide
        // for no-signalling behaviors, which validate() quantifies)
        auto sub = PartySubset::from_mask(mask, n);
        auto& tab = c.by_mask[mask];
        std::fill(tab.begin(), tab.end(), 0.0);
        std::size_t n_compl = Scenario::ipow(sc.m_settings, n - sub.size());
        for (std::size_t xi = 0; xi < nx; ++xi) {
            auto x = sc.setting_tuple(xi);
            std::vector<int> xs(sub.members.size());
            for (std::size_t j = 0; j < sub.members.size(); ++j) xs[j] = x[sub.members[j]];
            tab[Scenario::tuple_index(xs, sc.m_settings)] += signed_sum[xi] / n_compl;
        }
    }
    return c;
}

Behavior behavior_from_correlators(const CorrelatorSet& c) {
    const Scenario& sc = c.scenario;
    const int n = sc.n_parties;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::size_t want = Scenario::ipow(sc.m_settings, std::popcount(mask));
        if (c.table(mask).size() != want)
            throw std::invalid_argument("behavior_from_correlators: missing marginal table");
    }
    Behavior b = Behavior::uniform(sc);
    const std::size_t nx = sc.setting_tuples(), na = sc.outcome_tuples();
    const double scale = 1.0 / static_cast<double>(na);
    for (std::size_t xi = 0; xi < nx; ++xi) {
        auto x = sc.setting_tuple(xi);
        for (std::size_t ai = 0; ai < na; ++ai) {
            double v = 1.0;
            for (unsigned mask = 1; mask < (1u << n); ++mask) {
                auto sub = PartySubset::from_mask(mask, n);
                std::vector<int> xs(sub.members.size());
                for (std::size_t j = 0; j < sub.members.size(); ++j)
                    xs[j] = x[sub.members[j]];
                v += c.at(mask, xs) * outcome_sign(ai, mask, n);
            }
            b.at(xi, ai) = scale * v;
        }
    }
    return b;
}

ValidationReport validate(const Behavior& b) {
    const Scenario& sc = b.scenario;
    ValidationReport r;
    const std::size_t nx = sc.setting_tuples(), na = sc.outcome_tuples();
    for (std::size_t xi = 0; xi < nx; ++xi) {
        double norm = 0.0;
        for (std::size_t ai = 0; ai < na; ++ai) {
            double v = b.at(xi, ai);
            norm += v;
            if (v < 0) r.max_negativity = std::max(r.max_negativity, -v);
        }
        r.max_norm_residual = std::max(r.max_norm_residual, std::abs(norm - 1.0));
    }
    // no-signalling: for each party, the other parties' marginal must not
    // depend on that party's setting
    const int n = sc.n_parties;
    for (int party = 0; party < n; ++party) {
        std::size_t nx_rest = Scenario::ipow(sc.m_settings, n - 1);
        std::size_t na_rest = Scenario::ipow(sc.d_outcomes, n - 1);
        for (std::size_t xr = 0; xr < nx_rest; ++xr) {
            auto xrest = Scenario::index_tuple(xr, sc.m_settings, n - 1);
            for (std::size_t ar = 0; ar < na_rest; ++ar) {
                auto arest = Scenario::index_tuple(ar, sc.d_outcomes, n - 1);
                double lo = 1e300, hi = -1e300;
                for (int xp = 0; xp < sc.m_settings; ++xp) {
                    std::vector<int> x(n);
                    for (int i = 0, j = 0; i < n; ++i)
                        x[i] = (i == party) ? xp : xrest[j++];
                    double marg = 0.0;
                    for (int ap = 0; ap < sc.d_outcomes; ++ap) {
                        std::vector<int> a(n);
                        for (int i = 0, j = 0; i < n; ++i)
                            a[i] = (i == party) ? ap : arest[j++];
                        marg += b.at(sc.setting_index(x), sc.outcome_index(a));
                    }
                    lo = std::min(lo, marg);
                    hi = std::max(hi, marg);
                }
                r.max_nosig_residual = std::max(r.max_nosig_residual, hi - lo);
            }
        }
    }
    return r;
}

Behavior mix_with_noise(const Behavior& b, double visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0))
        throw std::invalid_argument("mix_with_noise: visibility must lie in [0,1]");
    Behavior out = b;
    const double u = (1.0 - visibility) / static_cast<double>(b.scenario.outcome_tuples());
    for (double& v : out.p) v = visibility * v + u;
    return out;
}

}  // namespace diew
