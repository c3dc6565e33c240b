#include "diew/sdp/moments.hpp"

#include <algorithm>
#include <stdexcept>

namespace diew::sdp {

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
    if (zero != o.zero) return zero ? std::strong_ordering::less : std::strong_ordering::greater;
    int la = length(), lb = o.length();
    if (la != lb) return la <=> lb;
    return words <=> o.words;
}

std::string Monomial::str() const {
    if (zero) return "0";
    if (length() == 0) return "1";
    std::string s;
    for (const auto& w : words)
        for (const auto& l : w) {
            if (!s.empty()) s += ' ';
            s += static_cast<char>('A' + l.party);
            s += std::to_string(l.setting + 1);
            if (l.outcome != 0) s += "'" + std::to_string(l.outcome);
        }
    return s;
}

std::vector<Letter> canonicalize_word(std::vector<Letter> w, bool commuting, Algebra alg,
                                      bool& zero) {
    if (commuting) std::sort(w.begin(), w.end());
    std::vector<Letter> out;
    for (const auto& l : w) {
        if (!out.empty() && out.back().setting == l.setting && out.back().party == l.party) {
            if (out.back().outcome == l.outcome) {
                if (alg == Algebra::Projector) continue;  // idempotent
                out.pop_back();                           // involution cancels
                continue;
            }
            if (alg == Algebra::Projector) {
                if (commuting) {
                    zero = true;  // orthogonal projectors of one commuting family
                    return {};
                }
                zero = true;  // adjacent orthogonal projectors annihilate
                return {};
            }
        }
        out.push_back(l);
    }
    return out;
}

Monomial adjoint_product(const Monomial& u, const Monomial& v, int isolated_party,
                         Algebra alg) {
    Monomial r;
    if (u.zero || v.zero) {
        r.zero = true;
        return r;
    }
    const int n = static_cast<int>(u.words.size());
    r.words.resize(n);
    for (int p = 0; p < n; ++p) {
        std::vector<Letter> w(u.words[p].rbegin(), u.words[p].rend());
        w.insert(w.end(), v.words[p].begin(), v.words[p].end());
        bool zero = false;
        r.words[p] = canonicalize_word(std::move(w), p == isolated_party, alg, zero);
        if (zero) {
            r = Monomial();
            r.words.resize(n);
            r.zero = true;
            return r;
        }
    }
    return r;
}

Monomial single_letter(int n_parties, const Letter& l) {
    Monomial m = Monomial::identity(n_parties);
    m.words[l.party].push_back(l);
    return m;
}

namespace {

// reduced per-party words up to `maxlen`: adjacent letters differ in setting
void party_words(int party, int m, int d, int maxlen, std::vector<std::vector<Letter>>& out) {
    out.push_back({});
    std::vector<std::vector<Letter>> frontier = {{}};
    for (int len = 1; len <= maxlen; ++len) {
        std::vector<std::vector<Letter>> next;
        for (const auto& w : frontier)
            for (int x = 0; x < m; ++x) {
                if (!w.empty() && w.back().setting == x) continue;
                for (int a = 0; a + 1 < d; ++a) {
                    auto nw = w;
                    nw.push_back({party, x, a});
                    next.push_back(nw);
                }
            }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
}

// words of the commuting (isolated) party: distinct settings, sorted
void commuting_words(int party, int m, int d, int maxlen,
                     std::vector<std::vector<Letter>>& out) {
    std::vector<std::vector<Letter>> acc = {{}};
    for (int x = 0; x < m; ++x) {
        std::vector<std::vector<Letter>> next = acc;
        for (const auto& w : acc)
            if (static_cast<int>(w.size()) < maxlen)
                for (int a = 0; a + 1 < d; ++a) {
                    auto nw = w;
                    nw.push_back({party, x, a});
                    next.push_back(nw);
                }
        acc = std::move(next);
    }
    out = std::move(acc);
}

}  // namespace

std::vector<Monomial> build_basis(const Scenario& sc, int level, int isolated_party) {
    if (sc.n_parties != 3)
        throw std::invalid_argument("build_basis: the bipartition hierarchy is tripartite");
    if (level < 1) throw std::invalid_argument("build_basis: level >= 1 required");
    const int n = 3, m = sc.m_settings, d = sc.d_outcomes;

    std::vector<std::vector<std::vector<Letter>>> per_party(n);
    for (int p = 0; p < n; ++p) {
        if (p == isolated_party)
            commuting_words(p, m, d, level, per_party[p]);
        else
            party_words(p, m, d, level, per_party[p]);
    }

    std::vector<Monomial> basis;
    for (const auto& wa : per_party[0])
        for (const auto& wb : per_party[1]) {
            if (static_cast<int>(wa.size() + wb.size()) > level) continue;
            for (const auto& wc : per_party[2]) {
                if (static_cast<int>(wa.size() + wb.size() + wc.size()) > level) continue;
                Monomial mon;
                mon.words = {wa, wb, wc};
                basis.push_back(std::move(mon));
            }
        }
    // one-letter-per-party products, so probability cells exist at any level
    for (int xa = 0; xa < m; ++xa)
        for (int aa = 0; aa + 1 < d; ++aa)
            for (int xb = 0; xb < m; ++xb)
                for (int ab = 0; ab + 1 < d; ++ab)
                    for (int xc = 0; xc < m; ++xc)
                        for (int ac = 0; ac + 1 < d; ++ac) {
                            Monomial mon;
                            mon.words = {{{0, xa, aa}}, {{1, xb, ab}}, {{2, xc, ac}}};
                            basis.push_back(std::move(mon));
                        }
    std::sort(basis.begin(), basis.end());
    basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
    return basis;
}

}  // namespace diew::sdp
