#pragma once

#include <compare>
#include <string>
#include <vector>

#include "diew/scenario.hpp"

namespace diew::sdp {

// Operator letter: one projector M_{a|x} (projector algebra) or one binary
// observable O_x (observable algebra, outcome field unused).
struct Letter {
    int party;
    int setting;
    int outcome;
    auto operator<=>(const Letter&) const = default;
};

enum class Algebra {
    Projector,   // idempotent letters, same-setting distinct outcomes annihilate
    Observable,  // involutive letters (adjacent equal letters cancel)
};

// Word in per-party normal form: parties ascend left to right (distinct
// parties commute), letters inside the isolated party's slot are sorted
// (they commute by construction), other parties keep their order.  `zero`
// marks a product annihilated by orthogonality.
struct Monomial {
    std::vector<std::vector<Letter>> words;  // one slot per party
    bool zero = false;

    static Monomial identity(int n_parties) {
        Monomial m;
        m.words.resize(n_parties);
        return m;
    }
    int length() const {
        int l = 0;
        for (const auto& w : words) l += static_cast<int>(w.size());
        return l;
    }
    bool is_identity() const { return !zero && length() == 0; }
    std::strong_ordering operator<=>(const Monomial& o) const;
    bool operator==(const Monomial& o) const { return (*this <=> o) == 0; }
    std::string str() const;  // e.g. "A1 A2 B1 | C2" style label for debugging
};

// canonical form of a single party's letter sequence
std::vector<Letter> canonicalize_word(std::vector<Letter> w, bool commuting, Algebra alg,
                                      bool& zero);

// canonical product adj(u) * v for moment-matrix cell (u, v)
Monomial adjoint_product(const Monomial& u, const Monomial& v, int isolated_party,
                         Algebra alg);

// monomial with one given letter
Monomial single_letter(int n_parties, const Letter& l);

// All canonical monomials of length <= level for the given isolated party,
// plus the one-letter-per-party products (so joint-probability cells exist
// at every level).  Letters enumerate outcomes 0..d-2 per setting (the last
// outcome is eliminated by completeness).
std::vector<Monomial> build_basis(const Scenario& sc, int level, int isolated_party);

}  // namespace diew::sdp
