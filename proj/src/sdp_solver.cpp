#include "diew/sdp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace diew::sdp {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// y_elim = rhs_form . g + coeffs . y_kept, tracked per eliminated variable
struct Elimination {
    int var;
    std::map<int, double> rhs_form;   // equality index -> weight
    std::map<int, double> coeffs;     // kept-variable index -> weight
};

struct Reduced {
    std::vector<int> keep;                   // kept variable ids (original numbering)
    std::vector<int> pos;                    // original id -> kept position or -1
    std::vector<Elimination> elims;          // fully back-substituted
    SdpProblem prob;                         // reduced, no equalities
    double obj_const = 0.0;                  // from eliminated objective terms (g-dependent part excluded)
    std::map<int, double> obj_g_form;        // equality index -> weight entering the objective constant
};

// Gaussian elimination on the sparse equality system, tracking the rhs as a
// linear form over the equality right-hand sides so exact multipliers can be
// reconstructed afterwards.
Reduced eliminate(const SdpProblem& in) {
    struct Row {
        std::map<int, double> terms;
        std::map<int, double> rhs;  // linear form over equality ids
    };
    std::vector<Row> rows;
    for (std::size_t k = 0; k < in.equalities.size(); ++k) {
        Row r;
        for (auto& [v, c] : in.equalities[k].terms)
            if (c != 0.0) r.terms[v] += c;
        r.rhs[static_cast<int>(k)] = 1.0;
        rows.push_back(std::move(r));
    }

    std::vector<char> eliminated(in.n_vars, 0);
    std::vector<Elimination> elims;
    for (auto& row : rows) {
        // substitute previously eliminated variables
        for (const auto& e : elims) {
            auto it = row.terms.find(e.var);
            if (it == row.terms.end()) continue;
            double c = it->second;
            row.terms.erase(it);
            for (auto& [v, w] : e.coeffs) row.terms[v] += c * w;
            for (auto& [k, w] : e.rhs_form) row.rhs[k] -= c * w;
        }
        for (auto it = row.terms.begin(); it != row.terms.end();)
            it = (std::abs(it->second) < 1e-13) ? row.terms.erase(it) : std::next(it);
        if (row.terms.empty()) continue;  // dependent (assumed consistent) row
        // pivot: largest coefficient magnitude
        auto pivot = row.terms.begin();
        for (auto it = row.terms.begin(); it != row.terms.end(); ++it)
            if (std::abs(it->second) > std::abs(pivot->second)) pivot = it;
        Elimination e;
        e.var = pivot->first;
        double pc = pivot->second;
        for (auto& [v, c] : row.terms)
            if (v != e.var) e.coeffs[v] = -c / pc;
        for (auto& [k, w] : row.rhs) e.rhs_form[k] = w / pc;
        eliminated[e.var] = 1;
        // keep earlier eliminations self-contained: substitute the new one
        for (auto& prev : elims) {
            auto it = prev.coeffs.find(e.var);
            if (it == prev.coeffs.end()) continue;
            double c = it->second;
            prev.coeffs.erase(it);
            for (auto& [v, w] : e.coeffs) prev.coeffs[v] += c * w;
            for (auto& [k, w] : e.rhs_form) prev.rhs_form[k] += c * w;
        }
        elims.push_back(std::move(e));
    }

    Reduced red;
    red.elims = std::move(elims);
    red.pos.assign(in.n_vars, -1);
    for (int v = 0; v < in.n_vars; ++v)
        if (!eliminated[v]) {
            red.pos[v] = static_cast<int>(red.keep.size());
            red.keep.push_back(v);
        }

    SdpProblem& rp = red.prob;
    rp.block_dims = in.block_dims;
    rp.n_vars = static_cast<int>(red.keep.size());
    rp.c_entries = in.c_entries;
    rp.a_entries.resize(rp.n_vars);
    rp.objective.assign(rp.n_vars, 0.0);
    for (int j = 0; j < rp.n_vars; ++j) {
        rp.a_entries[j] = in.a_entries[red.keep[j]];
        rp.objective[j] = in.objective[red.keep[j]];
    }
    // substitute eliminated variables into C, A and the objective; the
    // g-dependent part of C is also folded in numerically (rhs values),
    // while eq_duals use the tracked linear forms
    std::vector<double> g(in.equalities.size());
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = in.equalities[k].rhs;
    for (const auto& e : red.elims) {
        double r_e = 0.0;
        for (auto& [k, w] : e.rhs_form) r_e += w * g[k];
        for (const auto& ent : in.a_entries[e.var]) {
            MatEntry ce = ent;
            ce.value *= r_e;
            if (ce.value != 0.0) rp.c_entries.push_back(ce);
            for (auto& [v, w] : e.coeffs) {
                MatEntry ae = ent;
                ae.value *= w;
                rp.a_entries[red.pos[v]].push_back(ae);
            }
        }
        double ce_obj = in.objective[e.var];
        if (ce_obj != 0.0) {
            red.obj_const += ce_obj * r_e;
            for (auto& [k, w] : e.rhs_form) red.obj_g_form[k] += ce_obj * w;
            for (auto& [v, w] : e.coeffs) rp.objective[red.pos[v]] += ce_obj * w;
        }
    }
    return red;
}

// consolidate duplicate entries per variable (same block/cell)
void compress_entries(std::vector<MatEntry>& es) {
    std::map<std::tuple<int, int, int>, double> acc;
    for (auto& e : es) {
        int r = std::min(e.row, e.col), c = std::max(e.row, e.col);
        acc[{e.block, r, c}] += e.value;
    }
    es.clear();
    for (auto& [key, v] : acc)
        if (std::abs(v) > 1e-15)
            es.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), v});
}

void add_into(std::vector<MatrixXd>& mats, const std::vector<MatEntry>& es, double scale) {
    for (const auto& e : es) {
        mats[e.block](e.row, e.col) += scale * e.value;
        if (e.row != e.col) mats[e.block](e.col, e.row) += scale * e.value;
    }
}

double inner(const std::vector<MatEntry>& es, const std::vector<MatrixXd>& mats) {
    double s = 0.0;
    for (const auto& e : es)
        s += e.value * (e.row == e.col ? mats[e.block](e.row, e.col)
                                       : 2.0 * mats[e.block](e.row, e.col));
    return s;
}

// largest alpha with M + alpha*D staying positive definite (fraction taken later)
double max_step(const std::vector<MatrixXd>& M, const std::vector<MatrixXd>& D) {
    double alpha = 1e100;
    for (std::size_t b = 0; b < M.size(); ++b) {
        Eigen::LLT<MatrixXd> llt(M[b]);
        if (llt.info() != Eigen::Success) return 0.0;
        MatrixXd L = llt.matrixL();
        MatrixXd W = L.triangularView<Eigen::Lower>().solve(D[b]);
        MatrixXd G = L.triangularView<Eigen::Lower>().solve(MatrixXd(W.transpose()));
        Eigen::SelfAdjointEigenSolver<MatrixXd> es((G + G.transpose()) * 0.5);
        double lmin = es.eigenvalues().minCoeff();
        if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
    }
    return alpha;
}

}  // namespace

SdpSolution solve(const SdpProblem& input, const SdpOptions& opt) {
    Reduced red = eliminate(input);
    SdpProblem& P = red.prob;
    compress_entries(P.c_entries);
    for (auto& es : P.a_entries) compress_entries(es);

    const int m = P.n_vars;
    const int nblocks = static_cast<int>(P.block_dims.size());
    std::size_t ntot = 0;
    for (int d : P.block_dims) ntot += d;

    // variable -> blocks touched
    std::vector<std::vector<int>> var_blocks(m);
    for (int j = 0; j < m; ++j) {
        std::vector<char> seen(nblocks, 0);
        for (const auto& e : P.a_entries[j]) seen[e.block] = 1;
        for (int b = 0; b < nblocks; ++b)
            if (seen[b]) var_blocks[j].push_back(b);
    }

    auto zeros = [&]() {
        std::vector<MatrixXd> v;
        for (int d : P.block_dims) v.push_back(MatrixXd::Zero(d, d));
        return v;
    };

    std::vector<MatrixXd> C = zeros();
    add_into(C, P.c_entries, 1.0);
    double cmax = 1.0;
    for (const auto& Cb : C) cmax = std::max(cmax, Cb.cwiseAbs().maxCoeff());

    VectorXd b = Eigen::Map<const VectorXd>(P.objective.data(), m);
    VectorXd y = VectorXd::Zero(m);
    std::vector<MatrixXd> X = zeros(), S = zeros();
    for (int bi = 0; bi < nblocks; ++bi) {
        X[bi].setIdentity();
        S[bi].setIdentity();
        S[bi] *= (1.0 + cmax);
    }

    SdpSolution sol;
    std::vector<MatrixXd> Sinv = zeros(), Rd = zeros();
    MatrixXd M(m, m);
    VectorXd h(m), dy(m), dy_aff(m);
    std::vector<MatrixXd> dX = zeros(), dS = zeros(), dX_aff = zeros(), dS_aff = zeros();

    auto compute_residuals = [&](double& pinf, double& dinf, double& mu) {
        // Rd = C + A*(y) - S
        for (int bi = 0; bi < nblocks; ++bi) Rd[bi] = C[bi] - S[bi];
        for (int j = 0; j < m; ++j) add_into(Rd, P.a_entries[j], y[j]);
        dinf = 0.0;
        for (int bi = 0; bi < nblocks; ++bi)
            dinf = std::max(dinf, Rd[bi].cwiseAbs().maxCoeff());
        dinf /= (1.0 + cmax);
        pinf = 0.0;
        double dot = 0.0;
        for (int bi = 0; bi < nblocks; ++bi) dot += (X[bi].array() * S[bi].array()).sum();
        mu = dot / static_cast<double>(ntot);
        for (int j = 0; j < m; ++j) {
            double r = -b[j] - inner(P.a_entries[j], X);
            pinf = std::max(pinf, std::abs(r));
        }
        pinf /= (1.0 + b.cwiseAbs().maxCoeff());
        return;
    };

    int iter = 0;
    double pinf = 0, dinf = 0, mu = 0;
    for (; iter < opt.max_iterations; ++iter) {
        compute_residuals(pinf, dinf, mu);
        double pobj = b.dot(y);
        double dobj = 0.0;
        for (int bi = 0; bi < nblocks; ++bi) dobj += (C[bi].array() * X[bi].array()).sum();
        double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
        if (opt.verbose)
            std::fprintf(stderr, "it %2d  pobj %+.9e dobj %+.9e gap %.2e p %.2e d %.2e\n",
                         iter, pobj, dobj, gap, pinf, dinf);
        if (gap < opt.tolerance && pinf < opt.tolerance && dinf < opt.tolerance) {
            sol.status = SdpStatus::Optimal;
            sol.rel_gap = gap;
            sol.primal_residual = pinf;
            sol.dual_residual = dinf;
            break;
        }

        bool fail = false;
        for (int bi = 0; bi < nblocks; ++bi) {
            Eigen::LLT<MatrixXd> llt(S[bi]);
            if (llt.info() != Eigen::Success) {
                fail = true;
                break;
            }
            Sinv[bi] = llt.solve(MatrixXd::Identity(P.block_dims[bi], P.block_dims[bi]));
        }
        if (fail) break;

        // Schur matrix M_ij = tr(A_i X A_j Sinv); wj = X A_j Sinv on the
        // blocks variable j touches (flagged to avoid stale reads)
        M.setZero();
        std::vector<MatrixXd> wj = zeros();
        std::vector<char> act(nblocks, 0);
        for (int j = 0; j < m; ++j) {
            for (int bi : var_blocks[j]) {
                wj[bi].setZero();
                act[bi] = 1;
            }
            for (const auto& e : P.a_entries[j]) {
                const double v = e.value;
                wj[e.block].noalias() += v * X[e.block].col(e.row) * Sinv[e.block].row(e.col);
                if (e.row != e.col)
                    wj[e.block].noalias() += v * X[e.block].col(e.col) * Sinv[e.block].row(e.row);
            }
            for (int i = 0; i <= j; ++i) {
                double s = 0.0;
                bool any = false;
                for (const auto& e : P.a_entries[i]) {
                    if (!act[e.block]) continue;
                    const MatrixXd& Wb = wj[e.block];
                    any = true;
                    s += e.value * (e.row == e.col ? Wb(e.row, e.col)
                                                   : (Wb(e.row, e.col) + Wb(e.col, e.row)));
                }
                if (any) {
                    M(i, j) = s;
                    M(j, i) = s;
                }
            }
            for (int bi : var_blocks[j]) act[bi] = 0;
        }

        auto solve_direction = [&](double sigma_mu, const std::vector<MatrixXd>* corr,
                                   VectorXd& dy_out, std::vector<MatrixXd>& dX_out,
                                   std::vector<MatrixXd>& dS_out) -> bool {
            // h_i = -r_p,i + sigma_mu <A_i, Sinv> - <A_i, X> - <A_i, X Rd Sinv> - <A_i, corr*Sinv>
            std::vector<MatrixXd> T = zeros();
            for (int bi = 0; bi < nblocks; ++bi) {
                T[bi] = X[bi] * Rd[bi] * Sinv[bi];
                if (corr) T[bi] += (*corr)[bi] * Sinv[bi];
            }
            for (int i = 0; i < m; ++i) {
                double rp = -b[i] - inner(P.a_entries[i], X);
                h[i] = -rp - inner(P.a_entries[i], T) - inner(P.a_entries[i], X);
                for (const auto& e : P.a_entries[i])
                    h[i] += sigma_mu * e.value *
                            (e.row == e.col ? Sinv[e.block](e.row, e.col)
                                            : 2.0 * Sinv[e.block](e.row, e.col));
            }
            Eigen::LLT<MatrixXd> llt(M);
            if (llt.info() != Eigen::Success) {
                Eigen::LDLT<MatrixXd> ldlt(M);
                if (ldlt.info() != Eigen::Success) return false;
                dy_out = ldlt.solve(h);
            } else {
                dy_out = llt.solve(h);
            }
            for (int bi = 0; bi < nblocks; ++bi) dS_out[bi] = Rd[bi];
            for (int j = 0; j < m; ++j) add_into(dS_out, P.a_entries[j], dy_out[j]);
            for (int bi = 0; bi < nblocks; ++bi) {
                MatrixXd t = sigma_mu * Sinv[bi] - X[bi] - X[bi] * dS_out[bi] * Sinv[bi];
                if (corr) t -= (*corr)[bi] * Sinv[bi];
                dX_out[bi] = (t + t.transpose()) * 0.5;
            }
            return true;
        };

        // predictor
        if (!solve_direction(0.0, nullptr, dy_aff, dX_aff, dS_aff)) break;
        double ap = std::min(1.0, 0.98 * max_step(X, dX_aff));
        double ad = std::min(1.0, 0.98 * max_step(S, dS_aff));
        double mu_aff = 0.0;
        for (int bi = 0; bi < nblocks; ++bi)
            mu_aff += ((X[bi] + ap * dX_aff[bi]).array() * (S[bi] + ad * dS_aff[bi]).array())
                          .sum();
        mu_aff /= static_cast<double>(ntot);
        double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 1e-10, 1.0);

        // corrector
        std::vector<MatrixXd> corr = zeros();
        for (int bi = 0; bi < nblocks; ++bi) corr[bi] = dX_aff[bi] * dS_aff[bi];
        if (!solve_direction(sigma * mu, &corr, dy, dX, dS)) break;
        ap = std::min(1.0, 0.98 * max_step(X, dX));
        ad = std::min(1.0, 0.98 * max_step(S, dS));
        if (ap <= 1e-12 || ad <= 1e-12) break;

        for (int bi = 0; bi < nblocks; ++bi) {
            X[bi] += ap * dX[bi];
            S[bi] += ad * dS[bi];
            X[bi] = (X[bi] + X[bi].transpose()).eval() * 0.5;
            S[bi] = (S[bi] + S[bi].transpose()).eval() * 0.5;
        }
        y += ad * dy;
    }
    if (sol.status != SdpStatus::Optimal) {
        compute_residuals(pinf, dinf, mu);
        sol.rel_gap = mu;
        sol.primal_residual = pinf;
        sol.dual_residual = dinf;
    }
    sol.iterations = iter;

    // reconstruct full variable vector and equality multipliers
    sol.y.assign(input.n_vars, 0.0);
    for (int j = 0; j < m; ++j) sol.y[red.keep[j]] = y[j];
    std::vector<double> g(input.equalities.size());
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = input.equalities[k].rhs;
    for (const auto& e : red.elims) {
        double v = 0.0;
        for (auto& [k, w] : e.rhs_form) v += w * g[k];
        for (auto& [kv, w] : e.coeffs) v += w * sol.y[kv];
        sol.y[e.var] = v;
    }
    sol.objective = red.obj_const + b.dot(y);
    sol.X = X;
    sol.eq_duals.assign(input.equalities.size(), 0.0);
    for (const auto& e : red.elims) {
        double sens = input.objective[e.var] + inner(input.a_entries[e.var], X);
        for (auto& [k, w] : e.rhs_form) sol.eq_duals[k] += w * sens;
    }
    return sol;
}

}  // namespace diew::sdp
