#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace diew::sdp {

// Linear SDP in slack form:
//
//     maximize    objective . y
//     subject to  S_b = C_b + sum_i y_i A_{b,i}  PSD   for each block b
//                 sum_i eq.terms[i] y_i = eq.rhs       for each equality
//
// Coefficient matrices are sparse and symmetric; an entry with row != col
// stands for the value at both (row,col) and (col,row).
struct MatEntry {
    int block;
    int row;
    int col;
    double value;
};

struct SdpProblem {
    std::vector<int> block_dims;
    int n_vars = 0;
    std::vector<MatEntry> c_entries;
    std::vector<std::vector<MatEntry>> a_entries;  // one list per variable
    std::vector<double> objective;                 // size n_vars

    struct Equality {
        std::vector<std::pair<int, double>> terms;
        double rhs;
    };
    std::vector<Equality> equalities;
};

enum class SdpStatus { Optimal, Indeterminate };

struct SdpSolution {
    SdpStatus status = SdpStatus::Indeterminate;
    double objective = 0.0;
    std::vector<double> y;                // all variables, eliminated ones reconstructed
    std::vector<Eigen::MatrixXd> X;       // dual (certificate) blocks
    std::vector<double> eq_duals;         // d(optimum)/d(equality rhs)
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double rel_gap = 0.0;
    int iterations = 0;
};

struct SdpOptions {
    double tolerance = 1e-9;
    int max_iterations = 100;
    bool verbose = false;
};

SdpSolution solve(const SdpProblem& prob, const SdpOptions& opt = {});

}  // namespace diew::sdp
