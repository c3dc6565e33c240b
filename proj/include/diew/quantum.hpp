#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "diew/scenario.hpp"

namespace diew {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

CMat kron(const CMat& a, const CMat& b);

struct DensityMatrix {
    CMat rho;

    DensityMatrix() = default;
    explicit DensityMatrix(CMat m) : rho(std::move(m)) {}
    static DensityMatrix pure(const CVec& psi) {
        CVec v = psi.normalized();
        return DensityMatrix(v * v.adjoint());
    }
    int dim() const { return static_cast<int>(rho.rows()); }
    double purity() const { return (rho * rho).trace().real(); }
    // max of hermiticity/trace/negative-eigenvalue defects
    double defect() const;
};

// Hermitian +-1-valued observable on a local space of any dimension.
struct BinaryObservable {
    CMat mat;

    int local_dim() const { return static_cast<int>(mat.rows()); }
    // projectors onto the +1 / -1 eigenspaces, (1 +- O)/2
    CMat projector(int outcome_index) const {
        CMat id = CMat::Identity(mat.rows(), mat.cols());
        return outcome_index == 0 ? ((id + mat) * 0.5).eval() : ((id - mat) * 0.5).eval();
    }
    double involution_defect() const {
        CMat id = CMat::Identity(mat.rows(), mat.cols());
        return (mat * mat - id).cwiseAbs().maxCoeff();
    }
};

// Per-party projective measurements: projectors[setting][outcome].
struct PartyMeasurements {
    int local_dim = 0;
    std::vector<std::vector<CMat>> projectors;

    static PartyMeasurements from_observables(const std::vector<BinaryObservable>& obs);
    int settings() const { return static_cast<int>(projectors.size()); }
    int outcomes() const { return projectors.empty() ? 0 : static_cast<int>(projectors[0].size()); }
    // max deviation from orthogonality/completeness
    double projector_defect() const;
};

struct MeasurementAssignment {
    std::vector<PartyMeasurements> parties;

    static MeasurementAssignment from_observables(
        const std::vector<std::vector<BinaryObservable>>& per_party);
    int n_parties() const { return static_cast<int>(parties.size()); }
    int settings() const { return parties.empty() ? 0 : parties[0].settings(); }
    int outcomes() const { return parties.empty() ? 0 : parties[0].outcomes(); }
    int total_dim() const;
};

DensityMatrix ghz_state(int n, int local_dim);
DensityMatrix w_state();
DensityMatrix noisy(const DensityMatrix& rho, double visibility);
BinaryObservable equatorial_observable(double phi);
BinaryObservable bloch_observable(double theta, double phi);
BinaryObservable qutrit_observable(int x);  // x in 1..3

Behavior born_behavior(const DensityMatrix& rho, const MeasurementAssignment& meas);

// expectation of a tensor product of per-party operators (party 0 leftmost)
double product_expectation(const DensityMatrix& rho, const std::vector<CMat>& ops);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                            int keep_party);

}  // namespace diew
