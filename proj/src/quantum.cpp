#include "diew/quantum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace diew {

namespace {
const Cplx I_UNIT(0.0, 1.0);

CMat pauli_x() {
    CMat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
CMat pauli_y() {
    CMat m(2, 2);
    m << Cplx(0, 0), Cplx(0, -1), Cplx(0, 1), Cplx(0, 0);
    return m;
}
CMat pauli_z() {
    CMat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
}  // namespace

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double DensityMatrix::defect() const {
    double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    double tr = std::abs(rho.trace() - Cplx(1.0, 0.0));
    Eigen::SelfAdjointEigenSolver<CMat> es((rho + rho.adjoint()) * 0.5);
    double neg = std::max(0.0, -es.eigenvalues().minCoeff());
    return std::max({herm, tr, neg});
}

PartyMeasurements PartyMeasurements::from_observables(const std::vector<BinaryObservable>& obs) {
    PartyMeasurements pm;
    if (obs.empty()) throw std::invalid_argument("PartyMeasurements: no observables");
    pm.local_dim = obs[0].local_dim();
    for (const auto& o : obs) {
        if (o.local_dim() != pm.local_dim)
            throw std::invalid_argument("PartyMeasurements: mixed local dimensions");
        pm.projectors.push_back({o.projector(0), o.projector(1)});
    }
    return pm;
}

double PartyMeasurements::projector_defect() const {
    double worst = 0.0;
    for (const auto& set : projectors) {
        CMat sum = CMat::Zero(local_dim, local_dim);
        for (std::size_t a = 0; a < set.size(); ++a) {
            sum += set[a];
            for (std::size_t b = 0; b < set.size(); ++b) {
                CMat want = (a == b) ? set[a] : CMat::Zero(local_dim, local_dim);
                worst = std::max(worst, (set[a] * set[b] - want).cwiseAbs().maxCoeff());
            }
        }
        worst = std::max(worst,
                         (sum - CMat::Identity(local_dim, local_dim)).cwiseAbs().maxCoeff());
    }
    return worst;
}

MeasurementAssignment MeasurementAssignment::from_observables(
    const std::vector<std::vector<BinaryObservable>>& per_party) {
    MeasurementAssignment ma;
    for (const auto& obs : per_party) ma.parties.push_back(PartyMeasurements::from_observables(obs));
    return ma;
}

int MeasurementAssignment::total_dim() const {
    int d = 1;
    for (const auto& p : parties) d *= p.local_dim;
    return d;
}

DensityMatrix ghz_state(int n, int local_dim) {
    if (n < 2) throw std::invalid_argument("ghz_state: need n >= 2");
    if (local_dim != 2 && local_dim != 3)
        throw std::invalid_argument("ghz_state: local_dim must be 2 or 3");
    std::size_t dim = Scenario::ipow(local_dim, n);
    CVec psi = CVec::Zero(dim);
    for (int j = 0; j < local_dim; ++j) {
        std::size_t idx = 0;
        for (int p = 0; p < n; ++p) idx = idx * local_dim + j;
        psi(idx) = 1.0;
    }
    return DensityMatrix::pure(psi);
}

DensityMatrix w_state() {
    CVec psi = CVec::Zero(8);
    // |001>, |010>, |100> with party 0 as the leftmost (most significant) factor
    psi(1) = psi(2) = psi(4) = 1.0;
    return DensityMatrix::pure(psi);
}

DensityMatrix noisy(const DensityMatrix& rho, double visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0))
        throw std::invalid_argument("noisy: visibility must lie in [0,1]");
    int d = rho.dim();
    CMat out = visibility * rho.rho + (1.0 - visibility) / d * CMat::Identity(d, d);
    return DensityMatrix(std::move(out));
}

BinaryObservable equatorial_observable(double phi) {
    return BinaryObservable{std::cos(phi) * pauli_x() + std::sin(phi) * pauli_y()};
}

BinaryObservable bloch_observable(double theta, double phi) {
    return BinaryObservable{std::sin(theta) * std::cos(phi) * pauli_x() +
                            std::sin(theta) * std::sin(phi) * pauli_y() +
                            std::cos(theta) * pauli_z()};
}

BinaryObservable qutrit_observable(int x) {
    if (x < 1 || x > 3) throw std::invalid_argument("qutrit_observable: x must be 1..3");
    CVec phi = CVec::Zero(3);
    phi(0) = 1.0 / std::numbers::sqrt2;
    phi(1) = std::exp(I_UNIT * ((6.0 * x - 7.0) * std::numbers::pi / 18.0)) / std::numbers::sqrt2;
    CMat m = 2.0 * (phi * phi.adjoint()) - CMat::Identity(3, 3);
    return BinaryObservable{std::move(m)};
}

Behavior born_behavior(const DensityMatrix& rho, const MeasurementAssignment& meas) {
    if (meas.total_dim() != rho.dim())
        throw std::invalid_argument("born_behavior: state/measurement dimension mismatch");
    const int n = meas.n_parties();
    Scenario sc(n, meas.settings(), meas.outcomes());
    Behavior b;
    b.scenario = sc;
    b.p.assign(sc.setting_tuples() * sc.outcome_tuples(), 0.0);
    for (std::size_t xi = 0; xi < sc.setting_tuples(); ++xi) {
        auto x = sc.setting_tuple(xi);
        for (std::size_t ai = 0; ai < sc.outcome_tuples(); ++ai) {
            auto a = sc.outcome_tuple(ai);
            CMat op = meas.parties[0].projectors[x[0]][a[0]];
            for (int p = 1; p < n; ++p) op = kron(op, meas.parties[p].projectors[x[p]][a[p]]);
            b.at(xi, ai) = (op * rho.rho).trace().real();
        }
    }
    return b;
}

double product_expectation(const DensityMatrix& rho, const std::vector<CMat>& ops) {
    CMat op = ops[0];
    for (std::size_t p = 1; p < ops.size(); ++p) op = kron(op, ops[p]);
    return (op * rho.rho).trace().real();
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& dims,
                            int keep_party) {
    const int n = static_cast<int>(dims.size());
    int dk = dims[keep_party];
    CMat out = CMat::Zero(dk, dk);
    // strides with party 0 as the leftmost factor
    std::vector<std::size_t> stride(n, 1);
    for (int p = n - 2; p >= 0; --p) stride[p] = stride[p + 1] * dims[p + 1];
    std::size_t total = 1;
    for (int d : dims) total *= d;
    std::size_t rest = total / dk;
    for (int i = 0; i < dk; ++i)
        for (int j = 0; j < dk; ++j) {
            Cplx s = 0.0;
            for (std::size_t r = 0; r < rest; ++r) {
                // expand r into indices of the traced parties
                std::size_t row = 0, col = 0, rr = r;
                for (int p = n - 1; p >= 0; --p) {
                    if (p == keep_party) continue;
                    std::size_t v = rr % dims[p];
                    rr /= dims[p];
                    row += v * stride[p];
                    col += v * stride[p];
                }
                row += static_cast<std::size_t>(i) * stride[keep_party];
                col += static_cast<std::size_t>(j) * stride[keep_party];
                s += rho.rho(row, col);
            }
            out(i, j) = s;
        }
    return DensityMatrix(std::move(out));
}

}  // namespace diew
