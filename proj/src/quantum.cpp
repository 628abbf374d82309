#include "lgsim/quantum.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>

namespace lgsim {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument(std::string(what) +
                                    ": matrix must be square and non-empty");
    }
}

bool is_power_of_two(Eigen::Index d) { return d > 0 && (d & (d - 1)) == 0; }

int log2_dim(Eigen::Index d) {
    int n = 0;
    while ((Eigen::Index{1} << n) < d) ++n;
    return n;
}

void check_qubit_index(int index, int n_qubits, const char* what) {
    if (index < 0 || index >= n_qubits) {
        throw std::out_of_range(std::string(what) + ": qubit index " +
                                std::to_string(index) +
                                " out of range for register of " +
                                std::to_string(n_qubits));
    }
}

// Bit of `index` belonging to `qubit` in an n-qubit register, with qubit 0
// as the most significant bit.
int qubit_bit(Eigen::Index index, int qubit, int n_qubits) {
    return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1);
}

}  // namespace

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           max_abs_diff(a, b) <= tol;
}

Unitary::Unitary(ComplexMatrix m) : mat_(std::move(m)) {
    require_square(mat_, "Unitary");
    ComplexMatrix gram = mat_.adjoint() * mat_;
    ComplexMatrix id = ComplexMatrix::Identity(mat_.rows(), mat_.cols());
    if (max_abs_diff(gram, id) > kTolAlgebra) {
        throw std::invalid_argument("Unitary: U†U deviates from identity");
    }
}

Unitary Unitary::adjoint() const { return Unitary(mat_.adjoint()); }

Unitary Unitary::operator*(const Unitary& rhs) const {
    if (dim() != rhs.dim()) {
        throw std::invalid_argument("Unitary composition: dimension mismatch");
    }
    return Unitary(mat_ * rhs.mat_);
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
    require_square(mat_, "DensityMatrix");
    if (!is_power_of_two(mat_.rows())) {
        throw std::invalid_argument("DensityMatrix: dimension must be 2^n");
    }
    if (max_abs_diff(mat_, mat_.adjoint()) > kTolAlgebra) {
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    if (std::abs(mat_.trace() - Complex{1.0, 0.0}) > kTolAlgebra) {
        throw std::invalid_argument("DensityMatrix: trace differs from 1");
    }
}

int DensityMatrix::num_qubits() const { return log2_dim(mat_.rows()); }

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(mat_);
    return solver.eigenvalues().minCoeff();
}

void DensityMatrix::validate() const {
    // Hermiticity and trace were checked at construction; re-check anyway so
    // validate() stands alone.
    if (max_abs_diff(mat_, mat_.adjoint()) > kTolAlgebra) {
        throw std::runtime_error("DensityMatrix: not Hermitian");
    }
    if (std::abs(mat_.trace() - Complex{1.0, 0.0}) > kTolAlgebra) {
        throw std::runtime_error("DensityMatrix: trace differs from 1");
    }
    if (min_eigenvalue() < kTolEigenvalueFloor) {
        throw std::runtime_error("DensityMatrix: negative eigenvalue beyond floor");
    }
}

Observable::Observable(ComplexMatrix m, bool dichotomic)
    : mat_(std::move(m)), dichotomic_(dichotomic) {
    require_square(mat_, "Observable");
    if (max_abs_diff(mat_, mat_.adjoint()) > kTolAlgebra) {
        throw std::invalid_argument("Observable: not Hermitian");
    }
    if (dichotomic_) {
        ComplexMatrix sq = mat_ * mat_;
        ComplexMatrix id = ComplexMatrix::Identity(mat_.rows(), mat_.cols());
        if (max_abs_diff(sq, id) > 1e-10) {
            throw std::invalid_argument(
                "Observable: flagged dichotomic but O² differs from I");
        }
    }
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0};
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Unitary identity_gate(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("identity_gate: n_qubits < 1");
    Eigen::Index d = Eigen::Index{1} << n_qubits;
    return Unitary(ComplexMatrix::Identity(d, d));
}

Unitary hadamard() {
    ComplexMatrix m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return Unitary(m);
}

Observable sigma_z_observable() { return Observable(pauli_z()); }

Observable sigma_x_observable() { return Observable(pauli_x()); }

DensityMatrix ket0_density() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    return DensityMatrix(m);
}

DensityMatrix ket1_density() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 1) = 1.0;
    return DensityMatrix(m);
}

DensityMatrix plus_density() {
    Eigen::VectorXcd amps(2);
    amps << 1.0, 1.0;
    return pure_state(amps);
}

DensityMatrix maximally_mixed(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("maximally_mixed: n_qubits < 1");
    Eigen::Index d = Eigen::Index{1} << n_qubits;
    return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix pure_state(const Eigen::VectorXcd& amplitudes) {
    double norm = amplitudes.norm();
    if (norm <= 0.0) throw std::invalid_argument("pure_state: zero vector");
    Eigen::VectorXcd psi = amplitudes / norm;
    return DensityMatrix(psi * psi.adjoint());
}

Unitary u_theta(double theta) {
    const Complex is{0.0, std::sin(theta)};
    ComplexMatrix m(2, 2);
    m << Complex{std::cos(theta), 0.0}, is, is, Complex{std::cos(theta), 0.0};
    return Unitary(m);
}

Unitary controlled_phase(int control_index, int target_index, int n_qubits) {
    check_qubit_index(control_index, n_qubits, "controlled_phase");
    check_qubit_index(target_index, n_qubits, "controlled_phase");
    if (control_index == target_index) {
        throw std::invalid_argument("controlled_phase: control == target");
    }
    Eigen::Index d = Eigen::Index{1} << n_qubits;
    ComplexMatrix m = ComplexMatrix::Identity(d, d);
    for (Eigen::Index b = 0; b < d; ++b) {
        if (qubit_bit(b, control_index, n_qubits) == 1 &&
            qubit_bit(b, target_index, n_qubits) == 1) {
            m(b, b) = -1.0;
        }
    }
    return Unitary(m);
}

Unitary controlled_not(int control_index, int target_index, int n_qubits,
                       int trigger) {
    check_qubit_index(control_index, n_qubits, "controlled_not");
    check_qubit_index(target_index, n_qubits, "controlled_not");
    if (control_index == target_index) {
        throw std::invalid_argument("controlled_not: control == target");
    }
    if (trigger != 0 && trigger != 1) {
        throw std::invalid_argument("controlled_not: trigger must be 0 or 1");
    }
    Eigen::Index d = Eigen::Index{1} << n_qubits;
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (Eigen::Index b = 0; b < d; ++b) {
        if (qubit_bit(b, control_index, n_qubits) == trigger) {
            Eigen::Index flipped =
                b ^ (Eigen::Index{1} << (n_qubits - 1 - target_index));
            m(flipped, b) = 1.0;
        } else {
            m(b, b) = 1.0;
        }
    }
    return Unitary(m);
}

Unitary embed(const Unitary& gate, int qubit, int n_qubits) {
    check_qubit_index(qubit, n_qubits, "embed");
    if (gate.dim() != 2) {
        throw std::invalid_argument("embed: expected a single-qubit gate");
    }
    Unitary result = gate;
    if (qubit > 0) result = tensor(identity_gate(qubit), result);
    if (qubit < n_qubits - 1) {
        result = tensor(result, identity_gate(n_qubits - 1 - qubit));
    }
    return result;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(
        Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval());
}

Unitary tensor(const Unitary& a, const Unitary& b) {
    return Unitary(Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval());
}

DensityMatrix apply(const Unitary& u, const DensityMatrix& rho) {
    if (u.dim() != rho.dim()) {
        throw std::invalid_argument("apply: dimension mismatch");
    }
    return DensityMatrix(u.matrix() * rho.matrix() * u.matrix().adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::set<int>& keep) {
    const int n = rho.num_qubits();
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep set is empty");
    }
    for (int q : keep) check_qubit_index(q, n, "partial_trace");

    std::vector<int> kept(keep.begin(), keep.end());
    std::vector<int> traced;
    for (int q = 0; q < n; ++q) {
        if (!keep.count(q)) traced.push_back(q);
    }
    if (traced.empty()) return rho;

    const int m = static_cast<int>(kept.size());
    const Eigen::Index out_dim = Eigen::Index{1} << m;
    const Eigen::Index env_dim = Eigen::Index{1} << traced.size();

    // Assemble a full register index from kept bits `a` and traced bits `e`,
    // with the first kept qubit supplying the most significant reduced bit.
    auto full_index = [&](Eigen::Index a, Eigen::Index e) {
        Eigen::Index idx = 0;
        for (int i = 0; i < m; ++i) {
            Eigen::Index bit = (a >> (m - 1 - i)) & 1;
            idx |= bit << (n - 1 - kept[i]);
        }
        for (size_t i = 0; i < traced.size(); ++i) {
            Eigen::Index bit = (e >> (traced.size() - 1 - i)) & 1;
            idx |= bit << (n - 1 - traced[i]);
        }
        return idx;
    };

    ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
    for (Eigen::Index r = 0; r < out_dim; ++r) {
        for (Eigen::Index c = 0; c < out_dim; ++c) {
            Complex sum{0.0, 0.0};
            for (Eigen::Index e = 0; e < env_dim; ++e) {
                sum += rho.matrix()(full_index(r, e), full_index(c, e));
            }
            out(r, c) = sum;
        }
    }
    return DensityMatrix(out);
}

std::pair<MeasurementRecord, MeasurementRecord> measure(
    const Observable& obs, const DensityMatrix& rho) {
    if (!obs.dichotomic()) {
        throw std::invalid_argument("measure: observable must be dichotomic");
    }
    if (obs.dim() != rho.dim()) {
        throw std::invalid_argument("measure: dimension mismatch");
    }
    const ComplexMatrix id = ComplexMatrix::Identity(obs.dim(), obs.dim());
    const ComplexMatrix p_plus = 0.5 * (id + obs.matrix());
    const ComplexMatrix p_minus = 0.5 * (id - obs.matrix());

    auto branch = [&](const ComplexMatrix& proj, int outcome,
                      const DensityMatrix& input) {
        double prob = (proj * input.matrix()).trace().real();
        if (prob > kTolAlgebra) {
            ComplexMatrix post = proj * input.matrix() * proj / prob;
            return MeasurementRecord{outcome, prob, DensityMatrix(post)};
        }
        // Zero-probability branch: the collapsed state is undefined, so hand
        // back the input unchanged; callers weight it by prob ~ 0.
        return MeasurementRecord{outcome, std::max(prob, 0.0), input};
    };

    return {branch(p_plus, +1, rho), branch(p_minus, -1, rho)};
}

double expectation(const Observable& obs, const DensityMatrix& rho) {
    if (obs.dim() != rho.dim()) {
        throw std::invalid_argument("expectation: dimension mismatch");
    }
    Complex value = (obs.matrix() * rho.matrix()).trace();
    if (std::abs(value.imag()) > kTolStatistic) {
        throw std::runtime_error(
            "expectation: imaginary part above 1e-9, non-Hermitian input?");
    }
    return value.real();
}

std::array<double, 3> bloch_vector(const DensityMatrix& rho) {
    if (rho.dim() != 2) {
        throw std::invalid_argument("bloch_vector: expected a single qubit");
    }
    auto component = [&](const ComplexMatrix& pauli) {
        return (pauli * rho.matrix()).trace().real();
    };
    return {component(pauli_x()), component(pauli_y()), component(pauli_z())};
}

}  // namespace lgsim
