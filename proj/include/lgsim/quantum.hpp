#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <set>
#include <string>
#include <utility>

namespace lgsim {

using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// Absolute tolerances used throughout. Algebraic identities must hold to
// kTolAlgebra; derived statistical quantities to kTolStatistic.
inline constexpr double kTolAlgebra = 1e-12;
inline constexpr double kTolStatistic = 1e-9;
inline constexpr double kTolEigenvalueFloor = -1e-10;

/// Largest entrywise absolute difference between two equally sized matrices.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Entrywise comparison with an explicit absolute tolerance.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = kTolAlgebra);

class DensityMatrix;

/// Square complex matrix with U†U = I (checked to 1e-12 on construction).
class Unitary {
  public:
    explicit Unitary(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

    Unitary adjoint() const;
    /// Composition: (*this) * rhs applies rhs first.
    Unitary operator*(const Unitary& rhs) const;

  private:
    ComplexMatrix mat_;
};

/// Hermitian, trace-one, positive-semidefinite matrix of dimension 2^n.
///
/// Hermiticity and unit trace are checked on every construction; positive
/// semidefiniteness (eigenvalue floor -1e-10) is checked by validate(),
/// which tests call on randomized instances.
class DensityMatrix {
  public:
    explicit DensityMatrix(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }
    int num_qubits() const;

    /// Throws if any invariant (including the PSD floor) is violated.
    void validate() const;
    double min_eigenvalue() const;

  private:
    ComplexMatrix mat_;
};

/// Hermitian operator; when flagged dichotomic, O² = I (spectrum in {±1}).
class Observable {
  public:
    explicit Observable(ComplexMatrix m, bool dichotomic = true);

    const ComplexMatrix& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }
    bool dichotomic() const { return dichotomic_; }

  private:
    ComplexMatrix mat_;
    bool dichotomic_;
};

/// One branch of a projective measurement: the outcome, its probability and
/// the collapsed state. Both branches are always returned so protocols can
/// follow every branch exactly instead of sampling.
struct MeasurementRecord {
    int outcome;               // +1 or -1
    double probability;        // tr(P± rho)
    DensityMatrix post_state;  // P± rho P± / probability
};

// --- elementary states and gates (single qubit unless noted) ---

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

Unitary identity_gate(int n_qubits);
Unitary hadamard();
Observable sigma_z_observable();
Observable sigma_x_observable();

DensityMatrix ket0_density();
DensityMatrix ket1_density();
DensityMatrix plus_density();
DensityMatrix maximally_mixed(int n_qubits = 1);

/// Rank-one state |psi><psi| from an (unnormalised) amplitude vector.
DensityMatrix pure_state(const Eigen::VectorXcd& amplitudes);

/// Single-qubit rotation cos(theta) I + i sin(theta) sigma_x.
Unitary u_theta(double theta);

/// Controlled phase gate on an n-qubit register: sigma_z on the target when
/// the control is |1>. Symmetric under swapping control and target.
/// Qubit 0 is the most significant bit of the basis index.
Unitary controlled_phase(int control_index, int target_index, int n_qubits);

/// Controlled NOT that flips the target iff the control qubit is in the
/// basis state `trigger` (1 for a standard CNOT, 0 for the anti-controlled
/// variant used by negative-result probes).
Unitary controlled_not(int control_index, int target_index, int n_qubits,
                       int trigger = 1);

/// Embed a single-qubit gate at position `qubit` of an n-qubit register.
Unitary embed(const Unitary& gate, int qubit, int n_qubits);

// --- register operations ---

/// Kronecker product; `a` occupies the high-order qubit positions.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
Unitary tensor(const Unitary& a, const Unitary& b);

/// U rho U†.
DensityMatrix apply(const Unitary& u, const DensityMatrix& rho);

/// Reduced state on the kept qubits (indices into the register, qubit 0 =
/// most significant bit). Kept qubits retain their relative order.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::set<int>& keep);

/// Projective measurement of a dichotomic observable. Returns the +1 branch
/// first. Probabilities are tr(P± rho) with P± = (I ± O)/2.
std::pair<MeasurementRecord, MeasurementRecord> measure(
    const Observable& obs, const DensityMatrix& rho);

/// tr(O rho). Throws if the imaginary part exceeds 1e-9, which signals a
/// non-Hermitian bug upstream.
double expectation(const Observable& obs, const DensityMatrix& rho);

/// Bloch coordinates (tr rho sigma_x, tr rho sigma_y, tr rho sigma_z) of a
/// single-qubit state.
std::array<double, 3> bloch_vector(const DensityMatrix& rho);

}  // namespace lgsim
