#pragma once

// Dense statevector simulation of small quantum circuits with Pauli-observable
// expectation values and single-qubit measurement probabilities.
//
// Conventions fixed here and relied on everywhere else:
//   - qubit m corresponds to bit m of the basis-state index (qubit 0 = LSB);
//   - rotations are R(phi) = exp(-i phi P / 2), so that
//     Ry(phi)|0> = cos(phi/2)|0> + sin(phi/2)|1>.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qneb {

using Complex = std::complex<double>;

struct StateVector {
    int n_qubits = 0;
    Eigen::VectorXcd amplitudes;  // length 2^n_qubits

    static StateVector zero_state(int n_qubits);

    Eigen::Index dim() const { return amplitudes.size(); }
    double norm_sq() const { return amplitudes.squaredNorm(); }
};

enum class GateKind { Rx, Ry, Rz, CZ, CNOT };

bool is_rotation(GateKind kind);
std::string to_string(GateKind kind);

struct GateOp {
    GateKind kind = GateKind::Ry;
    int target = 0;
    int control = -1;    // two-qubit kinds only
    double angle = 0.0;  // rotation kinds only

    static GateOp rx(int target, double angle) { return {GateKind::Rx, target, -1, angle}; }
    static GateOp ry(int target, double angle) { return {GateKind::Ry, target, -1, angle}; }
    static GateOp rz(int target, double angle) { return {GateKind::Rz, target, -1, angle}; }
    static GateOp cz(int control, int target) { return {GateKind::CZ, target, control, 0.0}; }
    static GateOp cnot(int control, int target) { return {GateKind::CNOT, target, control, 0.0}; }
};

struct Circuit {
    int n_qubits = 0;
    std::vector<GateOp> ops;

    explicit Circuit(int n = 0) : n_qubits(n) {}

    Circuit& rx(int t, double a) { ops.push_back(GateOp::rx(t, a)); return *this; }
    Circuit& ry(int t, double a) { ops.push_back(GateOp::ry(t, a)); return *this; }
    Circuit& rz(int t, double a) { ops.push_back(GateOp::rz(t, a)); return *this; }
    Circuit& cz(int c, int t) { ops.push_back(GateOp::cz(c, t)); return *this; }
    Circuit& cnot(int c, int t) { ops.push_back(GateOp::cnot(c, t)); return *this; }
    Circuit& append(const Circuit& other);
};

/// Applies one gate in place; throws std::out_of_range on bad indices.
void apply_gate_in_place(StateVector& state, const GateOp& op);

StateVector apply_gate(StateVector state, const GateOp& op);

/// Applies the circuit's ops in order. Throws on qubit-count mismatch.
StateVector run_circuit(const Circuit& circuit, StateVector initial);

/// run_circuit starting from |0...0>.
StateVector run_circuit(const Circuit& circuit);

/// Marginal probability that qubit m measures 0.
double prob_zero(const StateVector& state, int qubit);

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

struct PauliTerm {
    double coefficient = 0.0;
    std::vector<Pauli> letters;  // one per qubit

    int n_qubits() const { return static_cast<int>(letters.size()); }
};

struct Observable {
    std::vector<PauliTerm> terms;

    int n_qubits() const;  // throws if terms disagree
};

/// <psi| P |psi> for a single Pauli string (real for Hermitian P).
double expectation(const StateVector& state, const PauliTerm& term);

/// Sum_k c_k <psi| P_k |psi>; the imaginary residue is discarded.
double expectation(const StateVector& state, const Observable& obs);

/// Dense 2^n x 2^n matrix of the observable (small n only).
Eigen::MatrixXcd dense_matrix(const Observable& obs);

/// True when every term has an even number of Y letters; such observables
/// are real symmetric matrices in the computational basis.
bool is_real_observable(const Observable& obs);

/// Dense real matrix; requires is_real_observable(obs).
Eigen::MatrixXd dense_real_matrix(const Observable& obs);

}  // namespace qneb
