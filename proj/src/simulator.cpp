#include "qneb/simulator.hpp"

#include <bit>
#include <cmath>

namespace qneb {

StateVector StateVector::zero_state(int n_qubits) {
    if (n_qubits < 0 || n_qubits > 30)
        throw std::invalid_argument("StateVector: unsupported qubit count " + std::to_string(n_qubits));
    StateVector sv;
    sv.n_qubits = n_qubits;
    sv.amplitudes = Eigen::VectorXcd::Zero(Eigen::Index(1) << n_qubits);
    sv.amplitudes[0] = 1.0;
    return sv;
}

bool is_rotation(GateKind kind) {
    return kind == GateKind::Rx || kind == GateKind::Ry || kind == GateKind::Rz;
}

std::string to_string(GateKind kind) {
    switch (kind) {
        case GateKind::Rx: return "Rx";
        case GateKind::Ry: return "Ry";
        case GateKind::Rz: return "Rz";
        case GateKind::CZ: return "CZ";
        case GateKind::CNOT: return "CNOT";
    }
    return "?";
}

Circuit& Circuit::append(const Circuit& other) {
    if (other.n_qubits != n_qubits)
        throw std::invalid_argument("Circuit::append: qubit-count mismatch");
    ops.insert(ops.end(), other.ops.begin(), other.ops.end());
    return *this;
}

namespace {

void check_indices(const StateVector& state, const GateOp& op) {
    if (op.target < 0 || op.target >= state.n_qubits)
        throw std::out_of_range("gate target " + std::to_string(op.target) + " out of range");
    if (!is_rotation(op.kind)) {
        if (op.control < 0 || op.control >= state.n_qubits)
            throw std::out_of_range("gate control " + std::to_string(op.control) + " out of range");
        if (op.control == op.target)
            throw std::out_of_range("control and target must be distinct");
    }
}

// 2x2 rotation applied across all (i0, i1) amplitude pairs of the target bit.
void apply_single_qubit(Eigen::VectorXcd& amps, int target,
                        Complex u00, Complex u01, Complex u10, Complex u11) {
    const Eigen::Index bit = Eigen::Index(1) << target;
    const Eigen::Index dim = amps.size();
    for (Eigen::Index base = 0; base < dim; base += 2 * bit) {
        for (Eigen::Index low = 0; low < bit; ++low) {
            const Eigen::Index i0 = base + low;
            const Eigen::Index i1 = i0 + bit;
            const Complex a0 = amps[i0];
            const Complex a1 = amps[i1];
            amps[i0] = u00 * a0 + u01 * a1;
            amps[i1] = u10 * a0 + u11 * a1;
        }
    }
}

}  // namespace

void apply_gate_in_place(StateVector& state, const GateOp& op) {
    check_indices(state, op);
    Eigen::VectorXcd& amps = state.amplitudes;
    const double half = 0.5 * op.angle;
    switch (op.kind) {
        case GateKind::Rx: {
            const double c = std::cos(half), s = std::sin(half);
            apply_single_qubit(amps, op.target, c, Complex(0, -s), Complex(0, -s), c);
            break;
        }
        case GateKind::Ry: {
            const double c = std::cos(half), s = std::sin(half);
            apply_single_qubit(amps, op.target, c, -s, s, c);
            break;
        }
        case GateKind::Rz: {
            const Complex e0(std::cos(half), -std::sin(half));
            const Eigen::Index bit = Eigen::Index(1) << op.target;
            for (Eigen::Index i = 0; i < amps.size(); ++i)
                amps[i] *= (i & bit) ? std::conj(e0) : e0;
            break;
        }
        case GateKind::CZ: {
            const Eigen::Index cbit = Eigen::Index(1) << op.control;
            const Eigen::Index tbit = Eigen::Index(1) << op.target;
            const Eigen::Index both = cbit | tbit;
            for (Eigen::Index i = 0; i < amps.size(); ++i)
                if ((i & both) == both) amps[i] = -amps[i];
            break;
        }
        case GateKind::CNOT: {
            const Eigen::Index cbit = Eigen::Index(1) << op.control;
            const Eigen::Index tbit = Eigen::Index(1) << op.target;
            for (Eigen::Index i = 0; i < amps.size(); ++i)
                if ((i & cbit) && !(i & tbit)) std::swap(amps[i], amps[i | tbit]);
            break;
        }
    }
}

StateVector apply_gate(StateVector state, const GateOp& op) {
    apply_gate_in_place(state, op);
    return state;
}

StateVector run_circuit(const Circuit& circuit, StateVector initial) {
    if (circuit.n_qubits != initial.n_qubits)
        throw std::invalid_argument("run_circuit: qubit-count mismatch");
    for (const GateOp& op : circuit.ops) apply_gate_in_place(initial, op);
    return initial;
}

StateVector run_circuit(const Circuit& circuit) {
    return run_circuit(circuit, StateVector::zero_state(circuit.n_qubits));
}

double prob_zero(const StateVector& state, int qubit) {
    if (qubit < 0 || qubit >= state.n_qubits)
        throw std::out_of_range("prob_zero: qubit " + std::to_string(qubit) + " out of range");
    const Eigen::Index bit = Eigen::Index(1) << qubit;
    double p = 0.0;
    for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i)
        if (!(i & bit)) p += std::norm(state.amplitudes[i]);
    return p;
}

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

int Observable::n_qubits() const {
    if (terms.empty()) throw std::invalid_argument("Observable: no terms");
    const int n = terms.front().n_qubits();
    for (const PauliTerm& t : terms)
        if (t.n_qubits() != n)
            throw std::invalid_argument("Observable: inconsistent qubit counts across terms");
    return n;
}

namespace {

// P|i> = phase(i) |i ^ xmask>, with phase a product of per-qubit factors.
struct PackedPauli {
    Eigen::Index xmask = 0;
    Eigen::Index zmask = 0;  // qubits contributing (-1)^bit (Z and Y)
    int y_count = 0;

    static PackedPauli from(const PauliTerm& term) {
        PackedPauli p;
        for (int q = 0; q < term.n_qubits(); ++q) {
            const Eigen::Index bit = Eigen::Index(1) << q;
            switch (term.letters[q]) {
                case Pauli::I: break;
                case Pauli::X: p.xmask |= bit; break;
                case Pauli::Y: p.xmask |= bit; p.zmask |= bit; ++p.y_count; break;
                case Pauli::Z: p.zmask |= bit; break;
            }
        }
        return p;
    }
};

// Y contributes i * (-1)^bit relative to X's bit flip: Y|b> = i(-1)^b |1-b>.
Complex y_prefactor(int y_count) {
    static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[y_count & 3];
}

}  // namespace

double expectation(const StateVector& state, const PauliTerm& term) {
    if (term.n_qubits() != state.n_qubits)
        throw std::invalid_argument("expectation: qubit-count mismatch");
    const PackedPauli p = PackedPauli::from(term);
    const Complex pref = y_prefactor(p.y_count);
    const Eigen::VectorXcd& amps = state.amplitudes;
    Complex acc = 0.0;
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        const int sign = std::popcount(static_cast<std::uint64_t>(i & p.zmask)) & 1 ? -1 : 1;
        acc += std::conj(amps[i ^ p.xmask]) * (double(sign) * amps[i]);
    }
    return (term.coefficient * pref * acc).real();
}

double expectation(const StateVector& state, const Observable& obs) {
    double e = 0.0;
    for (const PauliTerm& t : obs.terms) e += expectation(state, t);
    return e;
}

Eigen::MatrixXcd dense_matrix(const Observable& obs) {
    const int n = obs.n_qubits();
    if (n > 14) throw std::invalid_argument("dense_matrix: dimension too large");
    const Eigen::Index dim = Eigen::Index(1) << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const PauliTerm& t : obs.terms) {
        const PackedPauli p = PackedPauli::from(t);
        const Complex pref = t.coefficient * y_prefactor(p.y_count);
        for (Eigen::Index col = 0; col < dim; ++col) {
            const int sign = std::popcount(static_cast<std::uint64_t>(col & p.zmask)) & 1 ? -1 : 1;
            m(col ^ p.xmask, col) += pref * double(sign);
        }
    }
    return m;
}

bool is_real_observable(const Observable& obs) {
    for (const PauliTerm& t : obs.terms) {
        int y = 0;
        for (Pauli l : t.letters)
            if (l == Pauli::Y) ++y;
        if (y & 1) return false;
    }
    return true;
}

Eigen::MatrixXd dense_real_matrix(const Observable& obs) {
    if (!is_real_observable(obs))
        throw std::invalid_argument("dense_real_matrix: observable has odd-Y terms");
    const int n = obs.n_qubits();
    if (n > 14) throw std::invalid_argument("dense_real_matrix: dimension too large");
    const Eigen::Index dim = Eigen::Index(1) << n;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (const PauliTerm& t : obs.terms) {
        const PackedPauli p = PackedPauli::from(t);
        // even y_count: the prefactor is +-1 and the matrix entries stay real
        const double pref = t.coefficient * y_prefactor(p.y_count).real();
        for (Eigen::Index col = 0; col < dim; ++col) {
            const int sign = std::popcount(static_cast<std::uint64_t>(col & p.zmask)) & 1 ? -1 : 1;
            m(col ^ p.xmask, col) += pref * double(sign);
        }
    }
    return m;
}

}  // namespace qneb
