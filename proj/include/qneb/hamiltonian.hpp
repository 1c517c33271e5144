#pragma once

// Qubit Hamiltonians for chains of hydrogen atoms in the STO-3G basis:
// closed-form s-type Gaussian integrals -> Lowdin-orthogonal orbitals ->
// second-quantized coefficients -> Jordan-Wigner Pauli sum. Also reads and
// writes a plain-text Hamiltonian format for interop with external codes.
//
// Units: user-facing lengths are Angstrom, integrals are computed in Bohr
// (1 Bohr = 0.52917721067 A), energies are Hartree throughout.
//
// Spin-orbital ordering is interleaved: spin orbital 2p is (p, alpha) and
// 2p+1 is (p, beta). Jordan-Wigner strings depend on this convention.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qneb/simulator.hpp"

namespace qneb {

constexpr double kBohrToAngstrom = 0.52917721067;

struct Geometry {
    std::vector<double> positions;  // 1-D coordinates, Angstrom
    std::vector<double> charges;    // nuclear charges (all 1 for hydrogen)

    static Geometry hydrogens(std::vector<double> positions_angstrom);

    int n_atoms() const { return static_cast<int>(positions.size()); }
    void validate() const;  // throws on coincident atoms
};

// One contracted s-type Gaussian, normalized so self-overlap is 1.
struct ContractedGaussian {
    double center = 0.0;                    // Bohr
    std::vector<double> exponents;          // Bohr^-2
    std::vector<double> coefficients;       // includes primitive norms

    double self_overlap() const;
};

// Shell data as read from the basis file: raw exponent/coefficient pairs.
struct BasisShell {
    std::string element;
    std::string shell;
    std::vector<std::pair<double, double>> primitives;  // (exponent, coefficient)
};

BasisShell load_basis_shell(const std::string& path);

/// The STO-3G hydrogen 1s shell from the shipped data file (loaded once).
const BasisShell& sto3g_hydrogen();

/// Contracted Gaussian at the given center (Angstrom) built from a shell.
ContractedGaussian make_contracted(const BasisShell& shell, double center_angstrom);

struct IntegralSet {
    int n_orbitals = 0;
    Eigen::MatrixXd one_body;        // h_pq, Hartree
    Eigen::MatrixXd overlap;         // S_pq
    std::vector<double> two_body;    // (pq|rs), chemists' convention, row-major
    double nuclear_repulsion = 0.0;  // Hartree

    double g(int p, int q, int r, int s) const {
        const int n = n_orbitals;
        return two_body[((p * n + q) * n + r) * n + s];
    }
    double& g(int p, int q, int r, int s) {
        const int n = n_orbitals;
        return two_body[((p * n + q) * n + r) * n + s];
    }
};

/// Boys function F0(t) = integral_0^1 exp(-t u^2) du, accurate to 1e-12.
double boys_f0(double t);

/// Overlap, kinetic, nuclear-attraction and repulsion integrals in the
/// atomic-orbital basis (one 1s contracted Gaussian per hydrogen), plus the
/// nuclear repulsion energy.
IntegralSet compute_integrals(const Geometry& geometry);

/// Symmetric (Lowdin) orthogonalization by S^(-1/2); output overlap is I.
IntegralSet orthogonalize(const IntegralSet& integrals);

/// Rotates orthonormal integrals into the eigenbasis of the one-body (core)
/// Hamiltonian. Optional mode for VQE-convergence experiments; full-space
/// ED energies are invariant under it.
IntegralSet to_core_eigenbasis(const IntegralSet& integrals);

struct QubitHamiltonian {
    int n_qubits = 0;
    Observable terms;
};

/// Jordan-Wigner Pauli sum of the second-quantized Hamiltonian. Requires
/// orthonormal orbitals (overlap = I). Like terms are merged and
/// |coefficient| < 1e-12 dropped.
QubitHamiltonian to_qubit_hamiltonian(const IntegralSet& integrals);

// Text format: header line "qubits: N", then one term per line,
// "<coefficient> <pauli tokens>" (e.g. "0.5 X0 Z2"); no tokens = identity;
// '#' starts a comment.
QubitHamiltonian load_hamiltonian(const std::string& path);
void save_hamiltonian(const QubitHamiltonian& h, const std::string& path);

}  // namespace qneb
