#pragma once

// Ground-state energies of a QubitHamiltonian: exact diagonalization of the
// dense matrix, or a VQE whose rotation axes and angles are optimized with
// Rotoselect sweeps over a hardware-efficient ansatz (one rotation column
// plus a CNOT chain per block, repeated D_e times).

#include <cstdint>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "qneb/hamiltonian.hpp"
#include "qneb/simulator.hpp"

namespace qneb {

enum class SolverMethod { ED, VQE };

struct SectorRestriction {
    int n_electrons = 0;
    double sz = 0.0;  // (n_alpha - n_beta) / 2 under interleaved spin ordering
};

struct SolverConfig {
    SolverMethod method = SolverMethod::ED;
    int vqe_depth = 5;
    double convergence_threshold = 1e-4;  // Hartree, between successive sweeps
    std::uint64_t seed = 0;
    std::optional<SectorRestriction> sector;  // ED only
    int max_sweeps = 500;
};

struct GroundStateResult {
    double energy = 0.0;
    int iterations = 0;
    bool converged = false;
    std::optional<StateVector> state;
};

/// Lowest eigenvalue of the dense Hamiltonian (n_qubits <= 14). With a
/// sector, minimizes over basis states of that electron count and S_z only.
GroundStateResult solve_ed(const QubitHamiltonian& h,
                           std::optional<SectorRestriction> sector = {});

/// Rotoselect-driven VQE: sweeps until the energy difference between
/// successive sweeps drops below the threshold, or max_sweeps is hit
/// (returned with converged = false).
GroundStateResult solve_vqe(const QubitHamiltonian& h, const SolverConfig& cfg);

GroundStateResult solve(const QubitHamiltonian& h, const SolverConfig& cfg);

/// <N> = sum_q (1 - <Z_q>)/2 of a state; used to sanity-check that the
/// full-space minimum sits in the expected particle sector.
double particle_number_expectation(const StateVector& state);

struct VqeState {
    int n_qubits = 0;
    int depth = 0;
    std::vector<GateKind> axes;  // Rx/Ry/Rz, one per rotation gate
    Eigen::VectorXd angles;      // radians, same length

    /// All axes Rx, angles uniform in [0, 0.1); the documented start.
    static VqeState initial(int n_qubits, int depth, std::uint64_t seed);

    int n_gates() const { return n_qubits * depth; }
    Circuit circuit() const;
};

/// One Rotoselect sweep: for each gate in order, pick the (axis, angle)
/// minimizing the exactly reconstructed sinusoid E(phi) = A cos(phi - phi0) + C
/// from evaluations at phi in {0, +pi/2, -pi/2}, committing before moving on.
/// Returns the post-sweep state and its energy.
std::pair<VqeState, double> rotoselect_sweep(VqeState state, const QubitHamiltonian& h);

}  // namespace qneb
