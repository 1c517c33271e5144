#include "qneb/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace qneb {

namespace {

constexpr double kPi = std::numbers::pi;

double angstrom_to_bohr(double x) { return x / kBohrToAngstrom; }

}  // namespace

Geometry Geometry::hydrogens(std::vector<double> positions_angstrom) {
    Geometry g;
    g.positions = std::move(positions_angstrom);
    g.charges.assign(g.positions.size(), 1.0);
    g.validate();
    return g;
}

void Geometry::validate() const {
    if (positions.empty()) throw std::invalid_argument("Geometry: no atoms");
    if (positions.size() != charges.size())
        throw std::invalid_argument("Geometry: positions/charges size mismatch");
    for (std::size_t a = 0; a < positions.size(); ++a)
        for (std::size_t b = a + 1; b < positions.size(); ++b)
            if (std::abs(positions[a] - positions[b]) <= 1e-6)
                throw std::invalid_argument("Geometry: atoms " + std::to_string(a) + " and " +
                                            std::to_string(b) + " coincide");
}

double ContractedGaussian::self_overlap() const {
    double s = 0.0;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        for (std::size_t j = 0; j < exponents.size(); ++j)
            s += coefficients[i] * coefficients[j] *
                 std::pow(kPi / (exponents[i] + exponents[j]), 1.5);
    return s;
}

BasisShell load_basis_shell(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("basis file not found: " + path);
    BasisShell shell;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;
        if (first == "element:") {
            ss >> shell.element;
        } else if (first == "shell:") {
            ss >> shell.shell;
        } else {
            double exponent = 0.0, coefficient = 0.0;
            try {
                exponent = std::stod(first);
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": expected exponent, got '" + first + "'");
            }
            if (!(ss >> coefficient))
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": missing contraction coefficient");
            shell.primitives.emplace_back(exponent, coefficient);
        }
    }
    if (shell.primitives.empty())
        throw std::runtime_error(path + ": no primitives");
    return shell;
}

const BasisShell& sto3g_hydrogen() {
    static const BasisShell shell = [] {
        const char* env = std::getenv("QNEB_BASIS_FILE");
        const std::string path = env ? env : std::string(QNEB_DATA_DIR) + "/sto3g_h.basis";
        return load_basis_shell(path);
    }();
    return shell;
}

ContractedGaussian make_contracted(const BasisShell& shell, double center_angstrom) {
    ContractedGaussian cg;
    cg.center = angstrom_to_bohr(center_angstrom);
    for (const auto& [exponent, coefficient] : shell.primitives) {
        if (exponent <= 0.0)
            throw std::invalid_argument("make_contracted: non-positive exponent");
        cg.exponents.push_back(exponent);
        cg.coefficients.push_back(coefficient * std::pow(2.0 * exponent / kPi, 0.75));
    }
    const double s = cg.self_overlap();
    for (double& c : cg.coefficients) c /= std::sqrt(s);
    return cg;
}

double boys_f0(double t) {
    if (t < 0.0) throw std::invalid_argument("boys_f0: negative argument");
    if (t < 0.05) {
        // Taylor series sum_k (-t)^k / (k! (2k+1)); 8 terms reach 1e-16 here
        double term = 1.0, sum = 0.0;
        for (int k = 0; k < 8; ++k) {
            sum += term / (2 * k + 1);
            term *= -t / (k + 1);
        }
        return sum;
    }
    return 0.5 * std::sqrt(kPi / t) * std::erf(std::sqrt(t));
}

namespace {

double overlap_prim(double a, double b, double ab2) {
    const double p = a + b;
    return std::pow(kPi / p, 1.5) * std::exp(-a * b / p * ab2);
}

double kinetic_prim(double a, double b, double ab2) {
    const double p = a + b;
    const double mu = a * b / p;
    return mu * (3.0 - 2.0 * mu * ab2) * std::pow(kPi / p, 1.5) * std::exp(-mu * ab2);
}

double nuclear_prim(double a, double b, double A, double B, double C) {
    const double p = a + b;
    const double P = (a * A + b * B) / p;
    const double ab2 = (A - B) * (A - B);
    return -2.0 * kPi / p * std::exp(-a * b / p * ab2) * boys_f0(p * (P - C) * (P - C));
}

double eri_prim(double a, double b, double c, double d,
                double A, double B, double C, double D) {
    const double p = a + b;
    const double q = c + d;
    const double P = (a * A + b * B) / p;
    const double Q = (c * C + d * D) / q;
    const double ab2 = (A - B) * (A - B);
    const double cd2 = (C - D) * (C - D);
    const double pref = 2.0 * std::pow(kPi, 2.5) / (p * q * std::sqrt(p + q));
    return pref * std::exp(-a * b / p * ab2 - c * d / q * cd2) *
           boys_f0(p * q / (p + q) * (P - Q) * (P - Q));
}

}  // namespace

IntegralSet compute_integrals(const Geometry& geometry) {
    geometry.validate();
    const int n = geometry.n_atoms();
    const BasisShell& shell = sto3g_hydrogen();

    std::vector<ContractedGaussian> basis;
    basis.reserve(n);
    for (double x : geometry.positions) basis.push_back(make_contracted(shell, x));

    std::vector<double> centers(n);
    for (int a = 0; a < n; ++a) centers[a] = angstrom_to_bohr(geometry.positions[a]);

    IntegralSet ints;
    ints.n_orbitals = n;
    ints.overlap = Eigen::MatrixXd::Zero(n, n);
    ints.one_body = Eigen::MatrixXd::Zero(n, n);
    ints.two_body.assign(std::size_t(n) * n * n * n, 0.0);

    // canonical pairs only, mirrored, so symmetry holds exactly as computed
    for (int A = 0; A < n; ++A) {
        for (int B = A; B < n; ++B) {
            const auto& ga = basis[A];
            const auto& gb = basis[B];
            const double ab2 = (centers[A] - centers[B]) * (centers[A] - centers[B]);
            double s = 0.0, t = 0.0, v = 0.0;
            for (std::size_t i = 0; i < ga.exponents.size(); ++i) {
                for (std::size_t j = 0; j < gb.exponents.size(); ++j) {
                    const double cc = ga.coefficients[i] * gb.coefficients[j];
                    s += cc * overlap_prim(ga.exponents[i], gb.exponents[j], ab2);
                    t += cc * kinetic_prim(ga.exponents[i], gb.exponents[j], ab2);
                    for (int c = 0; c < n; ++c)
                        v += cc * geometry.charges[c] *
                             nuclear_prim(ga.exponents[i], gb.exponents[j],
                                          centers[A], centers[B], centers[c]);
                }
            }
            ints.overlap(A, B) = ints.overlap(B, A) = s;
            ints.one_body(A, B) = ints.one_body(B, A) = t + v;
        }
    }

    auto pair_index = [n](int a, int b) { return a * n + b; };
    for (int A = 0; A < n; ++A) {
        for (int B = A; B < n; ++B) {
            for (int C = 0; C < n; ++C) {
                for (int D = C; D < n; ++D) {
                    if (pair_index(A, B) > pair_index(C, D)) continue;
                    double val = 0.0;
                    const auto& ga = basis[A];
                    const auto& gb = basis[B];
                    const auto& gc = basis[C];
                    const auto& gd = basis[D];
                    for (std::size_t i = 0; i < ga.exponents.size(); ++i)
                        for (std::size_t j = 0; j < gb.exponents.size(); ++j)
                            for (std::size_t k = 0; k < gc.exponents.size(); ++k)
                                for (std::size_t l = 0; l < gd.exponents.size(); ++l)
                                    val += ga.coefficients[i] * gb.coefficients[j] *
                                           gc.coefficients[k] * gd.coefficients[l] *
                                           eri_prim(ga.exponents[i], gb.exponents[j],
                                                    gc.exponents[k], gd.exponents[l],
                                                    centers[A], centers[B], centers[C], centers[D]);
                    // (AB|CD) = (BA|CD) = (AB|DC) = (BA|DC) = (CD|AB) = ...
                    for (auto [p, q] : {std::pair{A, B}, std::pair{B, A}})
                        for (auto [r, s] : {std::pair{C, D}, std::pair{D, C}}) {
                            ints.g(p, q, r, s) = val;
                            ints.g(r, s, p, q) = val;
                        }
                }
            }
        }
    }

    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            ints.nuclear_repulsion += geometry.charges[a] * geometry.charges[b] /
                                      std::abs(centers[a] - centers[b]);
    return ints;
}

namespace {

// Congruence transform of a full integral set by orbital matrix X
// (columns are new orbitals in the old basis).
IntegralSet transform_integrals(const IntegralSet& ints, const Eigen::MatrixXd& X) {
    const int n = ints.n_orbitals;
    IntegralSet out;
    out.n_orbitals = n;
    out.nuclear_repulsion = ints.nuclear_repulsion;

    Eigen::MatrixXd h = X.transpose() * ints.one_body * X;
    out.one_body = 0.5 * (h + h.transpose());
    Eigen::MatrixXd s = X.transpose() * ints.overlap * X;
    out.overlap = 0.5 * (s + s.transpose());

    // four one-index passes, then canonical mirroring for exact 8-fold symmetry
    std::vector<double> t0 = ints.two_body, t1(t0.size());
    auto idx = [n](int a, int b, int c, int d) { return ((a * n + b) * n + c) * n + d; };
    for (int pass = 0; pass < 4; ++pass) {
        std::fill(t1.begin(), t1.end(), 0.0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        double acc = 0.0;
                        for (int m = 0; m < n; ++m)
                            acc += X(m, d) * t0[idx(b, c, m, a)];
                        // rotates the last index and cycles axes; after 4
                        // passes every index is transformed once
                        t1[idx(a, b, c, d)] = acc;
                    }
        std::swap(t0, t1);
    }
    out.two_body.assign(t0.size(), 0.0);
    auto pair_index = [n](int a, int b) { return a * n + b; };
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = c; d < n; ++d) {
                    if (pair_index(a, b) > pair_index(c, d)) continue;
                    const double val = t0[idx(a, b, c, d)];
                    for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}})
                        for (auto [r, s] : {std::pair{c, d}, std::pair{d, c}}) {
                            out.two_body[idx(p, q, r, s)] = val;
                            out.two_body[idx(r, s, p, q)] = val;
                        }
                }
    return out;
}

}  // namespace

IntegralSet orthogonalize(const IntegralSet& integrals) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(integrals.overlap);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("orthogonalize: overlap eigensolve failed");
    const Eigen::VectorXd w = es.eigenvalues();
    if (w.minCoeff() <= 1e-10)
        throw std::runtime_error("orthogonalize: overlap not positive-definite "
                                 "(near-coincident atoms?)");
    const Eigen::MatrixXd X =
        es.eigenvectors() * w.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
    IntegralSet out = transform_integrals(integrals, X);
    out.overlap = Eigen::MatrixXd::Identity(integrals.n_orbitals, integrals.n_orbitals);
    return out;
}

IntegralSet to_core_eigenbasis(const IntegralSet& integrals) {
    if (!integrals.overlap.isIdentity(1e-8))
        throw std::invalid_argument("to_core_eigenbasis: orbitals not orthonormal");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(integrals.one_body);
    IntegralSet out = transform_integrals(integrals, es.eigenvectors());
    out.overlap = Eigen::MatrixXd::Identity(integrals.n_orbitals, integrals.n_orbitals);
    return out;
}

// ---------------------------------------------------------------------------
// Jordan-Wigner construction. Pauli strings are packed 2 bits per qubit
// (I=0, X=1, Y=2, Z=3) into a 64-bit key, which caps this path at 28 qubits
// (6 used in practice).

namespace {

struct PackedString {
    std::uint64_t key = 0;
    Complex coeff = 0.0;
};

int letter_at(std::uint64_t key, int q) { return int((key >> (2 * q)) & 3); }

std::uint64_t with_letter(std::uint64_t key, int q, int letter) {
    return (key & ~(std::uint64_t(3) << (2 * q))) | (std::uint64_t(letter) << (2 * q));
}

// product tables: result letter and phase exponent (power of i) for A*B
constexpr int kMulLetter[4][4] = {
    {0, 1, 2, 3},
    {1, 0, 3, 2},
    {2, 3, 0, 1},
    {3, 2, 1, 0},
};
constexpr int kMulPhase[4][4] = {
    // I  X  Y  Z
    {0, 0, 0, 0},  // I
    {0, 0, 1, 3},  // X: XY=iZ, XZ=-iY
    {0, 3, 0, 1},  // Y: YX=-iZ, YZ=iX
    {0, 1, 3, 0},  // Z: ZX=iY, ZY=-iX
};

const Complex kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

PackedString multiply(const PackedString& a, const PackedString& b, int n_qubits) {
    PackedString out;
    out.coeff = a.coeff * b.coeff;
    int phase = 0;
    for (int q = 0; q < n_qubits; ++q) {
        const int la = letter_at(a.key, q);
        const int lb = letter_at(b.key, q);
        out.key = with_letter(out.key, q, kMulLetter[la][lb]);
        phase += kMulPhase[la][lb];
    }
    out.coeff *= kPhase[phase & 3];
    return out;
}

using LinearOp = std::vector<PackedString>;

LinearOp multiply(const LinearOp& a, const LinearOp& b, int n_qubits) {
    LinearOp out;
    out.reserve(a.size() * b.size());
    for (const auto& sa : a)
        for (const auto& sb : b) out.push_back(multiply(sa, sb, n_qubits));
    return out;
}

// a_j = (prod_{k<j} Z_k) (X_j + i Y_j)/2 ; dagger flips the sign of the Y part
LinearOp ladder(int j, bool dagger) {
    std::uint64_t ztail = 0;
    for (int k = 0; k < j; ++k) ztail = with_letter(ztail, k, 3);
    PackedString x{with_letter(ztail, j, 1), 0.5};
    PackedString y{with_letter(ztail, j, 2), dagger ? Complex(0, -0.5) : Complex(0, 0.5)};
    return {x, y};
}

}  // namespace

QubitHamiltonian to_qubit_hamiltonian(const IntegralSet& integrals) {
    if (!integrals.overlap.isIdentity(1e-8))
        throw std::invalid_argument("to_qubit_hamiltonian: orbitals not orthonormal "
                                    "(run orthogonalize first)");
    const int n = integrals.n_orbitals;
    const int n_so = 2 * n;
    if (n_so > 28) throw std::invalid_argument("to_qubit_hamiltonian: too many spin orbitals");

    std::unordered_map<std::uint64_t, Complex> acc;
    acc[0] = integrals.nuclear_repulsion;

    auto accumulate = [&acc](const LinearOp& op, double weight) {
        for (const auto& s : op) acc[s.key] += weight * s.coeff;
    };

    // spin orbital 2p = (p, alpha), 2p+1 = (p, beta)
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            const double h = integrals.one_body(p, q);
            if (std::abs(h) < 1e-14) continue;
            for (int s = 0; s < 2; ++s)
                accumulate(multiply(ladder(2 * p + s, true), ladder(2 * q + s, false), n_so), h);
        }

    // 1/2 sum (ij|kl) a+_{i s} a+_{k t} a_{l t} a_{j s}  (chemists' integrals)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const double g = integrals.g(i, j, k, l);
                    if (std::abs(g) < 1e-14) continue;
                    for (int s = 0; s < 2; ++s)
                        for (int t = 0; t < 2; ++t) {
                            LinearOp op = multiply(ladder(2 * i + s, true), ladder(2 * k + t, true), n_so);
                            op = multiply(op, ladder(2 * l + t, false), n_so);
                            op = multiply(op, ladder(2 * j + s, false), n_so);
                            accumulate(op, 0.5 * g);
                        }
                }

    std::vector<std::pair<std::uint64_t, Complex>> entries(acc.begin(), acc.end());
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    QubitHamiltonian h;
    h.n_qubits = n_so;
    for (const auto& [key, coeff] : entries) {
        if (std::abs(coeff) < 1e-12) continue;
        if (std::abs(coeff.imag()) > 1e-10)
            throw std::runtime_error("to_qubit_hamiltonian: non-real coefficient survived merging");
        PauliTerm term;
        term.coefficient = coeff.real();
        term.letters.resize(n_so, Pauli::I);
        for (int q = 0; q < n_so; ++q)
            term.letters[q] = static_cast<Pauli>(letter_at(key, q));
        h.terms.terms.push_back(std::move(term));
    }
    return h;
}

// ---------------------------------------------------------------------------
// Text format

QubitHamiltonian load_hamiltonian(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("hamiltonian file not found: " + path);

    QubitHamiltonian h;
    h.n_qubits = -1;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;

        if (first == "qubits:") {
            if (h.n_qubits >= 0) fail("duplicate qubits header");
            int n = 0;
            if (!(ss >> n) || n <= 0) fail("invalid qubit count");
            h.n_qubits = n;
            continue;
        }
        if (h.n_qubits < 0) fail("term before 'qubits: N' header");

        PauliTerm term;
        term.letters.resize(h.n_qubits, Pauli::I);
        std::size_t consumed = 0;
        try {
            term.coefficient = std::stod(first, &consumed);
        } catch (const std::exception&) {
            consumed = 0;
        }
        if (consumed != first.size()) fail("expected coefficient, got '" + first + "'");

        std::string token;
        while (ss >> token) {
            if (token.size() < 2) fail("malformed pauli token '" + token + "'");
            Pauli letter;
            switch (token[0]) {
                case 'X': letter = Pauli::X; break;
                case 'Y': letter = Pauli::Y; break;
                case 'Z': letter = Pauli::Z; break;
                case 'I': letter = Pauli::I; break;
                default: fail("unknown pauli letter in '" + token + "'"); letter = Pauli::I;
            }
            int qubit = -1;
            try {
                std::size_t used = 0;
                qubit = std::stoi(token.substr(1), &used);
                if (used != token.size() - 1) qubit = -1;
            } catch (const std::exception&) {
            }
            if (qubit < 0) fail("malformed qubit index in '" + token + "'");
            if (qubit >= h.n_qubits)
                fail("qubit " + std::to_string(qubit) + " exceeds declared count " +
                     std::to_string(h.n_qubits));
            if (term.letters[qubit] != Pauli::I) fail("duplicate qubit in term: '" + token + "'");
            term.letters[qubit] = letter;
        }
        h.terms.terms.push_back(std::move(term));
    }
    if (h.n_qubits < 0) throw std::runtime_error(path + ": missing 'qubits: N' header");
    if (h.terms.terms.empty()) throw std::runtime_error(path + ": no terms");
    return h;
}

void save_hamiltonian(const QubitHamiltonian& h, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "qubits: " << h.n_qubits << "\n";
    out.precision(17);
    for (const PauliTerm& term : h.terms.terms) {
        out << term.coefficient;
        for (int q = 0; q < term.n_qubits(); ++q)
            if (term.letters[q] != Pauli::I) out << ' ' << pauli_char(term.letters[q]) << q;
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace qneb
