#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dmetgeo/fermion_ops.hpp"
#include "dmetgeo/types.hpp"

namespace dmetgeo {

/// Exact 2^n complex amplitude vector. Qubit k maps to bit k of the basis
/// index. Capped at 24 qubits (256 MB of amplitudes).
class Statevector {
 public:
  explicit Statevector(int n_qubits);
  static Statevector basis_state(int n_qubits, std::uint64_t index);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  Complex& operator[](std::size_t i) { return amps_[i]; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  std::vector<Complex>& amplitudes() { return amps_; }

  double norm() const;

 private:
  int n_qubits_ = 0;
  std::vector<Complex> amps_;
};

/// Hartree-Fock reference |1...10...0> with the first n_occ_spin qubits set.
Statevector prepare_reference(int n_qubits, int n_occ_spin);

/// state <- exp(-i angle P) state, in place.
void apply_pauli_exponential(Statevector& state, const PauliString& pauli, double angle);

/// P|state> as a new vector.
Statevector apply_pauli_string(const Statevector& state, const PauliString& pauli);

/// Jordan-Wigner action of a_p / a^+_p on the statevector.
Statevector apply_ladder(const Statevector& state, int orbital, bool creation);

/// <state|op|state> for Hermitian op; throws if coefficients have imaginary
/// parts above 1e-10.
double expectation(const Statevector& state, const QubitOperator& op);

Eigen::MatrixXcd dense_matrix(const QubitOperator& op, int n_qubits);

struct Excitation {
  std::vector<int> annihilate;  // occupied spin orbitals (i) or (i, j)
  std::vector<int> create;      // virtual spin orbitals (a) or (a, b)
};

/// One commuting Pauli factor of an anti-Hermitian generator i*c*P.
struct GeneratorFactor {
  PauliString pauli;
  double weight = 0.0;  // c in i*c*P
};

/// Trotterized unitary coupled-cluster ansatz: product over excitations of
/// exp(theta_k (T_k - T_k^+)), singles then doubles, lexicographic order.
struct UccsdAnsatz {
  int n_qubits = 0;
  int n_occ_spin = 0;
  std::vector<Excitation> excitations;
  std::vector<std::vector<GeneratorFactor>> generators;

  int n_parameters() const { return static_cast<int>(excitations.size()); }
};

UccsdAnsatz make_uccsd_ansatz(int n_qubits, int n_occ_spin);

Statevector apply_uccsd(const UccsdAnsatz& ansatz, const Vec& theta, const Statevector& reference);

/// d<op>/d theta via +-pi/4 shifts applied per Pauli factor; exact since every
/// factor has +-1 eigenvalues.
Vec parameter_shift_gradient(const UccsdAnsatz& ansatz, const Vec& theta, const QubitOperator& op);

/// Central-difference fallback, cross-checked against the shift rule.
Vec finite_difference_gradient(const UccsdAnsatz& ansatz, const Vec& theta,
                               const QubitOperator& op, double step = 1e-5);

/// Spin-orbital RDMs D_pq = <a^+_p a_q>, P_pqrs = <a^+_p a^+_q a_r a_s> over
/// the first n_spin_orbitals qubits. Hermiticity and antisymmetry hold by
/// construction; imaginary residues are discarded.
std::pair<Mat, Tensor4> measure_rdms(const Statevector& state, int n_spin_orbitals);

/// Total particle number <sum_q n_q>.
double particle_number(const Statevector& state);

struct SectorEigenSolution {
  double energy = 0.0;
  Statevector state{1};
};

/// Lowest eigenpair of a particle-number-conserving operator within the
/// n_particles occupation sector (dense diagonalization).
SectorEigenSolution ground_state_in_sector(const QubitOperator& op, int n_qubits,
                                           int n_particles);

}  // namespace dmetgeo
