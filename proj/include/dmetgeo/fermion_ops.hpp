#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dmetgeo/types.hpp"

namespace dmetgeo {

/// Tensor product of Pauli letters in symplectic form: bit k of `x` / `z`
/// marks an X / Z component on qubit k (both set = Y). Supports up to 64
/// qubits; the statevector simulator enforces its own tighter cap.
struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  auto operator<=>(const PauliString&) const = default;
  bool is_identity() const { return x == 0 && z == 0; }
  int max_qubit() const;

  /// Letter on one qubit: 'I', 'X', 'Y' or 'Z'.
  char letter(int qubit) const;
};

/// Weighted sum of Pauli strings. Terms with |coefficient| < 1e-12 are pruned
/// on mutation, and term storage is ordered so iteration is deterministic.
class QubitOperator {
 public:
  QubitOperator() = default;
  explicit QubitOperator(Complex constant);
  static QubitOperator pauli(char letter, int qubit, Complex coeff = 1.0);

  void add_term(const PauliString& s, Complex c);
  QubitOperator& operator+=(const QubitOperator& other);
  QubitOperator& operator-=(const QubitOperator& other);
  QubitOperator& operator*=(Complex scale);
  QubitOperator operator*(const QubitOperator& other) const;

  const std::map<PauliString, Complex>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  int max_qubit() const;

  /// Largest |imaginary part| over coefficients; 0 for a Hermitian observable.
  double max_imag() const;
  bool is_hermitian(double tol = 1e-10) const { return max_imag() <= tol; }

  /// One `coeff [X0 Z1 Y3]` line per term.
  std::string to_text() const;

 private:
  void prune();
  std::map<PauliString, Complex> terms_;
};

struct LadderOp {
  int orbital = 0;
  bool creation = false;
  auto operator<=>(const LadderOp&) const = default;
};

/// Weighted sums of ladder-operator products, keyed by the operator sequence
/// (applied right to left as written). Sequences with an identical operator
/// repeated back-to-back vanish and are never stored.
class FermionOperator {
 public:
  FermionOperator() = default;
  explicit FermionOperator(Complex constant);

  void add_term(const std::vector<LadderOp>& ops, Complex coeff);
  FermionOperator& operator+=(const FermionOperator& other);
  FermionOperator& operator*=(Complex scale);

  const std::map<std::vector<LadderOp>, Complex>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  int max_orbital() const;

 private:
  std::map<std::vector<LadderOp>, Complex> terms_;
};

/// Spin-orbital Hamiltonian from spatial tensors (physicist <pq|rs>), spin
/// interleaved as spatial p -> 2p (alpha), 2p+1 (beta):
///   constant + sum d_pq a^+_p a_q + 1/2 sum <pq|rs> a^+_p a^+_q a_s a_r
/// with spin conservation on the (p,r) and (q,s) pairs.
FermionOperator from_integrals(const Mat& one_body, const Tensor4& two_body,
                               double constant = 0.0);

/// op - mu * sum over both spins of each listed fragment spatial orbital of
/// the number operator.
FermionOperator add_chemical_potential(const FermionOperator& op, double mu,
                                       const std::vector<int>& fragment_spatial_orbitals);

QubitOperator jordan_wigner(const FermionOperator& op);

/// Jordan-Wigner image of a single ladder operator.
QubitOperator jordan_wigner_ladder(const LadderOp& op);

}  // namespace dmetgeo
