#include "dmetgeo/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "dmetgeo/errors.hpp"

namespace dmetgeo {

namespace {

constexpr int kMaxQubits = 24;

constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// Phase of P acting on basis state |i>: P|i> = phase(i) |i ^ x>.
inline Complex pauli_phase(const PauliString& p, std::uint64_t i) {
  const int n_y = std::popcount(p.x & p.z);
  const int sign = std::popcount(i & p.z) & 1;
  Complex phase = kIPowers[n_y & 3];
  return sign ? -phase : phase;
}

}  // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw Error("statevector supports 1.." + std::to_string(kMaxQubits) + " qubits, got " +
                std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, Complex(0, 0));
}

Statevector Statevector::basis_state(int n_qubits, std::uint64_t index) {
  Statevector s(n_qubits);
  s.amps_.at(index) = Complex(1, 0);
  return s;
}

double Statevector::norm() const {
  double n2 = 0.0;
  for (const auto& a : amps_) n2 += std::norm(a);
  return std::sqrt(n2);
}

Statevector prepare_reference(int n_qubits, int n_occ_spin) {
  if (n_occ_spin < 0 || n_occ_spin > n_qubits) throw Error("occupation exceeds register size");
  const std::uint64_t index = (n_occ_spin == 0) ? 0 : ((std::uint64_t{1} << n_occ_spin) - 1);
  return Statevector::basis_state(n_qubits, index);
}

void apply_pauli_exponential(Statevector& state, const PauliString& pauli, double angle) {
  if (pauli.max_qubit() >= state.n_qubits()) throw Error("Pauli string exceeds register");
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const std::size_t dim = state.dim();
  if (pauli.x == 0) {
    // Diagonal: amplitude picks up exp(-i angle * (+-1)).
    const Complex e_minus(c, -s), e_plus(c, s);
    for (std::size_t i = 0; i < dim; ++i) {
      state[i] *= (std::popcount(i & pauli.z) & 1) ? e_plus : e_minus;
    }
    return;
  }
  const Complex minus_i_sin(0, -s);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t j = i ^ pauli.x;
    if (j < i) continue;
    const Complex pi = pauli_phase(pauli, i);  // P|i> = pi |j>
    const Complex pj = pauli_phase(pauli, j);
    const Complex ai = state[i], aj = state[j];
    state[i] = c * ai + minus_i_sin * (pj * aj);
    state[j] = c * aj + minus_i_sin * (pi * ai);
  }
}

Statevector apply_pauli_string(const Statevector& state, const PauliString& pauli) {
  if (pauli.max_qubit() >= state.n_qubits()) throw Error("Pauli string exceeds register");
  Statevector out(state.n_qubits());
  const std::size_t dim = state.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    out[i ^ pauli.x] = pauli_phase(pauli, i) * state[i];
  }
  return out;
}

Statevector apply_ladder(const Statevector& state, int orbital, bool creation) {
  if (orbital < 0 || orbital >= state.n_qubits()) throw Error("orbital exceeds register");
  Statevector out(state.n_qubits());
  const std::uint64_t bit = std::uint64_t{1} << orbital;
  const std::uint64_t parity_mask = bit - 1;
  const std::size_t dim = state.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    const bool occupied = i & bit;
    if (occupied == creation) continue;  // a on empty / a^+ on filled -> 0
    const double sign = (std::popcount(i & parity_mask) & 1) ? -1.0 : 1.0;
    out[i ^ bit] += sign * state[i];
  }
  return out;
}

double expectation(const Statevector& state, const QubitOperator& op) {
  if (!op.is_hermitian()) {
    throw Error("expectation requires a Hermitian operator (real coefficients)");
  }
  if (op.max_qubit() >= state.n_qubits()) throw Error("operator exceeds register");
  const std::size_t dim = state.dim();
  Complex total(0, 0);
  for (const auto& [p, coeff] : op.terms()) {
    Complex acc(0, 0);
    for (std::size_t i = 0; i < dim; ++i) {
      acc += std::conj(state[i ^ p.x]) * pauli_phase(p, i) * state[i];
    }
    total += coeff * acc;
  }
  return total.real();
}

Eigen::MatrixXcd dense_matrix(const QubitOperator& op, int n_qubits) {
  if (op.max_qubit() >= n_qubits) throw Error("operator exceeds register");
  const std::size_t dim = std::size_t{1} << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [p, coeff] : op.terms()) {
    for (std::size_t i = 0; i < dim; ++i) {
      m(i ^ p.x, i) += coeff * pauli_phase(p, i);
    }
  }
  return m;
}

namespace {

std::vector<GeneratorFactor> generator_factors(const Excitation& exc) {
  // T = a^+_create... a_annihilate..., G = T - T^+; all JW terms of G are
  // i * c * P with real c, and they mutually commute.
  std::vector<LadderOp> fwd;
  for (int a : exc.create) fwd.push_back({a, true});
  for (auto it = exc.annihilate.rbegin(); it != exc.annihilate.rend(); ++it) {
    fwd.push_back({*it, false});
  }
  std::vector<LadderOp> rev;
  for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) rev.push_back({it->orbital, !it->creation});

  FermionOperator g;
  g.add_term(fwd, Complex(1, 0));
  g.add_term(rev, Complex(-1, 0));
  const QubitOperator q = jordan_wigner(g);

  std::vector<GeneratorFactor> factors;
  for (const auto& [p, c] : q.terms()) {
    if (std::abs(c.real()) > 1e-12) throw Error("generator image is not anti-Hermitian");
    factors.push_back({p, c.imag()});
  }
  return factors;
}

}  // namespace

UccsdAnsatz make_uccsd_ansatz(int n_qubits, int n_occ_spin) {
  UccsdAnsatz ansatz;
  ansatz.n_qubits = n_qubits;
  ansatz.n_occ_spin = n_occ_spin;

  for (int i = 0; i < n_occ_spin; ++i) {
    for (int a = n_occ_spin; a < n_qubits; ++a) {
      if ((i & 1) != (a & 1)) continue;  // spin conservation
      ansatz.excitations.push_back({{i}, {a}});
    }
  }
  for (int i = 0; i < n_occ_spin; ++i) {
    for (int j = i + 1; j < n_occ_spin; ++j) {
      for (int a = n_occ_spin; a < n_qubits; ++a) {
        for (int b = a + 1; b < n_qubits; ++b) {
          if ((i & 1) + (j & 1) != (a & 1) + (b & 1)) continue;
          ansatz.excitations.push_back({{i, j}, {a, b}});
        }
      }
    }
  }
  ansatz.generators.reserve(ansatz.excitations.size());
  for (const auto& exc : ansatz.excitations) ansatz.generators.push_back(generator_factors(exc));
  return ansatz;
}

namespace {

// exp(theta * i * c * P) = exp(-i * (-theta c) * P); one factor gets an extra
// phase offset when evaluating shift-rule end points.
Statevector run_circuit(const UccsdAnsatz& ansatz, const Vec& theta, int shift_param = -1,
                        int shift_factor = -1, double shift = 0.0) {
  Statevector state = prepare_reference(ansatz.n_qubits, ansatz.n_occ_spin);
  for (int k = 0; k < ansatz.n_parameters(); ++k) {
    for (std::size_t f = 0; f < ansatz.generators[k].size(); ++f) {
      const auto& factor = ansatz.generators[k][f];
      double angle = -theta[k] * factor.weight;
      if (k == shift_param && static_cast<int>(f) == shift_factor) angle += shift;
      apply_pauli_exponential(state, factor.pauli, angle);
    }
  }
  return state;
}

}  // namespace

Statevector apply_uccsd(const UccsdAnsatz& ansatz, const Vec& theta,
                        const Statevector& reference) {
  if (theta.size() != ansatz.n_parameters()) throw Error("theta length mismatch");
  Statevector state = reference;
  for (int k = 0; k < ansatz.n_parameters(); ++k) {
    for (const auto& factor : ansatz.generators[k]) {
      apply_pauli_exponential(state, factor.pauli, -theta[k] * factor.weight);
    }
  }
  return state;
}

Vec parameter_shift_gradient(const UccsdAnsatz& ansatz, const Vec& theta,
                             const QubitOperator& op) {
  if (theta.size() != ansatz.n_parameters()) throw Error("theta length mismatch");
  Vec grad = Vec::Zero(ansatz.n_parameters());
  for (int k = 0; k < ansatz.n_parameters(); ++k) {
    double g = 0.0;
    for (std::size_t f = 0; f < ansatz.generators[k].size(); ++f) {
      const double c = ansatz.generators[k][f].weight;
      const double e_plus =
          expectation(run_circuit(ansatz, theta, k, static_cast<int>(f), M_PI / 4), op);
      const double e_minus =
          expectation(run_circuit(ansatz, theta, k, static_cast<int>(f), -M_PI / 4), op);
      // dE/dtheta_k through this factor: dE/dangle * dangle/dtheta, with
      // dE/dangle = E(angle + pi/4) - E(angle - pi/4) and angle = -theta c.
      g += -c * (e_plus - e_minus);
    }
    grad[k] = g;
  }
  return grad;
}

Vec finite_difference_gradient(const UccsdAnsatz& ansatz, const Vec& theta,
                               const QubitOperator& op, double step) {
  Vec grad = Vec::Zero(ansatz.n_parameters());
  const Statevector reference = prepare_reference(ansatz.n_qubits, ansatz.n_occ_spin);
  for (int k = 0; k < ansatz.n_parameters(); ++k) {
    Vec tp = theta, tm = theta;
    tp[k] += step;
    tm[k] -= step;
    grad[k] = (expectation(apply_uccsd(ansatz, tp, reference), op) -
               expectation(apply_uccsd(ansatz, tm, reference), op)) /
              (2.0 * step);
  }
  return grad;
}

std::pair<Mat, Tensor4> measure_rdms(const Statevector& state, int n_spin_orbitals) {
  const int n = n_spin_orbitals;
  if (n > state.n_qubits()) throw Error("register smaller than requested RDM range");

  std::vector<Statevector> annihilated;
  annihilated.reserve(n);
  for (int q = 0; q < n; ++q) annihilated.push_back(apply_ladder(state, q, false));

  auto inner = [](const Statevector& a, const Statevector& b) {
    Complex acc(0, 0);
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
  };

  Mat one_rdm = Mat::Zero(n, n);
  for (int p = 0; p < n; ++p) {
    for (int q = p; q < n; ++q) {
      const Complex v = inner(annihilated[p], annihilated[q]);
      one_rdm(p, q) = v.real();
      one_rdm(q, p) = v.real();
    }
  }

  // Pair states a_p a_q |psi> for p < q; P_pqrs = <a_q a_p psi | a_r a_s psi>
  // follows with antisymmetry signs, and Hermiticity is inherited from the
  // Gram structure.
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) pairs.emplace_back(p, q);
  }
  const int np = static_cast<int>(pairs.size());

  const int block = std::max(1, static_cast<int>((std::size_t{1} << 25) / (state.dim() + 1)));
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(np, np);
  std::vector<Statevector> bra_block, ket_block;
  for (int b0 = 0; b0 < np; b0 += block) {
    const int b1 = std::min(np, b0 + block);
    bra_block.clear();
    for (int u = b0; u < b1; ++u) {
      bra_block.push_back(apply_ladder(annihilated[pairs[u].second], pairs[u].first, false));
    }
    for (int k0 = b0; k0 < np; k0 += block) {
      const int k1 = std::min(np, k0 + block);
      if (k0 == b0) {
        for (int u = b0; u < b1; ++u) {
          for (int v = u; v < k1; ++v) {
            gram(u, v) = inner(bra_block[u - b0], bra_block[v - b0]);
            gram(v, u) = std::conj(gram(u, v));
          }
        }
        continue;
      }
      ket_block.clear();
      for (int v = k0; v < k1; ++v) {
        ket_block.push_back(apply_ladder(annihilated[pairs[v].second], pairs[v].first, false));
      }
      for (int u = b0; u < b1; ++u) {
        for (int v = k0; v < k1; ++v) {
          gram(u, v) = inner(bra_block[u - b0], ket_block[v - k0]);
          gram(v, u) = std::conj(gram(u, v));
        }
      }
    }
  }

  std::vector<int> pair_index(n * n, -1);
  for (int u = 0; u < np; ++u) {
    pair_index[pairs[u].first * n + pairs[u].second] = u;
  }

  Tensor4 two_rdm(n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      // bra <a_q a_p psi| ; a_q a_p = sign * (a_min a_max with min<max)
      const int bu = (q < p) ? pair_index[q * n + p] : pair_index[p * n + q];
      const double bsign = (q < p) ? 1.0 : -1.0;
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
          if (r == s) continue;
          const int kv = (r < s) ? pair_index[r * n + s] : pair_index[s * n + r];
          const double ksign = (r < s) ? 1.0 : -1.0;
          two_rdm(p, q, r, s) = bsign * ksign * gram(bu, kv).real();
        }
      }
    }
  }
  return {one_rdm, two_rdm};
}

double particle_number(const Statevector& state) {
  double total = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    total += std::norm(state[i]) * std::popcount(i);
  }
  return total;
}

SectorEigenSolution ground_state_in_sector(const QubitOperator& op, int n_qubits,
                                           int n_particles) {
  if (n_qubits > 16) throw Error("sector diagonalization limited to 16 qubits");
  std::vector<std::uint64_t> basis;
  std::vector<int> position(std::size_t{1} << n_qubits, -1);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n_qubits); ++i) {
    if (std::popcount(i) == n_particles) {
      position[i] = static_cast<int>(basis.size());
      basis.push_back(i);
    }
  }
  const int dim = static_cast<int>(basis.size());
  if (dim == 0) throw Error("empty occupation sector");

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [p, coeff] : op.terms()) {
    for (int col = 0; col < dim; ++col) {
      const std::uint64_t i = basis[col];
      const std::uint64_t j = i ^ p.x;
      const int row = position[j];
      if (row < 0) {
        if (std::abs(coeff) > 1e-9) {
          throw Error("operator does not conserve particle number");
        }
        continue;
      }
      h(row, col) += coeff * pauli_phase(p, i);
    }
  }
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw Error("sector matrix is not Hermitian");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  SectorEigenSolution sol;
  sol.energy = es.eigenvalues()[0];
  sol.state = Statevector(n_qubits);
  for (int row = 0; row < dim; ++row) {
    sol.state[basis[row]] = es.eigenvectors()(row, 0);
  }
  return sol;
}

}  // namespace dmetgeo
