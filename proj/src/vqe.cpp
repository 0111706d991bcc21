#include "dmetgeo/vqe.hpp"

#include <cmath>

#include "dmetgeo/errors.hpp"

namespace dmetgeo {

VqeResult solve_fragment(const QubitOperator& hamiltonian, const UccsdAnsatz& ansatz,
                         const Vec& theta0, const OptimizerConfig& config,
                         const VqeTraceSink& trace) {
  if (!hamiltonian.is_hermitian()) throw Error("VQE requires a Hermitian Hamiltonian");
  if (theta0.size() != ansatz.n_parameters()) throw Error("theta0 length mismatch");

  const Statevector reference = prepare_reference(ansatz.n_qubits, ansatz.n_occ_spin);
  auto energy_at = [&](const Vec& t) {
    return expectation(apply_uccsd(ansatz, t, reference), hamiltonian);
  };

  VqeResult res;
  res.theta = theta0;
  const double reference_energy = expectation(reference, hamiltonian);
  double energy = energy_at(res.theta);

  for (int it = 0; it < config.max_iterations; ++it) {
    const Vec grad = parameter_shift_gradient(ansatz, res.theta, hamiltonian);
    const double gnorm = grad.size() ? grad.cwiseAbs().maxCoeff() : 0.0;
    if (gnorm < config.gradient_tolerance) {
      res.converged = true;
      break;
    }

    double eta = config.learning_rate;
    Vec theta_new;
    double energy_new = energy;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving) {
      theta_new = res.theta - eta * grad;
      energy_new = energy_at(theta_new);
      if (energy_new <= energy) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) {
      res.converged = true;  // no descent direction left at machine scale
      break;
    }

    res.theta = theta_new;
    const double change = energy - energy_new;
    energy = energy_new;
    res.iterations = it + 1;
    res.energy_trace.push_back(energy);
    if (trace) trace(res.iterations, energy, gnorm);

    if (energy > reference_energy + 1.0) {
      throw OptimizerFailureError("VQE energy rose more than 1 Ha above the reference state");
    }
    if (change < config.energy_tolerance) {
      res.converged = true;
      break;
    }
  }

  res.energy = energy;
  auto [d, p] = measure_rdms(apply_uccsd(ansatz, res.theta, reference), ansatz.n_qubits);
  res.one_rdm = std::move(d);
  res.two_rdm = std::move(p);
  return res;
}

Vec warm_start(const VqeResult* previous, int n_parameters) {
  if (previous && previous->theta.size() == n_parameters) return previous->theta;
  return Vec::Zero(n_parameters);
}

}  // namespace dmetgeo
