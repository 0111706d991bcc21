#pragma once

#include <functional>
#include <vector>

#include "dmetgeo/simulator.hpp"
#include "dmetgeo/types.hpp"

namespace dmetgeo {

struct OptimizerConfig {
  double learning_rate = 0.1;
  int max_iterations = 500;
  double gradient_tolerance = 1e-5;
  double energy_tolerance = 1e-9;
};

struct VqeResult {
  Vec theta;
  double energy = 0.0;
  Mat one_rdm;      // spin-orbital RDMs in the frame the Hamiltonian was given
  Tensor4 two_rdm;
  int iterations = 0;
  bool converged = false;
  std::vector<double> energy_trace;
};

/// Per accepted iteration: (iteration, energy, max-abs gradient).
using VqeTraceSink = std::function<void(int, double, double)>;

/// Gradient descent on <H> with backtracking halving of the step on energy
/// increase. Stops on gradient max-abs, energy change, or the iteration cap.
/// RDMs are measured once, at the final parameters.
VqeResult solve_fragment(const QubitOperator& hamiltonian, const UccsdAnsatz& ansatz,
                         const Vec& theta0, const OptimizerConfig& config,
                         const VqeTraceSink& trace = nullptr);

/// Previous solution's parameters if the ansatz shape still matches, zeros
/// otherwise (cold start).
Vec warm_start(const VqeResult* previous, int n_parameters);

}  // namespace dmetgeo
