#pragma once

// Electromagnetism-like optimizer for bounded continuous minimization.
//
// Each candidate solution is a charged particle. Charges are derived from
// relative fitness, particles attract toward better ones and repel from worse
// ones, and every particle except the current best moves a random fraction of
// the way toward a box face along its normalized resultant force.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "emocircles/kernels.hpp"
#include "emocircles/rng.hpp"

namespace emoc {

using Objective = std::function<double(std::span<const double>)>;

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  static Bounds cube(std::size_t dimension, double lo, double hi);

  std::size_t dimension() const { return lower.size(); }
  bool contains(std::span<const double> x) const;
  void clamp(std::span<double> x) const;

  // Throws ParameterError unless n >= 1 and lower[d] < upper[d] everywhere.
  void validate() const;
};

struct Particle {
  std::vector<double> position;
  double fitness = 0.0;
  double charge = 0.0;
};

enum class LocalSearchMode { None, BestOnly, All };

struct EmoParams {
  int population_size = 10;
  int max_iterations = 20;
  int local_search_iters = 2;
  double local_search_step = 3.0;
  LocalSearchMode local_search_mode = LocalSearchMode::BestOnly;
  std::uint64_t rng_seed = 0;
  // Stop as soon as the best fitness is <= this value.
  std::optional<double> fitness_threshold;
  // Where population evaluations run; results do not depend on it.
  Backend backend = Backend::Serial;

  void validate() const;
};

struct OptimizationResult {
  std::vector<double> best_position;
  double best_fitness = 0.0;
  int iterations_run = 0;
  // Best fitness after each iteration.
  std::vector<double> history;
  std::size_t evaluations = 0;
};

// Snapshot handed to an observer once per iteration.
struct IterationState {
  int iteration = 0;
  // Population after local search, carrying the charges used this iteration.
  std::span<const Particle> charged;
  std::span<const std::vector<double>> forces;
  std::size_t best_index = 0;
  // Population after movement and re-evaluation.
  std::span<const Particle> moved;
  std::span<const double> best_position;
  double best_fitness = 0.0;
};

using IterationObserver = std::function<void(const IterationState&)>;

// m particles drawn uniformly in the box. Fitness and charge are left at 0.
std::vector<Particle> initialize_population(const Bounds& bounds, int m, Rng& rng);

// q_p = exp(-n (f_p - f_best) / sum_h (f_h - f_best)). All charges are 1 when
// every fitness is equal.
std::vector<double> compute_charges(std::span<const double> fitnesses, std::size_t n);

// Coulomb-style superposition with attraction toward better particles and
// repulsion from worse or equal ones, normalized to unit length. A zero
// resultant stays zero; coincident pairs contribute nothing.
std::vector<std::vector<double>> compute_forces(std::span<const Particle> particles);

// Moves one particle with a given step length, dimension by dimension.
void move_particle(Particle& particle, std::span<const double> force, const Bounds& bounds,
                   double step_length);

// Moves every particle except `best_index`, drawing a fresh step length per
// particle.
void move_particles(std::span<Particle> particles, std::span<const std::vector<double>> forces,
                    std::size_t best_index, const Bounds& bounds, Rng& rng);

// Coordinate-wise random probing around the particle. The direction sign is
// drawn once per dimension, then `iters - 1` probes of length U(0,1)*delta are
// tried in that direction; a probe replaces the particle only when strictly
// better. Returns the number of objective evaluations.
std::size_t local_search(Particle& particle, const Objective& objective, double delta, int iters,
                         const Bounds& bounds, Rng& rng);

OptimizationResult optimize(const Objective& objective, const Bounds& bounds,
                            const EmoParams& params, const IterationObserver& observer = {});

}  // namespace emoc
