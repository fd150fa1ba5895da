#include "emocircles/emo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "emocircles/error.hpp"

namespace emoc {
namespace {

std::string describe(std::span<const double> x) {
  std::ostringstream out;
  out.precision(17);
  out << '(';
  for (std::size_t d = 0; d < x.size(); ++d) out << (d ? ", " : "") << x[d];
  out << ')';
  return out.str();
}

double checked(double value, std::span<const double> x) {
  if (!std::isfinite(value)) {
    throw EvaluationError("objective returned a non-finite value at " + describe(x));
  }
  return value;
}

std::size_t argmin_fitness(std::span<const Particle> particles) {
  std::size_t best = 0;
  for (std::size_t p = 1; p < particles.size(); ++p) {
    if (particles[p].fitness < particles[best].fitness) best = p;
  }
  return best;
}

// Population evaluation goes through the kernel so that it can run in
// parallel; the fitness values are identical either way.
std::size_t evaluate(std::span<Particle> particles, const Objective& objective, Backend backend,
                     std::span<const std::size_t> which) {
  std::vector<std::vector<double>> positions;
  positions.reserve(which.size());
  for (std::size_t p : which) positions.push_back(particles[p].position);
  std::vector<double> values(which.size());
  kernels::evaluate_batch(backend, objective, positions, values);
  for (std::size_t q = 0; q < which.size(); ++q) {
    particles[which[q]].fitness = checked(values[q], positions[q]);
  }
  return which.size();
}

}  // namespace

Bounds Bounds::cube(std::size_t dimension, double lo, double hi) {
  return Bounds{std::vector<double>(dimension, lo), std::vector<double>(dimension, hi)};
}

bool Bounds::contains(std::span<const double> x) const {
  if (x.size() != dimension()) return false;
  for (std::size_t d = 0; d < x.size(); ++d) {
    if (!(x[d] >= lower[d] && x[d] <= upper[d])) return false;
  }
  return true;
}

void Bounds::clamp(std::span<double> x) const {
  for (std::size_t d = 0; d < x.size(); ++d) x[d] = std::clamp(x[d], lower[d], upper[d]);
}

void Bounds::validate() const {
  if (lower.empty()) throw ParameterError("bounds must have at least one dimension");
  if (lower.size() != upper.size()) throw ParameterError("lower and upper bounds differ in length");
  for (std::size_t d = 0; d < lower.size(); ++d) {
    if (!std::isfinite(lower[d]) || !std::isfinite(upper[d]) || !(lower[d] < upper[d])) {
      throw ParameterError("bounds require lower < upper in dimension " + std::to_string(d));
    }
  }
}

void EmoParams::validate() const {
  if (population_size < 2) throw ParameterError("population_size must be at least 2");
  if (max_iterations < 1) throw ParameterError("max_iterations must be at least 1");
  if (local_search_iters < 0) throw ParameterError("local_search_iters must be non-negative");
  if (!(local_search_step > 0.0) || !std::isfinite(local_search_step)) {
    throw ParameterError("local_search_step must be positive");
  }
  if (fitness_threshold && !std::isfinite(*fitness_threshold)) {
    throw ParameterError("fitness_threshold must be finite");
  }
}

std::vector<Particle> initialize_population(const Bounds& bounds, int m, Rng& rng) {
  bounds.validate();
  if (m < 2) throw ParameterError("population size must be at least 2");
  std::vector<Particle> population(static_cast<std::size_t>(m));
  for (auto& particle : population) {
    particle.position.resize(bounds.dimension());
    for (std::size_t d = 0; d < bounds.dimension(); ++d) {
      particle.position[d] = rng.uniform(bounds.lower[d], bounds.upper[d]);
    }
  }
  return population;
}

std::vector<double> compute_charges(std::span<const double> fitnesses, std::size_t n) {
  if (fitnesses.empty()) throw ParameterError("cannot charge an empty population");
  if (n == 0) throw ParameterError("dimension must be at least 1");
  const double best = *std::min_element(fitnesses.begin(), fitnesses.end());
  double spread = 0.0;
  for (double f : fitnesses) spread += f - best;

  std::vector<double> charges(fitnesses.size(), 1.0);
  if (!(spread > 0.0)) return charges;
  for (std::size_t p = 0; p < fitnesses.size(); ++p) {
    charges[p] = std::exp(-static_cast<double>(n) * (fitnesses[p] - best) / spread);
  }
  return charges;
}

std::vector<std::vector<double>> compute_forces(std::span<const Particle> particles) {
  if (particles.size() < 2) throw ParameterError("forces need at least two particles");
  const std::size_t n = particles.front().position.size();
  std::vector<std::vector<double>> forces(particles.size(), std::vector<double>(n, 0.0));
  std::vector<double> diff(n);

  for (std::size_t p = 0; p < particles.size(); ++p) {
    const Particle& self = particles[p];
    auto& force = forces[p];
    for (std::size_t h = 0; h < particles.size(); ++h) {
      if (h == p) continue;
      const Particle& other = particles[h];
      double dist2 = 0.0;
      for (std::size_t d = 0; d < n; ++d) {
        diff[d] = other.position[d] - self.position[d];
        dist2 += diff[d] * diff[d];
      }
      if (dist2 == 0.0) continue;
      // Attraction toward better particles, repulsion from the rest.
      const double sign = other.fitness < self.fitness ? 1.0 : -1.0;
      const double scale = sign * self.charge * other.charge / dist2;
      for (std::size_t d = 0; d < n; ++d) force[d] += diff[d] * scale;
    }
    double norm2 = 0.0;
    for (double v : force) norm2 += v * v;
    const double norm = std::sqrt(norm2);
    if (norm > 0.0 && std::isfinite(norm)) {
      for (double& v : force) v /= norm;
    }
  }
  return forces;
}

void move_particle(Particle& particle, std::span<const double> force, const Bounds& bounds,
                   double step_length) {
  auto& x = particle.position;
  for (std::size_t d = 0; d < x.size(); ++d) {
    if (force[d] > 0.0) {
      x[d] += step_length * force[d] * (bounds.upper[d] - x[d]);
    } else {
      x[d] += step_length * force[d] * (x[d] - bounds.lower[d]);
    }
  }
  bounds.clamp(x);
}

void move_particles(std::span<Particle> particles, std::span<const std::vector<double>> forces,
                    std::size_t best_index, const Bounds& bounds, Rng& rng) {
  for (std::size_t p = 0; p < particles.size(); ++p) {
    if (p == best_index) continue;
    move_particle(particles[p], forces[p], bounds, rng.uniform());
  }
}

std::size_t local_search(Particle& particle, const Objective& objective, double delta, int iters,
                         const Bounds& bounds, Rng& rng) {
  std::size_t evaluations = 0;
  std::vector<double> probe;
  for (std::size_t d = 0; d < particle.position.size(); ++d) {
    const double direction = rng.uniform() > 0.5 ? 1.0 : -1.0;
    for (int counter = 1; counter < iters; ++counter) {
      probe = particle.position;
      probe[d] += direction * rng.uniform() * delta;
      bounds.clamp(probe);
      const double value = checked(objective(probe), probe);
      ++evaluations;
      if (value < particle.fitness) {
        particle.position = probe;
        particle.fitness = value;
      }
    }
  }
  return evaluations;
}

OptimizationResult optimize(const Objective& objective, const Bounds& bounds,
                            const EmoParams& params, const IterationObserver& observer) {
  bounds.validate();
  params.validate();
  Rng rng(params.rng_seed);
  const std::size_t n = bounds.dimension();

  std::vector<Particle> population = initialize_population(bounds, params.population_size, rng);
  std::vector<std::size_t> everyone(population.size());
  for (std::size_t p = 0; p < everyone.size(); ++p) everyone[p] = p;

  OptimizationResult result;
  result.evaluations += evaluate(population, objective, params.backend, everyone);
  std::size_t best = argmin_fitness(population);
  result.best_position = population[best].position;
  result.best_fitness = population[best].fitness;

  std::vector<Particle> charged;
  std::vector<double> fitnesses(population.size());
  std::vector<std::size_t> movers;
  movers.reserve(population.size());

  for (int iteration = 0; iteration < params.max_iterations; ++iteration) {
    switch (params.local_search_mode) {
      case LocalSearchMode::None:
        break;
      case LocalSearchMode::BestOnly:
        result.evaluations += local_search(population[best], objective, params.local_search_step,
                                           params.local_search_iters, bounds, rng);
        break;
      case LocalSearchMode::All:
        for (auto& particle : population) {
          result.evaluations += local_search(particle, objective, params.local_search_step,
                                             params.local_search_iters, bounds, rng);
        }
        break;
    }
    best = argmin_fitness(population);

    for (std::size_t p = 0; p < population.size(); ++p) fitnesses[p] = population[p].fitness;
    const std::vector<double> charges = compute_charges(fitnesses, n);
    for (std::size_t p = 0; p < population.size(); ++p) population[p].charge = charges[p];
    const auto forces = compute_forces(population);
    if (observer) charged = population;

    move_particles(population, forces, best, bounds, rng);
    movers.clear();
    for (std::size_t p = 0; p < population.size(); ++p) {
      if (p != best) movers.push_back(p);
    }
    result.evaluations += evaluate(population, objective, params.backend, movers);

    // The unmoved best keeps its fitness, so the population minimum never
    // gets worse; only strict improvements replace the incumbent.
    const std::size_t leader = argmin_fitness(population);
    if (population[leader].fitness < result.best_fitness) {
      result.best_fitness = population[leader].fitness;
      result.best_position = population[leader].position;
    }
    result.history.push_back(result.best_fitness);
    result.iterations_run = iteration + 1;

    if (observer) {
      observer(IterationState{iteration, charged, forces, best, population, result.best_position,
                              result.best_fitness});
    }
    best = leader;
    if (params.fitness_threshold && result.best_fitness <= *params.fitness_threshold) break;
  }
  return result;
}

}  // namespace emoc
