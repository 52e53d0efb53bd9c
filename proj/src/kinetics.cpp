// Copyright 2026 the bbdecomp authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bbdecomp/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "bbdecomp/io.hpp"

namespace bbdecomp {
namespace {

constexpr double kConservationTol = 1e-12;

void validate_levels(std::span<const double> levels) {
  if (levels.size() < 2) {
    throw std::invalid_argument("a ladder needs at least two levels");
  }
  for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
    if (!(levels[j] < levels[j + 1])) {
      throw std::invalid_argument("ladder energies must be strictly increasing");
    }
  }
}

std::vector<Quadruple> enumerate_quadruples(std::span<const double> levels) {
  std::vector<Quadruple> quads;
  const int count = static_cast<int>(levels.size());
  for (int j1 = 0; j1 < count; ++j1) {
    for (int j2 = j1; j2 < count; ++j2) {
      const double lhs = levels[j1] + levels[j2];
      // Pair-swap symmetry: keep only (j1,j2) < (j3,j4) lexicographically.
      for (int j3 = j1; j3 < count; ++j3) {
        for (int j4 = j3; j4 < count; ++j4) {
          if (j3 == j1 && j4 <= j2) continue;
          if (std::abs(lhs - (levels[j3] + levels[j4])) <= kConservationTol) {
            quads.push_back({j1, j2, j3, j4});
          }
        }
      }
    }
  }
  return quads;
}

void validate_state(const OccupancyState& state, const EnergyLadder& ladder) {
  if (state.n.size() != ladder.levels.size()) {
    throw std::invalid_argument("occupancy size does not match the ladder");
  }
  for (double n : state.n) {
    if (!(n >= 0.0) || !(n <= 1.0)) {
      throw std::invalid_argument("occupancies must lie in [0, 1]");
    }
  }
}

double max_rate_imbalance(const std::vector<double>& n,
                          const EnergyLadder& ladder) {
  double worst = 0.0;
  for (const Quadruple& quad : ladder.quadruples) {
    const double forward = n[quad.j1] * n[quad.j2] * (1.0 - n[quad.j3]) *
                           (1.0 - n[quad.j4]);
    const double backward = n[quad.j3] * n[quad.j4] * (1.0 - n[quad.j1]) *
                            (1.0 - n[quad.j2]);
    worst = std::max(worst, std::abs(forward - backward));
  }
  return worst;
}

}  // namespace

EnergyLadder build_ladder(LadderKind kind, std::size_t level_count,
                          std::span<const double> custom_levels) {
  EnergyLadder ladder;
  switch (kind) {
    case LadderKind::linear:
      for (std::size_t j = 0; j < level_count; ++j) {
        ladder.levels.push_back(static_cast<double>(j + 1));
      }
      break;
    case LadderKind::dyadic:
      if (level_count > 63) {
        throw std::invalid_argument("dyadic ladder limited to 63 levels");
      }
      for (std::size_t j = 0; j < level_count; ++j) {
        ladder.levels.push_back(std::ldexp(1.0, static_cast<int>(j)));
      }
      break;
    case LadderKind::custom:
      ladder.levels.assign(custom_levels.begin(), custom_levels.end());
      break;
  }
  validate_levels(ladder.levels);
  ladder.quadruples = enumerate_quadruples(ladder.levels);
  return ladder;
}

RatePair rates(const OccupancyState& state, const Quadruple& quad, double w) {
  const double n1 = state.n.at(quad.j1);
  const double n2 = state.n.at(quad.j2);
  const double n3 = state.n.at(quad.j3);
  const double n4 = state.n.at(quad.j4);
  return {w * n1 * n2 * (1.0 - n3) * (1.0 - n4),
          w * n3 * n4 * (1.0 - n1) * (1.0 - n2)};
}

std::vector<double> q_transform(const OccupancyState& state) {
  std::vector<double> q;
  q.reserve(state.n.size());
  for (double n : state.n) {
    if (n == 1.0) {
      throw std::domain_error("q transform is singular at full occupancy");
    }
    q.push_back(n / (1.0 - n));
  }
  return q;
}

std::vector<double> fermi_occupancies(const EnergyLadder& ladder, double beta) {
  std::vector<double> f;
  f.reserve(ladder.levels.size());
  for (double e : ladder.levels) {
    const double w = std::exp(-beta * e);
    f.push_back(w / (1.0 + w));
  }
  return f;
}

RelaxResult relax_to_equilibrium(const EnergyLadder& ladder, double beta,
                                 OccupancyState init,
                                 const RelaxOptions& options) {
  validate_state(init, ladder);
  if (!(beta > 0.0) || std::isinf(beta)) {
    throw std::invalid_argument("relaxation requires a finite positive beta");
  }
  if (!(options.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (!(options.step > 0.0) || !(options.step <= 1.0)) {
    throw std::invalid_argument("step must lie in (0, 1]");
  }
  for (double n : init.n) {
    if (!(n > 0.0) || !(n < 1.0)) {
      throw std::invalid_argument(
          "initial occupancies must lie strictly inside (0, 1)");
    }
  }

  const std::size_t level_count = ladder.levels.size();
  const std::vector<double> fermi = fermi_occupancies(ladder, beta);
  // Pair exchange conserves both excitation number and energy, leaving the
  // stationary family ln q_j = c + m e_j with two free constants. A reservoir
  // touching a single level pins one combination only (E - e_anchor N stays
  // conserved), so the bath must couple to two levels of different energy;
  // exchange alone then propagates equilibrium to the rest. Ladders without
  // exchanges need the anchor on every level.
  const bool anchor_everywhere = ladder.quadruples.empty();
  const std::size_t anchored =
      anchor_everywhere ? level_count : std::min<std::size_t>(2, level_count);

  std::vector<double> n = std::move(init.n);
  std::vector<double> next(level_count);
  std::vector<double> gain(level_count);
  std::vector<double> loss(level_count);

  RelaxResult result;
  result.converged = false;
  result.iterations = 0;
  result.productive_iterations = 0;
  result.trace.reserve(std::min<std::size_t>(options.max_iter, 4096));

  const double s = options.step;
  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    std::fill(gain.begin(), gain.end(), 0.0);
    std::fill(loss.begin(), loss.end(), 0.0);

    // Per-level gain/loss coefficients with the level's own occupancy
    // factored out; the update below then stays inside [0, 1] for any step.
    for (const Quadruple& quad : ladder.quadruples) {
      const double n1 = n[quad.j1];
      const double n2 = n[quad.j2];
      const double n3 = n[quad.j3];
      const double n4 = n[quad.j4];
      const double hole34 = (1.0 - n3) * (1.0 - n4);
      const double hole12 = (1.0 - n1) * (1.0 - n2);
      if (quad.j1 == quad.j2) {
        loss[quad.j1] += 2.0 * n1 * hole34;
        gain[quad.j1] += 2.0 * n3 * n4 * (1.0 - n1);
      } else {
        loss[quad.j1] += n2 * hole34;
        loss[quad.j2] += n1 * hole34;
        gain[quad.j1] += n3 * n4 * (1.0 - n2);
        gain[quad.j2] += n3 * n4 * (1.0 - n1);
      }
      if (quad.j3 == quad.j4) {
        loss[quad.j3] += 2.0 * n3 * hole12;
        gain[quad.j3] += 2.0 * n1 * n2 * (1.0 - n3);
      } else {
        loss[quad.j3] += n4 * hole12;
        loss[quad.j4] += n3 * hole12;
        gain[quad.j3] += n1 * n2 * (1.0 - n4);
        gain[quad.j4] += n1 * n2 * (1.0 - n3);
      }
    }
    for (std::size_t j = 0; j < anchored; ++j) {
      gain[j] += options.reservoir_rate * fermi[j];
      loss[j] += options.reservoir_rate * (1.0 - fermi[j]);
    }

    double change = 0.0;
    for (std::size_t j = 0; j < level_count; ++j) {
      next[j] = (n[j] + s * gain[j]) / (1.0 + s * (gain[j] + loss[j]));
      change = std::max(change, std::abs(next[j] - n[j]));
    }
    n.swap(next);
    result.iterations = iter;
    result.trace.push_back({iter, change, n});
    // Converged once the step is below tol and every exchange balances to
    // within 10 tol (the step criterion alone can leave a residual imbalance
    // proportional to the slowest contraction mode).
    const bool settled = change < options.tol;
    if (settled && max_rate_imbalance(n, ladder) <= 10.0 * options.tol) {
      result.converged = true;
      break;
    }
    if (!settled) ++result.productive_iterations;
  }

  result.state.n = std::move(n);
  try {
    result.state.alpha = fit_alpha(result.state, ladder);
  } catch (const std::domain_error&) {
    result.state.alpha = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

double verify_q_invariant(const OccupancyState& state,
                          const EnergyLadder& ladder) {
  validate_state(state, ladder);
  const std::vector<double> q = q_transform(state);
  double worst = 0.0;
  for (const Quadruple& quad : ladder.quadruples) {
    worst = std::max(worst,
                     std::abs(q[quad.j1] * q[quad.j2] - q[quad.j3] * q[quad.j4]));
  }
  return worst;
}

double fit_alpha(const OccupancyState& state, const EnergyLadder& ladder) {
  if (state.n.size() != ladder.levels.size()) {
    throw std::invalid_argument("occupancy size does not match the ladder");
  }
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t j = 0; j < state.n.size(); ++j) {
    const double n = state.n[j];
    if (!(n > 0.0) || !(n < 1.0)) continue;
    const double x = ladder.levels[j];
    const double y = std::log(n / (1.0 - n));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) {
    throw std::domain_error("alpha fit needs at least two interior occupancies");
  }
  const double m = static_cast<double>(count);
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  return -intercept;
}

void write_trace_csv(std::span<const TracePoint> trace, std::ostream& out) {
  if (trace.empty()) {
    out << "iteration,max_change\n";
    return;
  }
  out << "iteration,max_change";
  for (std::size_t j = 0; j < trace.front().occupancy.size(); ++j) {
    out << ",n_" << j;
  }
  out << '\n';
  for (const TracePoint& point : trace) {
    out << point.iteration << ',' << format_double(point.max_change);
    for (double n : point.occupancy) out << ',' << format_double(n);
    out << '\n';
  }
}

}  // namespace bbdecomp
