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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace bbdecomp {

enum class LadderKind { linear, dyadic, custom };

/// An energy-conserving pair exchange (j1, j2) <-> (j3, j4):
/// levels[j1] + levels[j2] == levels[j3] + levels[j4].
struct Quadruple {
  int j1;
  int j2;
  int j3;
  int j4;
};

struct EnergyLadder {
  std::vector<double> levels;  // strictly increasing, in units of h nu
  std::vector<Quadruple> quadruples;
};

/// Linear ladders use energies 1..J, dyadic ladders 2^0..2^(J-1) (these have
/// no conserving quadruples: dyadic sums are unique). Custom ladders take the
/// provided strictly increasing energies. Quadruples are enumerated
/// exhaustively and deduplicated up to the in-pair and pair-swap symmetries.
EnergyLadder build_ladder(LadderKind kind, std::size_t level_count,
                          std::span<const double> custom_levels = {});

/// Mean occupancies of the ladder levels, each in [0, 1].
struct OccupancyState {
  std::vector<double> n;
  double alpha = 0.0;  // chemical-potential-like parameter; 0 at equilibrium
};

struct RatePair {
  double forward;   // w n1 n2 (1 - n3)(1 - n4)
  double backward;  // w n3 n4 (1 - n1)(1 - n2)
};

/// Exchange rates of one quadruple; the transition probability w is the same
/// in both directions.
RatePair rates(const OccupancyState& state, const Quadruple& quad,
               double w = 1.0);

/// q_j = n_j / (1 - n_j); throws on n_j = 1.
std::vector<double> q_transform(const OccupancyState& state);

/// 1 / (exp(beta e_j) + 1) for every ladder level.
std::vector<double> fermi_occupancies(const EnergyLadder& ladder, double beta);

struct RelaxOptions {
  double tol = 1e-10;          // stop when the sup-norm step falls below this
  std::size_t max_iter = 100000;
  double step = 0.1;           // damping factor
  double reservoir_rate = 1.0; // thermal anchor strength
};

struct TracePoint {
  std::size_t iteration;
  double max_change;
  std::vector<double> occupancy;
};

struct RelaxResult {
  OccupancyState state;
  std::vector<TracePoint> trace;
  bool converged;
  std::size_t iterations;
  std::size_t productive_iterations;  // iterations that moved >= tol
};

/// Damped fixed-point iteration of the pair-exchange master equation.
///
/// Each sweep accumulates, per level, the gain and loss coefficients of every
/// conserving quadruple and applies the positivity-preserving update
/// n <- (n + s G) / (1 + s (G + L)), which keeps every iterate inside [0, 1].
/// A reservoir channel drives q_j toward exp(-beta e_j): on ladders with
/// quadruples it anchors the two lowest levels (exchange conserves both
/// number and energy, so one anchored level would leave a one-parameter
/// family of stationary states; two pin alpha = 0 and the slope, and pair
/// exchange propagates equilibrium to every other level). Ladders without
/// quadruples are anchored everywhere. The returned alpha is fitted from the
/// final state.
RelaxResult relax_to_equilibrium(const EnergyLadder& ladder, double beta,
                                 OccupancyState init,
                                 const RelaxOptions& options = {});

/// max over quadruples of |q_j1 q_j2 - q_j3 q_j4|; zero at equilibrium.
double verify_q_invariant(const OccupancyState& state,
                          const EnergyLadder& ladder);

/// Least-squares fit of ln q_j = -alpha - beta_fit e_j over the levels with
/// occupancy in (0, 1); returns alpha.
double fit_alpha(const OccupancyState& state, const EnergyLadder& ladder);

/// CSV export: iteration, max_change, then one occupancy column per level.
void write_trace_csv(std::span<const TracePoint> trace, std::ostream& out);

}  // namespace bbdecomp
