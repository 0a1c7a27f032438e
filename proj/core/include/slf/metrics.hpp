// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "slf/sim.hpp"

namespace slf {

struct CountRow {
  Rat t;
  std::size_t alg = 0;
  std::size_t opt = 0;
};

struct CompetitivenessReport {
  Rat rho;
  Rat max_count_ratio;  // max |ALG|/|OPT| over times with |OPT| > 0
  std::optional<Rat> witness_time;  // first violation, if any
  bool pass = true;
  std::vector<CountRow> table;
};

// Throws std::invalid_argument when a job never completes.
Rat total_flow_time(const Schedule& sched, const Instance& inst);
// ∫|A(t)|dt computed from the segments' boundaries.
Rat integrated_active_count(const Schedule& sched);

CompetitivenessReport local_competitiveness(const Schedule& alg, const Schedule& opt, const Rat& rho);

// Number of active jobs with remaining ≥ threshold at t.
std::size_t delta_at(const Schedule& sched, const Rat& t, const Rat& threshold);
// Breakpoints (t, count) of the right-continuous step function, including threshold crossings.
std::vector<std::pair<Rat, std::size_t>> delta_profile(const Schedule& sched, const Instance& inst,
                                                       const Rat& threshold);

Rat competitive_ratio(const Schedule& alg, const Schedule& opt, const Instance& inst);

}  // namespace slf
