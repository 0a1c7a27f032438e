// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slf/sim.hpp"

namespace slf {

// η: remaining time once known, (ε/(1−ε))·elapsed before. Requires ε < 1 for unknown jobs.
Rat estimate(const JobState& s, const Rat& eps);

// All four throw std::invalid_argument on an empty active set.
Allocation slf_allocation(const std::vector<JobState>& states, const Rat& eps, const Rat& speed);
Allocation srpt_allocation(const std::vector<JobState>& states, const Rat& speed);
Allocation setf_allocation(const std::vector<JobState>& states, const Rat& speed);
Allocation rr_allocation(const std::vector<JobState>& states, const Rat& speed);

Allocation allocate(Policy p, const std::vector<JobState>& states, const Rat& eps, const Rat& speed);

// Trace checks on SLF schedules; each returns a description of the first violation.
std::optional<std::string> check_slf_argmin(const Schedule& sched);
std::optional<std::string> check_new_job_property(const Schedule& sched);
std::optional<std::string> check_known_blocks_property(const Schedule& sched);

}  // namespace slf
