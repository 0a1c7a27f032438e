// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slf/certifier.hpp"
#include "slf/sim.hpp"

namespace slf {

struct WaterFillingConfig {
  std::vector<Rat> x;
  std::vector<Rat> x_prime;
  std::vector<Rat> p;
};

// Throws InputError unless 0 ≤ x ⪯ x′ ⪯ p componentwise with equal lengths.
void validate_water_filling(const WaterFillingConfig& cfg);

// SETF runs on jars 1..n (ids 1..n) with initial levels x and x′ respectively.
std::pair<Schedule, Schedule> water_filling_trajectories(const WaterFillingConfig& cfg);

struct DominanceReport {
  bool holds = true;
  std::optional<Rat> witness_time;
  JobId witness_job = 0;
  std::string detail;
};

// e(t) ⪯ e′(t) at every event time of either trajectory.
DominanceReport water_filling_dominance(const WaterFillingConfig& cfg);

struct SetfiReport {
  bool pass = true;
  std::optional<Rat> witness_time;
  std::string detail;
  Schedule setf;
  Schedule setfi;
};

SetfiReport setfi_vs_setf(const Instance& inst, const IntervalSet& forbidden);

// Positive-measure stretches where SLF processes a known job.
IntervalSet known_work_intervals(const Schedule& slf);

struct ChainRow {
  Rat t;
  std::size_t setf_fast = 0;   // SETF on J at speed 1/(1−ε)
  std::size_t setf_scaled = 0;  // SETF on J′ at speed 1
  std::size_t setfi = 0;        // SETFI on J′ with the known-work intervals forbidden
  std::size_t slf = 0;          // SLF on J
};

struct ReductionReport {
  Rat epsilon;
  Rat delta;  // ε/(1−ε)
  IntervalSet forbidden;
  std::vector<CheckResult> checks;
  std::vector<ChainRow> rows;
  std::optional<Rat> witness_time;
  bool pass() const;
};

ReductionReport reduction_check(const Instance& inst, const Rat& eps);

// |SETF_{1+ε}(t)| ≤ (1+⌈1/ε⌉)·|SRPT(t)| at all event times; returns the first violating time.
std::optional<Rat> setf_speed_violation(const Instance& inst, const Rat& eps);

}  // namespace slf
