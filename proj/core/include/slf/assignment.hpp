// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "slf/sim.hpp"

namespace slf {

// Fractional matching between an SLF queue (left) and an OPT queue (right).
// Orders are attached explicitly; vertices without edges may be listed but count as isolated.
struct WeightedBipartiteGraph {
  std::vector<JobId> left;
  std::vector<JobId> right;
  std::map<std::pair<JobId, JobId>, Rat> edges;  // (left, right) -> weight > 0

  void add(JobId l, JobId r, const Rat& w);
  Rat vol(JobId l) const;
  Rat vol_star(JobId r) const;
  Rat total() const;
  std::map<JobId, Rat> left_volumes() const;
  std::map<JobId, Rat> right_volumes() const;
  bool empty() const { return edges.empty(); }

  friend bool operator==(const WeightedBipartiteGraph&, const WeightedBipartiteGraph&) = default;
};

using Graph = WeightedBipartiteGraph;

// Order among equal volumes. run_order puts the lowest id last, i.e. the job SRPT and SLF would run next.
enum class TieBreak { id_ascending, run_order };

struct AssignmentChecked {
  Graph graph;
  Rat phi;
  bool valid = false;
};

// Drops zero-volume vertices from both orders.
Graph remove_isolated(Graph h);
// Both sides re-ordered by non-increasing volume, ties by ascending id.
Graph default_ordered(Graph h, TieBreak ties = TieBreak::id_ascending);

// Uses the attached right order when it is a valid queue order, else the default one.
Rat prefix_expansion(const Graph& h);
AssignmentChecked check_assignment(const Graph& h, const Rat& eps);

// Canonical largest-to-largest assignment between remaining times.
// Throws std::invalid_argument if the totals differ.
Graph assignment_from_states(const std::map<JobId, JobState>& slf, const std::map<JobId, JobState>& opt,
                             TieBreak ties = TieBreak::id_ascending);
Graph canonical_assignment(const std::vector<std::pair<JobId, Rat>>& slf,
                           const std::vector<std::pair<JobId, Rat>>& opt,
                           TieBreak ties = TieBreak::id_ascending);

Graph greedy_matching(const std::vector<JobId>& a, const std::vector<JobId>& a_star,
                      const std::map<JobId, Rat>& c, const std::map<JobId, Rat>& c_star);

// (prefix part, suffix part) with vol(suffix) = beta.
std::pair<Graph, Graph> split(const Graph& h, const Rat& beta);
// right_key, when given, replaces the right volumes as the (non-increasing) right ordering.
Graph merge(const Graph& h1, const Graph& h2, const std::map<JobId, Rat>* right_key = nullptr);
std::vector<JobId> min_suffix(const Graph& h, const Rat& beta);

bool is_forward(const Graph& h);
bool is_backward(const Graph& h);

Graph graph_union(const Graph& h1, const Graph& h2, TieBreak ties = TieBreak::id_ascending);

}  // namespace slf
