// SPDX-License-Identifier: Apache-2.0
#include "slf/assignment.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace slf {

void WeightedBipartiteGraph::add(JobId l, JobId r, const Rat& w) {
  if (sgn(w) == 0) return;
  if (std::find(left.begin(), left.end(), l) == left.end()) left.push_back(l);
  if (std::find(right.begin(), right.end(), r) == right.end()) right.push_back(r);
  auto [it, fresh] = edges.try_emplace({l, r}, w);
  if (!fresh) it->second += w;
  if (sgn(it->second) < 0) throw std::invalid_argument("negative edge weight");
  if (sgn(it->second) == 0) edges.erase(it);
}

Rat WeightedBipartiteGraph::vol(JobId l) const {
  Rat s = 0;
  for (auto it = edges.lower_bound({l, INT64_MIN}); it != edges.end() && it->first.first == l; ++it)
    s += it->second;
  return s;
}

Rat WeightedBipartiteGraph::vol_star(JobId r) const {
  Rat s = 0;
  for (const auto& [k, w] : edges)
    if (k.second == r) s += w;
  return s;
}

Rat WeightedBipartiteGraph::total() const {
  Rat s = 0;
  for (const auto& [k, w] : edges) s += w;
  return s;
}

std::map<JobId, Rat> WeightedBipartiteGraph::left_volumes() const {
  std::map<JobId, Rat> v;
  for (JobId l : left) v[l] = 0;
  for (const auto& [k, w] : edges) v[k.first] += w;
  return v;
}

std::map<JobId, Rat> WeightedBipartiteGraph::right_volumes() const {
  std::map<JobId, Rat> v;
  for (JobId r : right) v[r] = 0;
  for (const auto& [k, w] : edges) v[k.second] += w;
  return v;
}

namespace {

std::vector<JobId> by_volume(const std::map<JobId, Rat>& vol, TieBreak ties = TieBreak::id_ascending) {
  std::vector<JobId> ids;
  for (const auto& [id, v] : vol)
    if (sgn(v) > 0) ids.push_back(id);
  std::stable_sort(ids.begin(), ids.end(), [&](JobId a, JobId b) {
    const Rat& va = vol.at(a);
    const Rat& vb = vol.at(b);
    if (va != vb) return va > vb;
    return ties == TieBreak::id_ascending ? a < b : a > b;
  });
  return ids;
}

std::unordered_map<JobId, std::size_t> positions(const std::vector<JobId>& order) {
  std::unordered_map<JobId, std::size_t> pos;
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
  return pos;
}

struct PlacedEdge {
  std::size_t pl, pr;
  JobId l, r;
  Rat w;
};

std::vector<PlacedEdge> placed_edges(const Graph& h) {
  auto pl = positions(h.left);
  auto pr = positions(h.right);
  std::vector<PlacedEdge> out;
  out.reserve(h.edges.size());
  for (const auto& [k, w] : h.edges) {
    auto a = pl.find(k.first);
    auto b = pr.find(k.second);
    if (a == pl.end() || b == pr.end()) throw std::logic_error("edge endpoint missing from vertex order");
    out.push_back({a->second, b->second, k.first, k.second, w});
  }
  return out;
}

std::vector<JobId> restrict_order(const std::vector<JobId>& order, const std::set<JobId>& keep) {
  std::vector<JobId> out;
  for (JobId id : order)
    if (keep.count(id)) out.push_back(id);
  return out;
}

Graph with_edges(const Graph& proto, const std::vector<PlacedEdge>& es) {
  Graph g;
  std::set<JobId> ls, rs;
  for (const auto& e : es) {
    if (sgn(e.w) == 0) continue;
    g.edges[{e.l, e.r}] += e.w;
    ls.insert(e.l);
    rs.insert(e.r);
  }
  g.left = restrict_order(proto.left, ls);
  g.right = restrict_order(proto.right, rs);
  return g;
}

}  // namespace

Graph remove_isolated(Graph h) {
  auto lv = h.left_volumes();
  auto rv = h.right_volumes();
  std::erase_if(h.left, [&](JobId id) { return sgn(lv[id]) == 0; });
  std::erase_if(h.right, [&](JobId id) { return sgn(rv[id]) == 0; });
  return h;
}

Graph default_ordered(Graph h, TieBreak ties) {
  h.left = by_volume(h.left_volumes(), ties);
  h.right = by_volume(h.right_volumes(), ties);
  return h;
}

namespace {

// The attached right order is used when it lists exactly the non-isolated right
// vertices by non-increasing volume; only the order among ties can then differ.
bool right_order_usable(const Graph& h) {
  auto rv = h.right_volumes();
  std::size_t live = 0;
  for (const auto& [id, v] : rv) live += sgn(v) > 0;
  if (h.right.size() != live) return false;
  std::set<JobId> seen;
  for (std::size_t k = 0; k < h.right.size(); ++k) {
    const Rat& v = rv[h.right[k]];
    if (sgn(v) <= 0 || !seen.insert(h.right[k]).second) return false;
    if (k > 0 && rv[h.right[k - 1]] < v) return false;
  }
  return true;
}

}  // namespace

Rat prefix_expansion(const Graph& h) {
  Graph g = right_order_usable(h) ? h : default_ordered(h);
  if (g.right.empty()) return 0;
  std::unordered_map<JobId, std::vector<JobId>> nbr;
  for (const auto& [k, w] : g.edges) nbr[k.second].push_back(k.first);
  std::set<JobId> seen;
  Rat best = 0;
  for (std::size_t k = 0; k < g.right.size(); ++k) {
    for (JobId l : nbr[g.right[k]]) seen.insert(l);
    Rat ratio(static_cast<long>(seen.size()), static_cast<long>(k + 1));
    ratio.canonicalize();
    if (ratio > best) best = ratio;
  }
  return best;
}

AssignmentChecked check_assignment(const Graph& h, const Rat& eps) {
  AssignmentChecked out;
  out.graph = h;
  out.phi = prefix_expansion(h);
  out.valid = out.phi <= Rat(ceil_inverse(eps));
  return out;
}

Graph canonical_assignment(const std::vector<std::pair<JobId, Rat>>& slf,
                           const std::vector<std::pair<JobId, Rat>>& opt, TieBreak ties) {
  std::map<JobId, Rat> lv, rv;
  Rat sl = 0, sr = 0;
  for (const auto& [id, r] : slf) {
    lv[id] = r;
    sl += r;
  }
  for (const auto& [id, r] : opt) {
    rv[id] = r;
    sr += r;
  }
  if (sl != sr)
    throw std::invalid_argument("canonical assignment: totals differ (" + to_string(sl) + " vs " +
                                to_string(sr) + ")");
  auto left = by_volume(lv, ties);
  auto right = by_volume(rv, ties);
  Graph g;
  g.left = left;
  g.right = right;
  std::size_t p = 0;
  Rat residual = left.empty() ? Rat(0) : lv[left[0]];
  for (JobId r : right) {
    Rat need = rv[r];
    while (sgn(need) > 0) {
      if (p >= left.size()) throw std::logic_error("canonical assignment ran out of SLF volume");
      const Rat& take = min_rat(need, residual);
      Rat amount = take;
      g.edges[{left[p], r}] += amount;
      need -= amount;
      residual -= amount;
      if (sgn(residual) == 0 && ++p < left.size()) residual = lv[left[p]];
    }
  }
  return g;
}

Graph assignment_from_states(const std::map<JobId, JobState>& slf, const std::map<JobId, JobState>& opt,
                             TieBreak ties) {
  std::vector<std::pair<JobId, Rat>> a, b;
  for (const auto& [id, s] : slf) a.emplace_back(id, s.remaining);
  for (const auto& [id, s] : opt) b.emplace_back(id, s.remaining);
  return canonical_assignment(a, b, ties);
}

Graph greedy_matching(const std::vector<JobId>& a, const std::vector<JobId>& a_star,
                      const std::map<JobId, Rat>& c, const std::map<JobId, Rat>& c_star) {
  Rat sa = 0, sb = 0;
  for (JobId id : a) sa += c.at(id);
  for (JobId id : a_star) sb += c_star.at(id);
  if (sa != sb)
    throw std::invalid_argument("greedy_matching: c(A) = " + to_string(sa) + " but c*(A*) = " + to_string(sb));
  std::vector<Rat> res;
  res.reserve(a.size());
  for (JobId id : a) res.push_back(c.at(id));
  Graph g;
  g.left = a;
  g.right = a_star;
  // residual-positive elements of A always form a prefix; `end` is one past its last element
  std::size_t end = a.size();
  while (end > 0 && sgn(res[end - 1]) == 0) --end;
  for (JobId u : a_star) {
    Rat need = c_star.at(u);
    if (sgn(need) == 0) continue;
    // smallest suffix of the residual prefix with total ≥ need
    Rat acc = 0;
    std::size_t front = end;
    while (acc < need) {
      if (front == 0) throw std::logic_error("greedy_matching: residual exhausted");
      --front;
      acc += res[front];
    }
    for (std::size_t k = front + 1; k < end; ++k) {
      g.edges[{a[k], u}] += res[k];
      res[k] = 0;
    }
    Rat rest = need - (acc - res[front]);
    if (sgn(rest) > 0) g.edges[{a[front], u}] += rest;
    res[front] -= rest;
    end = front + 1;
    while (end > 0 && sgn(res[end - 1]) == 0) --end;
  }
  return g;
}

std::pair<Graph, Graph> split(const Graph& h, const Rat& beta) {
  Rat vol = h.total();
  if (sgn(beta) < 0 || beta > vol)
    throw std::invalid_argument("split: beta " + to_string(beta) + " outside [0," + to_string(vol) + "]");
  if (!is_forward(h)) throw std::invalid_argument("split: graph is not forward");
  auto es = placed_edges(h);
  std::sort(es.begin(), es.end(), [](const PlacedEdge& x, const PlacedEdge& y) {
    if (x.pl != y.pl) return x.pl < y.pl;
    return x.pr < y.pr;
  });
  std::vector<PlacedEdge> pre, suf;
  Rat acc = 0;
  std::size_t k = es.size();
  while (k > 0 && acc < beta) {
    --k;
    Rat take = min_rat(es[k].w, Rat(beta - acc));
    acc += take;
    PlacedEdge part = es[k];
    part.w = take;
    suf.push_back(part);
    if (take < es[k].w) {
      PlacedEdge rest = es[k];
      rest.w = es[k].w - take;
      pre.push_back(rest);
    }
  }
  for (std::size_t m = 0; m < k; ++m) pre.push_back(es[m]);
  return {with_edges(h, pre), with_edges(h, suf)};
}

Graph merge(const Graph& h1, const Graph& h2, const std::map<JobId, Rat>* right_key) {
  std::map<JobId, Rat> c, cs;
  for (const Graph* h : {&h1, &h2}) {
    for (const auto& [id, v] : h->left_volumes()) {
      if (sgn(v) == 0) continue;
      if (c.count(id)) throw std::invalid_argument("merge: left vertex sets overlap");
      c[id] = v;
    }
    for (const auto& [id, v] : h->right_volumes()) {
      if (sgn(v) == 0) continue;
      if (cs.count(id)) throw std::invalid_argument("merge: right vertex sets overlap");
      cs[id] = v;
    }
  }
  std::vector<JobId> a, as;
  for (const auto& [id, v] : c) a.push_back(id);
  for (const auto& [id, v] : cs) as.push_back(id);
  std::stable_sort(a.begin(), a.end(), [&](JobId x, JobId y) {
    if (c[x] != c[y]) return c[x] < c[y];
    return x < y;
  });
  if (right_key) {
    for (JobId id : as)
      if (!right_key->count(id)) throw std::invalid_argument("merge: no ordering key for right vertex");
    std::stable_sort(as.begin(), as.end(), [&](JobId x, JobId y) {
      const Rat& kx = right_key->at(x);
      const Rat& ky = right_key->at(y);
      if (kx != ky) return kx > ky;
      return x > y;
    });
  } else {
    std::stable_sort(as.begin(), as.end(), [&](JobId x, JobId y) {
      if (cs[x] != cs[y]) return cs[x] > cs[y];
      return x < y;
    });
  }
  Graph g = greedy_matching(a, as, c, cs);
  std::reverse(g.left.begin(), g.left.end());
  return g;
}

std::vector<JobId> min_suffix(const Graph& h, const Rat& beta) {
  Rat vol = h.total();
  if (sgn(beta) < 0 || beta > vol) throw std::invalid_argument("min_suffix: beta out of range");
  auto lv = h.left_volumes();
  std::vector<JobId> out;
  Rat acc = 0;
  for (auto it = h.left.rbegin(); it != h.left.rend() && acc < beta; ++it) {
    acc += lv[*it];
    out.push_back(*it);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool is_forward(const Graph& h) {
  auto es = placed_edges(h);
  std::sort(es.begin(), es.end(), [](const PlacedEdge& x, const PlacedEdge& y) {
    if (x.pl != y.pl) return x.pl < y.pl;
    return x.pr < y.pr;
  });
  for (std::size_t k = 1; k < es.size(); ++k)
    if (es[k].pr < es[k - 1].pr) return false;
  return true;
}

bool is_backward(const Graph& h) {
  auto es = placed_edges(h);
  std::sort(es.begin(), es.end(), [](const PlacedEdge& x, const PlacedEdge& y) {
    if (x.pl != y.pl) return x.pl < y.pl;
    return x.pr > y.pr;
  });
  for (std::size_t k = 1; k < es.size(); ++k)
    if (es[k].pr > es[k - 1].pr) return false;
  return true;
}

Graph graph_union(const Graph& h1, const Graph& h2, TieBreak ties) {
  Graph g;
  for (const Graph* h : {&h1, &h2})
    for (const auto& [k, w] : h->edges) g.add(k.first, k.second, w);
  return default_ordered(std::move(g), ties);
}

}  // namespace slf
