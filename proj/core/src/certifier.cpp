// SPDX-License-Identifier: Apache-2.0
#include "slf/certifier.hpp"

#include <algorithm>
#include <sstream>

namespace slf {

namespace {

struct Ctx {
  Instance inst;
  Schedule slf;
  Schedule opt;

  explicit Ctx(Instance i)
      : inst(std::move(i)), slf(simulate(inst, Policy::slf)), opt(simulate(inst, Policy::srpt)) {}
};

[[noreturn]] void fail(const std::string& check, const std::string& detail, const Rat& s) {
  CounterexampleReport r;
  r.check = check;
  r.detail = detail;
  r.s = s;
  throw CertificationFailure(std::move(r));
}

void require(bool ok, const std::string& check, const std::string& detail, const Rat& s) {
  if (!ok) fail(check, detail, s);
}

std::string job_str(JobId id) { return "job " + std::to_string(id); }

const Job& job_of(const Instance& inst, JobId id) {
  const Job* j = inst.find(id);
  if (!j) throw std::out_of_range("no " + job_str(id));
  return *j;
}

// Alive jobs released strictly before t (the state right before a batch at t).
std::map<JobId, JobState> pre_state(const Schedule& sch, const Instance& inst, const Rat& t) {
  auto st = state_at(sch, inst, t);
  std::erase_if(st, [&](const auto& kv) { return job_of(inst, kv.first).release.time == t; });
  return st;
}

std::map<JobId, Rat> volumes_of(const std::map<JobId, JobState>& st) {
  std::map<JobId, Rat> v;
  for (const auto& [id, s] : st) v[id] = s.remaining;
  return v;
}

std::map<JobId, Rat> nonzero(std::map<JobId, Rat> v) {
  std::erase_if(v, [](const auto& kv) { return sgn(kv.second) == 0; });
  return v;
}

std::string describe(const std::map<JobId, Rat>& v) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [id, r] : v) {
    os << (first ? "" : ", ") << id << ":" << r;
    first = false;
  }
  os << "}";
  return os.str();
}

// Marginals of h must equal remaining times of the two queues exactly.
std::optional<std::string> marginal_mismatch(const Graph& h, const std::map<JobId, JobState>& slf,
                                             const std::map<JobId, JobState>& opt) {
  auto lv = nonzero(h.left_volumes());
  auto rv = nonzero(h.right_volumes());
  auto ls = volumes_of(slf);
  auto rs = volumes_of(opt);
  if (lv != ls) return "left marginals " + describe(lv) + " vs SLF remaining " + describe(ls);
  if (rv != rs) return "right marginals " + describe(rv) + " vs OPT remaining " + describe(rs);
  return std::nullopt;
}

// Job receiving work in the segment that ends at t (left-limit touch), if any.
std::set<JobId> touched_before(const Schedule& sch, const Rat& t) {
  std::set<JobId> out;
  for (const auto& seg : sch.segments) {
    if (seg.start < t && t <= seg.end) {
      for (const auto& [id, r] : seg.alloc.rates) out.insert(id);
      break;
    }
  }
  return out;
}

JobId leader_of(const Instance& inst, const std::set<JobId>& j_new) {
  JobId best = 0;
  const Rat* size = nullptr;
  for (JobId id : j_new) {
    const Job& j = job_of(inst, id);
    if (!size || j.size > *size) {
      size = &j.size;
      best = id;
    }
  }
  return best;
}

std::vector<JobId> order_by(const std::set<JobId>& ids, const std::map<JobId, Rat>& key) {
  std::vector<JobId> v(ids.begin(), ids.end());
  std::stable_sort(v.begin(), v.end(), [&](JobId a, JobId b) {
    const Rat& ka = key.at(a);
    const Rat& kb = key.at(b);
    if (ka != kb) return ka > kb;
    return a > b;  // run order, as in the canonical assignment
  });
  return v;
}

Rat sum_over(const std::map<JobId, Rat>& m, const std::set<JobId>& ids) {
  Rat s = 0;
  for (JobId id : ids) s += m.at(id);
  return s;
}

WorkSplit split_work(const Ctx& c, const Rat& s, const Rat& ell, const std::set<JobId>& j_new) {
  const Rat& eps = c.inst.epsilon;
  WorkSplit w;
  w.s = s;
  w.ell = ell;
  w.j_new = j_new;
  require(!j_new.empty(), "fast-forward", "empty batch", s);
  require(s <= ell, "fast-forward", "ell before s", s);
  for (JobId id : j_new)
    require(job_of(c.inst, id).release.time == s, "fast-forward", job_str(id) + " is not released at s", s);

  auto pre_s = pre_state(c.slf, c.inst, s);
  auto pre_l = pre_state(c.slf, c.inst, ell);
  auto opt_l = pre_state(c.opt, c.inst, ell);
  auto e_l = elapsed_at(c.slf, ell);
  auto es_l = elapsed_at(c.opt, ell);
  for (const auto& [id, st] : pre_s) (st.known ? w.K_s : w.U_s).insert(id);
  for (const auto& [id, st] : pre_l) {
    auto kt = c.slf.known_times.find(id);
    if (kt != c.slf.known_times.end() && kt->second < ell) w.K_ell.insert(id);
  }
  for (JobId id : j_new) {
    if (pre_l.count(id)) w.A.insert(id);
    if (opt_l.count(id)) w.O.insert(id);
  }
  w.leader = leader_of(c.inst, j_new);
  w.gamma = e_l.at(w.leader);
  w.delta_total = w.tau_total = w.tau_star_total = 0;
  for (JobId id : j_new) {
    const Rat& e = e_l.at(id);
    const Rat& es = es_l.at(id);
    w.delta[id] = min_rat(e, es);
    w.tau[id] = e > es ? Rat(e - es) : Rat(0);
    w.tau_star[id] = es > e ? Rat(es - e) : Rat(0);
    w.delta_total += w.delta[id];
    w.tau_total += w.tau[id];
    w.tau_star_total += w.tau_star[id];
    if (sgn(w.tau[id]) > 0 && w.O.count(id)) w.O_plus.insert(id);
    if (sgn(w.tau_star[id]) > 0 && w.A.count(id)) w.A_plus.insert(id);
    if (sgn(w.tau[id]) == 0 && sgn(w.tau_star[id]) == 0) w.D.insert(id);
  }
  w.nu = ell - s - w.delta_total - w.tau_total;
  w.nu_star = ell - s - w.delta_total - w.tau_star_total;
  if (s < ell) {
    auto zt = touched_before(c.opt, ell);
    if (!zt.empty()) w.z = *zt.begin();
  }
  if (s == ell) return w;

  // Fast-Forward preconditions
  for (JobId id : touched_jobs(c.slf, s, ell))
    require(j_new.count(id) || w.K_s.count(id), "fast-forward precondition",
            "SLF touches " + job_str(id) + " outside J_new and K(s) during (s, ell]", s);
  const Job& L = job_of(c.inst, w.leader);
  require(touched_before(c.slf, ell).count(w.leader), "fast-forward precondition",
          "leader " + job_str(w.leader) + " not touched at ell=" + to_string(ell), s);
  require(w.gamma <= (1 - eps) * L.size, "fast-forward precondition", "leader already known before ell", s);
  for (const auto& j : c.inst.jobs)
    require(!(s < j.release.time && j.release.time < ell), "fast-forward precondition",
            job_str(j.id) + " arrives inside (s, ell)", s);

  // SLF at ell
  Rat thr = eps * w.gamma / (1 - eps);
  for (JobId id : w.K_s) {
    bool alive = pre_l.count(id) != 0;
    bool big = pre_s.at(id).remaining >= thr;
    require(alive == big, "SLF-at-ell (1)", job_str(id) + " alive=" + std::to_string(alive), s);
  }
  for (JobId id : w.K_ell) {
    require(w.K_s.count(id), "SLF-at-ell (2)", job_str(id) + " known at ell but not at s", s);
    require(pre_s.at(id).remaining == pre_l.at(id).remaining, "SLF-at-ell (2)",
            job_str(id) + " touched although known at ell", s);
  }
  for (JobId id : w.A)
    require(e_l.at(id) == w.gamma, "SLF-at-ell (3)", job_str(id) + " elapsed " + to_string(e_l.at(id)), s);
  for (JobId id : j_new)
    if (!w.A.count(id))
      require(e_l.at(id) <= w.gamma / (1 - eps), "SLF-at-ell (4)", job_str(id), s);

  // Fact identities
  require(ell - s == w.delta_total + w.tau_total + w.nu && ell - s == w.delta_total + w.tau_star_total + w.nu_star,
          "fact ell-s", "identity broken", s);
  Rat lost = 0;
  for (JobId id : w.K_s)
    if (!w.K_ell.count(id)) lost += pre_s.at(id).remaining;
  require(w.nu == lost, "fact nu", "nu=" + to_string(w.nu) + " but K(s)\\K(ell) held " + to_string(lost), s);
  require(w.O_plus.size() + w.A_plus.size() + w.D.size() == j_new.size(), "partition J_new",
          "O+, A+, D do not partition J_new", s);

  // τ/Δ case table
  for (JobId id : j_new) {
    if (w.z && *w.z == id) continue;
    bool o = w.O.count(id), a = w.A.count(id);
    const Rat& p = job_of(c.inst, id).size;
    bool ok;
    if (o && a)
      ok = w.tau[id] == w.gamma && sgn(w.tau_star[id]) == 0 && sgn(w.delta[id]) == 0;
    else if (o)
      ok = w.tau[id] <= w.gamma / (1 - eps) && sgn(w.tau_star[id]) == 0 && sgn(w.delta[id]) == 0;
    else if (a)
      ok = w.delta[id] == w.gamma && sgn(w.tau[id]) == 0 && w.tau_star[id] >= thr;
    else
      ok = w.delta[id] == p;
    require(ok, "tau/delta table", job_str(id) + " (O=" + std::to_string(o) + ", A=" + std::to_string(a) + ")", s);
  }
  return w;
}

struct UpdateOut {
  Graph graph;
  WorkSplit split;
  std::string branch;
};

UpdateOut update(const Ctx& c, const std::set<JobId>& j_new, const Rat& s, const Rat& ell, const Graph& sigma) {
  const Rat& eps = c.inst.epsilon;
  UpdateOut out;
  WorkSplit w = split_work(c, s, ell, j_new);
  Rat thr = eps * w.gamma / (1 - eps);

  auto pre_s = pre_state(c.slf, c.inst, s);
  auto opt_s = pre_state(c.opt, c.inst, s);
  auto pre_l = pre_state(c.slf, c.inst, ell);
  auto opt_l = pre_state(c.opt, c.inst, ell);
  if (auto bad = marginal_mismatch(sigma, pre_s, opt_s)) fail("update input", *bad, s);

  std::map<JobId, Rat> size, r_l, rs_l;
  for (JobId id : j_new) size[id] = job_of(c.inst, id).size;
  for (const auto& [id, st] : pre_l) r_l[id] = st.remaining;
  for (const auto& [id, st] : opt_l) rs_l[id] = st.remaining;

  const Graph& h1 = sigma;
  auto m2w = [&](JobId id) { return Rat(size[id] - w.delta[id]); };
  auto [h1p, h1s] = split(h1, min_rat(w.nu, w.nu_star));
  Graph h2 = h1p;
  Graph result;

  if (w.nu <= w.nu_star) {
    out.branch = "update1";
    Graph mp, ms, md;
    for (JobId id : w.O_plus) mp.add(id, id, m2w(id));
    for (JobId id : w.A_plus) ms.add(id, id, m2w(id));
    for (JobId id : w.D) md.add(id, id, m2w(id));
    // OPT serves the right side in SRPT order at s; p - Δ misplaces the job OPT is still running at ell
    std::map<JobId, Rat> srpt_key;
    for (const auto& [id, st] : opt_s) srpt_key[id] = st.remaining;
    for (JobId id : j_new) srpt_key[id] = size[id];
    Graph h3 = merge(h2, ms, &srpt_key);
    require(is_forward(h3), "update1", "merged graph is not forward", s);
    Rat T = sum_over(w.tau, w.O_plus);
    require(h3.total() >= T, "update1 claim X exists",
            "vol(H3)=" + to_string(h3.total()) + " < T=" + to_string(T), s);
    auto X = min_suffix(h3, T);
    Graph m3;
    for (JobId id : w.O_plus) m3.add(id, id, Rat(m2w(id) - w.tau[id]));
    auto [h3p, h3s] = split(h3, T);
    require(std::set<JobId>(h3s.left.begin(), h3s.left.end()) == std::set<JobId>(X.begin(), X.end()),
            "update1", "V(H3_s) differs from X", s);
    auto c_x = h3s.left_volumes();
    std::map<JobId, Rat> c_o;
    for (JobId id : w.O_plus) c_o[id] = w.tau[id];
    Graph g = greedy_matching(X, order_by(w.O_plus, rs_l), c_x, c_o);
    for (std::size_t k = 1; k < X.size(); ++k)
      require(g.vol(X[k]) >= thr, "update1 lemma vol_G", job_str(X[k]) + " vol_G=" + to_string(g.vol(X[k])), s);
    constexpr auto ro = TieBreak::run_order;
    result = graph_union(graph_union(g, m3, ro), graph_union(h3p, md, ro), ro);
  } else {
    out.branch = "update2";
    for (JobId id : w.O)
      require(w.A.count(id), "update2 corollary O in A", job_str(id) + " in O but not A", s);
    require(w.tau_total < w.tau_star_total, "update2 lemma tau < tau*", "tau=" + to_string(w.tau_total), s);
    for (JobId id : w.O_plus)
      require(w.tau[id] <= w.gamma, "update2 tau bound", job_str(id), s);
    Rat d = w.nu - w.nu_star;
    require(h2.total() >= d, "update2 claim X exists", "vol(H2) < d", s);
    auto X = min_suffix(h2, d);
    Rat xv = 0;
    for (JobId id : X) xv += h2.vol(id);
    require(xv == d, "update2 claim X exists", "no left suffix of volume exactly " + to_string(d), s);
    std::vector<JobId> Y;
    {
      auto rv = h2.right_volumes();
      Rat acc = 0;
      for (auto it = h2.right.rbegin(); it != h2.right.rend() && acc < d; ++it) {
        acc += rv[*it];
        Y.push_back(*it);
      }
      require(acc >= d, "update2 claim Y exists", "vol*(H2) < d", s);
    }
    Graph m3;
    for (JobId id : j_new) m3.add(id, id, Rat(m2w(id) - w.tau[id] - w.tau_star[id]));
    auto [h2p, h2s] = split(h2, d);
    require(std::set<JobId>(h2s.left.begin(), h2s.left.end()) == std::set<JobId>(X.begin(), X.end()),
            "update2", "V(H2_s) differs from X", s);
    require(std::set<JobId>(h2s.right.begin(), h2s.right.end()) == std::set<JobId>(Y.begin(), Y.end()),
            "update2 N(Y)=X", "V*(H2_s) differs from Y", s);
    for (JobId id : X)
      require(h2s.vol(id) <= thr, "update2 vol bound on X", job_str(id), s);
    std::set<JobId> oy(w.O_plus.begin(), w.O_plus.end());
    oy.insert(Y.begin(), Y.end());
    std::map<JobId, Rat> c_a, c_oy, key_oy;
    for (JobId id : w.A_plus) c_a[id] = w.tau_star[id];
    auto ys = h2s.right_volumes();
    for (JobId id : oy) {
      c_oy[id] = w.O_plus.count(id) ? w.tau[id] : ys[id];
      key_oy[id] = rs_l.count(id) ? rs_l[id] : Rat(0);
    }
    Graph g = greedy_matching(order_by(w.A_plus, r_l), order_by(oy, key_oy), c_a, c_oy);
    result = graph_union(graph_union(g, m3, TieBreak::run_order), h2p, TieBreak::run_order);
  }
  result = remove_isolated(std::move(result));

  // properties of H'
  for (JobId id : j_new) {
    require(size[id] - result.vol(id) == w.delta[id] + w.tau[id], "H' property 1", job_str(id), s);
    require(size[id] - result.vol_star(id) == w.delta[id] + w.tau_star[id], "H' property 4", job_str(id), s);
  }
  for (const auto& [id, st] : pre_s) {
    bool gone = w.K_s.count(id) && !w.K_ell.count(id);
    if (gone)
      require(h1.vol(id) - result.vol(id) == st.remaining, "H' property 2", job_str(id), s);
    else
      require(result.vol(id) == h1.vol(id), "H' property 3", job_str(id), s);
  }
  for (const auto& [id, st] : opt_s) {
    Rat after = rs_l.count(id) ? rs_l[id] : Rat(0);
    require(h1.vol_star(id) - result.vol_star(id) == st.remaining - after, "H' property 5", job_str(id), s);
  }
  if (auto bad = marginal_mismatch(result, pre_l, opt_l)) fail("update output marginals", *bad, s);
  Rat phi = prefix_expansion(result);
  require(phi <= Rat(ceil_inverse(eps)), "update output validity", "phi=" + to_string(phi), s);

  out.graph = std::move(result);
  out.split = std::move(w);
  return out;
}

// (x, y) when open, (x, y] otherwise; fresh epochs follow release order.
Instance move_window(const Instance& inst, const Rat& x, const Rat& y, bool open, std::vector<JobId>* moved) {
  if (x > y) throw InputError("move_jobs: x > y");
  Instance out = inst;
  std::uint64_t next = 0;
  for (const auto& j : inst.jobs)
    if (j.release.time == x) next = std::max(next, j.release.epoch);
  std::vector<Job*> hit;
  for (auto& j : out.jobs) {
    const Rat& q = j.release.time;
    if (x < q && (open ? q < y : q <= y)) hit.push_back(&j);
  }
  std::sort(hit.begin(), hit.end(), [](const Job* a, const Job* b) {
    if (!(a->release == b->release)) return a->release < b->release;
    return a->id < b->id;
  });
  for (Job* j : hit) {
    j->release = ReleaseTag{x, ++next};
    if (moved) moved->push_back(j->id);
  }
  return out;
}

bool same_elapsed(const Schedule& a, const Schedule& b, const Rat& t) {
  return elapsed_at(a, t) == elapsed_at(b, t);
}

std::set<JobId> keys(const std::map<JobId, JobState>& m) {
  std::set<JobId> k;
  for (const auto& [id, s] : m) k.insert(id);
  return k;
}

}  // namespace

Instance move_jobs(const Instance& inst, const Rat& x, const Rat& y) {
  return move_window(inst, x, y, false, nullptr);
}

WorkSplit compute_work_split(const Instance& inst, const Rat& s, const Rat& ell, const std::set<JobId>& j_new) {
  Ctx c(inst);
  return split_work(c, s, ell, j_new);
}

Graph update_valid_assignment(const Instance& inst, const std::set<JobId>& j_new, const Rat& s, const Rat& ell,
                              const Graph& sigma) {
  Ctx c(inst);
  return update(c, j_new, s, ell, sigma).graph;
}

bool check_t_equivalence(const Instance& j, const Instance& j_prime, const Rat& t) {
  Schedule a = simulate(j, Policy::slf);
  Schedule b = simulate(j_prime, Policy::slf);
  return keys(state_at(a, j, t)) == keys(state_at(b, j_prime, t)) && same_elapsed(a, b, t);
}

Certificate create_valid_assignment(const Instance& inst, const Rat& t) {
  validate_instance(inst);
  const Rat& eps = inst.epsilon;
  if (sgn(eps) <= 0) throw InputError("certificates need epsilon in (0,1]");
  if (sgn(t) < 0) throw InputError("target time must be non-negative");
  for (const auto& j : inst.jobs)
    if (!j.declared) throw InputError("certificates need declared sizes");

  Certificate cert;
  cert.original = inst;
  cert.target_time = t;
  const Rat K(ceil_inverse(eps));

  if (eps == 1) {
    Schedule sch = simulate(inst, Policy::slf);
    Graph g;
    for (const auto& [id, st] : state_at(sch, inst, t)) g.add(id, id, st.remaining);
    cert.transformed = inst;
    cert.assignment = check_assignment(default_ordered(g, TieBreak::run_order), eps);
    IterationRecord rec;
    rec.kind = "identity";
    rec.s = rec.s_next = t;
    rec.inv1 = rec.inv2 = rec.inv3 = true;
    rec.phi = cert.assignment.phi;
    cert.transcript.push_back(rec);
    return cert;
  }

  std::optional<Rat> start;
  for (const auto& bp : busy_periods(inst))
    if (bp.start <= t && t < bp.end) start = bp.start;

  Ctx c0(inst);
  Ctx c(inst);
  Graph carried;
  std::set<JobId> moved_once;
  try {
    if (start) {
      Rat s = *start;
      std::size_t guard = 0, limit = 8 * inst.jobs.size() + 8;
      while (s < t) {
        if (++guard > limit) fail("termination", "iteration limit exceeded", s);
        IterationRecord rec;
        rec.s = s;
        auto pre_s = pre_state(c.slf, c.inst, s);
        auto opt_s = pre_state(c.opt, c.inst, s);
        std::set<JobId> K_s, U_s;
        for (const auto& [id, st] : pre_s) (st.known ? K_s : U_s).insert(id);

        for (JobId id : touched_jobs(c.slf, s, t))
          require(!U_s.count(id), "Inv1", "unknown " + job_str(id) + " is touched during (s,t]", s);
        rec.inv1 = true;
        require(keys(pre_s) == keys(pre_state(c0.slf, c0.inst, s)) && same_elapsed(c0.slf, c.slf, s), "Inv2",
                "J' is not s-equivalent to J", s);
        rec.inv2 = true;
        Graph canon;
        try {
          canon = assignment_from_states(pre_s, opt_s, TieBreak::run_order);
        } catch (const std::invalid_argument& e) {
          fail("Inv3", e.what(), s);
        }
        require(prefix_expansion(canon) <= K, "Inv3", "canonical assignment invalid", s);
        if (auto bad = marginal_mismatch(carried, pre_s, opt_s)) fail("Inv3", "carried assignment: " + *bad, s);
        require(prefix_expansion(carried) <= K, "Inv3", "carried assignment invalid", s);
        rec.inv3 = true;

        std::set<JobId> j_new;
        std::optional<Rat> next_arrival;
        for (const auto& j : c.inst.jobs) {
          if (j.release.time == s) j_new.insert(j.id);
          if (j.release.time > s && (!next_arrival || j.release.time < *next_arrival)) next_arrival = j.release.time;
        }
        const Segment* at_s = nullptr;
        for (const auto& seg : c.slf.segments)
          if (seg.start <= s && s < seg.end) at_s = &seg;
        bool known_run = false;
        if (j_new.empty() && at_s)
          for (const auto& [id, r] : at_s->alloc.rates) known_run = known_run || K_s.count(id);

        if (known_run) {
          Rat s_prime = t;
          if (next_arrival) s_prime = min_rat(s_prime, *next_arrival);
          for (const auto& seg : c.slf.segments) {
            if (seg.end <= s) continue;
            if (!(seg.start < s_prime)) break;
            bool foreign = seg.alloc.empty();
            for (const auto& [id, r] : seg.alloc.rates) foreign = foreign || !K_s.count(id);
            if (foreign) {
              s_prime = max_rat(seg.start, s);
              break;
            }
          }
          require(s < s_prime, "known-run", "no progress", s);
          auto [hp, hs] = split(canon, s_prime - s);
          (void)hs;
          auto next_pre = pre_state(c.slf, c.inst, s_prime);
          auto next_opt = pre_state(c.opt, c.inst, s_prime);
          if (auto bad = marginal_mismatch(hp, next_pre, next_opt)) fail("known-run split", *bad, s);
          carried = remove_isolated(hp);
          rec.kind = "known-run";
          rec.branch = "split";
          rec.s_next = s_prime;
          rec.phi = prefix_expansion(carried);
          cert.transcript.push_back(rec);
          s = s_prime;
          continue;
        }

        require(!j_new.empty(), "claim batch at s", "SLF touches no known job and nothing arrives", s);
        JobId L = leader_of(c.inst, j_new);
        rec.leader = L;
        auto kt = c.slf.known_times.find(L);
        require(kt != c.slf.known_times.end(), "leader", "leader never becomes known", s);
        Rat b_s = kt->second;
        rec.b_s = b_s;
        Rat ell;
        if (b_s <= t) {
          ell = b_s;
        } else {
          ell = s;
          for (const auto& seg : c.slf.segments) {
            if (!(seg.start < t)) break;
            if (seg.end <= s) continue;
            if (sgn(seg.alloc.rate_of(L)) > 0) ell = min_rat(seg.end, t);
          }
          rec.ell_s = ell;
        }
        std::vector<JobId> moved;
        Instance jp = move_window(c.inst, s, ell, true, &moved);
        if (!moved.empty()) {
          for (JobId id : moved)
            require(moved_once.insert(id).second, "termination", job_str(id) + " moved twice", s);
          rec.move = std::make_pair(s, ell);
          rec.moved = moved;
          c = Ctx(std::move(jp));
          if (b_s <= t) {
            rec.kind = "move";
            rec.s_next = s;
            cert.transcript.push_back(rec);
            continue;
          }
          for (const auto& j : c.inst.jobs)
            if (j.release.time == s) j_new.insert(j.id);
        }
        UpdateOut up = update(c, j_new, s, ell, canon);
        carried = up.graph;
        rec.kind = "update";
        rec.branch = up.branch;
        rec.s_next = ell;
        rec.phi = prefix_expansion(carried);
        cert.transcript.push_back(rec);
        s = ell;
      }
    }
    Graph final_graph = carried;
    IterationRecord fin;
    fin.kind = "final-arrivals";
    fin.s = fin.s_next = t;
    for (const auto& j : c.inst.jobs)
      if (j.release.time == t) final_graph.add(j.id, j.id, j.size);
    final_graph = default_ordered(remove_isolated(std::move(final_graph)), TieBreak::run_order);
    if (auto bad = marginal_mismatch(final_graph, state_at(c.slf, c.inst, t), state_at(c.opt, c.inst, t)))
      fail("final marginals", *bad, t);
    fin.phi = prefix_expansion(final_graph);
    fin.inv1 = fin.inv2 = fin.inv3 = true;
    cert.transcript.push_back(fin);
    cert.transformed = c.inst;
    cert.assignment = check_assignment(final_graph, eps);
    require(cert.assignment.valid, "final validity", "phi=" + to_string(cert.assignment.phi), t);
  } catch (CertificationFailure& f) {
    f.report.transformed = c.inst;
    f.report.transcript = cert.transcript;
    throw;
  }
  return cert;
}

bool VerifyReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

VerifyReport verify_certificate(const Certificate& cert) {
  VerifyReport rep;
  const Instance& J = cert.original;
  const Instance& Jp = cert.transformed;
  const Rat& t = cert.target_time;
  Schedule slf = simulate(Jp, Policy::slf);
  Schedule opt = simulate(Jp, Policy::srpt);
  Schedule opt0 = simulate(J, Policy::srpt);
  Schedule slf0 = simulate(J, Policy::slf);
  auto sst = state_at(slf, Jp, t);
  auto ost = state_at(opt, Jp, t);
  const Graph& g = cert.assignment.graph;

  CheckResult a{"marginals", true, ""};
  if (auto bad = marginal_mismatch(g, sst, ost)) {
    a.pass = false;
    a.detail = *bad;
  }
  rep.checks.push_back(a);

  Rat K(ceil_inverse(J.epsilon));
  Rat phi = prefix_expansion(g);
  rep.checks.push_back({"validity", phi <= K, "phi=" + to_string(phi) + " bound=" + to_string(K)});

  CheckResult c{"t-equivalence", true, ""};
  std::string why;
  if (J.jobs.size() != Jp.jobs.size()) why = "job count differs";
  for (const auto& j : J.jobs) {
    const Job* k = Jp.find(j.id);
    if (!k) {
      why = job_str(j.id) + " missing";
      break;
    }
    if (k->size != j.size || k->declared != j.declared) why = job_str(j.id) + " changed size";
    if (j.release < k->release) why = job_str(j.id) + " released later in J'";
    if (!(k->release == j.release) && !(j.release.time <= t)) why = job_str(j.id) + " moved from after t";
  }
  if (why.empty() && !(keys(state_at(slf0, J, t)) == keys(sst) && same_elapsed(slf0, slf, t)))
    why = "SLF states differ at t";
  if (!why.empty()) {
    c.pass = false;
    c.detail = why;
  }
  rep.checks.push_back(c);

  std::size_t o_prime = active_count(opt, t), o = active_count(opt0, t);
  rep.checks.push_back({"opt-count", o_prime <= o,
                        "|OPT_J'(t)|=" + std::to_string(o_prime) + " |OPT_J(t)|=" + std::to_string(o)});

  std::size_t alg = active_count(slf0, t);
  std::size_t left = remove_isolated(g).left.size();
  bool deg = Rat(static_cast<long>(left)) <= K * Rat(static_cast<long>(o_prime)) &&
             Rat(static_cast<long>(alg)) <= K * Rat(static_cast<long>(o));
  rep.checks.push_back({"bounded-degree", deg,
                        "|SLF(t)|=" + std::to_string(alg) + " left=" + std::to_string(left) +
                            " K=" + to_string(K) + " |OPT_J'(t)|=" + std::to_string(o_prime)});
  return rep;
}

}  // namespace slf
