#include "bootlab/percolation.hpp"

#include <string>

namespace bootlab {
namespace {

void check_inputs(const Graph& g, const VertexSet& seeds, std::size_t r) {
  g.require_simple("percolate");
  if (r < 1) throw GraphError("percolate: threshold r must be at least 1");
  if (seeds.universe() != g.num_vertices()) {
    throw GraphError("percolate: seed set universe does not match the graph");
  }
}

}  // namespace

CascadeResult percolate(const Graph& g, const VertexSet& seeds, std::size_t r) {
  check_inputs(g, seeds, r);
  const std::size_t n = g.num_vertices();
  CascadeResult result;
  result.active = seeds;
  result.generation.assign(n, kNeverActive);

  std::vector<Vertex> frontier = seeds.members();
  for (Vertex v : frontier) result.generation[v] = 0;
  result.newly_active_per_generation.push_back(frontier.size());

  // count[w] = |N(w) ∩ A_{g-1}| once every frontier up to g-1 is processed.
  std::vector<std::uint32_t> count(n, 0);
  std::vector<Vertex> next;
  for (std::int32_t gen = 1; !frontier.empty(); ++gen) {
    next.clear();
    for (Vertex u : frontier) {
      for (Vertex w : g.neighbors(u)) {
        if (result.generation[w] != kNeverActive) continue;
        if (++count[w] == r) next.push_back(w);
      }
    }
    if (next.empty()) break;
    for (Vertex w : next) {
      result.generation[w] = gen;
      result.active.insert(w);
    }
    result.newly_active_per_generation.push_back(next.size());
    result.generations = static_cast<std::size_t>(gen);
    frontier.swap(next);
  }
  return result;
}

bool is_contagious(const Graph& g, const VertexSet& seeds, std::size_t r) { return percolate(g, seeds, r).complete(); }

VertexSet excited_set(const Graph& g, const CascadeResult& result, std::size_t r) {
  VertexSet out(g.num_vertices());
  if (r < 1) return out;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (result.active.contains(v)) continue;
    std::size_t active_nb = 0;
    for (Vertex u : g.neighbors(v)) active_nb += result.active.contains(u) ? 1 : 0;
    if (active_nb == r - 1) out.insert(v);
  }
  return out;
}

Cascade::Cascade(const Graph& g, std::size_t r)
    : g_(&g), r_(r), n_(g.num_vertices()), active_(n_, 0), count_(n_, 0), fenwick_(n_ + 1, 0) {
  g.require_simple("Cascade");
  if (r < 1) throw GraphError("Cascade: threshold r must be at least 1");
  // Linear-time Fenwick build over all-ones.
  for (std::size_t i = 1; i <= n_; ++i) {
    fenwick_[i] += 1;
    const std::size_t parent = i + (i & (~i + 1));
    if (parent <= n_) fenwick_[parent] += fenwick_[i];
  }
  while (fenwick_top_ * 2 <= n_) fenwick_top_ *= 2;
}

void Cascade::fenwick_add(std::size_t index, int delta) {
  for (std::size_t i = index + 1; i <= n_; i += i & (~i + 1)) fenwick_[i] += delta;
}

Vertex Cascade::kth_inactive(std::size_t k) const {
  if (k >= inactive_count()) throw GraphError("kth_inactive: index out of range");
  std::size_t pos = 0;
  auto remaining = static_cast<std::int64_t>(k);
  for (std::size_t step = fenwick_top_; step > 0; step >>= 1) {
    const std::size_t probe = pos + step;
    if (probe <= n_ && fenwick_[probe] <= remaining) {
      pos = probe;
      remaining -= fenwick_[probe];
    }
  }
  return static_cast<Vertex>(pos);
}

void Cascade::mark_active(Vertex v) {
  if (count_[v] == 0) ++reach_count_;
  active_[v] = 1;
  ++active_count_;
  fenwick_add(v, -1);
  queue_.push_back(v);
  log_.push_back(v);
}

std::size_t Cascade::activate(Vertex v) {
  if (v >= n_) throw GraphError("Cascade::activate: vertex out of range");
  if (active_[v]) return 0;
  const std::size_t before = active_count_;
  queue_.clear();
  mark_active(v);
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const Vertex u = queue_[head];
    for (Vertex w : g_->neighbors(u)) {
      if (count_[w]++ == 0 && !active_[w]) ++reach_count_;
      if (!active_[w] && count_[w] >= r_) mark_active(w);
    }
  }
  if (!in_trial_) log_.clear();
  return active_count_ - before;
}

std::size_t Cascade::activate_all(std::span<const Vertex> seeds) {
  std::size_t total = 0;
  for (Vertex v : seeds) total += activate(v);
  return total;
}

VertexSet Cascade::active_set() const {
  VertexSet out(n_);
  for (Vertex v = 0; v < n_; ++v) {
    if (active_[v]) out.insert(v);
  }
  return out;
}

void Cascade::begin_trial() {
  if (in_trial_) throw GraphError("Cascade: trials do not nest");
  in_trial_ = true;
  log_.clear();
  trial_mark_ = 0;
  trial_reach_ = reach_count_;
}

void Cascade::rollback() {
  if (!in_trial_) throw GraphError("Cascade: rollback without begin_trial");
  while (log_.size() > trial_mark_) {
    const Vertex u = log_.back();
    log_.pop_back();
    for (Vertex w : g_->neighbors(u)) --count_[w];
    active_[u] = 0;
    --active_count_;
    fenwick_add(u, +1);
  }
  reach_count_ = trial_reach_;
  in_trial_ = false;
  log_.clear();
}

}  // namespace bootlab
