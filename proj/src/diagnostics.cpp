#include "bootlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bootlab/percolation.hpp"
#include "bootlab/rng.hpp"

namespace bootlab {

std::optional<std::size_t> girth(const Graph& g) {
  g.require_simple("girth");
  const std::size_t n = g.num_vertices();
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<std::uint32_t> dist(n, kUnseen);
  std::vector<Vertex> parent(n, 0);
  std::vector<Vertex> queue;
  std::vector<Vertex> touched;

  for (Vertex src = 0; src < n; ++src) {
    queue.assign(1, src);
    touched.assign(1, src);
    dist[src] = 0;
    parent[src] = src;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      // Any cycle closed from here is at least 2*dist+1 long.
      if (2 * static_cast<std::size_t>(dist[x]) + 1 >= best) break;
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] == kUnseen) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
          touched.push_back(y);
        } else if (y != parent[x]) {
          best = std::min<std::size_t>(best, static_cast<std::size_t>(dist[x]) + dist[y] + 1);
        }
      }
    }
    for (Vertex v : touched) dist[v] = kUnseen;
  }
  if (best == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return best;
}

std::string girth_to_string(const std::optional<std::size_t>& value) {
  return value ? std::to_string(*value) : std::string("inf");
}

std::optional<std::array<Vertex, 4>> find_4cycle(const Graph& g) {
  const std::size_t n = g.num_vertices();
  constexpr auto kNone = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> stamp(n, kNone);
  std::vector<Vertex> via(n, kNone);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex a : g.neighbors(u)) {
      if (a == u) continue;
      for (Vertex w : g.neighbors(a)) {
        if (w == u || w == a) continue;
        if (stamp[w] == u) {
          if (via[w] != a) return std::array<Vertex, 4>{u, via[w], w, a};
        } else {
          stamp[w] = u;
          via[w] = a;
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) { return std::inner_product(a.begin(), a.end(), b.begin(), 0.0); }

void normalize(Vec& x) {
  const double norm = std::sqrt(dot(x, x));
  if (norm > 0) {
    for (double& v : x) v /= norm;
  }
}

void project_out(Vec& x, const std::vector<const Vec*>& basis) {
  for (const Vec* b : basis) {
    const double c = dot(x, *b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * (*b)[i];
  }
}

struct PowerResult {
  double value = 0.0;
  Vec vector;
  double change = 0.0;
  std::size_t iterations = 0;
};

/// Largest eigenvalue of (shift*I + sign*A) on the complement of `deflate`.
/// Eigenvalues of the operator are assumed non-negative.
PowerResult power_iterate(const Graph& g, double shift, double sign, const std::vector<const Vec*>& deflate,
                          const SpectrumOptions& options, std::uint64_t stream) {
  const std::size_t n = g.num_vertices();
  Rng rng(derive_stream(options.seed, stream));
  Vec x(n);
  for (double& v : x) v = rng.uniform() - 0.5;
  project_out(x, deflate);
  normalize(x);

  PowerResult out;
  Vec y(n);
  double previous = std::numeric_limits<double>::quiet_NaN();
  double last_step = std::numeric_limits<double>::quiet_NaN();
  std::size_t settled = 0;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    for (Vertex v = 0; v < n; ++v) {
      double acc = 0.0;
      for (Vertex u : g.neighbors(v)) acc += x[u];
      y[v] = shift * x[v] + sign * acc;
    }
    project_out(y, deflate);
    const double theta = dot(x, y);
    const double norm = std::sqrt(dot(y, y));
    out.iterations = it;
    if (norm == 0.0) {
      // x lies in the operator's kernel: the top eigenvalue on this subspace is 0.
      out.value = 0.0;
      out.vector = x;
      out.change = 0.0;
      return out;
    }
    const double scale = std::max(std::abs(theta), std::numeric_limits<double>::min());
    // ||y - theta x||^2 = ||y||^2 - theta^2 for unit x.
    const double residual = std::sqrt(std::max(0.0, norm * norm - theta * theta)) / scale;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    const double step = std::isnan(previous) ? 1.0 : std::abs(theta - previous) / scale;
    // The Rayleigh quotient converges geometrically; extrapolate the remaining error from the
    // ratio of successive steps so that slow contraction does not stop the iteration early.
    double remaining = 1.0;
    if (!std::isnan(last_step) && last_step > 0.0) {
      const double rho = step / last_step;
      if (rho < 1.0) remaining = step * rho / (1.0 - rho);
    }
    if (step == 0.0) remaining = 0.0;
    previous = theta;
    last_step = step;
    out.change = remaining;
    settled = remaining <= options.tolerance && residual <= std::sqrt(options.tolerance) ? settled + 1 : 0;
    if (settled >= 3 || residual <= options.tolerance) {
      out.value = theta;
      out.vector = x;
      return out;
    }
  }
  // Residual of the last iterate for the error report.
  Vec r(n);
  for (Vertex v = 0; v < n; ++v) {
    double acc = 0.0;
    for (Vertex u : g.neighbors(v)) acc += x[u];
    r[v] = shift * x[v] + sign * acc;
  }
  project_out(r, deflate);
  const double theta = dot(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] -= theta * x[i];
  throw SpectrumError("spectrum: power iteration did not converge within " + std::to_string(options.max_iterations) +
                          " iterations",
                      std::sqrt(dot(r, r)), options.max_iterations);
}

}  // namespace

SpectrumReport spectrum(const Graph& g, const SpectrumOptions& options) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw GraphError("spectrum: need at least two vertices");
  const auto stats = degree_stats(g);
  const double top_degree = static_cast<double>(stats.max_degree);

  SpectrumReport report;
  report.regular = stats.is_regular;
  report.connected = component_members(g).size() == 1;

  Vec top;
  if (stats.is_regular) {
    top.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
    report.lambda1 = top_degree;
  } else {
    auto first = power_iterate(g, top_degree, 1.0, {}, options, 1);
    report.lambda1 = first.value - top_degree;
    report.iterations += first.iterations;
    report.tolerance_achieved = std::max(report.tolerance_achieved, first.change);
    top = std::move(first.vector);
  }

  if (stats.is_regular && !report.connected) {
    report.lambda2 = top_degree;
  } else {
    auto second = power_iterate(g, top_degree, 1.0, {&top}, options, 2);
    report.lambda2 = second.value - top_degree;
    report.iterations += second.iterations;
    report.tolerance_achieved = std::max(report.tolerance_achieved, second.change);
  }

  // Largest eigenvalue of (Δ I - A) is Δ - lambda_min; no deflation needed.
  auto bottom = power_iterate(g, top_degree, -1.0, {}, options, 3);
  report.lambda_min = top_degree - bottom.value;
  report.iterations += bottom.iterations;
  report.tolerance_achieved = std::max(report.tolerance_achieved, bottom.change);

  report.lambda = std::max(std::abs(report.lambda2), std::abs(report.lambda_min));
  if (stats.is_regular && top_degree > 0) report.delta = report.lambda / top_degree;
  return report;
}

bool expansion_check(const Graph& g, const VertexSet& b, double lambda2, double slack) {
  const std::size_t d = require_regular(g, "expansion_check");
  const std::size_t n = g.num_vertices();
  VertexSet c = VertexSet::full(n);
  for (Vertex v : b.members()) c.erase(v);
  const auto crossing = static_cast<double>(ordered_edge_count(g, b, c));
  const double bound = (static_cast<double>(d) - lambda2 - slack) * static_cast<double>(b.size()) *
                       static_cast<double>(c.size()) / static_cast<double>(n);
  return crossing >= bound - 1e-9;
}

bool DensityWitness::satisfied() const {
  for (std::size_t i = 0; i < induced_edges.size(); ++i) {
    if (induced_edges[i] < threshold * i) return false;
  }
  return true;
}

DensityWitness density_witness(const Graph& g, const VertexSet& seeds, std::size_t r) {
  const auto result = percolate(g, seeds, r);
  if (!result.complete()) throw GraphError("density_witness: seed set is not contagious");
  const std::size_t n = g.num_vertices();

  DensityWitness w;
  w.threshold = r;
  w.order = seeds.members();
  w.seed_count = w.order.size();
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < n; ++v) {
    if (!seeds.contains(v)) rest.push_back(v);
  }
  std::stable_sort(rest.begin(), rest.end(),
                   [&](Vertex a, Vertex b) { return result.generation[a] < result.generation[b]; });
  w.order.insert(w.order.end(), rest.begin(), rest.end());

  std::vector<std::uint8_t> placed(n, 0);
  std::size_t edges = 0;
  for (std::size_t i = 0; i < w.order.size(); ++i) {
    const Vertex v = w.order[i];
    std::size_t earlier = 0;
    for (Vertex u : g.neighbors(v)) earlier += placed[u];
    if (i >= w.seed_count && earlier < r) {
      throw GraphError("density_witness: activation order violates the threshold");
    }
    edges += earlier;
    placed[v] = 1;
    if (i + 1 >= w.seed_count) w.induced_edges.push_back(edges);
  }
  if (w.seed_count == 0) w.induced_edges.insert(w.induced_edges.begin(), 0);
  return w;
}

}  // namespace bootlab
