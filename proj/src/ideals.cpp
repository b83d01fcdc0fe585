#include "contractible/ideals.hpp"

#include <algorithm>

#include "contractible/error.hpp"
#include "contractible/queries.hpp"

namespace contractible {

namespace {

void require_compatible(const Graph& g, const VertexSet& s) {
  if (s.core_capacity() != g.core_size() || s.ray_capacity() != g.ray_count())
    throw Error(ErrorCode::UnknownVertex, "vertex set does not belong to this graph");
}

bool bag_inside(const TargetBag& bag, const VertexSet& s) {
  return std::all_of(bag.begin(), bag.end(), [&](const RayTarget& t) { return s.contains_core(t.vertex); });
}

bool ranges_inside(const Graph& g, std::uint32_t u, const VertexSet& s) {
  for (auto e : g.core_out(u))
    if (!s.contains_core(g.edges()[e].target)) return false;
  for (const auto& [r, m] : g.entries_from(u))
    if (s.ray_from(r) != std::optional<std::uint64_t>(0)) return false;
  return true;
}

// Earliest start the saturation rule allows for a ray held from k.
std::uint64_t pull_back(const Ray& ray, std::uint64_t k, const VertexSet& s) {
  const std::uint64_t p = ray.prefix_length();
  if (k > p) {
    bool whole_cycle = std::all_of(ray.cycle.begin(), ray.cycle.end(), [&](const TargetBag& b) { return bag_inside(b, s); });
    if (whole_cycle) {
      k = p;
    } else {
      while (k > p && bag_inside(ray.targets_at(k - 1), s)) --k;
      if (k > p) return k;
    }
  }
  while (k > 0 && bag_inside(ray.prefix[k - 1], s)) --k;
  return k;
}

// One pass of the saturation rule; true if anything was added.
bool saturation_step(const Graph& g, VertexSet& s) {
  bool changed = false;
  for (std::uint32_t u = 0; u < g.core_size(); ++u) {
    if (s.contains_core(u)) continue;
    Multiplicity d = g.out_degree(VertexRef::core(u));
    if (d.is_zero() || d.is_infinite()) continue;
    if (ranges_inside(g, u, s)) {
      s.insert_core(u);
      changed = true;
    }
  }
  for (std::uint32_t r = 0; r < g.ray_count(); ++r) {
    auto k = s.ray_from(r);
    if (!k || *k == 0) continue;
    std::uint64_t back = pull_back(g.ray(r), *k, s);
    if (back != *k) {
      s.set_ray_from(r, back);
      changed = true;
    }
  }
  return changed;
}

using Mask = std::uint32_t;

// Bit-mask view of the graph for the subset scan.
struct Scan {
  std::size_t n = 0;
  std::vector<Mask> succ;
  std::vector<bool> finite_nonzero;
  std::vector<std::vector<std::uint32_t>> enters;
  struct RayMasks {
    std::vector<Mask> prefix;
    Mask cycle_union = 0;
    Mask all_targets = 0;
    Mask entry_sources = 0;
  };
  std::vector<RayMasks> rays;

  explicit Scan(const Graph& g) : n(g.core_size()), succ(n, 0), finite_nonzero(n, false), enters(n) {
    for (const auto& e : g.edges()) succ[e.source] |= Mask(1) << e.target;
    for (std::uint32_t u = 0; u < n; ++u) {
      Multiplicity d = g.out_degree(VertexRef::core(u));
      finite_nonzero[u] = !d.is_zero() && d.is_finite();
      for (const auto& [r, m] : g.entries_from(u)) enters[u].push_back(r);
    }
    auto bag_mask = [](const TargetBag& b) {
      Mask m = 0;
      for (const auto& t : b) m |= Mask(1) << t.vertex;
      return m;
    };
    for (const auto& ray : g.rays()) {
      RayMasks rm;
      for (const auto& b : ray.prefix) rm.prefix.push_back(bag_mask(b));
      for (const auto& b : ray.cycle) rm.cycle_union |= bag_mask(b);
      rm.all_targets = rm.cycle_union;
      for (auto m : rm.prefix) rm.all_targets |= m;
      for (const auto& e : ray.entry) rm.entry_sources |= Mask(1) << e.source;
      rays.push_back(std::move(rm));
    }
  }

  // Least k with every bag from k on inside S, if any.
  std::optional<std::uint64_t> k_min(std::size_t r, Mask s) const {
    const RayMasks& rm = rays[r];
    if (rm.cycle_union & ~s) return std::nullopt;
    std::uint64_t k = rm.prefix.size();
    while (k > 0 && (rm.prefix[k - 1] & ~s) == 0) --k;
    return k;
  }

  void members_for(Mask s, std::vector<VertexSet>& out, const Graph& g) const {
    for (std::uint32_t u = 0; u < n; ++u)
      if ((s >> u & 1) && (succ[u] & ~s)) return;

    std::vector<std::optional<std::uint64_t>> forced(rays.size());
    std::vector<std::size_t> optional_rays;
    std::vector<std::uint64_t> optional_k;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      auto k = k_min(r, s);
      if (rays[r].entry_sources & s) {
        if (!k || *k != 0) return;
        forced[r] = 0;
      } else if (k) {
        optional_rays.push_back(r);
        optional_k.push_back(*k);
      }
    }
    const std::size_t combos = std::size_t(1) << optional_rays.size();
    for (std::size_t combo = 0; combo < combos; ++combo) {
      std::vector<std::optional<std::uint64_t>> state = forced;
      for (std::size_t i = 0; i < optional_rays.size(); ++i)
        if (combo >> i & 1) state[optional_rays[i]] = optional_k[i];
      bool saturated = true;
      for (std::uint32_t u = 0; u < n && saturated; ++u) {
        if ((s >> u & 1) || !finite_nonzero[u] || (succ[u] & ~s)) continue;
        bool rays_in = std::all_of(enters[u].begin(), enters[u].end(),
                                   [&](std::uint32_t r) { return state[r] == std::optional<std::uint64_t>(0); });
        if (rays_in) saturated = false;
      }
      if (!saturated) continue;
      VertexSet v(g);
      for (std::uint32_t u = 0; u < n; ++u)
        if (s >> u & 1) v.insert_core(u);
      for (std::uint32_t r = 0; r < rays.size(); ++r) v.set_ray_from(r, state[r]);
      out.push_back(std::move(v));
    }
  }
};

}  // namespace

VertexSet closure_SH(const Graph& g, const VertexSet& x) {
  require_compatible(g, x);
  VertexSet h = hereditary_closure(g, x);
  while (saturation_step(g, h)) {
  }
  return h;
}

bool is_hereditary(const Graph& g, const VertexSet& h) {
  require_compatible(g, h);
  return hereditary_closure(g, h) == h;
}

bool is_saturated(const Graph& g, const VertexSet& h) {
  require_compatible(g, h);
  VertexSet copy = h;
  return !saturation_step(g, copy);
}

bool check_fullness(const Graph& g, const VertexSet& g0) { return closure_SH(g, g0).is_full(); }

SHFamily enumerate_SH(const Graph& g, const SHOptions& options) {
  const std::size_t n = g.core_size();
  if (n > options.max_core || n > 30)
    throw Error(ErrorCode::TooLarge, "core has " + std::to_string(n) + " vertices; the subset scan allows " +
                                         std::to_string(std::min<std::size_t>(options.max_core, 30)));
  if (g.ray_count() > 16) throw Error(ErrorCode::TooLarge, "too many rays for the subset scan");
  const Scan scan(g);
  const auto total = static_cast<std::int64_t>(std::int64_t(1) << n);

  std::vector<VertexSet> members;
#pragma omp parallel if (options.parallel)
  {
    std::vector<VertexSet> local;
#pragma omp for schedule(dynamic, 256) nowait
    for (std::int64_t s = 0; s < total; ++s) scan.members_for(static_cast<Mask>(s), local, g);
#pragma omp critical(sh_merge)
    members.insert(members.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
  }
  std::sort(members.begin(), members.end(), canonical_less);

  SHFamily family;
  family.members = std::move(members);
  for (const auto& m : family.members)
    if (!m.empty() && !m.is_full()) ++family.nontrivial_count;
  return family;
}

std::vector<std::pair<std::size_t, std::size_t>> hasse_covers(const SHFamily& family) {
  const auto& ms = family.members;
  const std::size_t m = ms.size();
  std::vector<std::vector<bool>> below(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) below[i][j] = i != j && ms[j].includes(ms[i]);
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (!below[i][j]) continue;
      bool direct = true;
      for (std::size_t k = 0; k < m && direct; ++k) direct = !(below[i][k] && below[k][j]);
      if (direct) covers.emplace_back(i, j);
    }
  return covers;
}

}  // namespace contractible
