#include "mlsparse/covsel/partition.hpp"

#include <algorithm>
#include <deque>

#include "mlsparse/error.hpp"

namespace mlsparse::covsel {

Adjacency adjacency_from_pairs(std::size_t n, const std::vector<Pair>& pairs) {
  Adjacency g(n);
  for (const auto& p : pairs) {
    if (p.row >= n || p.col >= n) throw InvalidArgument("adjacency_from_pairs: index out of range");
    if (p.row == p.col) continue;
    g[p.row].push_back(p.col);
    g[p.col].push_back(p.row);
  }
  for (auto& v : g) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return g;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Vertices of each connected component, each sorted, ordered by lowest vertex.
std::vector<std::vector<std::size_t>> components(const Adjacency& g) {
  const std::size_t n = g.size();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = 1;
    for (std::size_t h = 0; h < comp.size(); ++h)
      for (std::size_t v : g[comp[h]])
        if (!seen[v]) {
          seen[v] = 1;
          comp.push_back(v);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

// Cuts one component into BFS-grown chunks of `target` vertices.
std::vector<std::vector<std::size_t>> chunk_component(const Adjacency& g, const std::vector<std::size_t>& comp,
                                                      std::size_t target, std::vector<char>& assigned) {
  std::vector<std::vector<std::size_t>> chunks;
  std::size_t cursor = 0;  // lowest possibly unassigned position in comp
  std::size_t left = comp.size();
  while (left > 0) {
    std::vector<std::size_t> chunk;
    std::deque<std::size_t> queue;
    std::vector<std::size_t> touched;
    while (chunk.size() < target && left > 0) {
      if (queue.empty()) {
        while (assigned[comp[cursor]]) ++cursor;
        queue.push_back(comp[cursor]);
      }
      const std::size_t v = queue.front();
      queue.pop_front();
      if (assigned[v]) continue;
      assigned[v] = 1;
      --left;
      chunk.push_back(v);
      for (std::size_t u : g[v])
        if (!assigned[u]) queue.push_back(u);
    }
    chunks.push_back(std::move(chunk));
  }
  if (chunks.size() > 1 && 2 * chunks.back().size() < target) {
    auto last = std::move(chunks.back());
    chunks.pop_back();
    chunks.back().insert(chunks.back().end(), last.begin(), last.end());
  }
  return chunks;
}

}  // namespace

BlockPlan partition_columns(const Adjacency& g, std::size_t target) {
  if (target == 0) throw InvalidArgument("partition_columns: target must be positive");
  const std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<char> assigned(n, 0);
  std::vector<std::size_t> bin;
  for (const auto& comp : components(g)) {
    if (comp.size() > target) {
      for (auto& c : chunk_component(g, comp, target, assigned)) blocks.push_back(std::move(c));
      continue;
    }
    if (bin.size() + comp.size() > target) {
      blocks.push_back(std::move(bin));
      bin.clear();
    }
    bin.insert(bin.end(), comp.begin(), comp.end());
  }
  if (!bin.empty()) blocks.push_back(std::move(bin));

  // One refinement pass over single-vertex moves.
  std::vector<std::size_t> owner(n, kNone);
  std::vector<std::size_t> size(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    size[b] = blocks[b].size();
    for (std::size_t v : blocks[b]) owner[v] = b;
  }
  std::vector<std::size_t> count(blocks.size(), 0);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t own = owner[v];
    if (size[own] <= 1) continue;
    for (std::size_t u : g[v]) ++count[owner[u]];
    std::size_t best = own;
    for (std::size_t u : g[v]) {
      const std::size_t b = owner[u];
      if (b == own || size[b] + 1 > 2 * target) continue;
      if (count[b] > count[best] || (count[b] == count[best] && best != own && b < best)) best = b;
    }
    if (best != own && count[best] > count[own]) {
      owner[v] = best;
      --size[own];
      ++size[best];
    }
    for (std::size_t u : g[v]) count[owner[u]] = 0;
    count[own] = 0;
    count[best] = 0;
  }

  std::vector<std::vector<std::size_t>> final_blocks(blocks.size());
  for (std::size_t v = 0; v < n; ++v) final_blocks[owner[v]].push_back(v);
  BlockPlan plan;
  plan.target = target;
  for (auto& b : final_blocks)
    if (!b.empty()) plan.blocks.emplace_back(std::move(b));
  return plan;
}

std::size_t cut_edges(const BlockPlan& plan, const Adjacency& g) {
  std::vector<std::size_t> owner(g.size(), kNone);
  for (std::size_t b = 0; b < plan.blocks.size(); ++b)
    for (std::size_t v : plan.blocks[b]) owner[v] = b;
  std::size_t cut = 0;
  for (std::size_t v = 0; v < g.size(); ++v)
    for (std::size_t u : g[v])
      if (v < u && owner[v] != owner[u]) ++cut;
  return cut;
}

std::vector<BisectionNode> bisection_tree(const Adjacency& g, std::size_t floor) {
  if (floor == 0) throw InvalidArgument("bisection_tree: floor must be positive");
  std::vector<BisectionNode> nodes;
  nodes.push_back({IndexSet::range(g.size()), -1, -1});
  std::vector<char> in(g.size(), 0), seen(g.size(), 0);
  for (std::size_t t = 0; t < nodes.size(); ++t) {
    const IndexSet vs = nodes[t].vertices;
    if (vs.size() <= floor) continue;
    for (std::size_t v : vs) in[v] = 1;
    std::vector<std::size_t> order;
    order.reserve(vs.size());
    for (std::size_t s : vs) {
      if (seen[s]) continue;
      seen[s] = 1;
      const std::size_t start = order.size();
      order.push_back(s);
      for (std::size_t h = start; h < order.size(); ++h)
        for (std::size_t u : g[order[h]])
          if (in[u] && !seen[u]) {
            seen[u] = 1;
            order.push_back(u);
          }
    }
    for (std::size_t v : vs) in[v] = seen[v] = 0;
    const std::size_t half = order.size() / 2;
    const auto mid = order.begin() + static_cast<std::ptrdiff_t>(half);
    nodes[t].left = static_cast<int>(nodes.size());
    nodes.push_back({IndexSet(std::vector<std::size_t>(order.begin(), mid)), -1, -1});
    nodes[t].right = static_cast<int>(nodes.size());
    nodes.push_back({IndexSet(std::vector<std::size_t>(mid, order.end())), -1, -1});
  }
  return nodes;
}

}  // namespace mlsparse::covsel
