#pragma once

#include <cstddef>
#include <vector>

#include "mlsparse/sparse.hpp"

namespace mlsparse::covsel {

/// Disjoint column blocks covering 0..n-1.
struct BlockPlan {
  std::vector<IndexSet> blocks;
  std::size_t target = 0;

  std::size_t size() const { return blocks.size(); }
};

/// Undirected graph on 0..n-1 given by sorted adjacency lists (no self loops).
using Adjacency = std::vector<std::vector<std::size_t>>;

Adjacency adjacency_from_pairs(std::size_t n, const std::vector<Pair>& pairs);

/// Greedy clustering: components up to `target` are packed together, larger
/// ones are cut into BFS-grown chunks of `target` vertices, then one pass
/// moves single vertices to the block holding most of their neighbors when
/// that strictly lowers the cut. Blocks never exceed 2 * target.
BlockPlan partition_columns(const Adjacency& graph, std::size_t target);

/// Edges whose endpoints lie in different blocks.
std::size_t cut_edges(const BlockPlan& plan, const Adjacency& graph);

/// Recursive BFS bisection of `vertices` (a subset of the graph) until every
/// part has at most `floor` vertices. Node 0 is the root; children follow
/// their parent.
struct BisectionNode {
  IndexSet vertices;
  int left = -1;
  int right = -1;
};
std::vector<BisectionNode> bisection_tree(const Adjacency& graph, std::size_t floor);

}  // namespace mlsparse::covsel
