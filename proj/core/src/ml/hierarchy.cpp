#include "mlsparse/ml/hierarchy.hpp"

#include <algorithm>
#include <cmath>

#include "mlsparse/error.hpp"

namespace mlsparse::ml {

std::vector<std::size_t> SupportHierarchy::sizes() const {
  std::vector<std::size_t> s;
  for (const auto& l : levels) s.push_back(l.size());
  return s;
}

SupportHierarchy build_hierarchy(std::span<const double> mags, const IndexSet& supp, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidArgument("build_hierarchy: ratio must lie in (0,1)");
  const std::size_t n = mags.size();
  if (!supp.empty() && supp.ids().back() >= n)
    throw InvalidArgument("build_hierarchy: support index outside the universe");

  SupportHierarchy h;
  h.levels.push_back(IndexSet::range(n));
  if (supp.empty() && std::all_of(mags.begin(), mags.end(), [](double v) { return v == 0.0; }))
    return h;

  const std::size_t s = supp.size();
  while (h.levels.back().size() > s) {
    const IndexSet& cur = h.levels.back();
    const auto want = static_cast<std::size_t>(std::ceil(static_cast<double>(cur.size()) * ratio));
    const std::size_t size = std::max(want, s);
    if (size >= cur.size()) break;

    std::vector<std::size_t> rest;
    rest.reserve(cur.size());
    for (std::size_t i : cur)
      if (!supp.contains(i)) rest.push_back(i);
    const std::size_t take = size - s;
    std::partial_sort(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(take), rest.end(),
                      [&](std::size_t a, std::size_t b) {
                        const double ma = std::abs(mags[a]), mb = std::abs(mags[b]);
                        return ma != mb ? ma > mb : a < b;
                      });
    std::vector<std::size_t> next(supp.begin(), supp.end());
    next.insert(next.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(take));
    h.levels.emplace_back(std::move(next));
  }
  return h;
}

}  // namespace mlsparse::ml
