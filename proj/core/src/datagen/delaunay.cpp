#include "mlsparse/datagen/delaunay.hpp"

#include <algorithm>
#include <cmath>

#include "mlsparse/error.hpp"

namespace mlsparse::datagen {

namespace {

struct Tri {
  Triangle v;
  double cx, cy, r2;  // circumcircle
};

double orient(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool make_tri(const std::vector<Point>& p, std::size_t a, std::size_t b, std::size_t c, Tri& t) {
  if (orient(p[a], p[b], p[c]) < 0) std::swap(b, c);
  const double ax = p[a].x, ay = p[a].y, bx = p[b].x, by = p[b].y, cx = p[c].x, cy = p[c].y;
  const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  if (d == 0.0) return false;
  const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  t.v = {a, b, c};
  t.cx = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
  t.cy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
  t.r2 = (ax - t.cx) * (ax - t.cx) + (ay - t.cy) * (ay - t.cy);
  return true;
}

}  // namespace

std::vector<Triangle> delaunay(const std::vector<Point>& input) {
  const std::size_t n = input.size();
  if (n < 3) return {};
  double lo_x = input[0].x, hi_x = lo_x, lo_y = input[0].y, hi_y = lo_y;
  for (const auto& q : input) {
    lo_x = std::min(lo_x, q.x);
    hi_x = std::max(hi_x, q.x);
    lo_y = std::min(lo_y, q.y);
    hi_y = std::max(hi_y, q.y);
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double mx = 0.5 * (lo_x + hi_x), my = 0.5 * (lo_y + hi_y);
  std::vector<Point> p = input;
  p.push_back({mx - 20.0 * span, my - 10.0 * span});
  p.push_back({mx + 20.0 * span, my - 10.0 * span});
  p.push_back({mx, my + 20.0 * span});

  std::vector<Tri> tris(1);
  if (!make_tri(p, n, n + 1, n + 2, tris[0])) throw NumericalError("delaunay: degenerate super triangle");

  std::vector<std::array<std::size_t, 2>> boundary;
  std::vector<Tri> keep;
  for (std::size_t k = 0; k < n; ++k) {
    const Point& q = p[k];
    boundary.clear();
    keep.clear();
    keep.reserve(tris.size() + 2);
    for (const Tri& t : tris) {
      const double dx = q.x - t.cx, dy = q.y - t.cy;
      if (dx * dx + dy * dy < t.r2) {
        for (int e = 0; e < 3; ++e) {
          std::size_t a = t.v[e], b = t.v[(e + 1) % 3];
          if (a > b) std::swap(a, b);
          boundary.push_back({a, b});
        }
      } else {
        keep.push_back(t);
      }
    }
    // Edges shared by two removed triangles are interior to the cavity.
    std::sort(boundary.begin(), boundary.end());
    for (std::size_t e = 0; e < boundary.size();) {
      std::size_t f = e;
      while (f < boundary.size() && boundary[f] == boundary[e]) ++f;
      if (f - e == 1) {
        Tri t;
        if (!make_tri(p, boundary[e][0], boundary[e][1], k, t))
          throw NumericalError("delaunay: collinear points near index " + std::to_string(k));
        keep.push_back(t);
      }
      e = f;
    }
    tris.swap(keep);
  }

  std::vector<Triangle> out;
  for (const Tri& t : tris) {
    if (t.v[0] >= n || t.v[1] >= n || t.v[2] >= n) continue;
    const double area = orient(p[t.v[0]], p[t.v[1]], p[t.v[2]]);
    if (std::abs(area) < 1e-14 * span * span)
      throw NumericalError("delaunay: degenerate triangle at vertices " + std::to_string(t.v[0]));
    out.push_back(t.v);
  }
  return out;
}

std::vector<std::array<std::size_t, 2>> triangle_edges(const std::vector<Triangle>& tris) {
  std::vector<std::array<std::size_t, 2>> e;
  e.reserve(3 * tris.size());
  for (const auto& t : tris)
    for (int k = 0; k < 3; ++k) {
      std::size_t a = t[k], b = t[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      e.push_back({a, b});
    }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

}  // namespace mlsparse::datagen
