#include "polyvem/mesher.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace polyvem {

namespace {

// Portable uniform double in [0,1) from the raw 64-bit stream, independent of
// the standard library's distribution implementation.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// ---------------------------------------------------------------------------
// Bowyer-Watson Delaunay triangulation
// ---------------------------------------------------------------------------

struct DelaunayTri {
    int a, b, c; // CCW; indices >= n refer to the super-triangle
};

// Strict in-circle test with a relative guard: cocircular points count as
// outside, which keeps degenerate grid configurations stable.
bool in_circumcircle(const Point2& pa, const Point2& pb, const Point2& pc, const Point2& p) {
    const double ax = pa.x - p.x, ay = pa.y - p.y;
    const double bx = pb.x - p.x, by = pb.y - p.y;
    const double cx = pc.x - p.x, cy = pc.y - p.y;
    const double a2 = ax * ax + ay * ay;
    const double b2 = bx * bx + by * by;
    const double c2 = cx * cx + cy * cy;
    const double det = ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
    const double mag = (std::abs(ax) + std::abs(ay) + a2) * (std::abs(bx) + std::abs(by) + b2) *
                       (std::abs(cx) + std::abs(cy) + c2);
    return det > 1e-12 * mag;
}

std::vector<DelaunayTri> delaunay_triangulation(const std::vector<Point2>& pts) {
    const int n = static_cast<int>(pts.size());
    BoundingBox box = bounding_box(pts);
    const double span = std::max(box.diagonal(), 1.0);
    const Point2 mid{(box.min.x + box.max.x) / 2.0, (box.min.y + box.max.y) / 2.0};

    std::vector<Point2> all = pts;
    all.push_back(mid + Point2{-20.0 * span, -10.0 * span});
    all.push_back(mid + Point2{20.0 * span, -10.0 * span});
    all.push_back(mid + Point2{0.0, 25.0 * span});

    std::vector<DelaunayTri> tris{{n, n + 1, n + 2}};
    std::vector<DelaunayTri> kept;
    std::map<std::pair<int, int>, int> edge_count;

    std::vector<char> bad;
    for (int p = 0; p < n; ++p) {
        kept.clear();
        edge_count.clear();
        bad.assign(tris.size(), 0);
        for (std::size_t k = 0; k < tris.size(); ++k) {
            const DelaunayTri& t = tris[k];
            if (in_circumcircle(all[t.a], all[t.b], all[t.c], all[p])) {
                bad[k] = 1;
                edge_count[{std::min(t.a, t.b), std::max(t.a, t.b)}]++;
                edge_count[{std::min(t.b, t.c), std::max(t.b, t.c)}]++;
                edge_count[{std::min(t.c, t.a), std::max(t.c, t.a)}]++;
            } else {
                kept.push_back(t);
            }
        }
        // Cavity boundary edges appear exactly once among the removed
        // triangles; connect each to the new point.
        std::vector<DelaunayTri> cavity;
        for (std::size_t k = 0; k < tris.size(); ++k) {
            if (!bad[k]) continue;
            const DelaunayTri& t = tris[k];
            const std::array<std::pair<int, int>, 3> edges{{{t.a, t.b}, {t.b, t.c}, {t.c, t.a}}};
            for (const auto& [u, v] : edges) {
                if (edge_count[{std::min(u, v), std::max(u, v)}] != 1) continue;
                const double orient = (all[v] - all[u]).cross(all[p] - all[u]);
                if (orient > 0.0)
                    cavity.push_back({u, v, p});
                else if (orient < 0.0)
                    cavity.push_back({v, u, p});
                // Collinear: skip; the security pass in the Voronoi stage
                // recovers any neighbor lost here.
            }
        }
        tris = std::move(kept);
        tris.insert(tris.end(), cavity.begin(), cavity.end());
    }

    std::vector<DelaunayTri> real;
    for (const DelaunayTri& t : tris)
        if (t.a < n && t.b < n && t.c < n) real.push_back(t);
    return real;
}

std::vector<std::set<int>> delaunay_neighbors(int n, const std::vector<DelaunayTri>& tris) {
    std::vector<std::set<int>> nbrs(n);
    for (const DelaunayTri& t : tris) {
        nbrs[t.a].insert(t.b);
        nbrs[t.a].insert(t.c);
        nbrs[t.b].insert(t.a);
        nbrs[t.b].insert(t.c);
        nbrs[t.c].insert(t.a);
        nbrs[t.c].insert(t.b);
    }
    return nbrs;
}

// ---------------------------------------------------------------------------
// Half-plane clipping
// ---------------------------------------------------------------------------

// Keeps the part of `poly` with normal . x <= offset (Sutherland-Hodgman
// against a single half-plane).
std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly, const Point2& normal,
                                   double offset, double tol) {
    std::vector<Point2> out;
    const int n = static_cast<int>(poly.size());
    out.reserve(n + 2);
    for (int i = 0; i < n; ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % n];
        const double dp = normal.dot(p) - offset;
        const double dq = normal.dot(q) - offset;
        const bool pin = dp <= tol;
        const bool qin = dq <= tol;
        if (pin) out.push_back(p);
        if (pin != qin) {
            const double t = dp / (dp - dq);
            out.push_back(p + (q - p) * t);
        }
    }
    // Drop near-coincident consecutive vertices introduced by cuts through
    // existing vertices.
    std::vector<Point2> cleaned;
    cleaned.reserve(out.size());
    for (const Point2& p : out) {
        if (cleaned.empty() || cleaned.back().distance(p) > tol) cleaned.push_back(p);
    }
    while (cleaned.size() > 1 && cleaned.front().distance(cleaned.back()) <= tol)
        cleaned.pop_back();
    return cleaned;
}

// Uniform grid over the seeds for radius queries in the security pass.
class SeedGrid {
  public:
    SeedGrid(const std::vector<Point2>& seeds, double cell)
        : seeds_(seeds), cell_(cell) {
        for (int i = 0; i < static_cast<int>(seeds.size()); ++i)
            cells_[key(seeds[i])].push_back(i);
    }

    std::vector<int> within(const Point2& center, double radius) const {
        std::vector<int> found;
        const long long r = static_cast<long long>(std::ceil(radius / cell_)) + 1;
        const auto c = key(center);
        for (long long dx = -r; dx <= r; ++dx)
            for (long long dy = -r; dy <= r; ++dy) {
                auto it = cells_.find({c.first + dx, c.second + dy});
                if (it == cells_.end()) continue;
                for (int i : it->second)
                    if (seeds_[i].distance(center) <= radius) found.push_back(i);
            }
        std::sort(found.begin(), found.end());
        return found;
    }

  private:
    std::pair<long long, long long> key(const Point2& p) const {
        return {static_cast<long long>(std::floor(p.x / cell_)),
                static_cast<long long>(std::floor(p.y / cell_))};
    }
    const std::vector<Point2>& seeds_;
    double cell_;
    std::map<std::pair<long long, long long>, std::vector<int>> cells_;
};

// Merges cell vertices into a global node table with the given tolerance.
class NodeMerger {
  public:
    explicit NodeMerger(double tol) : tol_(std::max(tol, 1e-300)) {}

    int index_of(const Point2& p, std::vector<Point2>& nodes) {
        const auto c = key(p);
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = cells_.find({c.first + dx, c.second + dy});
                if (it == cells_.end()) continue;
                for (int i : it->second)
                    if (nodes[i].distance(p) <= tol_) return i;
            }
        const int idx = static_cast<int>(nodes.size());
        nodes.push_back(p);
        cells_[c].push_back(idx);
        return idx;
    }

  private:
    std::pair<long long, long long> key(const Point2& p) const {
        return {static_cast<long long>(std::floor(p.x / tol_)),
                static_cast<long long>(std::floor(p.y / tol_))};
    }
    double tol_;
    std::map<std::pair<long long, long long>, std::vector<int>> cells_;
};

} // namespace

// ---------------------------------------------------------------------------
// Region
// ---------------------------------------------------------------------------

Region::Region(std::vector<Point2> boundary) : boundary_(std::move(boundary)) {
    if (boundary_.size() < 3) throw DegenerateElement("region boundary has fewer than 3 points");
    for (const Point2& p : boundary_)
        if (!p.is_finite()) throw DegenerateElement("region boundary has a non-finite point");
    if (signed_area(boundary_) < 0.0) std::reverse(boundary_.begin(), boundary_.end());
    if (!is_simple_polygon(boundary_)) throw MeshingFailure("region boundary is not simple");
}

bool Region::is_rectangle(double rel_tol) const {
    if (boundary_.size() != 4) return false;
    const double s = bbox().scale();
    for (int i = 0; i < 4; ++i) {
        const Point2 e1 = boundary_[(i + 1) % 4] - boundary_[i];
        const Point2 e2 = boundary_[(i + 2) % 4] - boundary_[(i + 1) % 4];
        if (std::abs(e1.dot(e2)) > rel_tol * s * s) return false;
    }
    return true;
}

bool Region::contains(const Point2& p, double tol) const {
    const int n = static_cast<int>(boundary_.size());
    if (tol < 0.0) tol = 1e-12 * bbox().diagonal();
    // On-boundary points are inside.
    for (int i = 0; i < n; ++i) {
        const Point2& a = boundary_[i];
        const Point2& b = boundary_[(i + 1) % n];
        const Point2 d = b - a;
        const double len2 = d.squared_norm();
        if (len2 == 0.0) continue;
        const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
        if (p.distance(a + d * t) <= tol) return true;
    }
    // Crossing test with a slightly irrational direction to dodge vertices.
    bool inside = false;
    for (int i = 0; i < n; ++i) {
        const Point2& a = boundary_[i];
        const Point2& b = boundary_[(i + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

// ---------------------------------------------------------------------------
// Seed generation
// ---------------------------------------------------------------------------

std::vector<Point2> generate_seeds(const Region& region, const SeedRule& rule, int nx, int ny) {
    if (nx < 1 || ny < 1) throw EmptySeedSet("nx and ny must be at least 1");
    if (rule.noise && (rule.noise->min_noise > rule.noise->max_noise))
        throw EmptySeedSet("noise interval is empty");

    const BoundingBox box = region.bbox();
    const double dx = box.width() / nx;
    const double dy = box.height() / ny;
    std::mt19937_64 rng(rule.rng_seed);

    // Grid layout: either the (nx+1) x (ny+1) division points or the nx x ny
    // cell centers.
    std::vector<Point2> raw;
    const int icount = rule.centered ? nx : nx + 1;
    const int jcount = rule.centered ? ny : ny + 1;
    const double x0 = rule.centered ? box.min.x + 0.5 * dx : box.min.x;
    const double y0 = rule.centered ? box.min.y + 0.5 * dy : box.min.y;

    for (int j = 0; j < jcount; ++j) {
        for (int i = 0; i < icount; ++i) {
            Point2 p{x0 + i * dx, y0 + j * dy};
            switch (rule.kind) {
                case SeedKind::Constant:
                    break;
                case SeedKind::RandomDouble: {
                    const auto rx = rule.random_range_x.value_or(std::make_pair(box.min.x, box.max.x));
                    const auto ry = rule.random_range_y.value_or(std::make_pair(box.min.y, box.max.y));
                    if (rx.first > rx.second || ry.first > ry.second)
                        throw EmptySeedSet("random_double range is empty");
                    p.x = uniform(rng, rx.first, rx.second);
                    p.y = uniform(rng, ry.first, ry.second);
                    break;
                }
                case SeedKind::ConstantAlternating:
                    if (j % 2 == 1) p.x += 0.5 * dx;
                    break;
                case SeedKind::Sine:
                    p.y += 0.5 * dy * std::sin(2.0 * M_PI * (p.x - box.min.x) / box.width());
                    break;
            }
            if (rule.noise) {
                p.x += uniform(rng, rule.noise->min_noise, rule.noise->max_noise);
                p.y += uniform(rng, rule.noise->min_noise, rule.noise->max_noise);
            }
            raw.push_back(p);
        }
    }

    std::vector<Point2> seeds;
    const double dedup = 1e-12 * std::max(box.diagonal(), 1.0);
    for (const Point2& p : raw) {
        if (!region.contains(p)) continue;
        bool dup = false;
        for (const Point2& q : seeds)
            if (q.distance(p) <= dedup) {
                dup = true;
                break;
            }
        if (!dup) seeds.push_back(p);
    }
    if (seeds.empty()) throw EmptySeedSet("all seeds fell outside the region");
    return seeds;
}

// ---------------------------------------------------------------------------
// Voronoi meshing
// ---------------------------------------------------------------------------

Mesh build_voronoi_mesh(const Region& region, const std::vector<Point2>& seeds) {
    const int n = static_cast<int>(seeds.size());
    if (n < 3) throw MeshingFailure("need at least 3 seeds");
    for (const Point2& s : seeds)
        if (!s.is_finite()) throw MeshingFailure("non-finite seed coordinate");

    const BoundingBox box = region.bbox();
    const double diag = box.diagonal();
    const double clip_tol = 1e-12 * diag;
    const double merge_tol = 1e-10 * diag;

    // Collinearity check anchored on the first well-separated seed pair.
    {
        const BoundingBox sbox = bounding_box(seeds);
        const double span2 = std::max(sbox.diagonal() * sbox.diagonal(), 1e-300);
        int anchor = -1;
        for (int i = 1; i < n && anchor < 0; ++i)
            if (seeds[i].distance(seeds[0]) > 1e-12 * sbox.diagonal()) anchor = i;
        bool non_collinear = false;
        if (anchor > 0) {
            const Point2 d0 = seeds[anchor] - seeds[0];
            for (int i = 1; i < n && !non_collinear; ++i)
                if (std::abs(d0.cross(seeds[i] - seeds[0])) > 1e-12 * span2) non_collinear = true;
        }
        if (!non_collinear) throw MeshingFailure("seeds are collinear");
    }

    const std::vector<DelaunayTri> tris = delaunay_triangulation(seeds);
    std::vector<std::set<int>> nbrs = delaunay_neighbors(n, tris);

    const double grid_cell = std::max(diag / std::sqrt(static_cast<double>(n)), 1e-12);
    const SeedGrid grid(seeds, grid_cell);
    const bool convex_region = region.is_convex();

    Mesh mesh;
    NodeMerger merger(merge_tol);
    for (int i = 0; i < n; ++i) {
        std::vector<Point2> cell = region.boundary();
        std::set<int> applied;
        auto apply = [&](int j) {
            const Point2 d = seeds[j] - seeds[i];
            const double offset = d.dot((seeds[i] + seeds[j]) * 0.5);
            cell = clip_halfplane(cell, d, offset, clip_tol);
            applied.insert(j);
        };
        for (int j : nbrs[i]) {
            if (cell.size() < 3) break;
            apply(j);
        }
        // Security pass: any seed closer than twice the cell's covering
        // radius could still cut the cell; add the ones the triangulation
        // missed until a fixed point is reached.
        bool grew = true;
        while (grew && cell.size() >= 3) {
            grew = false;
            double radius = 0.0;
            for (const Point2& v : cell) radius = std::max(radius, v.distance(seeds[i]));
            for (int j : grid.within(seeds[i], 2.0 * radius + clip_tol)) {
                if (j == i || applied.count(j)) continue;
                apply(j);
                grew = true;
                if (cell.size() < 3) break;
            }
        }
        if (cell.size() < 3) continue;

        double cell_area;
        try {
            cell_area = signed_area(cell);
        } catch (const DegenerateElement&) {
            continue; // sliver below the degeneracy tolerance
        }
        if (cell_area <= 0.0)
            throw MeshingFailure("clipping produced an inverted cell", i);
        if (convex_region) {
            if (!is_convex_polygon(cell, 1e-12 * std::max(1.0, diag * diag)))
                throw MeshingFailure("clipped cell is not convex in a convex region", i);
        } else if (!is_simple_polygon(cell)) {
            throw MeshingFailure("clipping produced a non-simple cell", i);
        }

        Polygon poly;
        for (const Point2& v : cell) {
            const int idx = merger.index_of(v, mesh.nodes);
            if (poly.node_indices.empty() || poly.node_indices.back() != idx)
                poly.node_indices.push_back(idx);
        }
        while (poly.node_indices.size() > 1 && poly.node_indices.front() == poly.node_indices.back())
            poly.node_indices.pop_back();
        std::set<int> distinct(poly.node_indices.begin(), poly.node_indices.end());
        if (distinct.size() < poly.node_indices.size())
            throw MeshingFailure("clipping produced a non-simple cell", i);
        if (poly.node_indices.size() < 3)
            throw MeshingFailure("cell collapsed under node merging", i);
        mesh.elements.push_back(std::move(poly));
    }

    if (mesh.elements.empty()) throw MeshingFailure("no cell with positive area");
    rebuild_boundary_segments(mesh);
    validate_mesh(mesh);
    return mesh;
}

// ---------------------------------------------------------------------------
// Structured triangular meshing
// ---------------------------------------------------------------------------

Mesh build_triangular_mesh(const Region& region, int nx, int ny) {
    if (!region.is_rectangle())
        throw Unsupported("triangular meshing requires a rectangular region");
    if (nx < 1 || ny < 1) throw Unsupported("nx and ny must be at least 1");

    const std::vector<Point2>& c = region.boundary();
    Mesh mesh;
    auto node_id = [nx](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            const double u = static_cast<double>(i) / nx;
            const double v = static_cast<double>(j) / ny;
            // Bilinear blend of the four corners; exact for rectangles.
            const Point2 p = c[0] * ((1 - u) * (1 - v)) + c[1] * (u * (1 - v)) +
                             c[2] * (u * v) + c[3] * ((1 - u) * v);
            mesh.nodes.push_back(p);
        }
    }
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int n00 = node_id(i, j);
            const int n10 = node_id(i + 1, j);
            const int n01 = node_id(i, j + 1);
            const int n11 = node_id(i + 1, j + 1);
            mesh.elements.push_back(Polygon{{n00, n10, n11}});
            mesh.elements.push_back(Polygon{{n00, n11, n01}});
        }
    }
    rebuild_boundary_segments(mesh);
    validate_mesh(mesh);
    return mesh;
}

} // namespace polyvem
