#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polyvem/mesh.hpp"

namespace polyvem {

// Simple polygonal domain without holes, stored counterclockwise.
class Region {
  public:
    explicit Region(std::vector<Point2> boundary);

    const std::vector<Point2>& boundary() const { return boundary_; }
    BoundingBox bbox() const { return bounding_box(boundary_); }
    double area() const { return signed_area(boundary_); }
    bool is_convex() const { return is_convex_polygon(boundary_); }
    bool is_rectangle(double rel_tol = 1e-9) const;

    // Closed containment test: boundary points count as inside.
    bool contains(const Point2& p, double tol = -1.0) const;

  private:
    std::vector<Point2> boundary_;
};

enum class SeedKind { Constant, RandomDouble, ConstantAlternating, Sine };

struct SeedNoise {
    double min_noise = 0.0;
    double max_noise = 0.0;
};

// Seed placement rule over the region's bounding box. nx and ny count grid
// divisions; by default seeds sit on the (nx+1) x (ny+1) grid points, with
// `centered` they sit on the nx x ny cell centers (the division count is
// ambiguous upstream, so both layouts are available). Seeds displaced outside
// the region are discarded.
struct SeedRule {
    SeedKind kind = SeedKind::Constant;
    std::optional<std::pair<double, double>> random_range_x; // defaults to the bbox extent
    std::optional<std::pair<double, double>> random_range_y;
    std::optional<SeedNoise> noise;
    std::uint64_t rng_seed = 0;
    bool centered = false;

    static SeedRule constant() { return {}; }
    static SeedRule random_double(std::uint64_t seed) {
        SeedRule r;
        r.kind = SeedKind::RandomDouble;
        r.rng_seed = seed;
        return r;
    }
    static SeedRule constant_alternating() {
        SeedRule r;
        r.kind = SeedKind::ConstantAlternating;
        return r;
    }
    static SeedRule sine() {
        SeedRule r;
        r.kind = SeedKind::Sine;
        return r;
    }
    SeedRule with_noise(double min_noise, double max_noise, std::uint64_t seed) const {
        SeedRule r = *this;
        r.noise = SeedNoise{min_noise, max_noise};
        r.rng_seed = seed;
        return r;
    }
    SeedRule with_centered() const {
        SeedRule r = *this;
        r.centered = true;
        return r;
    }
};

std::vector<Point2> generate_seeds(const Region& region, const SeedRule& rule, int nx, int ny);

// Voronoi diagram of the seeds clipped against the region: one element per
// seed whose clipped cell has positive area. Cells are obtained from the dual
// of the Delaunay triangulation of the seeds; each cell is cut out of the
// region polygon by the perpendicular-bisector half-planes of its Delaunay
// neighbors, with a security-radius pass that adds any bisector the
// triangulation missed in degenerate (cocircular) configurations.
Mesh build_voronoi_mesh(const Region& region, const std::vector<Point2>& seeds);

// Structured triangulation of a rectangular region: nx x ny cells, each split
// into two triangles.
Mesh build_triangular_mesh(const Region& region, int nx, int ny);

} // namespace polyvem
