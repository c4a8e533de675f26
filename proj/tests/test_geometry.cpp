#include <doctest.h>

#include <cmath>

#include "polyvem/geometry.hpp"
#include "test_support.hpp"

using namespace polyvem;
using testsupport::random_convex_polygon;

namespace {

const std::vector<Point2> kUnitSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
const std::vector<Point2> kTriangle{{0, 0}, {1, 0}, {0, 1}};

} // namespace

TEST_CASE("signed area of basic shapes") {
    CHECK(signed_area(kUnitSquare) == doctest::Approx(1.0));
    CHECK(signed_area(kTriangle) == doctest::Approx(0.5));
    const std::vector<Point2> cw{{0, 0}, {0, 1}, {1, 1}, {1, 0}};
    CHECK(signed_area(cw) == doctest::Approx(-1.0));
}

TEST_CASE("signed area rejects degenerate input") {
    CHECK_THROWS_AS(signed_area({{0, 0}, {1, 1}}), DegenerateElement);
    CHECK_THROWS_AS(signed_area({{0, 0}, {1, 0}, {2, 0}}), DegenerateElement);
    CHECK_THROWS_AS(signed_area({{0, 0}, {0, 0}, {0, 0}}), DegenerateElement);
}

TEST_CASE("node average is the vertex mean, not the centroid") {
    const Point2 sq = node_average(kUnitSquare);
    CHECK(sq.x == doctest::Approx(0.5));
    CHECK(sq.y == doctest::Approx(0.5));

    const Point2 tr = node_average(kTriangle);
    CHECK(tr.x == doctest::Approx(1.0 / 3.0));
    CHECK(tr.y == doctest::Approx(1.0 / 3.0));

    const std::vector<Point2> pentagon{{0, 0}, {2, 0}, {2, 1}, {1, 2}, {0, 1}};
    const Point2 p = node_average(pentagon);
    CHECK(p.x == doctest::Approx(1.0));
    CHECK(p.y == doctest::Approx(0.8));
    // The two averaging notions differ here.
    const Point2 centroid = area_centroid(pentagon);
    CHECK(std::abs(centroid.y - p.y) > 1e-3);
}

TEST_CASE("edge normals point outward for CCW polygons") {
    const std::vector<Point2> normals = edge_normals(kUnitSquare);
    CHECK(normals[0].x == doctest::Approx(0.0));
    CHECK(normals[0].y == doctest::Approx(-1.0));
    CHECK(normals[1].x == doctest::Approx(1.0));
    CHECK(normals[1].y == doctest::Approx(0.0));

    const std::vector<Point2> tilted{{0, 0}, {1, 1}, {-1, 2}};
    const std::vector<Point2> n = edge_normals(tilted);
    CHECK(n[0].x == doctest::Approx(std::sqrt(2.0) / 2.0));
    CHECK(n[0].y == doctest::Approx(-std::sqrt(2.0) / 2.0));

    CHECK_THROWS_AS(edge_normals({{0, 0}, {0, 0}, {1, 0}}), DegenerateElement);
}

TEST_CASE("fan triangulation partitions the polygon") {
    CHECK(fan_triangulate(kTriangle).size() == 1);

    const std::vector<Triangle> square_fan = fan_triangulate(kUnitSquare);
    CHECK(square_fan.size() == 4);
    for (const Triangle& t : square_fan) CHECK(t.signed_area() == doctest::Approx(0.25));

    std::vector<Point2> hexagon;
    for (int i = 0; i < 6; ++i)
        hexagon.push_back({std::cos(i * M_PI / 3.0), std::sin(i * M_PI / 3.0)});
    double sum = 0.0;
    for (const Triangle& t : fan_triangulate(hexagon)) sum += t.signed_area();
    CHECK(sum == doctest::Approx(1.5 * std::sqrt(3.0)));
}

TEST_CASE("fan triangulation detects non-star-shaped polygons") {
    const std::vector<Point2> u_shape{{0, 0}, {5, 0}, {5, 5}, {4, 5}, {4, 1}, {1, 1}, {1, 5}, {0, 5}};
    CHECK_THROWS_AS(fan_triangulate(u_shape), TriangulationFailure);
}

TEST_CASE("closed boundary and reversal identities on random polygons") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const std::vector<Point2> ring = random_convex_polygon(rng);
        const std::vector<Point2> normals = edge_normals(ring);
        const std::vector<double> lengths = edge_lengths(ring);

        Point2 total{0, 0};
        double perimeter = 0.0;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            total = total + normals[i] * lengths[i];
            perimeter += lengths[i];
        }
        CHECK(total.norm() <= 1e-12 * perimeter);

        std::vector<Point2> reversed(ring.rbegin(), ring.rend());
        CHECK(signed_area(reversed) == doctest::Approx(-signed_area(ring)));

        double fan_sum = 0.0;
        for (const Triangle& t : fan_triangulate(ring)) fan_sum += t.signed_area();
        CHECK(std::abs(fan_sum - signed_area(ring)) <= 1e-12 * signed_area(ring));
    }
}

TEST_CASE("element geometry bundles the per-polygon quantities") {
    std::vector<Point2> nodes = kUnitSquare;
    Polygon square{{0, 1, 2, 3}};
    const ElementGeometry geom = element_geometry(square, nodes);
    CHECK(geom.num_nodes() == 4);
    CHECK(geom.area == doctest::Approx(1.0));
    CHECK(geom.node_average.x == doctest::Approx(0.5));
    for (double len : geom.edge_lengths) CHECK(len == doctest::Approx(1.0));
    for (const Point2& n : geom.edge_normals) CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("collinear vertices are accepted, zero-length edges are not") {
    // Hanging-node chain on the bottom edge.
    const std::vector<Point2> with_midpoint{{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {0, 1}};
    const ElementGeometry geom = element_geometry(with_midpoint);
    CHECK(geom.area == doctest::Approx(1.0));
    CHECK(geom.num_nodes() == 5);
}
