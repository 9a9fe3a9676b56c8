// Serial vs OpenMP timings for the four parallel kernels. Each pair runs the
// same workload through the public entry point and its serial reference.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include <eqgeo/bifunction.hpp>
#include <eqgeo/convex_body.hpp>
#include <eqgeo/equilibrium.hpp>
#include <eqgeo/geometry.hpp>
#include <eqgeo/oracle.hpp>
#include <eqgeo/projection.hpp>
#include <eqgeo/rng.hpp>
#include <eqgeo/vec.hpp>

namespace {

using namespace eqgeo;

std::vector<Point> random_points(Rng& rng, std::size_t dim, std::size_t count, double radius) {
    std::vector<Point> pts;
    pts.reserve(count);
    Point lo(dim, -radius), hi(dim, radius);
    while (pts.size() < count) pts.push_back(rng.point_in_box(lo, hi));
    return pts;
}

struct ProjectionWorkload {
    ConvexBody body;
    std::vector<Point> queries;
};

const ProjectionWorkload& projection_workload() {
    static const ProjectionWorkload w = [] {
        Rng rng(11);
        auto gens = random_points(rng, 3, 32, 2.0);
        std::vector<Point> queries;
        Point lo(3, -6.0), hi(3, 6.0);
        for (int i = 0; i < 512; ++i) queries.push_back(rng.point_in_box(lo, hi));
        return ProjectionWorkload{ConvexBody::polytope(std::move(gens)), std::move(queries)};
    }();
    return w;
}

struct ExtremeWorkload {
    ConvexBody body;
};

const ExtremeWorkload& extreme_workload() {
    static const ExtremeWorkload w = [] {
        Rng rng(12);
        auto gens = random_points(rng, 3, 48, 2.0);
        // Pad with hull points so the pruning loop has real work to discard.
        const std::size_t vertex_count = gens.size();
        while (gens.size() < vertex_count + 80) {
            Point p(3, 0.0);
            double total = 0.0;
            for (const auto& v : gens) {
                const double wgt = rng.uniform();
                total += wgt;
                for (std::size_t k = 0; k < 3; ++k) p[k] += wgt * v[k];
            }
            for (auto& c : p) c /= total;
            gens.push_back(std::move(p));
        }
        return ExtremeWorkload{ConvexBody::polytope(std::move(gens))};
    }();
    return w;
}

struct EqWorkload {
    Bifunction g;
    std::vector<Point> candidates;
    std::vector<Point> testers;
};

const EqWorkload& eq_workload() {
    static const EqWorkload w = [] {
        const ConvexBody square =
            ConvexBody::polytope({{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}});
        BifunctionSpec spec;
        spec.kind = BifunctionSpec::Kind::separable_sum;
        spec.phi.kind = ObjectiveSpec::Kind::sq_norm;
        spec.phi.anchor = {0.3, -0.2};
        spec.psi.kind = ObjectiveSpec::Kind::affine;
        spec.psi.coeffs = {{0.7, -0.4}};
        spec.psi.offsets = {0.1};
        spec.shift = 1.2;
        return EqWorkload{spec.instantiate(), make_grid(square, 0.1).points,
                          make_grid(square, 0.05).points};
    }();
    return w;
}

const ConvexBody& grid_body() {
    static const ConvexBody disk = ConvexBody::ball({0.0, 0.0}, 1.0);
    return disk;
}

void BM_batch_project(benchmark::State& state) {
    const auto& w = projection_workload();
    for (auto _ : state) {
        auto results = batch_project(w.body, w.queries);
        benchmark::DoNotOptimize(results.data());
    }
}
BENCHMARK(BM_batch_project);

void BM_batch_project_serial(benchmark::State& state) {
    const auto& w = projection_workload();
    for (auto _ : state) {
        auto results = serial::batch_project(w.body, w.queries);
        benchmark::DoNotOptimize(results.data());
    }
}
BENCHMARK(BM_batch_project_serial);

void BM_extreme_points(benchmark::State& state) {
    const auto& w = extreme_workload();
    for (auto _ : state) {
        auto vertices = extreme_points(w.body);
        benchmark::DoNotOptimize(vertices.data());
    }
}
BENCHMARK(BM_extreme_points);

void BM_extreme_points_serial(benchmark::State& state) {
    const auto& w = extreme_workload();
    for (auto _ : state) {
        auto vertices = serial::extreme_points(w.body);
        benchmark::DoNotOptimize(vertices.data());
    }
}
BENCHMARK(BM_extreme_points_serial);

void BM_eq_scan(benchmark::State& state) {
    const auto& w = eq_workload();
    for (auto _ : state) {
        auto rep = eq_set(w.g, w.candidates, w.testers);
        benchmark::DoNotOptimize(rep.solutions.data());
    }
}
BENCHMARK(BM_eq_scan);

void BM_eq_scan_serial(benchmark::State& state) {
    const auto& w = eq_workload();
    for (auto _ : state) {
        auto rep = serial::eq_set(w.g, w.candidates, w.testers);
        benchmark::DoNotOptimize(rep.solutions.data());
    }
}
BENCHMARK(BM_eq_scan_serial);

void BM_make_grid(benchmark::State& state) {
    for (auto _ : state) {
        auto grid = make_grid(grid_body(), 0.01);
        benchmark::DoNotOptimize(grid.points.data());
    }
}
BENCHMARK(BM_make_grid);

void BM_make_grid_serial(benchmark::State& state) {
    for (auto _ : state) {
        auto grid = serial::make_grid(grid_body(), 0.01);
        benchmark::DoNotOptimize(grid.points.data());
    }
}
BENCHMARK(BM_make_grid_serial);

}  // namespace

BENCHMARK_MAIN();
