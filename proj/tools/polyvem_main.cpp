// Command-line front end: mesh generation, benchmark solves, error norms,
// convergence studies and the VEM/FEM comparison.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "polyvem/cases.hpp"
#include "polyvem/mesh_io.hpp"
#include "polyvem/mesher.hpp"

using namespace polyvem;

namespace {

struct MeshOptions {
    double x0 = 0.0, y0 = 0.0;
    double width = 1.0, height = 1.0;
    std::string rule = "constant";
    bool centered = false;
    int nx = 8, ny = 8;
    double noise_min = 0.0, noise_max = 0.0;
    std::uint64_t seed = 0;
};

void add_mesh_options(CLI::App* cmd, MeshOptions& opt) {
    cmd->add_option("--x0", opt.x0, "Domain origin x");
    cmd->add_option("--y0", opt.y0, "Domain origin y");
    cmd->add_option("--width", opt.width, "Domain width");
    cmd->add_option("--height", opt.height, "Domain height");
    cmd->add_option("--rule", opt.rule, "Seed rule: constant|random|alternating|sine")
        ->check(CLI::IsMember({"constant", "random", "alternating", "sine"}));
    cmd->add_flag("--centered", opt.centered, "Seeds on cell centers instead of grid points");
    cmd->add_option("--nx", opt.nx, "Horizontal divisions");
    cmd->add_option("--ny", opt.ny, "Vertical divisions");
    cmd->add_option("--noise-min", opt.noise_min, "Lower noise displacement bound");
    cmd->add_option("--noise-max", opt.noise_max, "Upper noise displacement bound");
    cmd->add_option("--seed", opt.seed, "Generator seed");
}

Region make_region(const MeshOptions& opt) {
    return Region({{opt.x0, opt.y0},
                   {opt.x0 + opt.width, opt.y0},
                   {opt.x0 + opt.width, opt.y0 + opt.height},
                   {opt.x0, opt.y0 + opt.height}});
}

SeedRule make_rule(const MeshOptions& opt) {
    SeedRule rule;
    if (opt.rule == "random")
        rule = SeedRule::random_double(opt.seed);
    else if (opt.rule == "alternating")
        rule = SeedRule::constant_alternating();
    else if (opt.rule == "sine")
        rule = SeedRule::sine();
    rule.rng_seed = opt.seed;
    if (opt.centered) rule.centered = true;
    if (opt.noise_min != 0.0 || opt.noise_max != 0.0)
        rule.noise = SeedNoise{opt.noise_min, opt.noise_max};
    return rule;
}

Mesh generate(const Region& region, const MeshOptions& opt) {
    Mesh mesh = build_voronoi_mesh(region, generate_seeds(region, make_rule(opt), opt.nx, opt.ny));
    mesh.rng_seed = opt.seed;
    return mesh;
}

BenchmarkCase named_case(const std::string& name, double gamma_unused, PlaneState plane) {
    (void)gamma_unused;
    if (name == "beam") {
        BenchmarkCase c = cantilever_beam_case();
        c.material->plane_state = plane;
        return c;
    }
    if (name == "poisson") return poisson_manufactured();
    throw Error("unknown case '" + name + "' (expected beam or poisson)");
}

void print_report(const std::string& tag, const ErrorReport& report) {
    std::printf("%s: dofs %d, h_max %.6g, L2 %.6e, H1 %.6e\n", tag.c_str(), report.dof_count,
                report.h_max, report.l2_relative, report.h1_relative);
}

std::string out_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir + "/" + name;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Virtual element solvers on polygonal meshes"};
    app.require_subcommand(1);

    std::string out_dir = ".";
    double gamma = 1.0;
    std::string plane = "strain";
    app.add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
    app.add_option("--gamma", gamma, "Stability scaling factor")->capture_default_str();
    app.add_option("--plane", plane, "Plane state: strain|stress")
        ->check(CLI::IsMember({"strain", "stress"}))
        ->capture_default_str();

    // mesh
    auto* mesh_cmd = app.add_subcommand("mesh", "Generate a polygonal mesh and write it");
    MeshOptions mesh_opt;
    add_mesh_options(mesh_cmd, mesh_opt);
    std::string mesh_out = "mesh.txt";
    bool mesh_triangular = false;
    mesh_cmd->add_option("--out", mesh_out, "Output file name")->capture_default_str();
    mesh_cmd->add_flag("--triangular", mesh_triangular, "Structured triangular mesh instead");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Solve a benchmark case or a mesh file");
    MeshOptions solve_mesh_opt;
    add_mesh_options(solve_cmd, solve_mesh_opt);
    std::string solve_case, solve_mesh_file, solve_polymesher_file;
    std::string method_name = "vem";
    double young = 1e7, poisson_ratio = 0.3;
    solve_cmd->add_option("--case", solve_case, "Built-in case: beam|poisson");
    solve_cmd->add_option("--mesh", solve_mesh_file, "Canonical mesh file (may carry constraints)");
    solve_cmd->add_option("--polymesher", solve_polymesher_file, "PolyMesher export file");
    solve_cmd->add_option("--method", method_name, "vem|fem")
        ->check(CLI::IsMember({"vem", "fem"}))
        ->capture_default_str();
    solve_cmd->add_option("--young", young, "Young's modulus for file input")->capture_default_str();
    solve_cmd->add_option("--poisson-ratio", poisson_ratio, "Poisson's ratio for file input")
        ->capture_default_str();

    // norms
    auto* norms_cmd = app.add_subcommand("norms", "Error norms of a stored solution");
    std::string norms_case = "poisson", norms_mesh_file, norms_solution_file,
                norms_method = "vem";
    norms_cmd->add_option("--case", norms_case, "beam|poisson")->required();
    norms_cmd->add_option("--mesh", norms_mesh_file, "Mesh file")->required();
    norms_cmd->add_option("--solution", norms_solution_file, "Solution CSV")->required();
    norms_cmd->add_option("--method", norms_method, "vem|fem")
        ->check(CLI::IsMember({"vem", "fem"}));

    // convergence
    auto* conv_cmd = app.add_subcommand("convergence", "Refinement study for a case");
    MeshOptions conv_mesh_opt;
    conv_mesh_opt.centered = true;
    conv_mesh_opt.nx = 4;
    conv_mesh_opt.ny = 4;
    add_mesh_options(conv_cmd, conv_mesh_opt);
    std::string conv_case = "poisson", conv_method = "vem";
    int conv_levels = 4;
    conv_cmd->add_option("--case", conv_case, "beam|poisson")->capture_default_str();
    conv_cmd->add_option("--method", conv_method, "vem|fem")
        ->check(CLI::IsMember({"vem", "fem"}))
        ->capture_default_str();
    conv_cmd->add_option("--levels", conv_levels, "Number of h-halving levels")
        ->capture_default_str();

    // compare-fem
    auto* cmp_cmd = app.add_subcommand("compare-fem", "Beam accuracy and timing, VEM versus FEM");
    int cmp_levels = 4, cmp_nx = 8, cmp_ny = 4;
    cmp_cmd->add_option("--levels", cmp_levels, "Refinement levels")->capture_default_str();
    cmp_cmd->add_option("--nx", cmp_nx, "Coarsest horizontal divisions")->capture_default_str();
    cmp_cmd->add_option("--ny", cmp_ny, "Coarsest vertical divisions")->capture_default_str();

    // patch-test
    auto* patch_cmd = app.add_subcommand("patch-test", "Linear consistency check");
    MeshOptions patch_mesh_opt;
    patch_mesh_opt.rule = "random";
    patch_mesh_opt.nx = 5;
    patch_mesh_opt.ny = 5;
    patch_mesh_opt.seed = 2024;
    add_mesh_options(patch_cmd, patch_mesh_opt);

    CLI11_PARSE(app, argc, argv);

    const PlaneState plane_state = plane == "strain" ? PlaneState::PlaneStrain : PlaneState::PlaneStress;

    try {
        if (mesh_cmd->parsed()) {
            const Region region = make_region(mesh_opt);
            const Mesh mesh = mesh_triangular
                                  ? build_triangular_mesh(region, mesh_opt.nx, mesh_opt.ny)
                                  : generate(region, mesh_opt);
            MeshFile file;
            file.mesh = mesh;
            write_file_atomic(out_path(out_dir, mesh_out), render_mesh_file(file));
            std::printf("wrote %s: %zu nodes, %zu elements\n",
                        out_path(out_dir, mesh_out).c_str(), mesh.nodes.size(),
                        mesh.elements.size());
            return 0;
        }

        if (solve_cmd->parsed()) {
            const Method method = method_name == "fem" ? Method::Fem : Method::Vem;
            BenchmarkCase problem;
            Mesh mesh;
            std::vector<std::pair<int, double>> extra_loads;

            if (!solve_polymesher_file.empty()) {
                const PolyMesherFile pm = parse_polymesher(read_file(solve_polymesher_file));
                mesh = pm.mesh;
                problem.name = "polymesher-import";
                problem.n_components = 2;
                problem.material = Material{young, poisson_ratio, plane_state};
                problem.constraints = pm.essential;
                const DofMap dofs(2, static_cast<int>(mesh.nodes.size()));
                for (const auto& [node, fx, fy] : pm.loads) {
                    extra_loads.emplace_back(dofs.dof(node, 0), fx);
                    extra_loads.emplace_back(dofs.dof(node, 1), fy);
                }
            } else if (!solve_case.empty()) {
                problem = named_case(solve_case, gamma, plane_state);
                if (!solve_mesh_file.empty()) {
                    mesh = parse_mesh_file(read_file(solve_mesh_file)).mesh;
                } else if (method == Method::Fem) {
                    mesh = build_triangular_mesh(problem.region, solve_mesh_opt.nx,
                                                 solve_mesh_opt.ny);
                } else {
                    MeshOptions opt = solve_mesh_opt;
                    const BoundingBox box = problem.region.bbox();
                    opt.x0 = box.min.x;
                    opt.y0 = box.min.y;
                    opt.width = box.width();
                    opt.height = box.height();
                    mesh = generate(problem.region, opt);
                }
            } else if (!solve_mesh_file.empty()) {
                const MeshFile file = parse_mesh_file(read_file(solve_mesh_file));
                mesh = file.mesh;
                problem.name = "file-input";
                problem.n_components = 2;
                problem.material = Material{young, poisson_ratio, plane_state};
                problem.constraints = mesh_file_constraints(file);
            } else {
                throw Error("solve needs --case, --mesh or --polymesher");
            }

            const RunResult result = run_case(problem, mesh, method, extra_loads, gamma);
            MeshFile out_mesh;
            out_mesh.mesh = mesh;
            write_file_atomic(out_path(out_dir, "mesh.txt"), render_mesh_file(out_mesh));
            write_file_atomic(out_path(out_dir, "solution.csv"),
                              render_solution_csv(mesh, result.solution, problem.n_components));
            std::printf("wrote %s and %s\n", out_path(out_dir, "mesh.txt").c_str(),
                        out_path(out_dir, "solution.csv").c_str());
            if (result.report) print_report(problem.name + " [" + method_name + "]", *result.report);
            return 0;
        }

        if (norms_cmd->parsed()) {
            const BenchmarkCase problem = named_case(norms_case, gamma, plane_state);
            const Mesh mesh = parse_mesh_file(read_file(norms_mesh_file)).mesh;
            const Eigen::VectorXd solution =
                parse_solution_csv(read_file(norms_solution_file), problem.n_components);
            const Method method = norms_method == "fem" ? Method::Fem : Method::Vem;
            ConstitutiveMatrix d;
            const ConstitutiveMatrix* dp = nullptr;
            if (problem.n_components == 2) {
                d = material_matrix(*problem.material);
                dp = &d;
            }
            if (!problem.exact) throw Error("case has no exact solution");
            print_report(norms_case, error_report(mesh, solution, *problem.exact, dp, method));
            return 0;
        }

        if (conv_cmd->parsed()) {
            const BenchmarkCase problem = named_case(conv_case, gamma, plane_state);
            const Method method = conv_method == "fem" ? Method::Fem : Method::Vem;
            std::string csv = "level,h_max,dofs,l2_relative,h1_relative\n";
            double prev_l2 = 0.0, prev_h1 = 0.0;
            char line[160];
            for (int level = 0; level < conv_levels; ++level) {
                const int nx = conv_mesh_opt.nx << level;
                const int ny = conv_mesh_opt.ny << level;
                Mesh mesh;
                if (method == Method::Fem) {
                    mesh = build_triangular_mesh(problem.region, nx, ny);
                } else {
                    MeshOptions opt = conv_mesh_opt;
                    opt.nx = nx;
                    opt.ny = ny;
                    const BoundingBox box = problem.region.bbox();
                    opt.x0 = box.min.x;
                    opt.y0 = box.min.y;
                    opt.width = box.width();
                    opt.height = box.height();
                    mesh = generate(problem.region, opt);
                }
                const RunResult run = run_case(problem, mesh, method, gamma);
                const ErrorReport& r = *run.report;
                std::snprintf(line, sizeof(line), "%d,%.17g,%d,%.17g,%.17g\n", level, r.h_max,
                              r.dof_count, r.l2_relative, r.h1_relative);
                csv += line;
                if (level > 0)
                    std::printf("level %d: L2 ratio %.2f, H1 ratio %.2f\n", level,
                                prev_l2 / r.l2_relative, prev_h1 / r.h1_relative);
                print_report("level " + std::to_string(level), r);
                prev_l2 = r.l2_relative;
                prev_h1 = r.h1_relative;
            }
            write_file_atomic(out_path(out_dir, "convergence.csv"), csv);
            std::printf("wrote %s\n", out_path(out_dir, "convergence.csv").c_str());
            return 0;
        }

        if (cmp_cmd->parsed()) {
            BenchmarkCase beam = cantilever_beam_case();
            beam.material->plane_state = plane_state;
            std::string csv = "level,dofs,h1_vem,h1_fem,seconds_vem,seconds_fem\n";
            std::vector<double> tv, tf;
            char line[200];
            for (int level = 0; level < cmp_levels; ++level) {
                const int nx = cmp_nx << level;
                const int ny = cmp_ny << level;
                const auto t0 = std::chrono::steady_clock::now();
                const Mesh vmesh = build_voronoi_mesh(
                    beam.region,
                    generate_seeds(beam.region, SeedRule::constant().with_centered(), nx, ny));
                const RunResult vr = run_case(beam, vmesh, Method::Vem, gamma);
                const auto t1 = std::chrono::steady_clock::now();
                const Mesh fmesh = build_triangular_mesh(beam.region, nx, ny);
                const RunResult fr = run_case(beam, fmesh, Method::Fem, gamma);
                const auto t2 = std::chrono::steady_clock::now();
                tv.push_back(std::chrono::duration<double>(t1 - t0).count());
                tf.push_back(std::chrono::duration<double>(t2 - t1).count());
                std::snprintf(line, sizeof(line), "%d,%d,%.17g,%.17g,%.6f,%.6f\n", level,
                              vr.report->dof_count, vr.report->h1_relative, fr.report->h1_relative,
                              tv.back(), tf.back());
                csv += line;
                std::printf("level %d: dofs %d, H1 vem %.4e, H1 fem %.4e\n", level,
                            vr.report->dof_count, vr.report->h1_relative, fr.report->h1_relative);
            }
            const double tmax = std::max(*std::max_element(tv.begin(), tv.end()),
                                         *std::max_element(tf.begin(), tf.end()));
            std::printf("normalized times (max %.3fs):", tmax);
            for (std::size_t i = 0; i < tv.size(); ++i)
                std::printf(" [vem %.2f fem %.2f]", tv[i] / tmax, tf[i] / tmax);
            std::printf("\n");
            write_file_atomic(out_path(out_dir, "compare_fem.csv"), csv);
            std::printf("wrote %s\n", out_path(out_dir, "compare_fem.csv").c_str());
            return 0;
        }

        if (patch_cmd->parsed()) {
            const Region region = make_region(patch_mesh_opt);
            const Mesh mesh = generate(region, patch_mesh_opt);
            Eigen::Matrix2d g;
            g << 0.2, 0.3, 0.15, 0.25;
            const BenchmarkCase patch = linear_patch_case(
                {0.1, -0.05}, g, Material{1.0, 0.3, plane_state});
            const RunResult run = run_case(patch, mesh, Method::Vem, gamma);
            print_report("patch-test", *run.report);
            const bool ok = run.report->l2_relative < 1e-10 && run.report->h1_relative < 1e-10;
            std::printf("patch test %s\n", ok ? "passed" : "FAILED");
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
