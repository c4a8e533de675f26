#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "polyvem/mesh.hpp"
#include "polyvem/model.hpp"

namespace polyvem {

// Canonical mesh text format, line oriented with '#' comments:
//
//   veamy-mesh 1
//   nodes <n>
//   <x> <y>                      n lines, 17 significant digits
//   elements <m>
//   <k> <i0> ... <i(k-1)>        m lines, 0-based node indices, CCW
//   essential <p>                optional block
//   node <idx> <axis: x|y|b> <value>
//   natural <q>                  optional block
//   segment <i0> <i1> <tx> <ty>
//
// parse(render(m)) reproduces coordinates and connectivity exactly.

struct EssentialLine {
    int node = 0;
    char axis = 'b'; // 'x', 'y' or 'b'
    double value = 0.0;
};

struct NaturalLine {
    int n0 = 0;
    int n1 = 0;
    double tx = 0.0;
    double ty = 0.0;
};

struct MeshFile {
    Mesh mesh;
    std::vector<EssentialLine> essential;
    std::vector<NaturalLine> natural;
};

std::string render_mesh_file(const MeshFile& file);
MeshFile parse_mesh_file(const std::string& text);

// Geometric constraints equivalent to the file's constraint blocks.
std::vector<Constraint> mesh_file_constraints(const MeshFile& file);

// PolyMesher-style export, the reader's contract:
//
//   <NNodes> <NElems>
//   <x> <y>                      NNodes lines
//   <k> <v1> ... <vk>            NElems lines, 1-based indices
//   supp <ns>
//   <node> <fx_flag> <fy_flag>   flags in {0,1}
//   load <nl>
//   <node> <Fx> <Fy>
//
// Support rows become zero-valued essential point constraints on the flagged
// axes; load rows become concentrated nodal loads.
struct PolyMesherFile {
    Mesh mesh;
    std::vector<Constraint> essential;
    std::vector<std::tuple<int, double, double>> loads; // 0-based node, Fx, Fy
};

PolyMesherFile parse_polymesher(const std::string& text);

// Solution table `node,x,y,u1[,u2]` with 17 significant digits.
std::string render_solution_csv(const Mesh& mesh, const Eigen::VectorXd& solution,
                                int n_components);
Eigen::VectorXd parse_solution_csv(const std::string& text, int n_components);

// Writes via a temporary file in the same directory plus an atomic rename, so
// failures never leave partial output behind.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace polyvem
