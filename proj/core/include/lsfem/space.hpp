#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "lsfem/linalg.hpp"
#include "lsfem/mesh.hpp"

namespace lsfem {

using ScalarField = std::function<double(const Point&)>;

/// Boundary tags carrying an essential condition.
struct BcSelector {
    std::set<int> constrained_tags;
};

/// Continuous piecewise-linear nodal space on a mesh. Vertex k carries the
/// hat function phi_k; vertices on a constrained boundary piece are removed
/// from the unknowns and carry a prescribed value.
class FeSpace {
public:
    FeSpace(std::shared_ptr<const TriMesh> mesh, std::vector<int> free_dofs, std::vector<double> dirichlet);

    const TriMesh& mesh() const { return *mesh_; }
    const std::shared_ptr<const TriMesh>& mesh_ptr() const { return mesh_; }

    int total_dofs() const { return static_cast<int>(dirichlet_.size()); }
    int num_free() const { return static_cast<int>(free_.size()); }
    std::span<const int> free_dofs() const { return free_; }
    /// Position of vertex v among the free dofs, or -1 if constrained.
    int free_index(int v) const { return free_index_[static_cast<std::size_t>(v)]; }
    bool is_constrained(int v) const { return free_index(v) < 0; }
    /// Prescribed value per vertex (zero at free vertices).
    std::span<const double> dirichlet_values() const { return dirichlet_; }

    /// Total-dof vector: free entries from `free_coeffs`, constrained entries
    /// from the Dirichlet data.
    Vector expand(const Vector& free_coeffs) const;
    /// Same, with zero on constrained vertices.
    Vector expand_homogeneous(const Vector& free_coeffs) const;
    Vector restrict_to_free(const Vector& total) const;
    /// Selection matrix (num_free x total_dofs).
    SparseMatrix restriction() const;

private:
    std::shared_ptr<const TriMesh> mesh_;
    std::vector<int> free_;
    std::vector<int> free_index_;
    std::vector<double> dirichlet_;
};

/// Vertices touching a boundary edge whose tag is selected are constrained
/// and take the nodal value of `dirichlet_data` (zero when absent). Throws
/// InputError if a selected tag does not occur in the mesh.
FeSpace build_space(std::shared_ptr<const TriMesh> mesh, const BcSelector& bc,
                    const std::optional<ScalarField>& dirichlet_data = std::nullopt);

/// Linear map from coarse total-dof vectors to fine total-dof vectors that
/// represents the same piecewise-linear function.
struct Prolongation {
    SparseMatrix matrix;
};

/// `chain` lists the refinement steps from coarse to fine (empty when the
/// meshes coincide). Throws InputError if the sizes do not line up.
Prolongation build_prolongation(const FeSpace& coarse, const FeSpace& fine, std::span<const ParentMap> chain);
Prolongation build_prolongation(const FeSpace& coarse, const FeSpace& fine, const ParentMap& pm);

/// Index of a triangle containing p (barycentric tolerance 1e-12), or -1.
int locate(const TriMesh& mesh, const Point& p);

/// Value at p of the P1 function with total-dof coefficients `coeffs`.
/// Throws InputError if p is outside the mesh.
double eval(const FeSpace& space, const Vector& coeffs, const Point& p);
double eval(const TriMesh& mesh, const Vector& coeffs, const Point& p);

/// Nodal interpolant (total-dof vector).
Vector interpolate(const TriMesh& mesh, const ScalarField& f);

} // namespace lsfem
