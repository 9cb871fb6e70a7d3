#include "lsfem/space.hpp"

#include <string>

#include "lsfem/errors.hpp"

namespace lsfem {

FeSpace::FeSpace(std::shared_ptr<const TriMesh> mesh, std::vector<int> free_dofs, std::vector<double> dirichlet)
    : mesh_(std::move(mesh)), free_(std::move(free_dofs)), dirichlet_(std::move(dirichlet))
{
    if (!mesh_)
        throw InputError("FeSpace: null mesh");
    if (dirichlet_.size() != mesh_->num_vertices())
        throw InputError("FeSpace: Dirichlet vector size does not match vertex count");
    free_index_.assign(dirichlet_.size(), -1);
    for (std::size_t k = 0; k < free_.size(); ++k)
        free_index_[static_cast<std::size_t>(free_[k])] = static_cast<int>(k);
}

Vector FeSpace::expand(const Vector& free_coeffs) const
{
    if (free_coeffs.size() != num_free())
        throw InputError("FeSpace::expand: expected " + std::to_string(num_free()) + " coefficients");
    Vector total = Eigen::Map<const Vector>(dirichlet_.data(), total_dofs());
    for (int k = 0; k < num_free(); ++k)
        total[free_[static_cast<std::size_t>(k)]] = free_coeffs[k];
    return total;
}

Vector FeSpace::expand_homogeneous(const Vector& free_coeffs) const
{
    if (free_coeffs.size() != num_free())
        throw InputError("FeSpace::expand_homogeneous: expected " + std::to_string(num_free()) + " coefficients");
    Vector total = Vector::Zero(total_dofs());
    for (int k = 0; k < num_free(); ++k)
        total[free_[static_cast<std::size_t>(k)]] = free_coeffs[k];
    return total;
}

Vector FeSpace::restrict_to_free(const Vector& total) const
{
    if (total.size() != total_dofs())
        throw InputError("FeSpace::restrict_to_free: dimension mismatch");
    Vector r(num_free());
    for (int k = 0; k < num_free(); ++k)
        r[k] = total[free_[static_cast<std::size_t>(k)]];
    return r;
}

SparseMatrix FeSpace::restriction() const
{
    SparseMatrix R(num_free(), total_dofs());
    std::vector<Triplet> entries;
    entries.reserve(free_.size());
    for (int k = 0; k < num_free(); ++k)
        entries.emplace_back(k, free_[static_cast<std::size_t>(k)], 1.0);
    R.setFromTriplets(entries.begin(), entries.end());
    return R;
}

FeSpace build_space(std::shared_ptr<const TriMesh> mesh, const BcSelector& bc,
                    const std::optional<ScalarField>& dirichlet_data)
{
    if (!mesh)
        throw InputError("build_space: null mesh");
    std::set<int> present;
    for (const auto& e : mesh->boundary())
        present.insert(e.tag);
    for (int tag : bc.constrained_tags)
        if (!present.contains(tag))
            throw InputError("build_space: boundary tag " + std::to_string(tag) + " does not occur in the mesh");

    std::vector<char> constrained(mesh->num_vertices(), 0);
    for (const auto& e : mesh->boundary())
        if (bc.constrained_tags.contains(e.tag)) {
            constrained[static_cast<std::size_t>(e.a)] = 1;
            constrained[static_cast<std::size_t>(e.b)] = 1;
        }

    std::vector<int> free;
    std::vector<double> values(mesh->num_vertices(), 0.0);
    for (std::size_t v = 0; v < mesh->num_vertices(); ++v) {
        if (!constrained[v])
            free.push_back(static_cast<int>(v));
        else if (dirichlet_data)
            values[v] = (*dirichlet_data)(mesh->vertex(static_cast<int>(v)));
    }
    return FeSpace(std::move(mesh), std::move(free), std::move(values));
}

namespace {

SparseMatrix one_level(const ParentMap& pm, int coarse_vertices)
{
    const auto nfine = static_cast<int>(pm.vertex_origin.size());
    SparseMatrix P(nfine, coarse_vertices);
    std::vector<Triplet> entries;
    entries.reserve(pm.vertex_origin.size() * 2);
    for (int i = 0; i < nfine; ++i) {
        const auto& o = pm.vertex_origin[static_cast<std::size_t>(i)];
        if (o.a < 0 || o.a >= coarse_vertices || o.b >= coarse_vertices)
            throw InputError("build_prolongation: parent map refers to a vertex outside the coarse mesh");
        if (o.inherited()) {
            entries.emplace_back(i, o.a, 1.0);
        } else {
            entries.emplace_back(i, o.a, 0.5);
            entries.emplace_back(i, o.b, 0.5);
        }
    }
    P.setFromTriplets(entries.begin(), entries.end());
    return P;
}

} // namespace

Prolongation build_prolongation(const FeSpace& coarse, const FeSpace& fine, std::span<const ParentMap> chain)
{
    if (chain.empty()) {
        if (coarse.total_dofs() != fine.total_dofs())
            throw InputError("build_prolongation: meshes differ but no refinement chain was given");
        SparseMatrix I(fine.total_dofs(), coarse.total_dofs());
        I.setIdentity();
        return {I};
    }
    SparseMatrix P = one_level(chain.front(), coarse.total_dofs());
    for (std::size_t k = 1; k < chain.size(); ++k) {
        SparseMatrix next = one_level(chain[k], static_cast<int>(P.rows()));
        P = (next * P).pruned();
    }
    if (P.rows() != fine.total_dofs())
        throw InputError("build_prolongation: refinement chain does not end at the fine mesh");
    return {P};
}

Prolongation build_prolongation(const FeSpace& coarse, const FeSpace& fine, const ParentMap& pm)
{
    return build_prolongation(coarse, fine, std::span<const ParentMap>(&pm, 1));
}

int locate(const TriMesh& mesh, const Point& p)
{
    constexpr double tol = 1e-12;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto l = barycentric(mesh, static_cast<int>(t), p);
        if (l[0] >= -tol && l[1] >= -tol && l[2] >= -tol)
            return static_cast<int>(t);
    }
    return -1;
}

double eval(const TriMesh& mesh, const Vector& coeffs, const Point& p)
{
    if (coeffs.size() != static_cast<Eigen::Index>(mesh.num_vertices()))
        throw InputError("eval: coefficient vector must have one entry per vertex");
    const int t = locate(mesh, p);
    if (t < 0)
        throw InputError("eval: point outside the mesh");
    const auto l = barycentric(mesh, t, p);
    const auto& v = mesh.triangle(t).v;
    return l[0] * coeffs[v[0]] + l[1] * coeffs[v[1]] + l[2] * coeffs[v[2]];
}

double eval(const FeSpace& space, const Vector& coeffs, const Point& p) { return eval(space.mesh(), coeffs, p); }

Vector interpolate(const TriMesh& mesh, const ScalarField& f)
{
    Vector values(static_cast<Eigen::Index>(mesh.num_vertices()));
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v)
        values[static_cast<Eigen::Index>(v)] = f(mesh.vertex(static_cast<int>(v)));
    return values;
}

} // namespace lsfem
