#pragma once

#include "sprd/problem.hpp"

#include <array>
#include <functional>
#include <vector>

namespace sprd {

/// Spectral boundary-layer mesh: transition width tau = min(1/4,
/// lambda0 * p * eps) at both ends, one interior element. With
/// elements_per_layer = 1 this is the minimal mesh {0, tau, 1-tau, 1};
/// larger values grade each layer region geometrically toward its endpoint
/// (needed when a tight tolerance must be met at moderate p). At tau = 1/4
/// the mesh degenerates to a uniform one.
struct LayerMesh {
    std::vector<double> nodes;
    double tau = 0.25;
    bool capped = false;
    int element_count() const { return static_cast<int>(nodes.size()) - 1; }
};

LayerMesh build_layer_mesh(double eps, int p, double lambda0, int elements_per_layer = 1,
                           double grading = 0.15);

/// Galerkin solution in the C^1 space of degree p per element
/// (cubic-Hermite exterior modes plus internal bubbles). The four trace
/// conditions are imposed exactly by constraining the endpoint dofs.
class DiscreteSolution {
public:
    double value(double x) const;
    double deriv(double x) const;
    double second(double x) const;

    const LayerMesh& mesh() const { return mesh_; }
    int degree() const { return p_; }
    /// Max-norm distance to the degree p+2 solve on the same mesh.
    double error_estimate() const { return error_estimate_; }
    /// Relative algebraic residual of the solved system.
    double residual() const { return residual_; }
    bool conditioning_warning() const { return conditioning_warning_; }
    bool all_zero() const;

private:
    friend DiscreteSolution solve_reference(const Problem&, const LayerMesh&, int, bool);
    LayerMesh mesh_;
    int p_ = 3;
    std::vector<std::vector<long double>> element_coeffs_; // local Hermite + bubbles
    double error_estimate_ = 0.0;
    double residual_ = 0.0;
    bool conditioning_warning_ = false;
};

/// Assembles and solves the symmetric positive definite Galerkin system with
/// (p+4)-point Gauss quadrature per element in extended precision.
/// Throws SolverError when the assembled matrix is not positive definite.
DiscreteSolution solve_reference(const Problem& problem, const LayerMesh& mesh, int p,
                                 bool with_estimate = true);

/// Energy norm error sqrt(eps^2 |e''|^2 + ||sqrt(alpha) e'||^2 +
/// ||sqrt(beta) e||^2) against a known solution, by elementwise quadrature.
double energy_error(const DiscreteSolution& u, const Problem& problem,
                    const std::function<double(double)>& exact,
                    const std::function<double(double)>& exact_deriv,
                    const std::function<double(double)>& exact_second);

} // namespace sprd
