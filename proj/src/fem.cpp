#include "sprd/fem.hpp"

#include "sprd/errors.hpp"
#include "sprd/numerics.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace sprd {

LayerMesh build_layer_mesh(double eps, int p, double lambda0, int elements_per_layer,
                           double grading) {
    if (p < 3) throw DomainError("build_layer_mesh: degree must be at least 3");
    if (!(lambda0 > 0.0) || !(eps > 0.0))
        throw DomainError("build_layer_mesh: eps and lambda0 must be positive");
    if (elements_per_layer < 1 || !(grading > 0.0) || !(grading < 1.0))
        throw DomainError("build_layer_mesh: bad layer grading");
    LayerMesh mesh;
    mesh.tau = std::min(0.25, lambda0 * p * eps);
    mesh.capped = mesh.tau >= 0.25;
    mesh.nodes.push_back(0.0);
    for (int k = elements_per_layer - 1; k >= 1; --k)
        mesh.nodes.push_back(mesh.tau * std::pow(grading, k));
    mesh.nodes.push_back(mesh.tau);
    mesh.nodes.push_back(1.0 - mesh.tau);
    for (int k = 1; k <= elements_per_layer - 1; ++k)
        mesh.nodes.push_back(1.0 - mesh.tau * std::pow(grading, k));
    mesh.nodes.push_back(1.0);
    return mesh;
}

namespace {

using Real = long double;
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

struct BasisValues {
    std::vector<Real> value, first, second; // in reference coordinates
};

// C^1 basis on [-1, 1]: four cubic Hermite exterior modes followed by
// (1 - xi^2)^2 P_m bubbles, m = 0..p-4.
BasisValues basis_at(int p, Real xi) {
    const int count = 4 + (p - 3);
    BasisValues out;
    out.value.resize(count);
    out.first.resize(count);
    out.second.resize(count);

    const Real x2 = xi * xi;
    out.value[0] = (2 - 3 * xi + xi * x2) / 4;
    out.first[0] = (-3 + 3 * x2) / 4;
    out.second[0] = 6 * xi / 4;
    out.value[1] = (1 - xi - x2 + xi * x2) / 4;
    out.first[1] = (-1 - 2 * xi + 3 * x2) / 4;
    out.second[1] = (-2 + 6 * xi) / 4;
    out.value[2] = (2 + 3 * xi - xi * x2) / 4;
    out.first[2] = (3 - 3 * x2) / 4;
    out.second[2] = -6 * xi / 4;
    out.value[3] = (-1 - xi + x2 + xi * x2) / 4;
    out.first[3] = (-1 + 2 * xi + 3 * x2) / 4;
    out.second[3] = (2 + 6 * xi) / 4;

    const Real w = (1 - x2) * (1 - x2);
    const Real w1 = -4 * xi * (1 - x2);
    const Real w2 = -4 + 12 * x2;
    Real P0 = 1, P1 = xi, D0 = 0, D1 = 1, S0 = 0, S1 = 0;
    for (int m = 0; m + 4 <= p; ++m) {
        Real P, D, S;
        if (m == 0) {
            P = P0;
            D = D0;
            S = S0;
        } else if (m == 1) {
            P = P1;
            D = D1;
            S = S1;
        } else {
            const Real k = m - 1;
            P = ((2 * k + 1) * xi * P1 - k * P0) / (k + 1);
            D = ((2 * k + 1) * (P1 + xi * D1) - k * D0) / (k + 1);
            S = ((2 * k + 1) * (2 * D1 + xi * S1) - k * S0) / (k + 1);
            P0 = P1;
            P1 = P;
            D0 = D1;
            D1 = D;
            S0 = S1;
            S1 = S;
        }
        out.value[4 + m] = w * P;
        out.first[4 + m] = w1 * P + w * D;
        out.second[4 + m] = w2 * P + 2 * w1 * D + w * S;
    }
    return out;
}

// Node dofs are (value, physical derivative) pairs; endpoint pairs are
// constrained to zero and dropped from the reduced numbering.
struct DofMap {
    int reduced_count = 0;
    int bubbles = 0;
    int elements = 0;
    std::vector<int> global_to_reduced;

    DofMap(int p, int element_count) : bubbles(p - 3), elements(element_count) {
        const int node_dofs = 2 * (elements + 1);
        const int total = node_dofs + elements * bubbles;
        global_to_reduced.assign(static_cast<std::size_t>(total), -1);
        int next = 0;
        for (int g = 0; g < total; ++g) {
            const bool constrained =
                (g <= 1 || g == node_dofs - 2 || g == node_dofs - 1);
            if (!constrained) global_to_reduced[static_cast<std::size_t>(g)] = next++;
        }
        reduced_count = next;
    }

    int operator()(int element, int local) const {
        int g;
        if (local < 4)
            g = 2 * (element + local / 2) + (local % 2);
        else
            g = 2 * (elements + 1) + element * bubbles + (local - 4);
        return global_to_reduced[static_cast<std::size_t>(g)];
    }
};

} // namespace

DiscreteSolution solve_reference(const Problem& problem, const LayerMesh& mesh, int p,
                                 bool with_estimate) {
    if (p < 3) throw DomainError("solve_reference: degree must be at least 3");
    const DofMap dofs(p, mesh.element_count());
    const int n = dofs.reduced_count;
    const int local_count = 4 + (p - 3);
    Matrix A = Matrix::Zero(n, n);
    Vector b = Vector::Zero(n);

    const GaussRule& rule = gauss_legendre(p + 4);
    const Real eps2 = static_cast<Real>(problem.eps) * static_cast<Real>(problem.eps);

    std::vector<Real> value(local_count), first(local_count), second(local_count);
    for (int e = 0; e < mesh.element_count(); ++e) {
        const Real xl = mesh.nodes[static_cast<std::size_t>(e)];
        const Real xr = mesh.nodes[static_cast<std::size_t>(e) + 1];
        const Real h = xr - xl, half = h / 2, mid = (xl + xr) / 2;
        Matrix Ae = Matrix::Zero(local_count, local_count);
        Vector be = Vector::Zero(local_count);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const Real xi = rule.nodes[q];
            const double x = static_cast<double>(mid + half * xi);
            const Real w = static_cast<Real>(rule.weights[q]) * half;
            const BasisValues basis = basis_at(p, xi);
            for (int i = 0; i < local_count; ++i) {
                const Real dof_scale = (i == 1 || i == 3) ? half : 1;
                value[i] = dof_scale * basis.value[static_cast<std::size_t>(i)];
                first[i] = dof_scale * basis.first[static_cast<std::size_t>(i)] * (2 / h);
                second[i] = dof_scale * basis.second[static_cast<std::size_t>(i)] * (4 / (h * h));
            }
            const Real a_val = problem.alpha.eval(x);
            const Real b_val = problem.beta.eval(x);
            const Real f_val = problem.f.eval(x);
            for (int i = 0; i < local_count; ++i) {
                be(i) += w * f_val * value[i];
                for (int j = i; j < local_count; ++j)
                    Ae(i, j) += w * (eps2 * second[i] * second[j] + a_val * first[i] * first[j] +
                                     b_val * value[i] * value[j]);
            }
        }
        for (int i = 0; i < local_count; ++i) {
            const int gi = dofs(e, i);
            if (gi < 0) continue;
            b(gi) += be(i);
            for (int j = i; j < local_count; ++j) {
                const int gj = dofs(e, j);
                if (gj < 0) continue;
                A(std::min(gi, gj), std::max(gi, gj)) += Ae(i, j);
            }
        }
    }
    A = Matrix(A.selfadjointView<Eigen::Upper>());

    Eigen::LDLT<Matrix> ldlt(A);
    if (ldlt.info() != Eigen::Success) throw SolverError("solve_reference: factorization failed");
    const Vector d = ldlt.vectorD();
    Real dmin = HUGE_VALL, dmax = 0;
    for (int i = 0; i < n; ++i) {
        dmin = std::min(dmin, d(i));
        dmax = std::max(dmax, std::abs(d(i)));
    }
    if (!(dmin > 0))
        throw SolverError("solve_reference: assembled system is not positive definite");

    Vector x = ldlt.solve(b);
    x += ldlt.solve(b - A * x); // one refinement step
    const Real bnorm = b.norm();
    const Real residual = bnorm > 0 ? (b - A * x).norm() / bnorm : (b - A * x).norm();

    DiscreteSolution solution;
    solution.mesh_ = mesh;
    solution.p_ = p;
    solution.residual_ = static_cast<double>(residual);
    solution.conditioning_warning_ = dmin > 0 && (dmax / dmin) > 1e16L;
    solution.element_coeffs_.resize(static_cast<std::size_t>(mesh.element_count()));
    for (int e = 0; e < mesh.element_count(); ++e) {
        auto& coeffs = solution.element_coeffs_[static_cast<std::size_t>(e)];
        coeffs.assign(static_cast<std::size_t>(local_count), 0.0L);
        for (int i = 0; i < local_count; ++i) {
            const int gi = dofs(e, i);
            if (gi >= 0) coeffs[static_cast<std::size_t>(i)] = x(gi);
        }
    }

    if (with_estimate) {
        const DiscreteSolution finer = solve_reference(problem, mesh, p + 2, false);
        double gap = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double xs = i / 100.0;
            gap = std::max(gap, std::abs(solution.value(xs) - finer.value(xs)));
        }
        for (int i = 0; i <= 32; ++i) {
            const double xs = mesh.tau * i / 32.0;
            gap = std::max(gap, std::abs(solution.value(xs) - finer.value(xs)));
            gap = std::max(gap, std::abs(solution.value(1.0 - xs) - finer.value(1.0 - xs)));
        }
        solution.error_estimate_ = gap;
    }
    return solution;
}

namespace {

int find_element(const LayerMesh& mesh, double x) {
    const int count = mesh.element_count();
    for (int e = 0; e + 1 < count; ++e)
        if (x <= mesh.nodes[static_cast<std::size_t>(e) + 1]) return e;
    return count - 1;
}

enum class EvalWhat { Value, First, Second };

double evaluate(const LayerMesh& mesh, int p,
                const std::vector<std::vector<long double>>& coeffs, double x, EvalWhat what) {
    const int e = find_element(mesh, x);
    const Real xl = mesh.nodes[static_cast<std::size_t>(e)];
    const Real h = mesh.nodes[static_cast<std::size_t>(e) + 1] - xl;
    const Real xi = 2 * (static_cast<Real>(x) - xl) / h - 1;
    const BasisValues basis = basis_at(p, xi);
    const auto& c = coeffs[static_cast<std::size_t>(e)];
    Real acc = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Real dof_scale = (i == 1 || i == 3) ? h / 2 : 1;
        Real phi;
        switch (what) {
        case EvalWhat::Value: phi = basis.value[i]; break;
        case EvalWhat::First: phi = basis.first[i] * (2 / h); break;
        default: phi = basis.second[i] * (4 / (h * h)); break;
        }
        acc += c[i] * dof_scale * phi;
    }
    return static_cast<double>(acc);
}

} // namespace

double DiscreteSolution::value(double x) const {
    return evaluate(mesh_, p_, element_coeffs_, x, EvalWhat::Value);
}
double DiscreteSolution::deriv(double x) const {
    return evaluate(mesh_, p_, element_coeffs_, x, EvalWhat::First);
}
double DiscreteSolution::second(double x) const {
    return evaluate(mesh_, p_, element_coeffs_, x, EvalWhat::Second);
}

bool DiscreteSolution::all_zero() const {
    for (const auto& element : element_coeffs_)
        for (long double c : element)
            if (c != 0.0L) return false;
    return true;
}

double energy_error(const DiscreteSolution& u, const Problem& problem,
                    const std::function<double(double)>& exact,
                    const std::function<double(double)>& exact_deriv,
                    const std::function<double(double)>& exact_second) {
    const GaussRule& rule = gauss_legendre(u.degree() + 6);
    const double eps2 = problem.eps * problem.eps;
    long double acc = 0.0L;
    for (int e = 0; e < u.mesh().element_count(); ++e) {
        const double xl = u.mesh().nodes[static_cast<std::size_t>(e)];
        const double xr = u.mesh().nodes[static_cast<std::size_t>(e) + 1];
        const double half = 0.5 * (xr - xl), mid = 0.5 * (xl + xr);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double x = mid + half * rule.nodes[q];
            const double w = rule.weights[q] * half;
            const double e0 = u.value(x) - exact(x);
            const double e1 = u.deriv(x) - exact_deriv(x);
            const double e2 = u.second(x) - exact_second(x);
            acc += w * (eps2 * e2 * e2 + problem.alpha.eval(x) * e1 * e1 +
                        problem.beta.eval(x) * e0 * e0);
        }
    }
    return std::sqrt(static_cast<double>(acc));
}

} // namespace sprd
