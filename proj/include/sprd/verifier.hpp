#pragma once

#include "sprd/decomposition.hpp"
#include "sprd/problem.hpp"

#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sprd {

/// One falsifiable check with its raw data (re-plottable) and the constants
/// fitted along the way. A check never passes when a fitted slope or ratio
/// violates its stated tolerance.
struct CheckRecord {
    enum class Status { Pass, Fail, Skipped, Inconclusive };

    std::string name;
    std::string description;
    Status status = Status::Fail;
    std::string detail;
    std::vector<std::pair<std::string, double>> fitted;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    bool ok() const { return status == Status::Pass || status == Status::Skipped; }
};

struct VerifierOptions {
    int derivative_orders = 10;   ///< N for the derivative-growth checks
    int max_expansion_order = 8;  ///< cap on M for derivative profiling
    double k_spread_max = 4.0;    ///< allowed spread of fitted K across n
    double residual_spread_max = 10.0;
    double r2_min = 0.98;
    double decay_rate_tol = 1e-6;
    int layer_decay_n_max = 4;
    int oracle_j_max = 6;
    double oracle_tol = 1e-8;
    double precision_floor = 1e-13; ///< smallest measurable remainder
    int reference_p_min = 6;
    int reference_p_max = 26;
    int reference_layers = 3;
    double reference_grading = 0.4;
    double reference_lambda0 = 2.0;
    std::uint64_t seed = 12345;
    int jobs = 1;
};

/// Derivative profile ||u^(n)|| for n = 0..N from the decomposition: fits the
/// smallest K with ||u^(n)|| <= C K^n max(n^n, eps^{1-n}) across the eps grid
/// and locates the order where the layer part overtakes the smooth part.
CheckRecord check_classical_bound(const Problem& data, std::span<const double> eps_grid,
                                  const VerifierOptions& options = {});

/// Outer-term growth shape (log-domain least squares of ||U_j^(n)|| against
/// the gamma^j a^{2j} j^{2j}/j! K^n n! model) plus the exact layer degree
/// envelope and the pointwise polynomial envelope with a fitted constant.
CheckRecord check_term_bounds(const Decomposition& d, const VerifierOptions& options = {});

/// Decay exponents of every layer term and its derivatives up to n_max,
/// extracted by polynomial-compensated log-linear regression on the tail.
CheckRecord check_layer_decay(const Decomposition& d, int n_max,
                              const VerifierOptions& options = {});

/// Remainder decay over the eps grid: measures the max-norm plus the
/// endpoint traces and L2 terms per eps with M = choose_M(eps), drops
/// degenerate or unmeasurable points with a recorded reason, and regresses
/// log(total) against 1/eps.
CheckRecord check_remainder(const Problem& data, std::span<const double> eps_grid,
                            const VerifierOptions& options = {});

/// Cross-validates the symbolic layer terms against the half-line
/// quadrature solver for indices j <= oracle_j_max on both sides.
CheckRecord check_oracle_agreement(const Problem& data, const VerifierOptions& options = {});

/// Both sides of sup_{rho>0} rho^n e^{-d rho/4} <= (4n/(e d))^n.
struct SupBound {
    double numeric_sup;
    double closed_form;
};
SupBound sup_weighted_power(int n, double d);

/// Random-sample validation of the sup bound (with its equality cases) and
/// of the elementary power-splitting inequality used by the growth proofs.
CheckRecord check_inequalities(int samples, const VerifierOptions& options = {});

struct VerificationReport {
    std::vector<CheckRecord> checks;
    bool overall_pass = false;
    std::vector<double> eps_grid;
    std::vector<int> M_values;
    std::vector<int> degrees_used;
};

/// Runs the named checks ("classical-bound", "term-bounds", "layer-decay",
/// "remainder", "oracle", "inequalities"); an empty set means all of them.
VerificationReport run_verification(const Problem& data, std::span<const double> eps_grid,
                                    const std::set<std::string>& checks,
                                    const VerifierOptions& options = {});

void write_report_text(const VerificationReport& report, std::ostream& out);
void write_check_csv(const CheckRecord& record, std::ostream& out);

} // namespace sprd
