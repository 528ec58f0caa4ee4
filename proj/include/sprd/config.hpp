#pragma once

#include "sprd/verifier.hpp"

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sprd {

/// Batch-run configuration, read from a flat key = value file with
/// bracketed sections (see README for the schema).
struct RunConfig {
    std::string alpha_expr = "1";
    std::string beta_expr = "1";
    std::string f_expr = "1";
    std::vector<double> eps_list;
    std::vector<int> degrees = {3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    std::optional<int> M_override;
    int sample_points = 101;
    std::set<std::string> checks;
    VerifierOptions tolerances;
    std::string output_dir = "out";

    /// eps list nonempty and inside (0, 1]; expressions must parse.
    void validate() const;
};

/// Parses the configuration text; errors carry 1-based line numbers.
RunConfig parse_config(std::istream& in, const std::string& origin);
RunConfig load_config(const std::string& path);

} // namespace sprd
