#include "sprd/config.hpp"

#include "sprd/analytic.hpp"
#include "sprd/errors.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace sprd {

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
    throw ParseError(origin + ":" + std::to_string(line) + ": " + what, static_cast<std::size_t>(line));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string current;
    for (char c : value) {
        if (c == ',') {
            items.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (!trim(current).empty()) items.push_back(trim(current));
    return items;
}

double parse_double(const std::string& value, const std::string& origin, int line) {
    char* end = nullptr;
    const double parsed = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') fail(origin, line, "not a number: '" + value + "'");
    return parsed;
}

int parse_int(const std::string& value, const std::string& origin, int line) {
    char* end = nullptr;
    const long parsed = std::strtol(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') fail(origin, line, "not an integer: '" + value + "'");
    return static_cast<int>(parsed);
}

std::vector<int> parse_degree_list(const std::string& value, const std::string& origin, int line) {
    const auto dots = value.find("..");
    if (dots != std::string::npos) {
        const int lo = parse_int(trim(value.substr(0, dots)), origin, line);
        const int hi = parse_int(trim(value.substr(dots + 2)), origin, line);
        if (hi < lo) fail(origin, line, "empty degree range");
        std::vector<int> out;
        for (int p = lo; p <= hi; ++p) out.push_back(p);
        return out;
    }
    std::vector<int> out;
    for (const std::string& item : split_list(value)) out.push_back(parse_int(item, origin, line));
    return out;
}

} // namespace

void RunConfig::validate() const {
    if (eps_list.empty()) throw DomainError("config: eps list must not be empty");
    for (double eps : eps_list)
        if (!(eps > 0.0) || eps > 1.0)
            throw DomainError("config: eps values must lie in (0, 1]");
    if (degrees.empty()) throw DomainError("config: degree list must not be empty");
    for (int p : degrees)
        if (p < 3) throw DomainError("config: degrees must be at least 3");
    if (sample_points < 2) throw DomainError("config: need at least two sample points");
    AnalyticFunction1D::parse(alpha_expr);
    AnalyticFunction1D::parse(beta_expr);
    AnalyticFunction1D::parse(f_expr);
    for (const std::string& check : checks)
        if (check != "classical-bound" && check != "term-bounds" && check != "layer-decay" &&
            check != "remainder" && check != "oracle" && check != "inequalities")
            throw DomainError("config: unknown check '" + check + "'");
}

RunConfig parse_config(std::istream& in, const std::string& origin) {
    RunConfig config;
    std::string section;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto comment = raw.find_first_of("#;");
        std::string text = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') fail(origin, line, "unterminated section header");
            section = trim(text.substr(1, text.size() - 2));
            if (section != "problem" && section != "run" && section != "verify" &&
                section != "tolerances" && section != "output")
                fail(origin, line, "unknown section [" + section + "]");
            continue;
        }
        const auto equals = text.find('=');
        if (equals == std::string::npos) fail(origin, line, "expected key = value");
        const std::string key = trim(text.substr(0, equals));
        const std::string value = trim(text.substr(equals + 1));
        if (section == "problem") {
            if (key == "alpha")
                config.alpha_expr = value;
            else if (key == "beta")
                config.beta_expr = value;
            else if (key == "f")
                config.f_expr = value;
            else
                fail(origin, line, "unknown key '" + key + "' in [problem]");
        } else if (section == "run") {
            if (key == "eps") {
                config.eps_list.clear();
                for (const std::string& item : split_list(value))
                    config.eps_list.push_back(parse_double(item, origin, line));
            } else if (key == "degrees")
                config.degrees = parse_degree_list(value, origin, line);
            else if (key == "M")
                config.M_override = parse_int(value, origin, line);
            else if (key == "sample_points")
                config.sample_points = parse_int(value, origin, line);
            else if (key == "seed")
                config.tolerances.seed = static_cast<std::uint64_t>(parse_int(value, origin, line));
            else if (key == "jobs")
                config.tolerances.jobs = parse_int(value, origin, line);
            else
                fail(origin, line, "unknown key '" + key + "' in [run]");
        } else if (section == "verify") {
            if (key == "checks") {
                config.checks.clear();
                for (const std::string& item : split_list(value)) config.checks.insert(item);
            } else
                fail(origin, line, "unknown key '" + key + "' in [verify]");
        } else if (section == "tolerances") {
            VerifierOptions& t = config.tolerances;
            if (key == "r2_min")
                t.r2_min = parse_double(value, origin, line);
            else if (key == "k_spread_max")
                t.k_spread_max = parse_double(value, origin, line);
            else if (key == "residual_spread_max")
                t.residual_spread_max = parse_double(value, origin, line);
            else if (key == "decay_rate_tol")
                t.decay_rate_tol = parse_double(value, origin, line);
            else if (key == "oracle_tol")
                t.oracle_tol = parse_double(value, origin, line);
            else if (key == "precision_floor")
                t.precision_floor = parse_double(value, origin, line);
            else if (key == "derivative_orders")
                t.derivative_orders = parse_int(value, origin, line);
            else if (key == "max_expansion_order")
                t.max_expansion_order = parse_int(value, origin, line);
            else if (key == "oracle_j_max")
                t.oracle_j_max = parse_int(value, origin, line);
            else if (key == "layer_decay_n_max")
                t.layer_decay_n_max = parse_int(value, origin, line);
            else if (key == "reference_p_min")
                t.reference_p_min = parse_int(value, origin, line);
            else if (key == "reference_p_max")
                t.reference_p_max = parse_int(value, origin, line);
            else if (key == "reference_layers")
                t.reference_layers = parse_int(value, origin, line);
            else if (key == "reference_grading")
                t.reference_grading = parse_double(value, origin, line);
            else if (key == "reference_lambda0")
                t.reference_lambda0 = parse_double(value, origin, line);
            else
                fail(origin, line, "unknown key '" + key + "' in [tolerances]");
        } else if (section == "output") {
            if (key == "dir")
                config.output_dir = value;
            else
                fail(origin, line, "unknown key '" + key + "' in [output]");
        } else {
            fail(origin, line, "key outside of any section");
        }
    }
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'", 0);
    return parse_config(in, path);
}

} // namespace sprd
