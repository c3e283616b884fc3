#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scl/fields.hpp"

namespace scl {

/// Configuration or usage problem; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line(line) {}
    int line;
};

struct LiftFamilyEntry {
    std::string name;
    std::vector<std::string> field; // v1..v2n expression strings
    std::string hamiltonian;        // f
};

struct ConformalEntry {
    std::vector<std::string> field;  // c1..c2n
    std::optional<std::string> b;    // potential on (x, t); t is x_{2n+1}
    std::optional<std::string> a;
};

/// Parsed flat key-section configuration. Expressions stay as strings until
/// build_spec compiles them against the declared dimension.
struct ManifoldConfig {
    std::string fixture; // "flat4" / "quartic4"; empty for explicit mode
    int dimension = 0;
    std::vector<std::string> lambda;
    std::map<std::array<int, 3>, std::string> gamma; // explicit (k,i,j), 1-based
    std::optional<std::string> potential;
    std::vector<LiftFamilyEntry> hamiltonian;
    std::optional<ConformalEntry> conformal;

    int samples = 20;
    uint64_t seed = 1729;
    double tol = 1e-9;
    double tol_fd = 1e-6;
    int jet_order_cap = kDefaultJetOrderCap;
    bool scale_ledger = true;
    bool allow_dim2 = false;
};

ManifoldConfig parse_config(const std::string& text);
ManifoldConfig load_config(const std::string& path);

/// Compiles the manifold/connection sections into chart data; throws
/// ConfigError on semantic problems (odd dimension, missing Christoffels,
/// duplicate asymmetric entries, bad expressions).
ExactSymplecticSpec build_spec(const ManifoldConfig& config);

} // namespace scl
