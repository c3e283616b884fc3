#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace scl {

/// One verified identity: name, source anchor, worst residual over the
/// sample set, and the tolerance it was held to.
struct IdentityRecord {
    std::string identity;
    std::string anchor;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::string fixture;
    uint64_t seed = 0;
    std::vector<IdentityRecord> records;
    /// Recorded scale factors and located constants (e.g. the reduced-form
    /// factor and the constraint level s0). Ordered map for stable output.
    std::map<std::string, double> scale_ledger;
    /// Free-form diagnostic lines (logged, never part of pass/fail).
    std::vector<std::string> notes;

    bool overall() const;
    void add(std::string identity, std::string anchor, double residual, double tol);
    void merge(const VerificationReport& other);
};

/// format is "json" or "text"; json output is stable-key-ordered so that
/// identical runs serialize byte-identically.
std::string emit_report(const VerificationReport& report, const std::string& format);

} // namespace scl
