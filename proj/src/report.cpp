#include "scl/report.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace scl {

bool VerificationReport::overall() const {
    for (const auto& r : records)
        if (!r.pass) return false;
    return true;
}

void VerificationReport::add(std::string identity, std::string anchor, double residual,
                             double tol) {
    records.push_back({std::move(identity), std::move(anchor), residual, tol, residual <= tol});
}

void VerificationReport::merge(const VerificationReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
    scale_ledger.insert(other.scale_ledger.begin(), other.scale_ledger.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

std::string emit_report(const VerificationReport& report, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["overall"] = report.overall();
        j["seed"] = report.seed;
        j["fixture"] = report.fixture;
        j["scale_ledger"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : report.scale_ledger) j["scale_ledger"][k] = v;
        j["identities"] = nlohmann::ordered_json::array();
        for (const auto& r : report.records) {
            nlohmann::ordered_json rec;
            rec["identity"] = r.identity;
            rec["anchor"] = r.anchor;
            rec["residual"] = r.residual;
            rec["tol"] = r.tol;
            rec["pass"] = r.pass;
            j["identities"].push_back(rec);
        }
        j["notes"] = report.notes;
        return j.dump(2) + "\n";
    }
    if (format == "text") {
        std::ostringstream os;
        os << "fixture: " << (report.fixture.empty() ? "(custom)" : report.fixture)
           << "   seed: " << report.seed << "\n";
        size_t id_w = 8, anchor_w = 6;
        for (const auto& r : report.records) {
            id_w = std::max(id_w, r.identity.size());
            anchor_w = std::max(anchor_w, r.anchor.size());
        }
        os << std::left << std::setw(static_cast<int>(id_w + 2)) << "identity"
           << std::setw(static_cast<int>(anchor_w + 2)) << "anchor" << std::setw(13)
           << "residual" << std::setw(11) << "tol"
           << "status\n";
        for (const auto& r : report.records) {
            os << std::left << std::setw(static_cast<int>(id_w + 2)) << r.identity
               << std::setw(static_cast<int>(anchor_w + 2)) << r.anchor << std::setw(13)
               << std::scientific << std::setprecision(3) << r.residual << std::setw(11) << r.tol
               << (r.pass ? "pass" : "FAIL") << "\n";
        }
        for (const auto& [k, v] : report.scale_ledger)
            os << "ledger  " << k << " = " << std::setprecision(17) << v << "\n";
        for (const auto& n : report.notes) os << "note    " << n << "\n";
        os << "overall: " << (report.overall() ? "pass" : "FAIL") << "\n";
        return os.str();
    }
    throw std::invalid_argument("unknown report format '" + format + "'");
}

} // namespace scl
