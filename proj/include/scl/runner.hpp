#pragma once

#include "scl/config.hpp"
#include "scl/report.hpp"

namespace scl {

enum class Command { Check, Induce, Lift, Reduce, Roundtrip, All };

/// Throws ConfigError on unknown command names.
Command parse_command(const std::string& name);

/// Dispatches a command against a configuration and collects the report.
/// check     -> chart-level validations on M
/// induce    -> induced-connection identities
/// lift      -> Hamiltonian/conformal lift identities (needs lift sections)
/// reduce / roundtrip -> reduce(induce(.)) round trip
/// all       -> everything applicable
VerificationReport run(Command cmd, const ManifoldConfig& config);

/// 0 when every record passes, 1 otherwise (usage errors exit 2 upstream).
int exit_code(const VerificationReport& report);

} // namespace scl
