#pragma once

#include <string>

#include "g2strom/ansatz.hpp"
#include "g2strom/lattice.hpp"
#include "g2strom/symbols.hpp"

// Machine-readable reports: deterministic JSON with ordered keys. Identical
// inputs serialize to identical bytes (timestamps are added only by the CLI
// aggregator and excluded from that guarantee).

namespace g2strom {

std::string to_json(const CheckResult& check);
std::string to_json(const SolutionReport& report);
std::string to_json(const ConstraintCertificate& cert);
std::string to_json(const ExactnessReport& report, const std::string& label);

}  // namespace g2strom
