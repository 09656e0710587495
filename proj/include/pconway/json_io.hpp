#pragma once
// JSON forms of diagrams, patterns, lifts and verification reports.
// Every top-level document carries "schema": 1.

#include "json.hpp"
#include <string>

#include "pconway/diagram.hpp"
#include "pconway/periodic.hpp"
#include "pconway/skein.hpp"
#include "pconway/verify.hpp"

namespace pconway {

inline constexpr int kSchemaVersion = 1;

nlohmann::json diagram_to_json(const LinkDiagram& d);

/// {"boundary_width": k, "boundary_directions": ["R", ...], "events": [...]}
nlohmann::json pattern_to_json(const QuotientPattern& q);
/// Throws ValidationError on schema violations; does not check the tape.
QuotientPattern pattern_from_json(const nlohmann::json& j);

nlohmann::json lift_to_json(const Lift& l, int p);

nlohmann::json report_to_json(const VerificationReport& r, bool include_timing = false);
VerificationReport report_from_json(const nlohmann::json& j);
nlohmann::json suite_to_json(const SuiteReport& s, bool include_timing = false);

nlohmann::json cache_to_json(const MemoCache& cache);
void cache_from_json(const nlohmann::json& j, MemoCache& cache);

}  // namespace pconway
