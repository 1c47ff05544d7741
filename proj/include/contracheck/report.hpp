#pragma once

#include <string>

#include "json.hpp"

#include "contracheck/driver.hpp"

namespace contracheck {

// Machine-readable report. Keys are stable; consumers may rely on
// {version, files, meta, errors, functions[].name, functions[].goals[].id,
// .kind, .loc, .status, .verdict?, .counterexample?, .std_outcome?,
// .giant_outcome?}. Integer counterexample values are serialised as strings
// (they are arbitrary precision).
nlohmann::ordered_json report_json(const RunResult& r);

// Human-readable report; one block per goal that needs attention, one line
// per proved goal, and a closing summary.
std::string report_text(const RunResult& r);

}  // namespace contracheck
