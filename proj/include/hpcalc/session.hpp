#pragma once

#include "hpcalc/element.hpp"
#include "hpcalc/parser.hpp"
#include "hpcalc/report.hpp"

namespace hpcalc {

// Declaration-stage failure (unknown names, degree inconsistencies, ...);
// maps to exit code 2, like a parse error.
struct semantic_error : std::runtime_error {
    semantic_error(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

struct SessionOptions {
    std::uint64_t seed = 0;
    int samples = 100;
    bool strict = false;
};

// Executes a parsed command file: builds the ring from the declarations,
// evaluates bindings in file order, then runs the commands in order. Checks
// never abort the run; each failure is recorded in the report.
Report run_session(const SessionSpec& spec, const SessionOptions& options);

// Evaluates a standalone expression over a ring (no name bindings);
// inv(...) requires the ring to carry a denominator.
GradedElement eval_expression(const ExprPtr& e, const RingPtr& ring);

} // namespace hpcalc
