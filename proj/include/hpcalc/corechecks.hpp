#pragma once

#include "hpcalc/element.hpp"
#include "hpcalc/report.hpp"

namespace hpcalc {

// The algebra soundness battery on seeded random elements: product laws,
// degree additivity, canonical-form idempotence, exact division roundtrip,
// d^2 = 0, the graded Leibniz rule, and D^2 = 0 for random degree-2
// potentials. ring should carry u; a denominator is exercised when present.
Report run_core_checks(const RingPtr& ring, int samples, std::uint64_t seed);

} // namespace hpcalc
