#pragma once

#include <optional>
#include <vector>

#include "hpcalc/mcomplex.hpp"

namespace hpcalc {

struct not_a_cycle : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A normalized localized class alpha/f^s u^l: alpha is a form over the
// coefficient ring (no u, no denominator), subject to the cycle condition
// f d(alpha) = s df alpha, which makes the class a cycle of the localized
// complex and forces df d(alpha) = 0.
struct BoundaryClass {
    GradedElement alpha;
    int s = 0;
    int l = 0;
};

// The class as an element of (A[1/f], 0) with u inverted.
GradedElement class_element(const MComplex& M, const BoundaryClass& c);

// Empty string when f d(alpha) = s df alpha holds, else a witness.
std::string class_invariant_witness(const MComplex& M, const BoundaryClass& c);

// The boundary of the localization sequence, computed on normalized classes:
// alpha/f^s u^l -> (-1)^s/s! d(alpha t^s) u^{l+1-s}, and 0 when s = 0 (the
// class lifts). Lands in the u-inverted t-extended complex with potential ft.
GradedElement boundary_map(const MComplex& M, const BoundaryClass& c);

// Regroups a cycle of (A[1/f], 0, u inverted) by u-power, each group cleared
// to its minimal denominator power. The returned classes reassemble to omega
// exactly and each satisfies the cycle condition. When homological_degree is
// given, the input must be homogeneous of internal degree -j (the per-degree
// statement); otherwise any cycle is accepted.
std::vector<BoundaryClass> normalize_cycle(const MComplex& M, const GradedElement& omega,
                                           std::optional<int> homological_degree = {});

// Cross-checks the boundary value through the mapping fiber: gamma is a cycle
// (via the explicit differential identities), tau(gamma) = 0, and
// -hbar(gamma) = alpha u^l / f^s exactly.
Report verify_boundary_via_fiber(const MComplex& M, const BoundaryClass& c);

} // namespace hpcalc
