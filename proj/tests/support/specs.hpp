#pragma once

#include "dlab/equation.hpp"

// The worked examples the suites keep coming back to.  Orders and
// coefficients chosen so every classification branch is hit by at least one
// of them.
namespace dlab::examples {

inline EquationSpec m1_dispersive() {
    return make_spec(1, {cplx{1.0, 0.0}});
}

// lambda_3 = 2, first odd survivor: elliptic, plus side smooths forward
inline EquationSpec m2_elliptic_a3() {
    return make_spec(2, {{}, {}, cplx{0.0, 1.0}});
}

// gamma_1 = -i, lambda_3 = -2: elliptic with the directions flipped
inline EquationSpec m2_elliptic_b() {
    return make_spec(2, {}, {cplx{1.0, 0.0}, cplx{0.0, -1.0}});
}

// the a_3 and b contributions to lambda_3 cancel exactly: dispersive, and
// M(1) is nilpotent
inline EquationSpec m2_dispersive_mixed() {
    return make_spec(2, {{}, {}, cplx{0.0, 1.0}}, {cplx{1.0, 0.0}, cplx{0.0, -1.0}});
}

// lambda_2 = 2, first even survivor: parabolic, smooths forward
inline EquationSpec m2_parabolic_a2() {
    return make_spec(2, {{}, cplx{0.0, 1.0}});
}

} // namespace dlab::examples
