#pragma once

#include <complex>
#include <vector>

#include "dlab/errors.hpp"
#include "dlab/rng.hpp"

namespace dlab {

using cplx = std::complex<double>;

// Constant-coefficient equation on the torus,
//
//   D_t u = D_x^{2m} u + sum_{j=1}^{2m} ( a_j D_x^{2m-j} u + b_j D_x^{2m-j} conj(u) ),
//
// where D = -i d/dx and D_t = -i d/dt.  Subscripts in the formulas are
// 1-based; storage is 0-based (a_j == a[j-1]).  Use a_at / b_at in code that
// mirrors a formula.
struct EquationSpec {
    int m = 1;
    std::vector<cplx> a; // a[j-1] multiplies D_x^{2m-j} u,       size 2m
    std::vector<cplx> b; // b[j-1] multiplies D_x^{2m-j} conj(u), size 2m

    cplx a_at(int j) const { return a[static_cast<std::size_t>(j - 1)]; }
    cplx b_at(int j) const { return b[static_cast<std::size_t>(j - 1)]; }

    // Largest coefficient magnitude, floored at 1: the reference scale for
    // relative tolerances.
    double scale() const;

    bool b_is_zero(double tol = 0.0) const;

    void validate() const; // throws InvalidConfig
};

// Builds a spec of order m; a and b may be shorter than 2m and are padded
// with zeros (so make_spec(2, {0, 0, {0, 1}}) sets a_3 = i).
EquationSpec make_spec(int m, std::vector<cplx> a = {}, std::vector<cplx> b = {});

// Absolute threshold below which a derived coefficient counts as zero:
// rel * spec.scale().
double zero_threshold(const EquationSpec& spec, double rel = 1e-12);

// All 4m coefficient components uniform in [-1, 1].
EquationSpec random_spec(int m, SplitMix64& rng);

} // namespace dlab
