#include "dlab/equation.hpp"

#include <algorithm>
#include <cmath>

namespace dlab {

double EquationSpec::scale() const {
    double s = 1.0;
    for (const auto& z : a) s = std::max(s, std::abs(z));
    for (const auto& z : b) s = std::max(s, std::abs(z));
    return s;
}

bool EquationSpec::b_is_zero(double tol) const {
    return std::all_of(b.begin(), b.end(), [tol](cplx z) { return std::abs(z) <= tol; });
}

void EquationSpec::validate() const {
    if (m < 1) throw InvalidConfig("equation order m must be >= 1");
    const auto n = static_cast<std::size_t>(2 * m);
    if (a.size() != n) throw InvalidConfig("coefficient list a must have exactly 2m entries");
    if (b.size() != n) throw InvalidConfig("coefficient list b must have exactly 2m entries");
    for (const auto& z : a)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidConfig("coefficient list a contains a non-finite entry");
    for (const auto& z : b)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidConfig("coefficient list b contains a non-finite entry");
}

EquationSpec make_spec(int m, std::vector<cplx> a, std::vector<cplx> b) {
    if (m < 1) throw InvalidConfig("equation order m must be >= 1");
    const auto n = static_cast<std::size_t>(2 * m);
    if (a.size() > n || b.size() > n)
        throw InvalidConfig("coefficient list longer than 2m");
    a.resize(n, cplx{0.0, 0.0});
    b.resize(n, cplx{0.0, 0.0});
    EquationSpec spec{m, std::move(a), std::move(b)};
    spec.validate();
    return spec;
}

double zero_threshold(const EquationSpec& spec, double rel) {
    return rel * spec.scale();
}

EquationSpec random_spec(int m, SplitMix64& rng) {
    std::vector<cplx> a(static_cast<std::size_t>(2 * m));
    std::vector<cplx> b(static_cast<std::size_t>(2 * m));
    for (auto& z : a) z = rng.uniform_box();
    for (auto& z : b) z = rng.uniform_box();
    return EquationSpec{m, std::move(a), std::move(b)};
}

} // namespace dlab
