#include "dlab/coefficients.hpp"

#include <cmath>

#include "dlab/errors.hpp"

namespace dlab {

namespace {

double sign_pm(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

} // namespace

std::vector<cplx> gamma_sequence(const EquationSpec& spec) {
    const int m = spec.m;
    std::vector<cplx> g(static_cast<std::size_t>(m > 0 ? m - 1 : 0));
    for (int j = 1; j <= m - 1; ++j) {
        cplx acc = spec.b_at(2 * j);
        for (int k = 1; k <= j - 1; ++k)
            acc -= std::conj(spec.a_at(2 * (j - k))) * g[static_cast<std::size_t>(k - 1)];
        g[static_cast<std::size_t>(j - 1)] = acc;
    }
    return g;
}

std::vector<double> lambda_sequence(const EquationSpec& spec) {
    const int m = spec.m;
    const auto g = gamma_sequence(spec);
    std::vector<double> lam(static_cast<std::size_t>(2 * m - 1), 0.0);
    for (int j = 1; j <= m - 1; ++j) {
        double acc = 2.0 * spec.a_at(2 * j).imag();
        for (int k = 1; k <= j - 1; ++k)
            acc -= 2.0 * std::imag(std::conj(spec.b_at(2 * (j - k))) * g[static_cast<std::size_t>(k - 1)]);
        lam[static_cast<std::size_t>(2 * j - 1)] = acc;
    }
    for (int j = 1; j <= m; ++j) {
        double acc = 2.0 * spec.a_at(2 * j - 1).imag();
        for (int k = 1; k <= j - 1; ++k)
            acc += 2.0 * std::imag(std::conj(spec.b_at(2 * (j - k) - 1)) * g[static_cast<std::size_t>(k - 1)]);
        lam[static_cast<std::size_t>(2 * j - 2)] = acc;
    }
    return lam;
}

std::vector<cplx> alpha_sequence(const EquationSpec& spec) {
    const int m = spec.m;
    std::vector<cplx> al(static_cast<std::size_t>(2 * m - 1));
    for (int j = 1; j <= 2 * m - 1; ++j) {
        cplx acc = spec.b_at(j);
        for (int k = 1; k <= j - 1; ++k) {
            const double w = 0.5 * (1.0 + sign_pm(j - k));
            if (w != 0.0)
                acc -= w * std::conj(spec.a_at(j - k)) * al[static_cast<std::size_t>(k - 1)];
        }
        al[static_cast<std::size_t>(j - 1)] = acc;
    }
    return al;
}

LambdaPM lambda_pm_sequences(const EquationSpec& spec) {
    const int m = spec.m;
    const auto al = alpha_sequence(spec);
    LambdaPM out;
    out.plus.assign(static_cast<std::size_t>(2 * m - 1), 0.0);
    out.minus.assign(static_cast<std::size_t>(2 * m - 1), 0.0);
    for (int j = 1; j <= 2 * m - 1; ++j) {
        double p = 2.0 * spec.a_at(j).imag();
        double q = 0.0;
        for (int k = 1; k <= j - 1; ++k) {
            const double s = std::imag(std::conj(spec.b_at(j - k)) * al[static_cast<std::size_t>(k - 1)]);
            p += sign_pm(j - k + 1) * s;
            q -= s;
        }
        out.plus[static_cast<std::size_t>(j - 1)] = p;
        out.minus[static_cast<std::size_t>(j - 1)] = q;
    }
    return out;
}

Classification classify(const EquationSpec& spec, double zero_tol_rel) {
    spec.validate();
    const double tol = zero_threshold(spec, zero_tol_rel);
    const auto lam = lambda_sequence(spec);
    Classification cls;
    cls.zero_tolerance = tol;
    for (int i = 1; i <= 2 * spec.m - 1; ++i) {
        const double v = lam[static_cast<std::size_t>(i - 1)];
        if (std::abs(v) <= tol) continue;
        cls.sign = v > 0.0 ? 1 : -1;
        if (i % 2 == 0) {
            cls.kind = EquationKind::Parabolic;
            cls.jstar = i / 2;
            cls.smoothing = v > 0.0 ? SmoothingPattern::ForwardHalfLine
                                    : SmoothingPattern::BackwardHalfLine;
        } else {
            cls.kind = EquationKind::Elliptic;
            cls.jstar = (i + 1) / 2;
            cls.smoothing = v > 0.0 ? SmoothingPattern::PlusForwardMinusBackward
                                    : SmoothingPattern::PlusBackwardMinusForward;
        }
        return cls;
    }
    cls.kind = EquationKind::Dispersive;
    cls.smoothing = SmoothingPattern::None;
    return cls;
}

BetaPair beta_sequences(const CoefficientTable& table, int jstar, double pivot_tol) {
    if (jstar < 1 || jstar > table.m)
        throw InvalidConfig("beta systems need 1 <= jstar <= m");
    BetaPair out;
    const int len = 2 * (table.m - jstar - 1);
    if (len <= 0) return out;

    const double pivot = table.lambda_plus_at(2 * jstar - 1);
    if (std::abs(pivot) <= pivot_tol)
        throw DegenerateBeta(pivot, "tail-correction pivot lambda_plus_{2 jstar - 1} is "
                                    "numerically zero; no beta weights exist");

    out.plus.resize(static_cast<std::size_t>(len));
    out.minus.resize(static_cast<std::size_t>(len));
    for (int k = 1; k <= len; ++k) {
        double rp = table.lambda_minus_at(2 * jstar + k + 1);
        double rm = rp;
        for (int j = 1; j <= k - 1; ++j) {
            const double lp = table.lambda_plus_at(2 * jstar + k - j - 1);
            rp -= sign_pm(k - j) * lp * out.plus[static_cast<std::size_t>(j - 1)];
            rm -= sign_pm(k) * lp * out.minus[static_cast<std::size_t>(j - 1)];
        }
        out.plus[static_cast<std::size_t>(k - 1)] = rp / pivot;
        out.minus[static_cast<std::size_t>(k - 1)] = rm / (sign_pm(k) * pivot);
    }
    return out;
}

CoefficientTable make_table(const EquationSpec& spec, double zero_tol_rel) {
    spec.validate();
    CoefficientTable t;
    t.m = spec.m;
    t.gamma = gamma_sequence(spec);
    t.lambda = lambda_sequence(spec);
    t.alpha = alpha_sequence(spec);
    auto pm = lambda_pm_sequences(spec);
    t.lambda_plus = std::move(pm.plus);
    t.lambda_minus = std::move(pm.minus);
    const auto cls = classify(spec, zero_tol_rel);
    if (cls.kind == EquationKind::Elliptic) {
        t.jstar = cls.jstar;
        t.beta = beta_sequences(t, *cls.jstar, cls.zero_tolerance);
    }
    return t;
}

const char* kind_name(EquationKind k) {
    switch (k) {
    case EquationKind::Dispersive: return "Dispersive";
    case EquationKind::Parabolic: return "Parabolic";
    case EquationKind::Elliptic: return "Elliptic";
    }
    return "unknown";
}

const char* smoothing_name(SmoothingPattern p) {
    switch (p) {
    case SmoothingPattern::None: return "none";
    case SmoothingPattern::ForwardHalfLine: return "[0,inf)";
    case SmoothingPattern::BackwardHalfLine: return "(-inf,0]";
    case SmoothingPattern::PlusForwardMinusBackward: return "P+ [0,inf), P- (-inf,0]";
    case SmoothingPattern::PlusBackwardMinusForward: return "P+ (-inf,0], P- [0,inf)";
    }
    return "unknown";
}

} // namespace dlab
