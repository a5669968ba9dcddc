#include "nblab/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nblab/errors.hpp"

namespace nblab {
namespace {

// B_{2j} / (2j)! for j = 1..16.
constexpr double kB2jOverFact[17] = {
    0.0,
    8.3333333333333333333e-02,  // B2/2!
    -1.3888888888888888889e-03, // B4/4!
    3.3068783068783068783e-05,
    -8.2671957671957671958e-07,
    2.0876756987868098979e-08,
    -5.2841901386874931848e-10,
    1.3382536530684678833e-11,
    -3.3896802963225828668e-13,
    8.5860620562778445641e-15,
    -2.1748686985580618730e-16,
    5.5090028283602295152e-18,
    -1.3954464685812523340e-19,
    3.5347070396294674716e-21,
    -8.9535174270375468504e-23,
    2.2679524523376830603e-24,
    -5.7447906688722024452e-26,
};

double pole_distance(cplx s) { return std::abs(s - cplx{1.0, 0.0}); }

}  // namespace

EvalResult hurwitz_zeta_full(cplx s, double a, const EmParams& params,
                             bool subtract_pole) {
    if (!(a > 0.0 && a <= 1.0)) throw UsageError("hurwitz_zeta: a must be in (0, 1]");
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw UsageError("hurwitz_zeta: s must be finite");
    if (!subtract_pole && pole_distance(s) < 1e-13)
        throw PoleError("hurwitz_zeta: pole at s = 1");
    const int M = std::clamp(params.bernoulli_order, 1, 16);
    const double t = s.imag();
    std::size_t N = static_cast<std::size_t>(
        std::max<double>(params.min_terms, std::ceil(params.terms_per_t * std::abs(t))));
    N = std::min(N, params.max_terms);

    // sum_{n=0}^{N-1} (n+a)^{-s}
    KahanSumC acc;
    double abs_terms = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
        double base = static_cast<double>(n) + a;
        double lg = std::log(base);
        double mag = std::exp(-s.real() * lg);
        double ph = -s.imag() * lg;
        acc.add({mag * std::cos(ph), mag * std::sin(ph)});
        abs_terms += mag;
    }

    const double NA = static_cast<double>(N) + a;
    const double logNA = std::log(NA);
    const cplx na_pow_ms = std::exp(-s * logNA);  // (N+a)^{-s}

    // (N+a)^{1-s} / (s-1), or its pole-subtracted version
    if (subtract_pole) {
        // (N+a)^{1-s}/(s-1) - 1/(s-1) = expm1((1-s) log(N+a)) / (s-1)
        if (pole_distance(s) < 1e-14) {
            acc.add(cplx{-logNA, 0.0});
        } else {
            acc.add(cexpm1((1.0 - s) * logNA) / (s - 1.0));
        }
    } else {
        acc.add(na_pow_ms * NA / (s - 1.0));
    }
    acc.add(0.5 * na_pow_ms);

    // Bernoulli corrections: B_{2j}/(2j)! * (s)_{2j-1} * (N+a)^{-s-2j+1}
    cplx poch = s;                       // (s)_1
    cplx na_shift = na_pow_ms / NA;      // (N+a)^{-s-1}
    const double inv_na2 = 1.0 / (NA * NA);
    for (int j = 1; j <= M; ++j) {
        acc.add(kB2jOverFact[j] * poch * na_shift);
        if (j < M) {
            poch *= (s + cplx(2.0 * j - 1.0)) * (s + cplx(2.0 * j));
            na_shift *= inv_na2;
        }
    }

    // Remainder: next term magnitude with the standard |s+2M+1| inflation.
    cplx poch_next = poch * (s + cplx(2.0 * M - 1.0)) * (s + cplx(2.0 * M));
    double rem = std::abs(kB2jOverFact[std::min(M + 1, 16)]) * std::abs(poch_next) *
                 std::pow(NA, -s.real() - 2.0 * M - 1.0);
    double sig = s.real() + 2.0 * M + 1.0;
    if (sig > 0.0) rem *= (std::abs(s + cplx(2.0 * M + 1.0)) + sig) / sig;
    double rounding = 4.0 * std::numeric_limits<double>::epsilon() *
                      (abs_terms + std::abs(acc.value()));
    return {acc.value(), rem + rounding};
}

cplx hurwitz_zeta(cplx s, double a, double tol) {
    EvalResult r = hurwitz_zeta_full(s, a);
    if (r.err_bound > tol)
        throw PrecisionError("hurwitz_zeta: requested tolerance unreachable", r.err_bound);
    return r.value;
}

cplx zeta_eval(cplx s, double tol) { return hurwitz_zeta(s, 1.0, tol); }

EvalResult l_eval_full(const CharacterTable& chi, cplx s, const EmParams& params) {
    const std::uint64_t q = chi.modulus();
    if (chi.is_principal() && pole_distance(s) < 1e-13)
        throw PoleError("l_eval: pole at s = 1 for principal character");
    // Pole-subtracted Hurwitz path once the terms would individually blow up;
    // the subtracted poles cancel exactly since sum_a chi(a) = 0.
    const bool subtract = !chi.is_principal() && pole_distance(s) < 1e-4;
    KahanSumC acc;
    double bound = 0.0;
    for (std::uint64_t a = 1; a <= q; ++a) {
        cplx c = chi(a);
        if (c == cplx{0.0, 0.0}) continue;
        EvalResult h = hurwitz_zeta_full(s, static_cast<double>(a) / q, params, subtract);
        acc.add(c * h.value);
        bound += h.err_bound;
    }
    cplx qs = std::exp(-s * std::log(static_cast<double>(q)));
    return {qs * acc.value(), bound * std::abs(qs)};
}

cplx l_eval(const CharacterTable& chi, cplx s, double tol) {
    if (s.real() < kStripSigmaMin || s.real() > kStripSigmaMax)
        throw UsageError("l_eval: sigma outside the supported strip [0.1, 10]");
    EvalResult r = l_eval_full(chi, s);
    if (r.err_bound > tol)
        throw PrecisionError("l_eval: requested tolerance unreachable", r.err_bound);
    return r.value;
}

cplx inv_l_partial(const CharacterTable& chi, std::uint64_t n, cplx s) {
    if (n == 0) throw UsageError("inv_l_partial: n must be >= 1");
    const std::vector<int> mu = mobius_sieve(n);
    KahanSumC acc;
    for (std::uint64_t k = 1; k <= n; ++k) {
        if (mu[k] == 0) continue;
        cplx c = chi(k);
        if (c == cplx{0.0, 0.0}) continue;
        acc.add(static_cast<double>(mu[k]) * c *
                std::exp(-s * std::log(static_cast<double>(k))));
    }
    return acc.value();
}

DirichletPoly::DirichletPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw UsageError("DirichletPoly: needs at least one coefficient");
}

cplx DirichletPoly::eval(cplx s) const {
    KahanSumC acc;
    for (std::size_t k = 1; k <= coeffs_.size(); ++k) {
        if (coeffs_[k - 1] == cplx{0.0, 0.0}) continue;
        acc.add(coeffs_[k - 1] * std::exp(-s * std::log(static_cast<double>(k))));
    }
    return acc.value();
}

DirichletPoly mollifier_vn(std::uint64_t n) {
    if (n == 0) throw UsageError("mollifier_vn: n must be >= 1");
    std::vector<cplx> c(n);
    if (n == 1) {
        c[0] = 1.0;  // (1 - log1/log1) read as 1
        return DirichletPoly(std::move(c));
    }
    const std::vector<int> mu = mobius_sieve(n);
    const double logn = std::log(static_cast<double>(n));
    for (std::uint64_t k = 1; k <= n; ++k)
        c[k - 1] = (1.0 - std::log(static_cast<double>(k)) / logn) *
                   static_cast<double>(mu[k]);
    return DirichletPoly(std::move(c));
}

}  // namespace nblab
