#include "nblab/kappa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nblab/errors.hpp"

namespace nblab {

KappaSpec::KappaSpec(CharacterTable chi, double p) : chi_(std::move(chi)), p_(p) {
    require_p(p);
    if (chi_.is_principal()) {
        alpha_ = 1.5 - 1.0 / p;
        beta_ = static_cast<double>(totient(chi_.modulus())) /
                (alpha_ * static_cast<double>(chi_.modulus()));
    } else {
        alpha_ = 0.0;
        beta_ = 0.0;
    }
    prefix_.push_back({0.0, 0.0});  // S_0
}

void KappaSpec::ensure_prefix(std::uint64_t m) const {
    {
        std::shared_lock lk(mutex_);
        if (prefix_.size() > m) return;
    }
    std::unique_lock lk(mutex_);
    if (prefix_.size() > m) return;
    const double w = 0.5 - 1.0 / p_;
    for (std::uint64_t k = prefix_.size(); k <= m; ++k) {
        cplx c = chi_(k);
        if (c != cplx{0.0, 0.0})
            acc_.add(c * std::pow(static_cast<double>(k), w));
        prefix_.push_back(acc_.value());
    }
}

cplx KappaSpec::prefix(std::uint64_t m) const {
    ensure_prefix(m);
    std::shared_lock lk(mutex_);
    return prefix_[m];
}

const cplx* KappaSpec::prefix_data(std::uint64_t m) const {
    ensure_prefix(m);
    std::shared_lock lk(mutex_);
    return prefix_.data();
}

cplx KappaSpec::kappa(double x) const {
    if (!(x > 0.0)) throw UsageError("kappa: x must be positive");
    const auto m = static_cast<std::uint64_t>(std::floor(x));
    cplx power = beta_ == 0.0 ? cplx{0.0, 0.0}
                              : cplx{beta_ * std::pow(x, alpha_), 0.0};
    return power - prefix(m);
}

double KappaSpec::sup_abs(double X) const {
    if (!(X >= 1.0)) throw UsageError("sup_abs: X must be >= 1");
    const auto mmax = static_cast<std::uint64_t>(std::floor(X));
    ensure_prefix(mmax);
    std::shared_lock lk(mutex_);
    double best = beta_;  // sup of beta x^alpha on (0,1)
    for (std::uint64_t m = 1; m <= mmax; ++m) {
        const cplx s = prefix_[m];
        double left = std::abs(cplx{beta_ * std::pow(static_cast<double>(m), alpha_), 0.0} - s);
        double hi = std::min(static_cast<double>(m + 1), X);
        double right = std::abs(cplx{beta_ * std::pow(hi, alpha_), 0.0} - s);
        best = std::max({best, left, right});
    }
    return best;
}

double KappaSpec::sup_abs_cached() const {
    std::call_once(sup_once_, [this] { sup_cache_ = sup_abs(1e5); });
    return sup_cache_;
}

std::vector<Segment> KappaSpec::lambda_segments(std::uint64_t k, double eps) const {
    if (k == 0) throw UsageError("lambda_segments: k must be >= 1");
    const double invk = 1.0 / static_cast<double>(k);
    if (!(eps > 0.0 && eps < invk))
        throw UsageError("lambda_segments: eps must lie in (0, 1/k)");
    const cplx c1 =
        beta_ == 0.0 ? cplx{0.0, 0.0}
                     : cplx{beta_ * std::pow(static_cast<double>(k), -alpha_), 0.0};
    // m ranges over 1 .. floor-ish 1/(k eps); last interval clipped at eps
    std::vector<Segment> segs;
    const auto mmax = static_cast<std::uint64_t>(std::floor(1.0 / (eps * k) - 1e-12)) + 1;
    ensure_prefix(mmax);
    std::shared_lock lk(mutex_);
    for (std::uint64_t m = 1;; ++m) {
        double hi = 1.0 / (static_cast<double>(k) * static_cast<double>(m));
        if (!(hi > eps)) break;
        double lo = std::max(eps, 1.0 / (static_cast<double>(k) * static_cast<double>(m + 1)));
        segs.push_back({lo, hi, c1, -prefix_[m]});
        if (lo == eps) break;
    }
    return segs;
}

Segment KappaSpec::tail_segment(std::uint64_t k) const {
    const cplx c1 =
        beta_ == 0.0 ? cplx{0.0, 0.0}
                     : cplx{beta_ * std::pow(static_cast<double>(k), -alpha_), 0.0};
    return {1.0 / static_cast<double>(k), std::numeric_limits<double>::infinity(), c1,
            {0.0, 0.0}};
}

KappaSpec kappa_build(const CharacterTable& chi, double p) { return KappaSpec(chi, p); }

cplx kappa_eval(const KappaSpec& spec, double x) { return spec.kappa(x); }

}  // namespace nblab
