#include "nblab/bd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nblab/errors.hpp"
#include "nblab/quadrature.hpp"

namespace nblab {
namespace {

// Integrals over (lo, hi] used by the exact piecewise products.
struct PieceIntegrals {
    double i0, i1, i2;  // of 1, x^{-alpha}, x^{-2 alpha}
};

PieceIntegrals piece_integrals(double lo, double hi, double alpha) {
    PieceIntegrals r{};
    r.i0 = hi - lo;
    if (alpha == 1.0)
        r.i1 = std::log(hi / lo);
    else
        r.i1 = (std::pow(hi, 1.0 - alpha) - std::pow(lo, 1.0 - alpha)) / (1.0 - alpha);
    const double e2 = 1.0 - 2.0 * alpha;  // < 0 for p > 1, never exactly 0
    r.i2 = (std::pow(hi, e2) - std::pow(lo, e2)) / e2;
    return r;
}

// integral of (c1j x^-a + c0j) * conj(c1k x^-a + c0k) over (lo, hi]
cplx product_piece(double lo, double hi, double alpha, cplx c1j, cplx c0j, cplx c1k,
                   cplx c0k) {
    PieceIntegrals pi = piece_integrals(lo, hi, alpha);
    return c1j * std::conj(c1k) * pi.i2 + (c1j * std::conj(c0k) + c0j * std::conj(c1k)) * pi.i1 +
           c0j * std::conj(c0k) * pi.i0;
}

}  // namespace

double EpsPolicy::eps_for(std::uint64_t j, std::uint64_t k) const {
    if (eps_override > 0.0) return eps_override;
    return 1.0 / (static_cast<double>(std::max(j, k)) * breakpoints_per_freq);
}

GramEntry gram_entry(const KappaSpec& spec, std::uint64_t j, std::uint64_t k, double eps) {
    if (j == 0 || k == 0) throw UsageError("gram_entry: indices must be >= 1");
    const double upper = 1.0 / static_cast<double>(std::max(j, k));
    if (!(eps > 0.0 && eps < upper))
        throw UsageError("gram_entry: eps must lie in (0, 1/max(j,k))");
    const double alpha = spec.alpha();
    const cplx c1j = spec.beta() == 0.0
                         ? cplx{0.0, 0.0}
                         : cplx{spec.beta() * std::pow(static_cast<double>(j), -alpha), 0.0};
    const cplx c1k = spec.beta() == 0.0
                         ? cplx{0.0, 0.0}
                         : cplx{spec.beta() * std::pow(static_cast<double>(k), -alpha), 0.0};

    // Merge breakpoints 1/(j a), 1/(k b) descending from x = upper down to eps.
    // On the current interval, floor(1/(j x)) = a and floor(1/(k x)) = b.
    std::uint64_t a = std::max(j, k) / j;
    std::uint64_t b = std::max(j, k) / k;
    const auto amax = static_cast<std::uint64_t>(std::ceil(1.0 / (static_cast<double>(j) * eps)));
    const auto bmax = static_cast<std::uint64_t>(std::ceil(1.0 / (static_cast<double>(k) * eps)));
    const cplx* S = spec.prefix_data(std::max(amax, bmax) + 1);

    KahanSumC acc;
    double hi = upper;
    while (hi > eps) {
        const double next_j = 1.0 / (static_cast<double>(j) * static_cast<double>(a + 1));
        const double next_k = 1.0 / (static_cast<double>(k) * static_cast<double>(b + 1));
        double lo = std::max({next_j, next_k, eps});
        acc.add(product_piece(lo, hi, alpha, c1j, -S[a], c1k, -S[b]));
        if (lo == eps) break;
        // advance whichever frequency owns the breakpoint (possibly both)
        if (next_j >= next_k) ++a;
        if (next_k >= next_j) ++b;
        hi = lo;
    }
    const double sup = spec.sup_abs_cached();
    return {acc.value(), sup * sup * eps};
}

GramEntry gram_moment(const KappaSpec& spec, std::uint64_t k, double eps) {
    if (k == 0) throw UsageError("gram_moment: k must be >= 1");
    const double upper = 1.0 / static_cast<double>(k);
    if (!(eps > 0.0 && eps < upper))
        throw UsageError("gram_moment: eps must lie in (0, 1/k)");
    KahanSumC acc;
    for (const Segment& s : spec.lambda_segments(k, eps)) {
        PieceIntegrals pi = piece_integrals(s.x_lo, s.x_hi, spec.alpha());
        acc.add(std::conj(s.power_coeff) * pi.i1 + std::conj(s.const_coeff) * pi.i0);
    }
    const double sup = spec.sup_abs_cached();
    return {acc.value(), sup * eps};
}

GramSystem build_gram(const KappaSpec& spec, std::size_t n, const EpsPolicy& eps) {
    if (n == 0) throw UsageError("build_gram: n must be >= 1");
    GramSystem sys;
    sys.n = n;
    sys.G = Eigen::MatrixXcd::Zero(n, n);
    sys.v = Eigen::VectorXcd::Zero(n);
    // warm the prefix cache once to avoid lock churn in the parallel loop
    const double eps11 = eps.eps_for(1, n);
    spec.prefix(static_cast<std::uint64_t>(std::ceil(1.0 / eps11)) + 2);
    spec.sup_abs_cached();

    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::uint64_t j = 1; j <= n; ++j)
        for (std::uint64_t k = j; k <= n; ++k) pairs.emplace_back(j, k);

    std::vector<double> bounds(pairs.size() + n, 0.0);
    parallel_for(pairs.size() + n, [&](std::size_t idx) {
        if (idx < pairs.size()) {
            auto [j, k] = pairs[idx];
            GramEntry e = gram_entry(spec, j, k, eps.eps_for(j, k));
            sys.G(j - 1, k - 1) = e.value;
            if (j != k) sys.G(k - 1, j - 1) = std::conj(e.value);
            bounds[idx] = e.bound;
        } else {
            std::uint64_t k = idx - pairs.size() + 1;
            GramEntry e = gram_moment(spec, k, eps.eps_for(k, k));
            sys.v(k - 1) = e.value;
            bounds[idx] = e.bound;
        }
    });
    sys.tail_bound = *std::max_element(bounds.begin(), bounds.end());
    return sys;
}

namespace {

struct Solved {
    double d2;
    double cond;
};

Solved solve_d2(const Eigen::MatrixXcd& G, const Eigen::VectorXcd& v) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    double lo = ev.minCoeff(), hi = ev.maxCoeff();
    double cond = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(G);
    double quad = std::real(v.dot(ldlt.solve(v)));  // v^* G^{-1} v
    double d2 = std::clamp(1.0 - quad, 0.0, 1.0);
    return {d2, cond};
}

}  // namespace

BdResult bd_distance(const KappaSpec& spec, std::size_t n, const BdOptions& opts) {
    if (n > opts.n_cap)
        throw UsageError("bd_distance: n exceeds the cap (Gram conditioning degrades; "
                         "raise n_cap knowingly)");
    GramSystem sys = build_gram(spec, n, opts.eps);
    Solved s = solve_d2(sys.G, sys.v);
    if (s.cond > opts.cond_limit)
        throw ConditioningError("bd_distance: Gram matrix too ill-conditioned; use smaller n",
                                s.cond);
    return {s.d2, s.cond, sys.tail_bound};
}

std::vector<BdResult> bd_distance_profile(const KappaSpec& spec, std::size_t n,
                                          const BdOptions& opts) {
    if (n > opts.n_cap)
        throw UsageError("bd_distance_profile: n exceeds the cap");
    GramSystem sys = build_gram(spec, n, opts.eps);
    std::vector<BdResult> out;
    out.reserve(n);
    for (std::size_t m = 1; m <= n; ++m) {
        Solved s = solve_d2(sys.G.topLeftCorner(m, m), sys.v.head(m));
        if (s.cond > opts.cond_limit)
            throw ConditioningError("bd_distance_profile: ill-conditioned leading block",
                                    s.cond);
        out.push_back({s.d2, s.cond, sys.tail_bound});
    }
    return out;
}

double det_quotient_d2(const GramSystem& sys) {
    const std::size_t n = sys.n;
    Eigen::MatrixXcd bordered(n + 1, n + 1);
    bordered.topLeftCorner(n, n) = sys.G;
    bordered.topRightCorner(n, 1) = sys.v;
    bordered.bottomLeftCorner(1, n) = sys.v.adjoint();
    bordered(n, n) = 1.0;
    cplx det_big = bordered.partialPivLu().determinant();
    cplx det_g = sys.G.partialPivLu().determinant();
    return std::real(det_big / det_g);
}

FreqObjective freq_objective(const CharacterTable& chi, double p, const DirichletPoly& A,
                             double T, const FreqOptions& opts) {
    require_p(p);
    if (!(T > 0.0)) throw UsageError("freq_objective: T must be positive");
    const double sigma = 1.0 / p;
    auto excess = [&](double t) {
        cplx s{sigma, t};
        EvalResult L = l_eval_full(chi, s, opts.em);
        if (L.err_bound > 1e-8)
            throw PrecisionError("freq_objective: L evaluation too coarse", L.err_bound);
        cplx f = 1.0 - L.value * A.eval(s);
        return (std::norm(f) - 1.0) / (sigma * sigma + t * t);
    };
    QuadResult inner = integrate_gk(excess, -T / 2.0, T / 2.0, opts.quad_tol / 2.0);
    QuadResult left = integrate_gk(excess, -T, -T / 2.0, opts.quad_tol / 4.0);
    QuadResult right = integrate_gk(excess, T / 2.0, T, opts.quad_tol / 4.0);
    const double inv2pi = 1.0 / (2.0 * std::numbers::pi);
    double value = p / 2.0 + inv2pi * (inner.value + left.value + right.value);
    double value_half = p / 2.0 + inv2pi * inner.value;
    return {value, std::abs(value - value_half)};
}

// ---------------------------------------------------------------------------
// Plancherel cross-check
// ---------------------------------------------------------------------------

PlancherelEvaluator::PlancherelEvaluator(const CharacterTable& chi, double p, double T,
                                         const PlancherelOptions& opts)
    : spec_(chi, p), T_(T), opts_(opts) {
    if (!(T > 0.0)) throw UsageError("plancherel: T must be positive");
    // Composite GK15 nodes on [-T, T]; panel width resolves both the weight
    // and the oscillation of L(1/p + i t) at desk-scale T.
    const int panels = std::max(2, static_cast<int>(std::ceil(2.0 * T / opts.panel_width)));
    const double h = 2.0 * T / panels;
    static const double kx[15] = {
        -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
        -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
        -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
        -0.207784955007898467600689403773245, 0.0,
        0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
        0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
        0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
        0.991455371120812639206854697526329};
    static const double kw[15] = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
        0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
        0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
        0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
        0.022935322010529224963732008058970};
    const double sigma = 1.0 / p;
    const double inv2pi = 1.0 / (2.0 * std::numbers::pi);
    nodes_.reserve(panels * 15);
    weights_.reserve(panels * 15);
    for (int i = 0; i < panels; ++i) {
        double a = -T + i * h, c = a + 0.5 * h;
        for (int j = 0; j < 15; ++j) {
            double t = c + 0.5 * h * kx[j];
            nodes_.push_back(t);
            weights_.push_back(0.5 * h * kw[j] * inv2pi / (0.25 + t * t));
        }
    }
    eta_.resize(nodes_.size());
    inner_.resize(nodes_.size());
    parallel_for(nodes_.size(), [&](std::size_t i) {
        EvalResult L = l_eval_full(chi, cplx{sigma, nodes_[i]}, opts_.em);
        if (L.err_bound > 1e-8)
            throw PrecisionError("plancherel: L evaluation too coarse", L.err_bound);
        eta_[i] = L.value;
        inner_[i] = std::abs(nodes_[i]) <= T / 2.0 ? 1 : 0;
    });
}

double PlancherelEvaluator::time_norm(std::span<const cplx> b, double* tail_bound) const {
    const double alpha = spec_.alpha();
    const double beta = spec_.beta();
    const std::size_t n = b.size();
    const double eps = opts_.time_eps;

    // C1 = beta sum b_k k^{-alpha}; the x^{-alpha} coefficient is global.
    cplx C1{0.0, 0.0};
    if (beta != 0.0) {
        KahanSumC c1;
        for (std::size_t k = 1; k <= n; ++k)
            c1.add(b[k - 1] * beta * std::pow(static_cast<double>(k), -alpha));
        C1 = c1.value();
    }

    KahanSumC acc;
    // x > 1: f = -C1 x^{-alpha}; exact integral |C1|^2 / (2 alpha - 1)
    if (C1 != cplx{0.0, 0.0}) acc.add({std::norm(C1) / (2.0 * alpha - 1.0), 0.0});

    // sweep x in (max(eps, 1/(N+1)), 1/N]: floor(1/(k x)) = floor(N/k);
    // prefix increments are applied directly, no cache needed
    const double w = 0.5 - 1.0 / spec_.p();
    KahanSumC sigma_n;  // sum_k b_k S_{floor(N/k)}
    for (std::uint64_t N = 1;; ++N) {
        // update terms whose floor changed: k | N
        for (std::uint64_t k = 1; k <= n; ++k) {
            if (N % k == 0) {
                std::uint64_t m = N / k;
                cplx c = spec_.chi()(m);
                if (c != cplx{0.0, 0.0})
                    sigma_n.add(b[k - 1] * c * std::pow(static_cast<double>(m), w));
            }
        }
        double hi = 1.0 / static_cast<double>(N);
        double lo = std::max(eps, 1.0 / static_cast<double>(N + 1));
        if (hi <= eps) break;
        cplx C0 = cplx{1.0, 0.0} + sigma_n.value();
        acc.add(product_piece(lo, hi, alpha, -C1, C0, -C1, C0));
        if (lo == eps) break;
    }

    double supk = spec_.sup_abs_cached();
    double babs = 0.0;
    for (cplx z : b) babs += std::abs(z);
    double bound = (1.0 + babs * supk) * (1.0 + babs * supk) * eps;
    if (tail_bound) *tail_bound = bound;
    return std::real(acc.value());
}

double PlancherelEvaluator::freq_norm(std::span<const cplx> b, double* tail_report) const {
    const double sigma = 1.0 / spec_.p();
    const std::size_t n = b.size();
    // A_b(s) = -sum b_k k^{-s}; integrand excess |1 - eta A_b|^2 - 1.
    KahanSum full, inner;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        cplx a{0.0, 0.0};
        for (std::size_t k = 1; k <= n; ++k) {
            double lk = std::log(static_cast<double>(k));
            double mag = std::exp(-sigma * lk);
            double ph = -nodes_[i] * lk;
            a += b[k - 1] * cplx{mag * std::cos(ph), mag * std::sin(ph)};
        }
        cplx f = 1.0 + eta_[i] * a;  // 1 - eta * (-sum b_k k^{-s})
        double excess = (std::norm(f) - 1.0) * weights_[i];
        full.add(excess);
        if (inner_[i]) inner.add(excess);
    }
    // whole-line integral of the constant 1 is exactly 1
    double value = 1.0 + full.value();
    if (tail_report) *tail_report = std::abs(full.value() - inner.value());
    return value;
}

PlancherelResult PlancherelEvaluator::check(std::span<const cplx> b) const {
    PlancherelResult r{};
    r.time_value = time_norm(b, &r.time_tail_bound);
    r.freq_value = freq_norm(b, &r.freq_tail_report);
    r.discrepancy = std::abs(r.time_value - r.freq_value);
    return r;
}

PlancherelResult plancherel_check(const CharacterTable& chi, double p,
                                  std::span<const cplx> b, double T,
                                  const PlancherelOptions& opts) {
    PlancherelEvaluator ev(chi, p, T, opts);
    return ev.check(b);
}

}  // namespace nblab
