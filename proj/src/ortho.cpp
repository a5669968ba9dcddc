#include "nblab/ortho.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nblab/arith.hpp"
#include "nblab/errors.hpp"

namespace nblab {
namespace {

// k^{2/p} - (k-1)^{2/p} without cancellation: -k^{2/p} expm1((2/p) log1p(-1/k)).
double norm_gap(double p, std::uint64_t k) {
    if (k == 1) return 1.0;
    double kd = static_cast<double>(k);
    return -std::pow(kd, 2.0 / p) * std::expm1((2.0 / p) * std::log1p(-1.0 / kd));
}

}  // namespace

cplx psi_eval(double p, std::uint64_t k, double t) {
    require_p(p);
    if (k == 0) throw UsageError("psi_eval: k must be >= 1");
    if (k == 1) return {1.0, 0.0};
    double kd = static_cast<double>(k);
    double logk = std::log(kd);
    double logk1 = std::log(kd - 1.0);
    cplx w{1.0 / p, -t};
    cplx num = std::exp(w * logk) - std::exp(w * logk1);
    return num / std::sqrt(norm_gap(p, k));
}

double monomial_inner(double p, std::uint64_t j, std::uint64_t k) {
    require_p(p);
    if (j == 0 || k == 0) throw UsageError("monomial_inner: indices must be >= 1");
    return std::pow(static_cast<double>(std::min(j, k)), 2.0 / p);
}

// Single-pair streaming core; term_k for (u,v) computed in the cancellation-
// free form  k^{i(v-u)} cexpm1(w_u g) conj(cexpm1(w_v g)) / (-expm1((2/p) g)),
// g = log1p(-1/k), where the k^{2/p} factors cancel against the norm gap.
void kernel_stream(double p, double u, double v, std::span<const std::uint64_t> ns,
                   const std::function<void(std::size_t, cplx)>& snapshot) {
    require_p(p);
    if (ns.empty()) return;
    for (std::size_t i = 0; i + 1 < ns.size(); ++i)
        if (ns[i] >= ns[i + 1]) throw UsageError("kernel_stream: ns must be ascending");
    if (ns.front() == 0) throw UsageError("kernel_stream: n must be >= 1");

    const bool diag = (u == v);
    const cplx wu{1.0 / p, -u};
    const cplx wv{1.0 / p, -v};
    KahanSumC acc;
    acc.add({1.0, 0.0});  // k = 1: psi_1 = 1
    std::size_t next = 0;
    std::uint64_t n_target = ns.back();
    for (std::uint64_t k = 1; k <= n_target; ++k) {
        if (k > 1) {
            double kd = static_cast<double>(k);
            double g = std::log1p(-1.0 / kd);
            double denom = -std::expm1((2.0 / p) * g);
            cplx eu = cexpm1(wu * g);
            if (diag) {
                acc.add({std::norm(eu) / denom, 0.0});
            } else {
                cplx ev_conj = std::conj(cexpm1(wv * g));
                double ph = (v - u) * std::log(kd);
                cplx rot{std::cos(ph), std::sin(ph)};
                acc.add(rot * eu * ev_conj / denom);
            }
        }
        while (next < ns.size() && k == ns[next]) {
            snapshot(next, acc.value());
            ++next;
        }
    }
}

cplx kernel_eval(double p, std::uint64_t n, double u, double v) {
    if (n == 0) throw UsageError("kernel_eval: n must be >= 1");
    cplx out;
    const std::uint64_t ns[1] = {n};
    kernel_stream(p, u, v, ns, [&](std::size_t, cplx val) { out = val; });
    return out;
}

namespace {

void check_nodes(std::span<const double> nodes) {
    if (nodes.empty()) throw UsageError("kernel_matrix: needs at least one node");
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (std::abs(nodes[i] - nodes[j]) <= 1e-9)
                throw UsageError("kernel_matrix: duplicate nodes (rank-deficient H)");
}

double hermitian_cond(const Eigen::MatrixXcd& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    double lo = es.eigenvalues().cwiseAbs().minCoeff();
    double hi = es.eigenvalues().cwiseAbs().maxCoeff();
    return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

}  // namespace

std::vector<KernelMatrix> kernel_matrix_ladder(double p, std::span<const double> nodes,
                                               std::span<const std::uint64_t> n_list) {
    check_nodes(nodes);
    const std::size_t m = nodes.size();
    std::vector<KernelMatrix> out(n_list.size());
    for (auto& km : out) {
        km.m = m;
        km.nodes.assign(nodes.begin(), nodes.end());
        km.H = Eigen::MatrixXcd::Zero(m, m);
    }
    // one streaming pass per (i <= j) pair
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            kernel_stream(p, nodes[i], nodes[j], n_list,
                          [&](std::size_t idx, cplx val) {
                              out[idx].H(i, j) = val;
                              if (i != j) out[idx].H(j, i) = std::conj(val);
                          });
        }
    }
    for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
        out[idx].n = n_list[idx];
        out[idx].underdetermined = n_list[idx] < m;
        out[idx].cond_estimate = hermitian_cond(out[idx].H);
    }
    return out;
}

KernelMatrix kernel_matrix(double p, std::uint64_t n, std::span<const double> nodes) {
    const std::uint64_t ns[1] = {n};
    auto v = kernel_matrix_ladder(p, nodes, ns);
    return std::move(v.front());
}

}  // namespace nblab
