#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace nblab {

using cplx = std::complex<double>;

// Kahan-Babuska-Neumaier compensated accumulator.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct KahanSumC {
    KahanSum re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

// exp(z) - 1 without cancellation for small z.
inline cplx cexpm1(cplx z) {
    double x = z.real(), y = z.imag();
    double em = std::expm1(x);
    double sy = std::sin(y), cy = std::cos(y);
    double s2 = std::sin(0.5 * y);
    // e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
    return {em * cy - 2.0 * s2 * s2, (em + 1.0) * sy};
}

// a^z for a > 0 as exp(z log a).
inline cplx cpow(double a, cplx z) {
    return std::exp(z * std::log(a));
}

// Worker cap from NB_LAB_THREADS (default: hardware concurrency, at most 8).
unsigned worker_threads();

// Chunked deterministic parallel map over [0, count): each index writes to
// its own slot, so the result does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace nblab
