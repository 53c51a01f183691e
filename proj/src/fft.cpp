#include "mkdv/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <new>

namespace mkdv {
namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
    real_ = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    spec_ = static_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)));
    if (!real_ || !spec_) throw std::bad_alloc();
    std::lock_guard lock(planner_mutex());
    const int ni = static_cast<int>(n);
    auto* spec = reinterpret_cast<fftw_complex*>(spec_);
    plan_fwd_ = fftw_plan_dft_r2c_1d(ni, real_, spec, FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_c2r_1d(ni, spec, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
        fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    }
    fftw_free(real_);
    fftw_free(spec_);
}

void RealFft::forward() { fftw_execute(static_cast<fftw_plan>(plan_fwd_)); }
void RealFft::inverse() { fftw_execute(static_cast<fftw_plan>(plan_inv_)); }

ComplexFft::ComplexFft(std::size_t n) : n_(n) {
    data_ = static_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!data_) throw std::bad_alloc();
    std::lock_guard lock(planner_mutex());
    const int ni = static_cast<int>(n);
    auto* d = reinterpret_cast<fftw_complex*>(data_);
    plan_fwd_ = fftw_plan_dft_1d(ni, d, d, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_1d(ni, d, d, FFTW_BACKWARD, FFTW_ESTIMATE);
}

ComplexFft::~ComplexFft() {
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
        fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    }
    fftw_free(data_);
}

void ComplexFft::forward() { fftw_execute(static_cast<fftw_plan>(plan_fwd_)); }
void ComplexFft::inverse() { fftw_execute(static_cast<fftw_plan>(plan_inv_)); }

}  // namespace mkdv
