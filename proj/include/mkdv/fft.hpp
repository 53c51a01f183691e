#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace mkdv {

/// Real <-> half-complex transform of fixed size n backed by FFTW.
///
/// Owns aligned buffers; callers fill real_data()/spectrum() and execute.
/// Plans are created with FFTW_ESTIMATE so results are bit-reproducible.
/// Planning is serialized internally; execution on distinct objects is
/// safe from concurrent threads.
class RealFft {
public:
    explicit RealFft(std::size_t n);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    std::size_t size() const { return n_; }
    std::span<double> real_data() { return {real_, n_}; }
    std::span<std::complex<double>> spectrum() { return {spec_, n_ / 2 + 1}; }

    /// spectrum = sum_j real[j] e^{-2 pi i j k / n}
    void forward();
    /// real = sum_k spectrum[k] e^{+2 pi i j k / n} (unnormalized; clobbers spectrum)
    void inverse();

private:
    std::size_t n_;
    double* real_ = nullptr;
    std::complex<double>* spec_ = nullptr;
    void* plan_fwd_ = nullptr;
    void* plan_inv_ = nullptr;
};

/// Complex transform of fixed size n, same ownership model as RealFft.
class ComplexFft {
public:
    explicit ComplexFft(std::size_t n);
    ~ComplexFft();
    ComplexFft(const ComplexFft&) = delete;
    ComplexFft& operator=(const ComplexFft&) = delete;

    std::size_t size() const { return n_; }
    std::span<std::complex<double>> data() { return {data_, n_}; }

    void forward();
    void inverse();  // unnormalized

private:
    std::size_t n_;
    std::complex<double>* data_ = nullptr;
    void* plan_fwd_ = nullptr;
    void* plan_inv_ = nullptr;
};

}  // namespace mkdv
