// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <vector>

namespace aniso {

void* fft_alloc(std::size_t bytes);
void fft_free(void* p);

// SIMD-aligned allocator so buffers can be passed to cached FFTW plans.
template <class T>
struct FftAllocator {
    using value_type = T;
    FftAllocator() = default;
    template <class U>
    FftAllocator(const FftAllocator<U>&) {}
    T* allocate(std::size_t n) {
        void* p = fft_alloc(n * sizeof(T));
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) { fft_free(p); }
    template <class U>
    bool operator==(const FftAllocator<U>&) const { return true; }
    template <class U>
    bool operator!=(const FftAllocator<U>&) const { return false; }
};

using cplx = std::complex<double>;
using RealBuffer = std::vector<double, FftAllocator<double>>;
using ComplexBuffer = std::vector<cplx, FftAllocator<cplx>>;

// Unnormalised 2-D transforms on row-major arrays of shape n0 x n1.
// Forward uses exp(-2 pi i ...), backward exp(+2 pi i ...).
void fft2_forward(int n0, int n1, ComplexBuffer& data);
void fft2_backward(int n0, int n1, ComplexBuffer& data);

// Real input -> half spectrum of shape n0 x (n1/2 + 1).
void fft2_r2c(int n0, int n1, RealBuffer& in, ComplexBuffer& out);
// Half spectrum -> real output (input is overwritten).
void fft2_c2r(int n0, int n1, ComplexBuffer& in, RealBuffer& out);

}  // namespace aniso
