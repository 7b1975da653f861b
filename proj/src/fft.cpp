// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include "aniso/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace aniso {

void* fft_alloc(std::size_t bytes) { return fftw_malloc(bytes == 0 ? 1 : bytes); }
void fft_free(void* p) { fftw_free(p); }

namespace {

enum class Kind { Forward, Backward, R2C, C2R };

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

fftw_plan get_plan(Kind kind, int n0, int n1) {
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex());
    const auto key = std::make_tuple(static_cast<int>(kind), n0, n1);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const std::size_t full = static_cast<std::size_t>(n0) * n1;
    const std::size_t half = static_cast<std::size_t>(n0) * (n1 / 2 + 1);
    fftw_plan plan = nullptr;
    const unsigned flags = FFTW_ESTIMATE;
    if (kind == Kind::Forward || kind == Kind::Backward) {
        auto* a = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * full));
        plan = fftw_plan_dft_2d(n0, n1, a, a, kind == Kind::Forward ? FFTW_FORWARD : FFTW_BACKWARD, flags);
        fftw_free(a);
    } else if (kind == Kind::R2C) {
        auto* r = static_cast<double*>(fftw_malloc(sizeof(double) * full));
        auto* c = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * half));
        plan = fftw_plan_dft_r2c_2d(n0, n1, r, c, flags);
        fftw_free(r);
        fftw_free(c);
    } else {
        auto* r = static_cast<double*>(fftw_malloc(sizeof(double) * full));
        auto* c = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * half));
        plan = fftw_plan_dft_c2r_2d(n0, n1, c, r, flags);
        fftw_free(r);
        fftw_free(c);
    }
    if (!plan) throw std::runtime_error("FFTW planning failed");
    cache.emplace(key, plan);
    return plan;
}

fftw_complex* as_fftw(ComplexBuffer& b) { return reinterpret_cast<fftw_complex*>(b.data()); }

}  // namespace

void fft2_forward(int n0, int n1, ComplexBuffer& data) {
    fftw_execute_dft(get_plan(Kind::Forward, n0, n1), as_fftw(data), as_fftw(data));
}

void fft2_backward(int n0, int n1, ComplexBuffer& data) {
    fftw_execute_dft(get_plan(Kind::Backward, n0, n1), as_fftw(data), as_fftw(data));
}

void fft2_r2c(int n0, int n1, RealBuffer& in, ComplexBuffer& out) {
    out.resize(static_cast<std::size_t>(n0) * (n1 / 2 + 1));
    fftw_execute_dft_r2c(get_plan(Kind::R2C, n0, n1), in.data(), as_fftw(out));
}

void fft2_c2r(int n0, int n1, ComplexBuffer& in, RealBuffer& out) {
    out.resize(static_cast<std::size_t>(n0) * n1);
    fftw_execute_dft_c2r(get_plan(Kind::C2R, n0, n1), as_fftw(in), out.data());
}

}  // namespace aniso
