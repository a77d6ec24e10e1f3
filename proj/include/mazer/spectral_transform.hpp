// spectral_transform.hpp - RAII wrapper over batched FFTW complex transforms

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <new>
#include <vector>

#include <fftw3.h>

namespace mazer {

/// std::vector allocator returning FFTW-aligned storage.
template <class T>
struct FftwAllocator {
    using value_type = T;
    FftwAllocator() noexcept = default;
    template <class U>
    FftwAllocator(const FftwAllocator<U>&) noexcept {}

    T* allocate(std::size_t n) {
        void* p = fftw_malloc(n * sizeof(T));
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) noexcept { fftw_free(p); }

    template <class U>
    bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

using AlignedBuffer = std::vector<std::complex<double>, FftwAllocator<std::complex<double>>>;

namespace detail {

// The FFTW planner is not re-entrant; execution with new arrays is.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(p);
    }
};
using PlanHandle = std::unique_ptr<fftw_plan_s, PlanDeleter>;

}  // namespace detail

/// Unnormalized in-place DFT of `batch` contiguous signals of length n.
/// Plans are built with FFTW_ESTIMATE so the algorithm, and hence the
/// rounding, is identical from run to run.
class SpectralTransform {
public:
    SpectralTransform(std::size_t n, int batch) : n_(n), batch_(batch) {
        AlignedBuffer scratch(n * static_cast<std::size_t>(batch));
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        const int len = static_cast<int>(n);
        std::lock_guard lock(detail::fftw_planner_mutex());
        forward_.reset(fftw_plan_many_dft(1, &len, batch, buf, nullptr, 1, len, buf, nullptr, 1, len, FFTW_FORWARD,
                                          FFTW_ESTIMATE));
        backward_.reset(fftw_plan_many_dft(1, &len, batch, buf, nullptr, 1, len, buf, nullptr, 1, len,
                                           FFTW_BACKWARD, FFTW_ESTIMATE));
    }

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] int batch() const { return batch_; }

    /// data must come from FftwAllocator and hold size() * batch() values.
    void forward(std::complex<double>* data) const {
        auto* p = reinterpret_cast<fftw_complex*>(data);
        fftw_execute_dft(forward_.get(), p, p);
    }
    void backward(std::complex<double>* data) const {
        auto* p = reinterpret_cast<fftw_complex*>(data);
        fftw_execute_dft(backward_.get(), p, p);
    }

private:
    std::size_t n_;
    int batch_;
    detail::PlanHandle forward_;
    detail::PlanHandle backward_;
};

}  // namespace mazer
