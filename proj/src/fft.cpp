#include "fft.hpp"

#include "tpc/errors.hpp"

#include <fftw3.h>

#include <memory>
#include <mutex>

namespace tpc::detail {

namespace {

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T, FftwFree>;

template <typename T>
FftwBuffer<T> fftw_buffer(std::size_t count) {
    return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * count)));
}

// The FFTW planner is not reentrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class Plan {
public:
    explicit Plan(fftw_plan plan) : plan_(plan) {}
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan() {
        const std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

}  // namespace

std::vector<Complex> rfft(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n == 0) {
        return {};
    }
    auto in = fftw_buffer<double>(n);
    auto out = fftw_buffer<fftw_complex>(n / 2 + 1);
    std::unique_ptr<Plan> plan;
    {
        const std::lock_guard lock(planner_mutex());
        plan = std::make_unique<Plan>(
            fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    std::copy(x.begin(), x.end(), in.get());
    plan->execute();
    std::vector<Complex> result(n / 2 + 1);
    for (std::size_t k = 0; k < result.size(); ++k) {
        result[k] = Complex(out.get()[k][0], out.get()[k][1]);
    }
    return result;
}

std::vector<double> irfft(std::span<const Complex> half, std::size_t n) {
    if (half.size() != n / 2 + 1) {
        throw ModelError(ErrorKind::InvalidArgument, "irfft: spectrum length does not match n");
    }
    if (n == 0) {
        return {};
    }
    auto in = fftw_buffer<fftw_complex>(half.size());
    auto out = fftw_buffer<double>(n);
    std::unique_ptr<Plan> plan;
    {
        const std::lock_guard lock(planner_mutex());
        plan = std::make_unique<Plan>(
            fftw_plan_dft_c2r_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    for (std::size_t k = 0; k < half.size(); ++k) {
        in.get()[k][0] = half[k].real();
        in.get()[k][1] = half[k].imag();
    }
    plan->execute();
    std::vector<double> result(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        result[i] = out.get()[i] * scale;
    }
    return result;
}

}  // namespace tpc::detail
