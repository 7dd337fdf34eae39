#include "lesionseg/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "lesionseg/errors.hpp"

namespace lesionseg {

namespace {
// The FFTW planner mutates global state; execution does not.
std::mutex planner_mutex;
}  // namespace

ComplexPlanes fft2d(const Plane& re, const Plane& im, bool inverse) {
    if (!re.same_size(im)) {
        throw ParamError("fft2d: real and imaginary planes differ in size");
    }
    const int w = re.width();
    const int h = re.height();
    const size_t n = static_cast<size_t>(w) * h;

    std::vector<fftw_complex> in(n), out(n);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft_2d(h, w, in.data(), out.data(),
                                inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                FFTW_ESTIMATE);
    }
    for (size_t i = 0; i < n; ++i) {
        in[i][0] = re[i];
        in[i][1] = im[i];
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }

    ComplexPlanes result{Plane(w, h), Plane(w, h)};
    const double scale = inverse ? 1.0 / static_cast<double>(n) : 1.0;
    for (size_t i = 0; i < n; ++i) {
        result.re[i] = out[i][0] * scale;
        result.im[i] = out[i][1] * scale;
    }
    return result;
}

}  // namespace lesionseg
