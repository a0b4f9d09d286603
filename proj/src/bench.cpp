#include "glu/bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace glu {

TimingSample run_timing(const std::string& label, int width, int height, int scale,
                        const std::string& method, int reps, const std::function<void()>& fn) {
    if (reps < 5) throw std::invalid_argument("run_timing: reps must be >= 5");
    fn();  // warm-up, excluded
    std::vector<double> ms(reps);
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        ms[i] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
    std::sort(ms.begin(), ms.end());
    const double median = reps % 2 == 1 ? ms[reps / 2]
                                        : 0.5 * (ms[reps / 2 - 1] + ms[reps / 2]);
    return {label, width, height, scale, method, median, reps};
}

std::string timing_csv_header() { return "label,width,height,scale,method,ms_median,reps"; }

std::string timing_csv_row(const TimingSample& s) {
    std::ostringstream out;
    out << s.label << "," << s.width << "," << s.height << "," << s.scale << "," << s.method
        << "," << s.msMedian << "," << s.reps;
    return out.str();
}

}  // namespace glu
