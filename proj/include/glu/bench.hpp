#pragma once

#include <functional>
#include <string>

namespace glu {

struct TimingSample {
    std::string label;
    int width = 0;
    int height = 0;
    int scale = 0;
    std::string method;
    double msMedian = 0;
    int reps = 0;
};

// One untimed warm-up call, then reps timed calls; msMedian is the median
// wall-clock time. reps must be >= 5.
TimingSample run_timing(const std::string& label, int width, int height, int scale,
                        const std::string& method, int reps, const std::function<void()>& fn);

std::string timing_csv_header();
std::string timing_csv_row(const TimingSample& s);

}  // namespace glu
