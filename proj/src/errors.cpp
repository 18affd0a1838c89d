#include "weyl/errors.hpp"

#include <cstdio>

namespace weyl {

namespace {
std::string describe(const char* fmt, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, fmt, a, b);
    return buf;
}
} // namespace

CompletenessError::CompletenessError(double threshold_, double cutoff_)
    : Error(describe("threshold %.17g exceeds spectrum cutoff %.17g", threshold_, cutoff_)),
      threshold(threshold_), cutoff(cutoff_) {}

ConvergenceError::ConvergenceError(const std::string& what, double estimate_, double achieved_)
    : Error(what + describe(" (estimate %.17g, achieved error %.3g)", estimate_, achieved_)),
      estimate(estimate_), achieved(achieved_) {}

} // namespace weyl
