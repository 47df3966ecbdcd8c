#include "compute_verify/report.hpp"

#include <cstdio>
#include <cstdlib>

namespace compute_verify {

double report_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::strtod(buf, nullptr);
}

}  // namespace compute_verify
