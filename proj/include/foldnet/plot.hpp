#pragma once

#include <string>
#include <vector>

#include "foldnet/metrics.hpp"

namespace foldnet {

struct CdfSeries {
    std::string label;
    std::vector<CdfPoint> points;
};

// Static step-line chart of one or more CDFs. Output depends only on the
// input, and each series is embedded as an XML comment.
std::string render_cdf_svg(const std::vector<CdfSeries>& series, const std::string& title);

}  // namespace foldnet
