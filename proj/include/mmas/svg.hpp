#pragma once

#include <string>
#include <vector>

#include "mmas/weights.hpp"

namespace mmas {

struct SvgSeries {
    std::string label;
    std::vector<double> y;
};

// Static polyline plot; series share the x axis. Long series are downsampled.
void write_line_svg(const std::string& path, const std::string& title,
                    const std::vector<double>& x, const std::vector<SvgSeries>& series);

// Inclusion verdicts as a colored timeline strip.
void write_inclusion_svg(const std::string& path, const std::vector<double>& t,
                         const std::vector<Inclusion>& verdicts);

}  // namespace mmas
