#pragma once

#include <string>
#include <vector>

namespace ci {

// Minimal static line chart: axes, tick labels, one polyline series.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace ci
