#pragma once

#include <string>
#include <vector>

namespace volspill::svg {

struct Series {
    std::string label;
    std::vector<double> values;
};

/// Static line chart over an implicit 0..n-1 x axis.
std::string line_chart(const std::string& title, const std::vector<Series>& series);

/// Vertical bar chart; negative bars hang below the zero line.
std::string bar_chart(const std::string& title, const std::vector<std::string>& labels,
                      const std::vector<double>& values);

}  // namespace volspill::svg
