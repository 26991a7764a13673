#pragma once

#include "volspill/data.hpp"

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace volspill {

/// Reads `date,<market>,...` CSV with ISO dates. Empty cells, "NA" and
/// "NaN" count as missing; any row with a missing price is dropped from
/// every market. Errors name the source and the 1-based line.
PricePanel read_price_csv(std::istream& in, const std::string& source_name = "<stream>");
PricePanel read_price_csv(const std::filesystem::path& path);

void write_price_csv(std::ostream& out, const PricePanel& panel);

}  // namespace volspill
