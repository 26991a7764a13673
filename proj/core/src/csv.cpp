#include "volspill/csv.hpp"

#include "volspill/error.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

namespace volspill {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool is_missing(const std::string& cell) {
    return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" || cell == "#N/A";
}

}  // namespace

PricePanel read_price_csv(std::istream& in, const std::string& source_name) {
    PricePanel panel;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t dropped = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto cells = split_line(line);
        if (!have_header) {
            if (cells.size() < 2) {
                throw InputError(fmt::format("{}:{}: header must be 'date,<market>,...'", source_name,
                                             line_no));
            }
            panel.markets.assign(cells.begin() + 1, cells.end());
            panel.prices.resize(panel.markets.size());
            have_header = true;
            continue;
        }
        if (cells.size() != panel.markets.size() + 1) {
            throw InputError(fmt::format("{}:{}: expected {} fields, found {}", source_name, line_no,
                                         panel.markets.size() + 1, cells.size()));
        }
        Date date;
        try {
            date = parse_date(cells[0]);
        } catch (const InputError& e) {
            throw InputError(fmt::format("{}:{}: {}", source_name, line_no, e.what()));
        }
        if (!panel.dates.empty() && !(panel.dates.back() < date)) {
            throw InputError(fmt::format("{}:{}: date {} is not after {}", source_name, line_no,
                                         cells[0], format_date(panel.dates.back())));
        }

        std::vector<double> row(panel.markets.size());
        bool missing = false;
        for (std::size_t m = 0; m < panel.markets.size(); ++m) {
            const std::string& cell = cells[m + 1];
            if (is_missing(cell)) {
                missing = true;
                continue;
            }
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
                throw InputError(fmt::format("{}:{}: cannot parse '{}' for market {}", source_name,
                                             line_no, cell, panel.markets[m]));
            }
            if (!(value > 0.0) || !std::isfinite(value)) {
                throw InputError(fmt::format("{}:{}: non-positive price {} for market {} on {}",
                                             source_name, line_no, cell, panel.markets[m], cells[0]));
            }
            row[m] = value;
        }
        if (missing) {
            ++dropped;
            continue;
        }
        panel.dates.push_back(date);
        for (std::size_t m = 0; m < row.size(); ++m) panel.prices[m].push_back(row[m]);
    }
    if (!have_header) throw InputError(fmt::format("{}: empty file", source_name));
    if (panel.dates.size() < 2) {
        throw InputError(fmt::format("{}: need at least two complete rows, found {}", source_name,
                                     panel.dates.size()));
    }
    return panel;
}

PricePanel read_price_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(fmt::format("cannot open input file '{}'", path.string()));
    return read_price_csv(in, path.string());
}

void write_price_csv(std::ostream& out, const PricePanel& panel) {
    out << "date";
    for (const auto& m : panel.markets) out << ',' << m;
    out << '\n';
    for (std::size_t t = 0; t < panel.dates.size(); ++t) {
        out << format_date(panel.dates[t]);
        for (const auto& col : panel.prices) out << ',' << fmt::format("{:.10g}", col[t]);
        out << '\n';
    }
}

}  // namespace volspill
