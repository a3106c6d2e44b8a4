#pragma once

#include <string>
#include <vector>

#include "hcd/dynamics.hpp"
#include "hcd/embedding.hpp"
#include "hcd/series.hpp"

namespace hcd {

// All writers emit full double precision (17 significant digits) so files
// round-trip exactly and reruns are byte-identical.

// Header "t,z,x,y" (or "t,x,y" when z is empty), one row per time step.
void write_series_csv(const SimulationOutput& out, const std::string& path);

// Header "dim0,...,dim{m-1}".
void write_embedded_csv(const EmbeddedSeries& e, const std::string& path);

// Arbitrary tidy table; each row must have header.size() cells.
void write_table_csv(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows,
                     const std::string& path);

std::string format_double(double v);

// Reads a numeric CSV with a header line; returns column names and columns.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<ScalarSeries> values;  // one vector per column

    const ScalarSeries& column(const std::string& name) const;
};
CsvTable read_csv(const std::string& path);

}  // namespace hcd
