#include "hcd/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hcd/errors.hpp"

namespace hcd {

namespace {

std::FILE* open_for_write(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw config_error("cannot open for writing: " + path);
    return f;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_series_csv(const SimulationOutput& out, const std::string& path) {
    std::FILE* f = open_for_write(path);
    const bool has_z = !out.z.empty();
    std::fprintf(f, has_z ? "t,z,x,y\n" : "t,x,y\n");
    for (std::size_t t = 0; t < out.x.size(); ++t) {
        if (has_z)
            std::fprintf(f, "%zu,%.17g,%.17g,%.17g\n", t, out.z[t], out.x[t], out.y[t]);
        else
            std::fprintf(f, "%zu,%.17g,%.17g\n", t, out.x[t], out.y[t]);
    }
    std::fclose(f);
}

void write_embedded_csv(const EmbeddedSeries& e, const std::string& path) {
    std::FILE* f = open_for_write(path);
    for (int d = 0; d < e.m; ++d) std::fprintf(f, d ? ",dim%d" : "dim%d", d);
    std::fprintf(f, "\n");
    for (std::size_t r = 0; r < e.rows(); ++r) {
        const auto row = e.row(r);
        for (int d = 0; d < e.m; ++d)
            std::fprintf(f, d ? ",%.17g" : "%.17g", row[static_cast<std::size_t>(d)]);
        std::fprintf(f, "\n");
    }
    std::fclose(f);
}

void write_table_csv(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows,
                     const std::string& path) {
    std::FILE* f = open_for_write(path);
    for (std::size_t c = 0; c < header.size(); ++c)
        std::fprintf(f, c ? ",%s" : "%s", header[c].c_str());
    std::fprintf(f, "\n");
    for (const auto& row : rows) {
        if (row.size() != header.size()) {
            std::fclose(f);
            throw std::invalid_argument("write_table_csv: row width mismatch");
        }
        for (std::size_t c = 0; c < row.size(); ++c)
            std::fprintf(f, c ? ",%s" : "%s", row[c].c_str());
        std::fprintf(f, "\n");
    }
    std::fclose(f);
}

const ScalarSeries& CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return values[i];
    throw config_error("csv: missing column " + name);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open: " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw config_error("csv: empty file " + path);
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
    }
    table.values.resize(table.columns.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(ss, cell, ',')) {
            if (c >= table.columns.size())
                throw config_error("csv: too many cells in " + path);
            table.values[c].push_back(std::stod(cell));
            ++c;
        }
        if (c != table.columns.size())
            throw config_error("csv: ragged row in " + path);
    }
    return table;
}

}  // namespace hcd
