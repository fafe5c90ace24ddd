#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "umbrella/chaos.hpp"
#include "umbrella/periodic.hpp"

namespace umbrella {

using nlohmann::json;

/// Shortest decimal form that round-trips a double.
std::string format_double(double v);

json spec_to_json(const TableSpec& spec);
TableSpec spec_from_json(const json& j);

json orbit_record(const PeriodicOrbit& orbit);

/// Writes rows to path with a column header followed by one comment line
/// carrying the run configuration. All numbers use round-trip formatting so
/// files compare byte for byte across runs.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::string& header, const json& config);
    ~CsvWriter();
    void row(const std::vector<double>& values);
    void raw_row(const std::string& line);

  private:
    struct Impl;
    Impl* impl_;
};

/// Plain (P2) PGM raster.
void write_pgm(const std::string& path, int width, int height,
               const std::vector<int>& gray);

/// Island report raster: regular seeds white, chaotic black, skipped gray.
void write_island_pgm(const std::string& path, const IslandReport& report);

}  // namespace umbrella
