#include "umbrella/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace umbrella {

std::string format_double(double v) {
    char buf[40];
    // %.17g round-trips; try the shorter form first for readable files.
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json spec_to_json(const TableSpec& spec) {
    json j;
    j["family"] = family_name(spec.family);
    j["R"] = spec.R;
    j["B"] = spec.B;
    j["B1"] = spec.B1;
    if (spec.family == Family::NUmbrella) j["n"] = spec.n;
    return j;
}

TableSpec spec_from_json(const json& j) {
    TableSpec spec;
    spec.family = family_from_name(j.at("family").get<std::string>());
    spec.R = j.value("R", 1.0);
    spec.B = j.value("B", 1.0);
    spec.B1 = j.value("B1", 0.0);
    spec.n = j.value("n", 0);
    return spec;
}

json orbit_record(const PeriodicOrbit& orbit) {
    json j;
    j["period"] = orbit.period;
    j["trace"] = orbit.trace;
    j["class"] = stability_name(orbit.classification);
    j["residual"] = orbit.residual;
    json cycle = json::array();
    for (const auto& p : orbit.cycle) cycle.push_back({p.s, p.theta});
    j["cycle"] = cycle;
    return j;
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path, const std::string& header,
                     const json& config)
    : impl_(new Impl) {
    impl_->out.open(path);
    if (!impl_->out) throw std::runtime_error("cannot open output file: " + path);
    impl_->out << header << "\n";
    impl_->out << "# config " << config.dump() << "\n";
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<double>& values) {
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ",";
        line += format_double(values[i]);
    }
    impl_->out << line << "\n";
}

void CsvWriter::raw_row(const std::string& line) { impl_->out << line << "\n"; }

void write_pgm(const std::string& path, int width, int height,
               const std::vector<int>& gray) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "P2\n" << width << " " << height << "\n255\n";
    for (int row = 0; row < height; ++row) {
        for (int col = 0; col < width; ++col) {
            out << gray[static_cast<std::size_t>(row) * width + col];
            out << (col + 1 == width ? '\n' : ' ');
        }
    }
}

void write_island_pgm(const std::string& path, const IslandReport& report) {
    const int k = report.grid;
    std::vector<int> gray(static_cast<std::size_t>(k) * k, 128);
    // Raster rows run top to bottom: theta decreasing, s increasing.
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < k; ++i) {
            const SeedVerdict v = report.cells[static_cast<std::size_t>(j) * k + i];
            int g = 128;
            if (v == SeedVerdict::Regular) g = 255;
            else if (v == SeedVerdict::Chaotic) g = 0;
            gray[static_cast<std::size_t>(k - 1 - j) * k + i] = g;
        }
    }
    write_pgm(path, k, k, gray);
}

}  // namespace umbrella
