#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hheat/config.hpp"
#include "hheat/solver.hpp"

namespace hheat {

// 17 significant digits, so a parsed value round-trips to the same double.
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    std::string str() const;
};

void write_text(const std::string& path, const std::string& text);
void write_csv(const std::string& path, const CsvTable& table);

CsvTable series_table(const RunResult& result);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

struct ManifestOutput {
    std::string path;    // as written
    std::string schema;  // e.g. "hheat.sweep/1"
};

struct Manifest {
    std::string command;
    Config config;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
    std::vector<ManifestOutput> outputs;
    std::vector<std::pair<std::string, std::string>> summary;
};

// Writes the manifest as JSON; every output gets its size and SHA-256 digest.
void write_manifest(const std::string& path, const Manifest& manifest);

inline constexpr int kManifestSchemaVersion = 1;

}  // namespace hheat
