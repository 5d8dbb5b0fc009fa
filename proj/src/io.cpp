#include "hheat/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hheat/errors.hpp"

#ifndef HHEAT_VERSION
#define HHEAT_VERSION "unknown"
#endif

namespace hheat {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header.size()) throw InvalidArgument("CSV row width does not match header");
    rows.push_back(std::move(row));
}

namespace {

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string CsvTable::str() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_cell(cells[i]);
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
}

void write_text(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw std::runtime_error("cannot create directory " + p.parent_path().string() + ": " + ec.message());
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw std::runtime_error("write failed for " + path);
}

void write_csv(const std::string& path, const CsvTable& table) { write_text(path, table.str()); }

CsvTable series_table(const RunResult& result) {
    CsvTable t;
    t.header = {"t", "dt", "sup_norm", "one_norm"};
    for (const auto& s : result.series) {
        t.add_row({format_double(s.t), format_double(s.dt), format_double(s.sup), format_double(s.one)});
    }
    return t;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string sha256_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path + " for hashing");
    std::ostringstream ss;
    ss << f.rdbuf();
    return sha256_hex(ss.str());
}

void write_manifest(const std::string& path, const Manifest& m) {
    nlohmann::ordered_json j;
    j["tool"] = "hheat";
    j["version"] = HHEAT_VERSION;
    j["manifest_schema"] = kManifestSchemaVersion;
    j["command"] = m.command;
    j["seed"] = m.seed;
    j["wall_time_seconds"] = m.wall_seconds;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m.config.entries()) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::ordered_json outs = nlohmann::ordered_json::array();
    for (const auto& o : m.outputs) {
        outs.push_back({{"path", o.path},
                        {"schema", o.schema},
                        {"bytes", std::filesystem::file_size(o.path)},
                        {"sha256", sha256_file(o.path)}});
    }
    j["outputs"] = outs;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m.summary) summary[k] = v;
    j["summary"] = summary;
    write_text(path, j.dump(2) + "\n");
}

}  // namespace hheat
