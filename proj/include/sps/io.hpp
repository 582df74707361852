#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sps/grid.hpp"

namespace sps {

// Binary field dumps: little-endian float64, row-major; complex values
// interleaved (re, im). A JSON sidecar <base>.json carries
// {n, L, dtype, complex, description}; the data file is <base>.f64.
void dump_field(const std::string& base, const Field& u,
                const std::string& description);
void dump_field(const std::string& base, const CField& u,
                const std::string& description);
Field load_real_field(const std::string& base);
CField load_complex_field(const std::string& base);

// Deterministic JSON writing: ordered keys, fixed layout, trailing newline.
// Summaries carry "schema": "planar-sps/1" and never include timestamps
// (those go to a separate metadata file).
using Json = nlohmann::ordered_json;
Json make_summary(const std::string& subcommand);
void write_json(const std::string& path, const Json& doc);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace sps
