#include "sps/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sps {

namespace {

void write_doubles(const std::string& path, const double* data,
                   std::size_t count) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(data),
            static_cast<std::streamsize>(count * sizeof(double)));
  if (!out) throw std::runtime_error("short write: " + path);
}

std::vector<double> read_doubles(const std::string& path, std::size_t count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<double> data(count);
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != count * sizeof(double))
    throw std::runtime_error("short read: " + path);
  return data;
}

Json sidecar(const Grid2D& g, bool is_complex, const std::string& description) {
  Json j;
  j["n"] = g.n;
  j["L"] = g.half_width;
  j["dtype"] = "float64";
  j["complex"] = is_complex;
  j["description"] = description;
  return j;
}

Grid2D grid_from_sidecar(const std::string& base, bool expect_complex) {
  std::ifstream in(base + ".json");
  if (!in) throw std::runtime_error("missing sidecar: " + base + ".json");
  Json j = Json::parse(in);
  if (j.at("dtype").get<std::string>() != "float64")
    throw std::runtime_error("unsupported dtype in " + base);
  if (j.at("complex").get<bool>() != expect_complex)
    throw std::runtime_error("field dump complex flag mismatch in " + base);
  return build_grid(j.at("L").get<double>(), j.at("n").get<int>());
}

}  // namespace

void dump_field(const std::string& base, const Field& u,
                const std::string& description) {
  write_json(base + ".json", sidecar(u.grid, false, description));
  write_doubles(base + ".f64", u.values.data(), u.values.size());
}

void dump_field(const std::string& base, const CField& u,
                const std::string& description) {
  write_json(base + ".json", sidecar(u.grid, true, description));
  // std::complex<double> is layout-compatible with double[2] (re, im)
  write_doubles(base + ".f64",
                reinterpret_cast<const double*>(u.values.data()),
                2 * u.values.size());
}

Field load_real_field(const std::string& base) {
  const Grid2D g = grid_from_sidecar(base, false);
  Field u(g);
  u.values = read_doubles(base + ".f64", g.size());
  return u;
}

CField load_complex_field(const std::string& base) {
  const Grid2D g = grid_from_sidecar(base, true);
  CField u(g);
  const std::vector<double> raw = read_doubles(base + ".f64", 2 * g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    u.values[i] = {raw[2 * i], raw[2 * i + 1]};
  return u;
}

Json make_summary(const std::string& subcommand) {
  Json j;
  j["schema"] = "planar-sps/1";
  j["subcommand"] = subcommand;
  return j;
}

void write_json(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << doc.dump(2) << "\n";
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "\n");
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out << buf << (i + 1 < row.size() ? "," : "\n");
    }
  }
}

}  // namespace sps
