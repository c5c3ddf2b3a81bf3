#include "descent/field_io.hpp"

#include <bit>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace descent {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; byte swapping not implemented");

nlohmann::json grid_json(const Grid& g) {
  nlohmann::json j;
  j["dim"] = g.dim;
  j["points"] = {g.points[0], g.points[1], g.points[2]};
  j["lengths"] = {g.lengths[0], g.lengths[1], g.lengths[2]};
  return j;
}

Grid grid_from_json(const nlohmann::json& j) {
  const int dim = j.at("dim").get<int>();
  const auto& p = j.at("points");
  const auto& l = j.at("lengths");
  if (dim == 2) return Grid::make_2d(p.at(0), p.at(1), l.at(0), l.at(1));
  return Grid::make_3d(p.at(0), p.at(1), p.at(2), l.at(0), l.at(1), l.at(2));
}

void write_sidecar(const std::string& stem, const Grid& grid, int components, double time,
                   const std::string& dtype) {
  nlohmann::json j;
  j["grid"] = grid_json(grid);
  j["components"] = components;
  j["time"] = time;
  j["dtype"] = dtype;
  j["layout"] = "component-major";
  std::ofstream out(stem + ".json");
  if (!out) throw std::runtime_error("snapshot: cannot open " + stem + ".json");
  out << j.dump(2) << "\n";
}

void write_raw(const std::string& stem, const double* data, std::size_t count) {
  std::ofstream out(stem + ".bin", std::ios::binary);
  if (!out) throw std::runtime_error("snapshot: cannot open " + stem + ".bin");
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
}

std::vector<double> read_raw(const std::string& stem, std::size_t expected) {
  std::ifstream in(stem + ".bin", std::ios::binary);
  if (!in) throw std::runtime_error("snapshot: cannot open " + stem + ".bin");
  std::vector<double> data(expected);
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(expected * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != expected * sizeof(double))
    throw std::runtime_error("snapshot: truncated data in " + stem + ".bin");
  return data;
}

nlohmann::json read_sidecar(const std::string& stem) {
  std::ifstream in(stem + ".json");
  if (!in) throw std::runtime_error("snapshot: cannot open " + stem + ".json");
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace

void write_spinor_snapshot(const std::string& stem, const SpinorField& f, double time) {
  write_sidecar(stem, f.grid, f.components, time, "complex128");
  write_raw(stem, reinterpret_cast<const double*>(f.values.data()), f.values.size() * 2);
}

SpinorField read_spinor_snapshot(const std::string& stem) {
  const nlohmann::json j = read_sidecar(stem);
  if (j.at("dtype").get<std::string>() != "complex128")
    throw std::runtime_error("snapshot: expected complex128 data");
  const Grid grid = grid_from_json(j.at("grid"));
  SpinorField f = SpinorField::zeros(grid, j.at("components").get<int>());
  const std::vector<double> raw = read_raw(stem, f.values.size() * 2);
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = cplx(raw[2 * i], raw[2 * i + 1]);
  return f;
}

void write_real_snapshot(const std::string& stem, const RealField& f, double time) {
  write_sidecar(stem, f.grid, 1, time, "float64");
  write_raw(stem, f.values.data(), f.values.size());
}

RealField read_real_snapshot(const std::string& stem) {
  const nlohmann::json j = read_sidecar(stem);
  if (j.at("dtype").get<std::string>() != "float64")
    throw std::runtime_error("snapshot: expected float64 data");
  const Grid grid = grid_from_json(j.at("grid"));
  RealField f = RealField::zeros(grid);
  f.values = read_raw(stem, f.values.size());
  return f;
}

void write_diagnostics_csv(const std::string& path, const DiagnosticsSeries& series) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("diagnostics: cannot open " + path);
  series.write_csv(out);
}

}  // namespace descent
