#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "correlations.hpp"

namespace ellgas {

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, end);
}

inline double parse_double(std::string_view s) {
  double x = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || end != s.data() + s.size())
    throw std::invalid_argument("parse_double: bad number '" + std::string(s) + "'");
  return x;
}

/// CSV rows x,y,rho with y as the slow index.
inline void write_grid_csv(std::ostream& os, const DensityGrid& d) {
  os << "x,y,rho\n";
  for (int j = 0; j < d.grid.ny; ++j)
    for (int i = 0; i < d.grid.nx; ++i)
      os << format_double(d.grid.x(i)) << ',' << format_double(d.grid.y(j)) << ',' << format_double(d.at(i, j))
         << '\n';
}

struct GridTable {
  std::vector<double> x, y, rho;
};

inline GridTable read_grid_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "x,y,rho") throw std::invalid_argument("read_grid_csv: missing header");
  GridTable t;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos)
      throw std::invalid_argument("read_grid_csv: expected three fields");
    std::string_view v(line);
    t.x.push_back(parse_double(v.substr(0, c1)));
    t.y.push_back(parse_double(v.substr(c1 + 1, c2 - c1 - 1)));
    t.rho.push_back(parse_double(v.substr(c2 + 1)));
  }
  return t;
}

/// One object with the grid extent and a row-major rho[ny][nx].
inline nlohmann::json grid_to_json(const DensityGrid& d) {
  nlohmann::json j;
  j["x_min"] = d.grid.x_min;
  j["x_max"] = d.grid.x_max;
  j["y_min"] = d.grid.y_min;
  j["y_max"] = d.grid.y_max;
  j["nx"] = d.grid.nx;
  j["ny"] = d.grid.ny;
  auto rows = nlohmann::json::array();
  for (int r = 0; r < d.grid.ny; ++r) {
    auto row = nlohmann::json::array();
    for (int i = 0; i < d.grid.nx; ++i) row.push_back(d.at(i, r));
    rows.push_back(std::move(row));
  }
  j["rho"] = std::move(rows);
  return j;
}

inline DensityGrid grid_from_json(const nlohmann::json& j) {
  DensityGrid d;
  d.grid.x_min = j.at("x_min").get<double>();
  d.grid.x_max = j.at("x_max").get<double>();
  d.grid.y_min = j.at("y_min").get<double>();
  d.grid.y_max = j.at("y_max").get<double>();
  d.grid.nx = j.at("nx").get<int>();
  d.grid.ny = j.at("ny").get<int>();
  d.grid.validate();
  const auto& rows = j.at("rho");
  if (!rows.is_array() || rows.size() != static_cast<size_t>(d.grid.ny))
    throw std::invalid_argument("grid_from_json: rho has the wrong number of rows");
  d.values.reserve(static_cast<size_t>(d.grid.nx) * d.grid.ny);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != static_cast<size_t>(d.grid.nx))
      throw std::invalid_argument("grid_from_json: ragged rho row");
    for (const auto& v : row) d.values.push_back(v.get<double>());
  }
  return d;
}

}  // namespace ellgas
