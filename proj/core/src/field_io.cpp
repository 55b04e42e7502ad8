#include "lightcone/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "lightcone/errors.hpp"

namespace lightcone {
namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field_csv(std::ostream& out, const ScalarField& f) {
  out << "theta,phi,value\n";
  const SphereGrid& g = f.grid();
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << format_double(g.theta_at(i)) << ',' << format_double(g.phi_at(i)) << ','
        << format_double(f[i]) << '\n';
  }
}

void write_field_csv(const std::string& path, const ScalarField& f) {
  std::ofstream out = open_out(path);
  write_field_csv(out, f);
  if (!out) throw IoError("failed while writing '" + path + "'");
}

void write_table_csv(std::ostream& out, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw UsageError("CSV row width does not match the header");
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
}

void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  std::ofstream out = open_out(path);
  write_table_csv(out, header, rows);
  if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace lightcone
