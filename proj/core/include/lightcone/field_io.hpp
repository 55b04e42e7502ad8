#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lightcone/scalar_field.hpp"

namespace lightcone {

/// Formats with 17 significant digits, so values round-trip exactly.
std::string format_double(double v);

/// Columns theta,phi,value in node order.
void write_field_csv(std::ostream& out, const ScalarField& f);
void write_field_csv(const std::string& path, const ScalarField& f);

void write_table_csv(std::ostream& out, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);
void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

}  // namespace lightcone
