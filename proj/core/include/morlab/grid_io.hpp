#pragma once

#include <iosfwd>
#include <string>

#include "morlab/grid.hpp"

namespace morlab {

// Binary dump: eight ASCII header lines followed by little-endian f64 values
// in row-major node order.
//
//   morlab-grid
//   version 1
//   dim <n>
//   half_width <W>
//   points_per_axis <m>
//   periodic <0|1>
//   count <m^n>
//   data f64le
void write_dump(std::ostream& os, const SampledFunction& f);
SampledFunction read_dump(std::istream& is);
void write_dump_file(const std::string& path, const SampledFunction& f);
SampledFunction read_dump_file(const std::string& path);

// CSV with one row per node: x0[,x1[,x2]],value. A leading comment line
// "# dim=<n> half_width=<W> points_per_axis=<m> periodic=<0|1>" carries the
// grid so the file round-trips.
void write_csv(std::ostream& os, const SampledFunction& f);
SampledFunction read_csv(std::istream& is);
void write_csv_file(const std::string& path, const SampledFunction& f);
SampledFunction read_csv_file(const std::string& path);

}  // namespace morlab
