#include "morlab/grid_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace morlab {

namespace {

static_assert(sizeof(double) == 8);

void put_le(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  if constexpr (std::endian::native == std::endian::big) {
    bits = __builtin_bswap64(bits);
  }
  char buf[8];
  std::memcpy(buf, &bits, 8);
  os.write(buf, 8);
}

double get_le(std::istream& is) {
  char buf[8];
  if (!is.read(buf, 8)) throw DomainError("grid dump truncated");
  std::uint64_t bits;
  std::memcpy(&bits, buf, 8);
  if constexpr (std::endian::native == std::endian::big) {
    bits = __builtin_bswap64(bits);
  }
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

std::string expect_line(std::istream& is, const std::string& key) {
  std::string line;
  if (!std::getline(is, line)) {
    throw DomainError("grid dump header ended before '" + key + "'");
  }
  if (key.empty()) return line;
  if (line.rfind(key + " ", 0) != 0) {
    throw DomainError("grid dump header: expected '" + key + "', got '" +
                      line + "'");
  }
  return line.substr(key.size() + 1);
}

}  // namespace

void write_dump(std::ostream& os, const SampledFunction& f) {
  const GridSpec& g = f.grid;
  os << "morlab-grid\n"
     << "version 1\n"
     << "dim " << g.dim << "\n"
     << "half_width " << std::setprecision(17) << g.half_width << "\n"
     << "points_per_axis " << g.points_per_axis << "\n"
     << "periodic " << (g.periodic ? 1 : 0) << "\n"
     << "count " << f.values.size() << "\n"
     << "data f64le\n";
  for (double v : f.values) put_le(os, v);
}

SampledFunction read_dump(std::istream& is) {
  if (expect_line(is, "") != "morlab-grid") {
    throw DomainError("not a morlab grid dump");
  }
  if (expect_line(is, "version") != "1") {
    throw DomainError("unsupported grid dump version");
  }
  const int dim = std::stoi(expect_line(is, "dim"));
  const double w = std::stod(expect_line(is, "half_width"));
  const int m = std::stoi(expect_line(is, "points_per_axis"));
  const bool periodic = std::stoi(expect_line(is, "periodic")) != 0;
  const std::size_t count = std::stoull(expect_line(is, "count"));
  if (expect_line(is, "data") != "f64le") {
    throw DomainError("grid dump data must be f64le");
  }
  const GridSpec g = make_grid(dim, w, m, periodic);
  if (count != g.size()) throw DomainError("grid dump count mismatch");
  std::vector<double> values(count);
  for (auto& v : values) v = get_le(is);
  return sample_table(std::move(values), g);
}

void write_dump_file(const std::string& path, const SampledFunction& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot open '" + path + "' for writing");
  write_dump(os, f);
}

SampledFunction read_dump_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("cannot open '" + path + "'");
  return read_dump(is);
}

void write_csv(std::ostream& os, const SampledFunction& f) {
  const GridSpec& g = f.grid;
  os << std::setprecision(17);
  os << "# dim=" << g.dim << " half_width=" << g.half_width
     << " points_per_axis=" << g.points_per_axis
     << " periodic=" << (g.periodic ? 1 : 0) << "\n";
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const Point x = g.point(i);
    for (int a = 0; a < g.dim; ++a) os << x[a] << ",";
    os << f.values[i] << "\n";
  }
}

SampledFunction read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# ", 0) != 0) {
    throw DomainError("CSV grid file must start with a '# dim=...' line");
  }
  int dim = 0, m = 0, periodic = 0;
  double w = 0.0;
  {
    std::istringstream hs(line.substr(2));
    std::string tok;
    while (hs >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
      if (k == "dim") dim = std::stoi(v);
      else if (k == "half_width") w = std::stod(v);
      else if (k == "points_per_axis") m = std::stoi(v);
      else if (k == "periodic") periodic = std::stoi(v);
    }
  }
  const GridSpec g = make_grid(dim, w, m, periodic != 0);
  std::vector<double> values;
  values.reserve(g.size());
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.rfind(',');
    values.push_back(std::stod(line.substr(comma + 1)));
  }
  if (values.size() != g.size()) {
    throw DomainError("CSV row count " + std::to_string(values.size()) +
                      " does not match grid point count " +
                      std::to_string(g.size()));
  }
  return sample_table(std::move(values), g);
}

void write_csv_file(const std::string& path, const SampledFunction& f) {
  std::ofstream os(path);
  if (!os) throw DomainError("cannot open '" + path + "' for writing");
  write_csv(os, f);
}

SampledFunction read_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DomainError("cannot open '" + path + "'");
  return read_csv(is);
}

}  // namespace morlab
