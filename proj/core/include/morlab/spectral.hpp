#pragma once

#include <array>
#include <vector>

#include "morlab/fft.hpp"
#include "morlab/grid.hpp"

namespace morlab {

// How operators with the symbol 1/(2 pi |xi|) treat the constant mode.
enum class ZeroModePolicy { strict_reject, drop };

// Boundary data of dimension n-1 extended to the heights x_n listed, stored
// as normalized Fourier coefficients per height.
struct SpectralField {
  GridSpec boundary;
  std::vector<double> heights;
  std::vector<std::vector<Complex>> modes;  // modes[h][k]

  std::size_t mode_count() const { return boundary.size(); }
  SampledFunction materialize(std::size_t height_index) const;
  // max |c_k - conj(c_{-k})| over all heights.
  double hermitian_defect() const;
};

// Physical frequency xi = k/(2W) of each flat mode index on a periodic grid,
// with k folded into (-m/2, m/2].
struct Frequencies {
  std::vector<std::array<double, 2>> xi;
  std::vector<double> norm;
  // True where the mode sits on the Nyquist index along the given axis.
  std::vector<std::array<bool, 2>> nyquist;
};
Frequencies frequencies(const GridSpec& boundary);

// c_k = (1/N) sum_j f_j e^{-2 pi i k.j/m}, and the inverse.
std::vector<Complex> to_modes(const SampledFunction& f);
SampledFunction from_modes(const GridSpec& grid, std::vector<Complex> modes);

double mean(const SampledFunction& f);
SampledFunction subtract_mean(const SampledFunction& f);
// Zeroes modes with |k_a| > m/3 along any axis.
SampledFunction truncate_two_thirds(const SampledFunction& f);

// Symbol i xi_j/|xi|; the constant mode and Nyquist modes along j map to 0.
SampledFunction riesz_transform_spectral(const SampledFunction& f, int j);

enum class TransformMethod { spectral, pv_quadrature };
SampledFunction riesz_transform(const SampledFunction& f, int j,
                                TransformMethod method);

// Poisson extension: symbol e^{-2 pi |xi| x_n}. Heights must be positive.
SpectralField single_layer_D(const SampledFunction& f,
                             const std::vector<double>& heights);

// Neumann extension: symbol e^{-2 pi |xi| x_n}/(2 pi |xi|) for xi != 0.
// Heights must be non-negative. strict_reject throws when the mean of f
// exceeds 1e-12 max|f|; drop discards the constant mode.
SpectralField neumann_layer_N(const SampledFunction& f,
                              const std::vector<double>& heights,
                              ZeroModePolicy policy = ZeroModePolicy::strict_reject);

// N f at x_n = 0.
SampledFunction boundary_trace_N(const SampledFunction& f,
                                 ZeroModePolicy policy = ZeroModePolicy::strict_reject);

// Components d/dx_1, ..., d/dx_{n-1}, d/dx_n of N f. Tangential symbols are
// (i xi_j/|xi|) e^{-2 pi |xi| x_n}; the normal one is -e^{-2 pi |xi| x_n}.
std::vector<SpectralField> grad_N(const SampledFunction& f,
                                  const std::vector<double>& heights,
                                  ZeroModePolicy policy = ZeroModePolicy::strict_reject);

// Boundary values of -d/dx_n N f, i.e. f without its constant mode.
SampledFunction neumann_data_of_N(const SampledFunction& f,
                                  ZeroModePolicy policy = ZeroModePolicy::strict_reject);

// Max over interior nodes of |Delta_h u| for a field materialized on equally
// spaced heights, second-order central differences in every direction.
// Heights at the two ends serve as stencil support only.
double max_fd_laplacian(const SpectralField& field);

}  // namespace morlab
