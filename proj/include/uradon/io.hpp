#pragma once

#include <string>

#include "uradon/inversion.hpp"
#include "uradon/sinogram.hpp"
#include "uradon/types.hpp"

namespace uradon {

// CSV files use full-precision decimal (17 significant digits) so that
// byte-level diffs double as determinism checks.

void write_sinogram_csv(const Sinogram& s, const std::string& path);
Sinogram read_sinogram_csv(const std::string& path);

void write_raster_csv(const Raster& r, const std::string& path);
Raster read_raster_csv(const std::string& path);

/// Columns: x1, x2[, x3], Re fS, Im fS, Re fA, Im fA.
void write_field_csv(const ReconstructionField& f, const std::string& path);

/// 16-bit P2 PGM with min/max scaling recorded in a header comment.
/// Rows run from high to low x2 (image convention).
void write_pgm(const Raster& r, const std::string& path);
void write_pgm(const Sinogram& s, const std::string& path);

std::string format_double(double v);   // %.17g

} // namespace uradon
