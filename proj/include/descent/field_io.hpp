#pragma once

#include <string>

#include "descent/diagnostics.hpp"
#include "descent/fields.hpp"

namespace descent {

// Snapshot format: <stem>.bin holds the samples as flat little-endian 64-bit
// floats (complex values as re,im pairs, component-major), <stem>.json is the
// sidecar header {grid, components, time, dtype, layout}.
void write_spinor_snapshot(const std::string& stem, const SpinorField& f, double time);
SpinorField read_spinor_snapshot(const std::string& stem);

void write_real_snapshot(const std::string& stem, const RealField& f, double time);
RealField read_real_snapshot(const std::string& stem);

void write_diagnostics_csv(const std::string& path, const DiagnosticsSeries& series);

}  // namespace descent
