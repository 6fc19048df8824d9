#pragma once

#include <stdexcept>
#include <string>

#include "skdv/spectral.hpp"

namespace skdv {

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Layout: "DSP1", u64 n_points, f64 box_length, f64 time, then n_points
// (re, im) f64 pairs; all little-endian. Fields are stored physically.
void save_field(const Field& f, const std::string& path, double time = 0.0);
Field load_field(const std::string& path, double* time = nullptr);

}  // namespace skdv
