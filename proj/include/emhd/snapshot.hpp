#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emhd/model.hpp"

namespace emhd {

/// Bit-exact binary snapshot of (a, b, t, mu, grid). Layout, all
/// little-endian:
///   bytes 0..7   magic "EMHDSNAP"
///   u32          version (= 1)
///   u32          N
///   f64 x 3      L, t, mu
///   f64 x N^2    a physical samples, row-major (x index outer)
///   f64 x N^2    b physical samples
std::vector<std::uint8_t> save_snapshot(const StateAB& state);
StateAB load_snapshot(const std::vector<std::uint8_t>& bytes);

void save_snapshot_file(const StateAB& state, const std::string& path);
StateAB load_snapshot_file(const std::string& path);

}  // namespace emhd
