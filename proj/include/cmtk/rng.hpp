#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "cmtk/numerics.hpp"

namespace cmtk {

/// std::mt19937_64 has a fully specified output sequence; the normal
/// distribution comes from Boost so draws are identical across standard
/// libraries.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for the index-th child stream of `master` (splittable counter hash).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Stable 64-bit FNV-1a hash, used to key suite cells by name.
std::uint64_t stable_hash(std::string_view text);

double standard_normal(Rng& rng);

/// (N(0,1) + i N(0,1)) / sqrt(2), so E|z|^2 = 1.
Complex standard_complex_normal(Rng& rng);

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

}  // namespace cmtk
