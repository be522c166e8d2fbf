#include "cmtk/rng.hpp"

#include <cmath>

#include <boost/random/normal_distribution.hpp>

namespace cmtk {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

std::uint64_t stable_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double standard_normal(Rng& rng) {
  boost::random::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

Complex standard_complex_normal(Rng& rng) {
  static const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
  const double re = standard_normal(rng);
  const double im = standard_normal(rng);
  return {re * kInvSqrt2, im * kInvSqrt2};
}

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix g(rows, cols);
  // Row-major fill so the draw order matches the JSON layout.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = standard_complex_normal(rng);
  }
  return g;
}

}  // namespace cmtk
