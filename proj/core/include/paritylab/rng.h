#ifndef PARITYLAB_RNG_H_
#define PARITYLAB_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace paritylab {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t Mix64(std::uint64_t z);

// Derives a child seed from a parent seed and a path of integer tags:
//   s = Mix64(parent); for each tag t: s = Mix64(s ^ Mix64(t + k * golden))
// where k is the tag position. Experiments use
// DeriveSeed(master, {kind_tag, cell, trial}).
std::uint64_t DeriveSeed(std::uint64_t parent,
                         std::initializer_list<std::uint64_t> path);

// Uniformly random k-subset of [0, n), sorted ascending.
std::vector<int> SampleSubset(int n, int k, Rng& rng);

// Standard-normal vector of length n normalized to unit length (a uniform
// point on the sphere). n must be positive.
std::vector<double> RandomUnitVector(int n, Rng& rng);

}  // namespace paritylab

#endif  // PARITYLAB_RNG_H_
