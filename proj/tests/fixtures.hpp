#pragma once

// Shared hand-checked fixtures. Simplex ids below are frozen by the build
// order (dimension, then lexicographic vertices) and asserted in the tests.

#include <cstdint>
#include <vector>

#include "conley/morse.hpp"
#include "conley/mvf.hpp"
#include "conley/persist.hpp"
#include "conley/randgen.hpp"

namespace fx {

using namespace conley;

// Triangulated annulus boundary-of-a-square picture: vertices A=0 B=1 C=2
// D=3, edges AB=4 AC=5 AD=6 BC=7 CD=8, triangles ABC=9 ACD=10.
SimplicialComplex annulus_complex();

// Paired cells AB/A, BC/B, CD/C, AD/D plus critical AC, ABC, ACD. The
// resulting minimal Morse decomposition has four poset elements:
// p0 = {A,B,C,D,AB,AD,BC,CD} (the boundary circle), p1 = {AC},
// p2 = {ABC}, p3 = {ACD}.
MultivectorField annulus_field(const SimplicialComplex& K);

// Full triangle closure: A=0 B=1 C=2, AB=3 AC=4 BC=5, ABC=6.
SimplicialComplex triangle_complex();

// One triangle ABD with a dangling edge AC: vertices A=0 B=1 C=2 D=3,
// edges AB=4 AC=5 AD=6 BD=7, triangle ABD=8.
SimplicialComplex fan_complex();

// Singletons except one vector {AD, BD, ABD}; 7 Morse sets.
MultivectorField fan_field(const SimplicialComplex& K);

// A small random problem instance for property tests.
struct Instance {
  SimplicialComplex complex;
  MultivectorField field;
};
Instance random_instance(std::uint64_t seed);

// Uniform random linear extension (Kahn with random ready pick).
std::vector<PosetId> random_linear_ext(const MorseDecomposition& md, Rng& rng);

// Random Lyapunov function: monotone values along the default extension,
// with occasional ties across incomparable elements.
LyapunovFunction random_lyapunov(const MorseDecomposition& md, Rng& rng);

}  // namespace fx
