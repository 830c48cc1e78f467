#pragma once

#include "fht/tensor.hpp"
#include "fht/types.hpp"

#include <cstdint>

namespace fht {

/// Periodic one-dimensional plane-wave model: momenta k_j = 2*pi*j/L for
/// j = p - (N_f-1)/2 (integer division), a Gaussian-profile two-body kernel
/// and kinetic one-body energies. Complex basis functions, real tensor.
struct RingModelParams {
  int n_modes = 3;
  double ring_length = 10.0;       // L
  double potential_strength = 1.0; // V0
  double potential_width = 1.0;    // sigma

  void validate() const {
    if (n_modes < 1 || ring_length <= 0 || potential_width <= 0)
      fail(ErrorKind::Usage, "ring parameters must be positive");
  }
};

/// Seed-deterministic random valid tensor: i.i.d. standard normals pushed
/// through the antisymmetrizer. Byte-identical across runs for a fixed seed.
TwoBodyTensor random_valid(int n_modes, std::uint64_t seed);

/// Tensor built from real symmetric one-particle matrices:
/// v_pqrs = sum_k w_k M^k(p,s) M^k(q,r), antisymmetrized. The structure real
/// orbitals induce; its factorization still contains antisymmetric slices
/// carrying the exchange part.
TwoBodyTensor real_basis_instance(int n_modes, int rank, std::uint64_t seed);

/// Full instance (kinetic one-body + momentum-conserving interaction).
HamiltonianInstance ring_planewave(const RingModelParams& params);

/// Momentum label of mode p in the ring model (j = p - (N_f-1)/2).
int ring_momentum(int p, int n_modes);

}  // namespace fht
