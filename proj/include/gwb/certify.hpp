#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gwb/homology.hpp"
#include "gwb/steinberg.hpp"

namespace gwb {

struct CertifyOptions {
  size_t n_max = 3;
  size_t modules = 100;  // corroboration batch size; 0 skips it
  uint64_t seed = 0;
  size_t max_rank = 3;
  HomologyOptions homology;
};

struct CertifyResult {
  bool certified = false;
  std::string ring;
  size_t uniform_bound = 0;  // max_x |r⁻¹(x)|

  // Certificate: s∗(f) = 1 and f∗k = 0 for the kernel basis.
  std::optional<AlgebraElement> f;
  bool identities_verified = false;
  std::vector<std::string> transcript;

  // Obstruction.
  UnitId obstruction_unit = -1;
  size_t obstruction_order = 0;

  // Corroboration only; never part of the certificate.
  uint64_t seed = 0;
  size_t modules_checked = 0;
  bool corroborated = false;
  std::optional<size_t> counterexample;  // index of a module with H_n != 0
};

/// Splits s∗ over the ring and, on success, samples random modules and
/// checks H_1..H_{n_max} = 0.
CertifyResult hdim0_certify(const GroupoidPtr& g, const Ring& ring, const CertifyOptions& opts = {});

/// Independent recheck of the certificate identities by convolution.
bool verify_splitting(const GroupoidPtr& g, const Ring& ring, const AlgebraElement& f);

/// True iff every isotropy order is a unit in the ring.
bool isotropy_orders_invertible(const FiniteGroupoid& g, const Ring& ring);

}  // namespace gwb
