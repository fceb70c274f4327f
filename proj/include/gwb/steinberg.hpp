#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gwb/bisection.hpp"
#include "gwb/groupoid.hpp"
#include "gwb/matrix.hpp"

namespace gwb {

/// An element of the convolution algebra R𝒢, stored densely by arrow id.
class AlgebraElement {
 public:
  AlgebraElement() = default;  // empty element with no groupoid
  AlgebraElement(GroupoidPtr g, Ring ring);

  static AlgebraElement delta(GroupoidPtr g, Ring ring, ArrowId a, const Rational& c = Rational(1));

  const GroupoidPtr& groupoid() const { return g_; }
  const Ring& ring() const { return ring_; }
  const Rational& at(ArrowId a) const { return coeffs_[static_cast<size_t>(a)]; }
  void set(ArrowId a, const Rational& c) { coeffs_[static_cast<size_t>(a)] = ring_.normalize(c); }
  void add_to(ArrowId a, const Rational& c);
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Nonzero (arrow, coefficient) pairs by ascending arrow.
  std::vector<std::pair<ArrowId, Rational>> support() const;
  bool is_zero() const;

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement scaled(const Rational& c) const;

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.g_ == b.g_ && a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
  }

 private:
  GroupoidPtr g_;
  Ring ring_ = Ring::integers();
  std::vector<Rational> coeffs_;
};

/// A function on units (an element of R𝒢⁰), stored densely by unit id.
struct UnitSpaceElement {
  Ring ring = Ring::integers();
  std::vector<Rational> coeffs;
  friend bool operator==(const UnitSpaceElement&, const UnitSpaceElement&) = default;
};

/// A function on composable n-tuples, keyed by tuple.
struct TupleElement {
  Ring ring = Ring::integers();
  size_t arity = 0;
  std::map<std::vector<ArrowId>, Rational> coeffs;  // zeros omitted
  friend bool operator==(const TupleElement&, const TupleElement&) = default;
};

/// (f∗h)(g) = Σ_{r(a)=r(g)} f(a) h(a⁻¹∘g), parallel over output arrows.
/// Throws AmbientMismatch or RingMismatch.
AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& h);
/// Single-threaded reference of the same formula.
AlgebraElement convolve_serial(const AlgebraElement& f, const AlgebraElement& h);

AlgebraElement indicator(const GroupoidPtr& g, const Ring& ring, const std::vector<ArrowId>& arrows);
/// The unit-space function as an algebra element supported on unit arrows.
AlgebraElement from_unit_space(const GroupoidPtr& g, const UnitSpaceElement& u);

UnitSpaceElement pushforward_source(const AlgebraElement& f);
UnitSpaceElement pushforward_range(const AlgebraElement& f);
/// Pushforward along d_i : 𝒢^{n+1} → 𝒢^n. For n = 0 this is the source map
/// and the result is keyed by 1-tuples holding unit ids.
TupleElement pushforward_face(const FiniteGroupoid& g, size_t n, size_t i, const TupleElement& f);

/// Named local homeomorphism: "source", "range" or "face:n:i".
struct NamedMap {
  enum class Kind { Source, Range, Face } kind = Kind::Source;
  size_t n = 0, i = 0;
  static NamedMap parse(const std::string& name);  // throws UnknownMap
};

/// {δ_g − δ_{unit(source g)} : g not a unit arrow}, in arrow order.
std::vector<AlgebraElement> augmentation_kernel(const GroupoidPtr& g, const Ring& ring);

struct KernelGenerationResult {
  bool generated = false;
  std::vector<Bisection> generators;            // the input bisections V
  std::vector<AlgebraElement> ideal_generators;  // w_V = 1_V − 1_{V⁻¹V}
  std::vector<ArrowId> kernel_arrows;           // g for each kernel basis vector k_g
  /// multipliers[j][v]: k_{g_j} = Σ_v w_v ∗ multipliers[j][v]
  std::vector<std::vector<AlgebraElement>> multipliers;
  /// For every spanning product w_v ∗ δ_h: its coordinates in the kernel basis.
  struct IdealTerm {
    size_t generator = 0;
    ArrowId h = 0;
    std::vector<Rational> kernel_coords;
  };
  std::vector<IdealTerm> ideal_in_kernel;
  std::optional<ArrowId> missing;  // first k_g outside the ideal, if any
};
/// Checks that the right ideal generated by {1_V − 1_{V⁻¹V} : V ∈ X} is
/// ker s∗. Throws CoverFailure when the semigroup of X misses an arrow.
KernelGenerationResult kernel_generation_check(const GroupoidPtr& g, const Ring& ring,
                                               const std::vector<std::vector<ArrowId>>& x);

/// Replays both certificate directions with the serial convolution: every
/// multiplier set rebuilds its kernel vector and every ideal term matches its
/// kernel coordinates.
bool verify_kernel_generation(const GroupoidPtr& g, const Ring& ring, const KernelGenerationResult& r);

struct FullnessTerm {
  std::vector<size_t> subset;  // indices into bisections
  int sign = 1;
  AlgebraElement value;        // Π_{i∈S} 1_{V_i} 1_Y 1_{V_i⁻¹}
};
struct FullnessDecomposition {
  std::vector<UnitId> y;
  std::vector<Bisection> bisections;
  std::vector<FullnessTerm> terms;  // nonzero terms, DFS order
  size_t total_terms = 0;           // 2^k − 1
  AlgebraElement sum;
  bool verified = false;            // sum == 1_{𝒢⁰}
};
/// Inclusion–exclusion witness that 1_Y is a full idempotent.
/// Throws NotFull or UnknownUnit.
FullnessDecomposition fullness_idempotent(const GroupoidPtr& g, const std::vector<int64_t>& y, const Ring& ring);

struct AveragingResult {
  AlgebraElement e;
  std::vector<Bisection> cover;  // invertible bisections covering 𝒢
  std::vector<Bisection> group;  // the group they generate
  bool idempotent = false;
  bool absorbs_group = false;
  bool augmentation_one = false;
};
/// e = |H|⁻¹ Σ_{V∈H} 1_V. Throws NotGroupBundle or OrderNotInvertible.
AveragingResult averaging_idempotent(const GroupoidPtr& g, const Ring& ring);

struct SplitResult {
  bool split = false;
  std::optional<AlgebraElement> f;
  std::vector<std::string> transcript;  // verification lines
  UnitId obstruction_unit = -1;
  size_t obstruction_order = 0;
};
/// Solves s∗(f) = 1 and f∗k = 0 for every kernel basis vector k.
SplitResult split_source(const GroupoidPtr& g, const Ring& ring);
/// The right-module splitting φ ↦ f∗φ of s∗.
AlgebraElement splitting_map(const AlgebraElement& f, const UnitSpaceElement& phi);

/// max_x |r⁻¹(x)|.
size_t uniform_bound(const FiniteGroupoid& g);

}  // namespace gwb
