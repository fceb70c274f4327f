#pragma once

#include <vector>

#include "gwb/groupoid.hpp"
#include "gwb/matrix.hpp"

namespace gwb {

/// Finitely presented fiber R^rank / (column span of relations).
struct Fiber {
  size_t rank = 0;
  Matrix relations;  // rank x k, k may be 0
  bool is_free() const { return relations.cols() == 0 || relations.is_zero(); }
};

/// Raw module description as read from a file.
struct ModuleSpec {
  struct FiberEntry {
    int64_t unit = 0;
    size_t rank = 0;
    Matrix relations;
  };
  struct ActionEntry {
    int64_t arrow = 0;
    Matrix matrix;
  };
  std::vector<FiberEntry> fibers;
  std::vector<ActionEntry> actions;  // unit arrows may be omitted (identity)
};

/// A unitary module over R𝒢: a fiber per unit and a matrix
/// action(g): fiber(source g) → fiber(range g) per arrow.
class GModule {
 public:
  GModule(GroupoidPtr g, Ring ring, std::vector<Fiber> fibers, std::vector<Matrix> actions);

  const GroupoidPtr& groupoid() const { return g_; }
  const Ring& ring() const { return ring_; }
  const Fiber& fiber(UnitId x) const { return fibers_[static_cast<size_t>(x)]; }
  size_t rank(UnitId x) const { return fibers_[static_cast<size_t>(x)].rank; }
  const Matrix& action(ArrowId a) const { return actions_[static_cast<size_t>(a)]; }
  const std::vector<Fiber>& fibers() const { return fibers_; }
  bool is_free() const;

  ModuleSpec to_spec() const;

 private:
  GroupoidPtr g_;
  Ring ring_;
  std::vector<Fiber> fibers_;
  std::vector<Matrix> actions_;
};

/// Checks shapes, ring membership and functoriality modulo relations over
/// the whole composition table. Throws FunctorialityViolation(g, h).
GModule validate_gmodule(const GroupoidPtr& g, const Ring& ring, const ModuleSpec& spec);
/// Same checks on an already-assembled module.
void check_gmodule(const GModule& m);

/// Fiber R at every unit, identity transport along every arrow.
GModule trivial_module(const GroupoidPtr& g, const Ring& ring);

/// The same fibers, relations and action matrices read in another ring.
/// Throws NotInRing when an entry has no image there.
GModule base_change(const GModule& m, const Ring& ring);

/// Fibers over the subgroupoid's units, actions of its arrows.
GModule restrict_module(const Subgroupoid& h, const GModule& m);

/// Ind_H^G M: fiber at x is ⊕ M_{s(g)} over classes [g] of arrows with
/// s(g) ∈ H⁰, r(g) = x, modulo g ~ g∘h. Each class is represented by its
/// least arrow id; classes are ordered by representative.
GModule induce(const Subgroupoid& h, const GModule& m);

struct InvariantSplit {
  GModule sub;   // fibers on U, zero elsewhere
  GModule quot;  // fibers off U, zero on U
};
/// Throws NotInvariant naming an arrow leaving U.
InvariantSplit invariant_submodule(const GModule& m, const std::vector<int64_t>& u);

}  // namespace gwb
