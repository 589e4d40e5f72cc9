#pragma once

// The ℤ-graded braided category: Ψ(v⊗w) = q^{deg v·deg w} w⊗v, braided
// tensor product algebras, the braided line k[c] and the trivial braided
// bundle over k[x, x⁻¹], identified with the quantum cylinder.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "psibundle/coalg.hpp"
#include "psibundle/entwine.hpp"
#include "psibundle/instances.hpp"

namespace psb {

/// A presented algebra with one integer degree per generator.
struct GradedAlgebra {
  PresentationPtr P;
  std::vector<int> gen_degree;

  int degree(const Mono& m) const;
  /// Common degree of every term; nullopt for mixed degrees or zero.
  std::optional<int> degree(const Element& e) const;
};

/// k[c] with deg c = 1.
GradedAlgebra braided_line_algebra();
/// k[x, x⁻¹] with deg x = 1.
GradedAlgebra laurent_algebra();

/// Ψ(v⊗w) = q^{deg v·deg w} w⊗v for v ∈ A, w ∈ B; shape "PP" with the B
/// factor first. Throws NotHomogeneous.
Tensor braiding(const GradedAlgebra& A, const Element& v, const GradedAlgebra& B, const Element& w);

/// Swaps slots pos and pos+1 of every term with the factor q^{deg·deg}.
Tensor braid_slots(const Tensor& t, std::size_t pos, const std::function<int(const Key&)>& deg);

/// Ψ₁₂∘Ψ₂₃ = Ψ_{U⊗V,W} and Ψ₂₃∘Ψ₁₂ = Ψ_{U,V⊗W} on every triple of monomials.
Verdict check_hexagon(const GradedAlgebra& A, const std::vector<Mono>& us);
/// (f⊗id)∘Ψ = Ψ∘(id⊗f) for a degree-preserving linear map f: B → B given on
/// monomials (shape "P"), applied to v ∈ A, w ∈ B.
Verdict check_naturality(const GradedAlgebra& A, const GradedAlgebra& B, const std::function<Tensor(const Mono&)>& f,
                         const std::vector<Mono>& vs, const std::vector<Mono>& ws);

/// A⊗̲B with (u⊗b)(v⊗c) = uΨ(b⊗v)c. Elements are stored as monomials of a
/// combined presentation (A's generators, then B's) which is used only for
/// printing and as the algebra of entwinings; products are computed from the
/// factors and the braiding.
class BraidedTensor {
 public:
  /// `max_length` bounds Σ|e| of every product; exceeding it raises
  /// DegreeOverflow.
  BraidedTensor(GradedAlgebra A, GradedAlgebra B, int max_length = 64);

  const GradedAlgebra& A() const { return A_; }
  const GradedAlgebra& B() const { return B_; }
  const PresentationPtr& P() const { return P_; }
  const GradedAlgebra& graded() const { return AB_; }

  Mono join(const Mono& a, const Mono& b) const;
  std::pair<Mono, Mono> split(const Mono& u) const;

  Element multiply(const Mono& u, const Mono& v) const;
  Element multiply(const Element& u, const Element& v) const;
  Element one() const { return Element(P_->one()); }

  /// Associativity on all triples and two-sided unit on the given monomials.
  Verdict check_algebra(const std::vector<Mono>& us) const;

 private:
  GradedAlgebra A_, B_, AB_;
  PresentationPtr P_;
  int max_length_;
};

/// The braided line k[c] with Δ̲c = c⊗1 + 1⊗c extended as an algebra map
/// into B⊗̲B, ε(c) = 0, and S̲ from the antipode recursion.
class BraidedLine {
 public:
  explicit BraidedLine(int bound);

  const GradedAlgebra& B() const { return B_; }
  const BraidedTensor& BB() const { return BB_; }
  int bound() const { return bound_; }

  /// Δ̲(cⁿ) = (Δ̲c)ⁿ in B⊗̲B; monomials {i, j} stand for cⁱ⊗cʲ.
  const Element& coproduct(int n) const;
  /// S̲(cⁿ) = −Σ_{k<n} S̲(cᵏ)·(coefficient of cᵏ⊗c^{n−k} in Δ̲cⁿ)·c^{n−k}.
  const Element& antipode(int n) const;
  /// Δ̲ multiplicative, coassociative and counital; both antipode identities.
  Verdict check_hopf() const;
  /// The coalgebra underlying k[c], basis cⁿ written c_n.
  CoalgebraPtr coalgebra() const;

 private:
  void require(int n) const;

  int bound_;
  GradedAlgebra B_;
  BraidedTensor BB_;
  std::vector<Element> delta_;
  std::vector<Element> S_;
};

/// ψ(c⊗u) = Ψ(c⊗u(0))u(1) for a braided B-comodule algebra P; `coaction`
/// returns u(0)⊗u(1) of shape "PC" with C the line's basis.
EntwiningPtr braided_entwining(const BraidedLine& line, const GradedAlgebra& P,
                               std::function<Tensor(const Mono&)> coaction);

/// The trivial braided bundle P = k[x, x⁻¹]⊗̲k[c] with Δ_R = id⊗Δ̲.
class BraidedBundle {
 public:
  explicit BraidedBundle(int cbound);
  BraidedBundle(const BraidedBundle&) = delete;
  BraidedBundle& operator=(const BraidedBundle&) = delete;

  const BraidedLine& line() const { return line_; }
  const BraidedTensor& P() const { return P_; }
  const EntwiningPtr& psi() const { return psi_; }

  /// Δ_R(x^m⊗cⁿ) = Σ x^m⊗cᵏ⊗Δ̲-coefficient·c^{n−k}, shape "PC".
  Tensor coaction(const Mono& u) const;
  /// χ_M(u⊗v) = u·v(0)⊗v(1) with the braided product; "PP" → "PC".
  Tensor chi(const Tensor& pp) const;
  /// χ_M⁻¹((m⊗b)⊗c) = (m⊗bS̲c(1))⊗(1⊗c(2)); "PC" → "PP".
  Tensor chi_inv(const Tensor& pc) const;
  /// Canonical representative in P⊗_M P: u⊗(m⊗b) ↦ u(m⊗1)⊗(1⊗b).
  Tensor balance(const Tensor& pp) const;

 private:
  BraidedLine line_;
  BraidedTensor P_;
  EntwiningPtr psi_;
};

struct IdentificationReport {
  Verdict algebra;      // x^m⊗cⁿ ↦ x^m yⁿ respects products
  Verdict coaction;     // braided Δ_R matches the cylinder Δ_R
  Verdict entwining;    // braided ψ matches the cylinder ψ
  Verdict chi_inverse;  // χ_M∘χ_M⁻¹ = id and χ_M⁻¹∘χ_M = id on P⊗_M P
  bool ok() const { return algebra.ok && coaction.ok && entwining.ok && chi_inverse.ok; }
};

/// Compares the braided bundle with the cylinder on |x-deg| ≤ dx, y-deg ≤ dy
/// and C-index ≤ dc.
IdentificationReport cylinder_identification(const BraidedBundle& bb, const Cylinder& cy, int dx, int dy, int dc);

}  // namespace psb
