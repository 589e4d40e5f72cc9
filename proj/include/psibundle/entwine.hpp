#pragma once

// Entwining structures ψ: C⊗P → P⊗C, their axioms, the induced coaction,
// coinvariants, the canonical map χ_M with its translation map, the dual
// side for a character, and the Hopf / embeddable constructors.

#include <functional>
#include <memory>
#include <optional>

#include "psibundle/coalg.hpp"
#include "psibundle/linalg.hpp"
#include "psibundle/presalg.hpp"
#include "psibundle/tensor.hpp"

namespace psb {

class Entwining {
 public:
  using Fn = std::function<Tensor(const CIdx&, const Mono&)>;  // shape "PC"

  Entwining(PresentationPtr P, CoalgebraPtr C, Fn f);

  const PresentationPtr& P() const { return P_; }
  const CoalgebraPtr& C() const { return C_; }

  Tensor psi(const CIdx& c, const Mono& u) const;
  /// ψ at slots (pos, pos+1), which must be C then P.
  Tensor apply(const Tensor& t, std::size_t pos) const;
  /// Moves the C slot at pos to the right across the next n P slots.
  Tensor pass(const Tensor& t, std::size_t pos, std::size_t n) const;

  Formatter formatter() const;
  std::string str(const Tensor& t) const { return psb::str(t, formatter()); }

 private:
  PresentationPtr P_;
  CoalgebraPtr C_;
  Fn f_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<CIdx, Mono>, Tensor> cache_;
};

using EntwiningPtr = std::shared_ptr<const Entwining>;

/// (ind.A) with the unit condition on all (c, u, v) and (ind.B) with the
/// counit condition on all (c, u).
Verdict check_entwining(const Entwining& psi, const std::vector<CIdx>& cs, const std::vector<Mono>& us);

/// Δ_Rⁿ(t) = ψ_{n n+1}∘…∘ψ_{12}(e⊗t) for t of shape P…P.
Tensor coaction(const Entwining& psi, const Tensor& t);
/// Comodule axioms for Δ_R¹ on us and Δ_R² on pairs, plus preservation of
/// Ω¹P (u dv) and Ω²P (u dv dw) by the coaction.
Verdict check_coaction(const Entwining& psi, const std::vector<Mono>& us);

/// Per-degree coinvariant basis {u : Δ_R u = u⊗e} inside the span of the
/// given monomials, with a subalgebra closure check.
struct CoinvariantBasis {
  std::vector<Element> basis;
  Verdict closure;
};
CoinvariantBasis coinvariants(const Entwining& psi, const std::vector<Mono>& window);

/// Key tuple weight used to split P⊗P and P⊗C into finite components.
using CWeight = std::function<std::vector<int>(const CIdx&)>;

/// χ_M on one weight component of P⊗_M P.
struct ChiComponent {
  std::vector<int> weight;
  std::vector<TKey> complement;  // representatives spanning P⊗_M P
  std::vector<TKey> targets;     // basis of the P⊗C component
  Matrix chi;                    // targets × complement
  Scalar det;
  bool square = false;
  bool bijective = false;
  Verdict well_defined;  // χ(ux⊗v) = χ(u⊗xv)
};

/// ψ-principal bundle data on a window: M, χ_M components and τ.
class BundleData {
 public:
  BundleData(EntwiningPtr psi, std::vector<Mono> window, std::vector<CIdx> cwindow, CWeight cweight);

  const EntwiningPtr& psi() const { return psi_; }
  const std::vector<Mono>& window() const { return window_; }
  const std::vector<CIdx>& cwindow() const { return cwindow_; }
  const CoinvariantBasis& M() const { return M_; }

  std::vector<int> weight(const TKey& k, const std::string& shape) const;
  /// χ(u⊗v) = u·Δ_R(v) on a tensor of shape "PP".
  Tensor chi(const Tensor& t) const;
  /// χ_M on the component of the given weight; `permuted` selects a
  /// second complement basis built from a shuffled pivot priority.
  ChiComponent component(const std::vector<int>& weight, bool permuted = false) const;
  /// τ(c) = χ_M⁻¹(1⊗c) as a representative in P⊗P. Throws SingularComponent.
  Tensor tau(const CIdx& c, bool permuted = false) const;
  /// χ_M(τ(c)) = 1⊗c on every window index.
  Verdict check_tau() const;

 private:
  EntwiningPtr psi_;
  std::vector<Mono> window_;
  std::vector<CIdx> cwindow_;
  CWeight cweight_;
  CoinvariantBasis M_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::vector<int>, bool>, std::shared_ptr<ChiComponent>> comps_;
};

using BundlePtr = std::shared_ptr<const BundleData>;

// ---------------------------------------------------------------------------
// Dual side

/// c ◁ⁿ u on a tensor of shape C…C (n slots) with u a monomial.
Tensor right_action(const Entwining& psi, const Character& kappa, const Tensor& cs, const Mono& u);

struct DualSide {
  Verdict action;        // (c◁u)◁v = c◁(uv) and c◁1 = c, for ◁¹ and ◁²
  Verdict delta_compat;  // Δ(c◁u) = Δc ◁² u
  Verdict coideal;       // Δ I_κ ⊆ C⊗I_κ + I_κ⊗C
  Verdict zeta;          // ζ^M(c⊗u) ∈ C⊗^M C
  std::vector<Tensor> ideal_basis;
  std::vector<std::string> notes;
};

DualSide dual_side(const Entwining& psi, const Character& kappa, const std::vector<CIdx>& cs,
                   const std::vector<Mono>& us);

// ---------------------------------------------------------------------------
// Hopf algebras and the Hopf / embeddable constructors

/// Hopf algebra on a presentation: coproduct, counit and antipode on
/// letters, extended multiplicatively (antimultiplicatively for S).
class HopfData {
 public:
  HopfData(PresentationPtr H, std::map<Letter, Tensor> delta, std::map<Letter, Scalar> eps,
           std::map<Letter, Element> antipode);

  const PresentationPtr& H() const { return H_; }
  Tensor delta(const Mono& m) const;  // shape "PP"
  Scalar eps(const Mono& m) const;
  Element antipode(const Mono& m) const;
  Tensor delta(const Element& e) const;
  Element antipode(const Element& e) const;

 private:
  PresentationPtr H_;
  std::map<Letter, Tensor> delta_;
  std::map<Letter, Scalar> eps_;
  std::map<Letter, Element> antipode_;
  mutable std::mutex mu_;
  mutable std::map<Mono, Tensor> dcache_;
};

using HopfPtr = std::shared_ptr<const HopfData>;

/// Δ and ε respect every rule, coassociativity, counit and both antipode
/// axioms on the window.
Verdict check_hopf(const HopfData& h, const std::vector<Mono>& window);

/// The coalgebra underlying H, with C-indices equal to H-monomials.
CoalgebraPtr hopf_coalgebra(const HopfPtr& h);

/// ψ(c⊗u) = u(0)⊗c·u(1) for a right H-comodule algebra P with C = H.
EntwiningPtr hopf_entwining(PresentationPtr P, std::function<Tensor(const Mono&)> coaction, const HopfPtr& h,
                            CoalgebraPtr C);

/// ψ(c⊗u) = u(1)⊗π(i(c)u(2)) for a quotient coalgebra C of H with section i.
/// Throws SectionUndefined when π(i(c)) ≠ c for a window index.
EntwiningPtr embeddable_entwining(const HopfPtr& h, CoalgebraPtr C, std::function<Tensor(const Mono&)> pi,
                                  std::function<std::optional<Element>(const CIdx&)> section,
                                  const std::vector<CIdx>& cwindow);

/// ψ^C(b⊗c) = π(v(1))⊗π(u v(2)) with u = i(b), v = i(c).
Tensor embeddable_psiC(const HopfData& h, const std::function<Tensor(const Mono&)>& pi,
                       const std::function<std::optional<Element>(const CIdx&)>& section, const CIdx& b,
                       const CIdx& c);

}  // namespace psb
