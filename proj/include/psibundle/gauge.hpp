#pragma once

// Trivial ψ-principal bundles: the map ψ^C, trivializations Φ, the
// isomorphism Θ: M⊗C → P, gauge transformations and the cylinder gauge group
// of sequences.

#include <memory>
#include <vector>

#include "psibundle/coalg.hpp"
#include "psibundle/entwine.hpp"

namespace psb {

/// ψ^C: C⊗C → C⊗C, b⊗c ↦ c_A⊗b^A, memoized.
class PsiC {
 public:
  using Fn = std::function<Tensor(const CIdx&, const CIdx&)>;  // shape "CC"

  PsiC(CoalgebraPtr C, Fn f);

  const CoalgebraPtr& C() const { return C_; }
  Tensor operator()(const CIdx& b, const CIdx& c) const;
  /// ψ^C at slots (pos, pos+1), both C slots.
  Tensor apply(const Tensor& t, std::size_t pos) const;

 private:
  CoalgebraPtr C_;
  Fn f_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<CIdx, CIdx>, Tensor> cache_;
};

using PsiCPtr = std::shared_ptr<const PsiC>;

/// (id⊗Δ)ψ^C = ψ^C₁₂ψ^C₂₃(Δ⊗id), (id⊗ε)ψ^C = ε⊗id and ψ^C(e⊗c) = Δc on
/// all pairs of the given indices.
Verdict check_psiC(const PsiC& m, const std::vector<CIdx>& cs);

struct TrivialBundle {
  BundlePtr bundle;
  PsiCPtr psiC;
  ConvMap phi;
  ConvMap phi_inv;

  const Entwining& psi() const { return *bundle->psi(); }
  const Presentation& P() const { return *bundle->psi()->P(); }
  const Coalgebra& C() const { return *bundle->psi()->C(); }
};

/// Φ(e) = 1, Φ*Φ⁻¹ = Φ⁻¹*Φ = ε·1, ψ(b⊗Φ(c)) = (Φ⊗id)ψ^C(b⊗c), and the
/// consequences Δ_R∘Φ = (Φ⊗id)∘Δ and ψ(c(1)⊗Φ⁻¹(c(2))) = Φ⁻¹(c)⊗e.
Verdict check_trivialization(const TrivialBundle& t, const std::vector<CIdx>& cs);

/// Θ(x⊗c) = xΦ(c) on a tensor of shape "PC" whose P slots lie in M.
Tensor theta(const TrivialBundle& t, const Tensor& xc);
/// Θ⁻¹(u) = u(0)Φ⁻¹(u(1)(1))⊗u(1)(2) on a tensor of shape "P".
Tensor theta_inv(const TrivialBundle& t, const Tensor& u);
/// Θ∘Θ⁻¹ = id on us, Θ⁻¹∘Θ = id on M-basis ⊗ cs, Θ⁻¹ lands in M⊗C, and
/// Θ⁻¹ is a left M-module and right C-comodule map.
Verdict check_theta(const TrivialBundle& t, const std::vector<Mono>& us, const std::vector<CIdx>& cs);

/// ψ^C₂₃ψ₁₂(id⊗γ⊗id)(id⊗Δ) = (γ⊗id⊗id)(Δ⊗id)ψ^C on all pairs. Throws
/// NotUnitalAtE when γ(e) ≠ 1 and ValuesNotInM when some γ(c) is not
/// coinvariant.
Verdict check_gauge(const TrivialBundle& t, const ConvMap& gamma, const std::vector<CIdx>& cs);

/// The new trivialization γ*Φ.
ConvMap gauge_act(const ConvMap& gamma, const ConvMap& phi, const TrivialBundle& t);

/// Γ = (Γ₀ = 1, Γ₁, …) modelling γ(c_n) = Γ_n xⁿ on the cylinder.
using GaugeSeq = std::vector<Scalar>;

/// (Γ·Γ')_n = Σ_k [n k]_q Γ_k Γ'_{n−k}.
GaugeSeq seq_mul(const GaugeSeq& a, const GaugeSeq& b);
/// Inverse by the triangular recursion. Throws NotUnitalAtE when Γ₀ ≠ 1.
GaugeSeq seq_inv(const GaugeSeq& a);
/// Γ₀ = 1 and Γ_n = 0 for n ≥ 1, of the given length.
GaugeSeq seq_unit(std::size_t length);
/// The map c_n ↦ Γ_n xⁿ for a presentation with an invertible generator x;
/// indices beyond the sequence throw WindowExceeded.
ConvMap to_gamma(const GaugeSeq& g, const PresentationPtr& P, int xgen);

}  // namespace psb
