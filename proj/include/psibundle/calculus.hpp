#pragma once

// Universal differential calculus on P, connections Π and connection
// 1-forms ω, local gauge fields β on trivial bundles, the canonical
// connection of an embeddable bundle, and non-universal calculi Ω¹P/N with
// their quotient connections.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "psibundle/coalg.hpp"
#include "psibundle/entwine.hpp"
#include "psibundle/gauge.hpp"
#include "psibundle/linalg.hpp"

namespace psb {

// ---------------------------------------------------------------------------
// Universal forms. An n-form is a tensor of shape P^(n+1) annihilated by
// every adjacent multiplication.

/// Karoubi differential on a tensor of k P slots: Σ_i (−1)^i (insert 1 at i).
/// On elements du = 1⊗u − u⊗1.
Tensor d(const Tensor& t, const Presentation& P);
Tensor d(const Mono& u, const Presentation& P);
/// u·dv = u⊗v − uv⊗1.
Tensor u_dv(const Mono& u, const Mono& v, const Presentation& P);
/// True when every adjacent multiplication annihilates t.
bool is_form(const Tensor& t, const Presentation& P);
/// Left and right multiplication of a form by an algebra element.
Tensor lmul(const Element& u, const Tensor& t, const Presentation& P);
Tensor rmul(const Tensor& t, const Element& u, const Presentation& P);

/// d(uv) = (du)v + u(dv) and m∘d = 0 on all pairs.
Verdict check_leibniz(const Presentation& P, const std::vector<Mono>& us);

/// n = 2: ←ψ²(c⊗du) = (d⊗id)ψ(c⊗u). n = 3: the same one degree up on the
/// 1-forms u dv. ←ψⁿ moves the C slot across n P slots.
Verdict check_d_covariance(const Entwining& psi, const std::vector<CIdx>& cs, const std::vector<Mono>& us, int n);

/// ψ(c⊗x) ∈ M⊗C for every M-basis element and window index. Throws
/// HypothesisFails with the first offending pair.
void check_m_hypothesis(const BundleData& b);

/// PΩ¹MP: per weight component, the span of u·dx·v = u⊗xv − ux⊗v over the
/// bundle window and the M basis.
class Horizontals {
 public:
  explicit Horizontals(BundlePtr b);

  const BundlePtr& bundle() const { return b_; }
  /// Reduced echelon basis of one component.
  std::vector<Tensor> basis(const std::vector<int>& weight) const;
  /// Membership; throws WindowExceeded when a term leaves the window.
  bool contains(const Tensor& form) const;
  /// ←ψ²(c⊗h) ∈ PΩ¹MP⊗C on the basis of each given component.
  Verdict check_covariance(const std::vector<std::vector<int>>& weights, const std::vector<CIdx>& cs) const;

 private:
  using Sp = Span<std::map<TKey, Scalar>>;
  const Sp& span(const std::vector<int>& weight) const;

  BundlePtr b_;
  std::set<TKey> pairs_;
  mutable std::mutex mu_;
  mutable std::map<std::vector<int>, std::shared_ptr<Sp>> spans_;
};

// ---------------------------------------------------------------------------
// Connections

/// A left P-module map Ω¹P → Ω¹P given on tensors of shape "PP".
using FormMap = std::function<Tensor(const Tensor&)>;

/// ω̃(c) = ω(c) − ε(c)ω(e), the restriction to ker ε.
ConvMap omega_tilde(const ConvMap& omega, const CoalgebraPtr& C);
/// Π = m∘(id⊗ω̃)∘χ.
FormMap connection_from_omega(const BundlePtr& b, const ConvMap& omega);

/// Π² = Π, Π(u·f) = u·Π(f), Π kills the horizontal basis of every touched
/// component, f − Π(f) is horizontal, and ←ψ²(c⊗Πf) = (Π⊗id)←ψ²(c⊗f).
Verdict check_connection(const FormMap& pi, const Horizontals& h, const std::vector<Tensor>& forms,
                         const std::vector<Mono>& us, const std::vector<CIdx>& cs);

struct OmegaVerdict {
  Verdict condition1;  // χ(ω̃(c)) = 1⊗(c − ε(c)e)
  Verdict condition2;  // ←ψ²(b⊗ω(c)) = c(1)_α c(2)_{βγ} ω̃(e^γ)⊗b^{αβ}
  bool ok() const { return condition1.ok && condition2.ok; }
};

/// Both conditions on every (b, c) of the given indices. Condition 2 is
/// evaluated with τ from both complement bases; throws
/// RepresentativeDependent when the two right hand sides differ.
OmegaVerdict check_omega(const BundleData& b, const ConvMap& omega, const std::vector<CIdx>& cs);
/// The right hand side of Condition 2 for one representative choice.
Tensor condition2_rhs(const BundleData& b, const ConvMap& omega, const CIdx& bi, const CIdx& c, bool permuted);

/// φ(b⊗u⊗c) = u_α c(1)_β c(2)_{γδ}⊗e^δ⊗b^{αβγ}, shape "PCC".
Tensor phi_map(const BundleData& b, const CIdx& bi, const Mono& u, const CIdx& c);
/// φ∘(id⊗χ) = (χ⊗id)∘←ψ² on b⊗f for the given forms.
Verdict check_phi_intertwining(const BundleData& b, const std::vector<CIdx>& cs, const std::vector<Tensor>& forms);

// ---------------------------------------------------------------------------
// Trivial bundles

/// β(e) = 0, β(c) ∈ Ω¹M, and
/// ψ^C₃₄ψ₂₃ψ₁₂(id⊗β⊗id)(id⊗Δ) = (β⊗id⊗id)(Δ⊗id)ψ^C on all pairs.
Verdict check_beta(const TrivialBundle& t, const ConvMap& beta, const std::vector<CIdx>& cs);
/// ω = Φ⁻¹*dΦ + Φ⁻¹*β*Φ. Throws BetaConditionFails when check_beta fails.
ConvMap trivial_connection(const TrivialBundle& t, const ConvMap& beta, const std::vector<CIdx>& cs);
/// β ↦ γ⁻¹*dγ + γ⁻¹*β*γ; γ⁻¹ is verified up to `bound`.
ConvMap beta_gauge(const TrivialBundle& t, const ConvMap& gamma, const ConvMap& beta, int bound);
/// The trivial bundle with Φ replaced by γ*Φ.
TrivialBundle gauge_bundle(const TrivialBundle& t, const ConvMap& gamma, int bound);
/// The zero map C → Ω¹P.
ConvMap zero_form_map(const CoalgebraPtr& C);
ConvMap add_maps(const ConvMap& a, const ConvMap& b);

/// Γ_{n,i}: β(cⁿ) = Σ_i Γ_{n,i} x^i d(x^{n−i}) on the cylinder.
using GammaTable = std::map<std::pair<int, int>, Scalar>;
ConvMap cylinder_beta(const GammaTable& g, const PresentationPtr& P);
/// Closed double-sum expansion of ω(cⁿ) for the cylinder trivialization
/// Φ(cⁿ) = yⁿ with the local gauge field of the table.
Tensor cylinder_omega_closed(const GammaTable& g, const Presentation& P, int n);

// ---------------------------------------------------------------------------
// Embeddable bundles

/// Ad_R(h) = h(2)⊗S(h(1))h(3), shape "PP".
Tensor ad_r(const HopfData& h, const Mono& m);

struct CanonicalConnection {
  ConvMap omega;
  Verdict compatibility;  // (id⊗π)Ad_R i = (i⊗id)(π⊗π)Ad_R i
  Verdict covariance;     // Δ_R²∘ω∘π = (ω⊗id)(π⊗π)Ad_R
};

/// ω(c) = S(i(c)(1)) d i(c)(2) without any compatibility check.
ConvMap canonical_omega(const HopfPtr& h, const std::function<std::optional<Element>(const CIdx&)>& section);

/// canonical_omega after checking the section. The displayed section compatibility is
/// sufficient and the covariance identity is necessary and sufficient for
/// Condition 2; both are evaluated, and SectionIncompatible is thrown when
/// the covariance identity fails on the window.
CanonicalConnection canonical_connection(const BundlePtr& b, const HopfPtr& h,
                                         const std::function<Tensor(const Mono&)>& pi,
                                         const std::function<std::optional<Element>(const CIdx&)>& section,
                                         const std::vector<Mono>& hs);

/// Δ_R²∘ω = (ω⊗id)∘Ad_R on a Hopf algebra viewed as a bundle over itself.
Verdict check_ad_covariance(const HopfData& h, const Entwining& psi, const ConvMap& omega, const std::vector<Mono>& hs);

// ---------------------------------------------------------------------------
// Non-universal calculi Ω¹(P) = Ω¹P/N for a subbimodule N, modelled as a
// free left P-module on the differentials of the generators of P.

/// Element Σ_k a_k·d(g_k) of the free model; shape "PD", the D slot holds {k}.
using QForm = Tensor;

struct ComponentDims {
  std::vector<int> weight;
  std::size_t omega1 = 0;      // Ω¹(P)
  std::size_t horizontal = 0;  // PΩ¹(M)P
  std::size_t m = 0;           // 𝓜
  std::size_t chi_rank = 0;    // rank of χ_N on the component
  bool horizontals_killed = true;
  std::size_t lambda_rank = 0;   // rank of u⊗λ ↦ u·λ
  std::size_t lambda_count = 0;  // dim of the P⊗Λ component
  bool exact() const { return omega1 == horizontal + m && chi_rank == m && horizontals_killed; }
  bool lambda_iso() const { return lambda_rank == m && lambda_rank == lambda_count; }
};

struct RelationReport {
  std::string lhs;  // d(g)·ℓ
  std::string rhs;  // Σ p_k d(g_k)
};

class GeneralCalculus {
 public:
  /// Builds the model from generators of N, which must lie in Ω¹P (throws
  /// NotInKernel). `basis` lists the generators whose differentials form
  /// the left basis; `ker_eps` the indices spanning ker ε. Throws
  /// CovarianceFails when ←ψ²(c⊗g) ∉ N⊗C for some window index.
  GeneralCalculus(std::string name, BundlePtr b, std::vector<Tensor> generators, std::vector<int> basis,
                  std::vector<CIdx> ker_eps);

  const std::string& name() const { return name_; }
  const BundlePtr& bundle() const { return b_; }
  const std::vector<Tensor>& generators() const { return gens_; }
  const std::vector<RelationReport>& relations() const { return relations_; }
  const Verdict& consistency() const { return consistency_; }
  const Verdict& covariance() const { return covariance_; }

  /// π_N of a universal 1-form.
  QForm project(const Tensor& form) const;
  /// The universal lift Σ a_k⊗g_k − a_k g_k⊗1.
  Tensor lift(const QForm& f) const;
  QForm dgen(std::size_t k) const;
  QForm lmul(const Element& u, const QForm& f) const;
  QForm rmul(const QForm& f, const Element& u) const;
  /// ←ψ²_N(c⊗f), shape "PDC".
  Tensor psi2(const CIdx& c, const QForm& f) const;

  /// 𝓜 on one weight: the span χ(N) inside P⊗ker ε. π_𝓜 reduces modulo it.
  Tensor pi_m(const Tensor& pc) const;
  /// χ_N(f) = π_𝓜(χ(lift f)).
  Tensor chi_n(const QForm& f) const;
  /// Minimal c's, taken in ker ε order, whose classes λ_c = π_𝓜(1⊗c)
  /// generate every π_𝓜(1⊗c') as a left P-module inside the window.
  std::vector<CIdx> lambda_basis() const;
  /// Writes an element of 𝓜 as Σ u·λ_c with c in the Λ basis;
  /// returns the coefficients as a "PC" tensor. Throws WindowExceeded.
  Tensor lambda_coords(const Tensor& pc) const;

  /// Reduced basis of the image of PΩ¹(M)P in one component, and membership.
  std::vector<QForm> horizontal_basis(const std::vector<int>& weight) const;
  bool horizontal_contains(const QForm& f) const;

  /// Basis {m·d(g_k)} of Ω¹(P) in one weight component.
  std::vector<QForm> component_basis(const std::vector<int>& weight) const;
  ComponentDims dims(const std::vector<int>& weight) const;
  /// φ_N∘(id⊗χ_N) = (χ_N⊗id)∘←ψ²_N on the basis of the given components.
  Verdict check_phi_n(const std::vector<std::vector<int>>& weights, const std::vector<CIdx>& cs) const;
  std::string str(const QForm& f) const;

 private:
  std::vector<int> weight_of(const TKey& k, const std::string& shape) const;
  std::vector<Tensor> n_span_elements(const std::vector<int>& weight) const;
  const Span<std::map<TKey, Scalar>>& chi_n_span(const std::vector<int>& weight) const;
  const Span<std::map<TKey, Scalar>>& horizontal_span(const std::vector<int>& weight) const;
  QForm d_word(const Word& w) const;
  QForm rmul_letter(const QForm& f, const Letter& l) const;
  QForm rmul_word(const QForm& f, const Word& w) const;

  std::string name_;
  BundlePtr b_;
  std::vector<Tensor> gens_;
  std::vector<int> basis_;
  std::vector<CIdx> ker_eps_;
  std::vector<Mono> nwindow_;
  // rules_[{k, letter}] = d(g_k)·letter in the model
  std::map<std::pair<std::size_t, Letter>, QForm> rules_;
  std::vector<RelationReport> relations_;
  Verdict consistency_;
  Verdict covariance_;
  mutable std::mutex mu_;
  mutable std::map<std::vector<int>, std::shared_ptr<Span<std::map<TKey, Scalar>>>> chi_spans_;
  mutable std::map<std::vector<int>, std::shared_ptr<Span<std::map<TKey, Scalar>>>> h_spans_;
  mutable std::optional<std::vector<CIdx>> lambda_basis_;
};

using CalculusPtr = std::shared_ptr<const GeneralCalculus>;

struct QuotientConnection {
  Scalar alpha;
  std::function<QForm(const QForm&)> pi;  // Π as a left-linear map
  QForm omega_lambda;                     // ω(λ)
  Verdict projection;                     // Π² = Π, kernel = horizontals
  Verdict equivariance;                   // ←ψ²_N(id⊗Π) = (Π⊗id)←ψ²_N
  Verdict condition1;                     // χ_N(ω(λ)) = λ
  Verdict condition2;
  Verdict beta_reproduction;              // π_N of the trivial-bundle ω
  bool ok() const {
    return projection.ok && equivariance.ok && condition1.ok && condition2.ok && beta_reproduction.ok;
  }
};

/// The cylinder quotient connection Π(dx) = 0, Π(dy) = dy + α dx (or the
/// identity on dx when `pi_dx_identity`), checked on the given components.
QuotientConnection quotient_connection(const GeneralCalculus& g, const TrivialBundle& t, const Scalar& alpha,
                                       const std::vector<std::vector<int>>& weights, const std::vector<CIdx>& cs,
                                       bool pi_dx_identity = false);

/// Quantum-plane calculi on the cylinder: generators of N as printed and as
/// corrected into ker(multiplication).
struct PlaneCalculusGenerators {
  std::vector<Tensor> printed;
  std::vector<Tensor> corrected;
  std::vector<std::string> stated_relations;
};
PlaneCalculusGenerators plane_calculus_generators(const Presentation& P, int which, const Scalar& s);

}  // namespace psb
