#pragma once

// Shipped instances: the quantum cylinder, GL_q(2) over its homogeneous
// coalgebra, and a Hopf algebra viewed as a bundle over itself.

#include <optional>
#include <string>
#include <vector>

#include "psibundle/coalg.hpp"
#include "psibundle/entwine.hpp"
#include "psibundle/gauge.hpp"

namespace psb {

// ---------------------------------------------------------------------------
// Quantum cylinder: x invertible, y, with yx = qxy. C has basis c_n = π(yⁿ).

/// Deliberately broken variants used to test that the checks can fail.
enum class CylinderMutation { none, drop_q_power, wrong_base, broken_phi };

struct CylinderOptions {
  int dx = 2;  // |x-degree| bound of the P window
  int dy = 4;  // y-degree bound of the P window
  int dc = 4;  // C-index bound
  CylinderMutation mutation = CylinderMutation::none;
};

struct Cylinder {
  CylinderOptions opts;
  PresentationPtr P;
  int x = 0, y = 1;  // generator indices
  HopfPtr hopf;
  CoalgebraPtr C;
  EntwiningPtr psi;
  PsiCPtr psiC;
  TrivialBundle triv;
  std::function<Tensor(const Mono&)> pi;
  std::function<std::optional<Element>(const CIdx&)> section;
  std::vector<Mono> window;
  std::vector<CIdx> cwindow;

  BundlePtr bundle() const { return triv.bundle; }
  /// x^a y^b.
  Mono xy(int a, int b) const { return {a, b}; }
  static CIdx c(int n) { return {n}; }
};

PresentationPtr cylinder_presentation();
/// Δx = x⊗x, Δy = 1⊗y + y⊗x, ε(x) = 1, ε(y) = 0, S(x) = x⁻¹, S(y) = −yx⁻¹.
HopfPtr cylinder_hopf(const PresentationPtr& P);
/// Δc_n = Σ_k [n k]_base c_k⊗c_{n−k}, ε(c_n) = δ_{n0}, e = c₀.
CoalgebraPtr cylinder_coalgebra(const Scalar& base);
/// ψ(c_l⊗x^m yⁿ) = Σ_k [n k]_q q^{l(k+m)} x^m y^k⊗c_{n+l−k}; `drop_q_power`
/// replaces q^{l(k+m)} by q^{lk}.
Tensor cylinder_psi(const Presentation& P, const CIdx& c, const Mono& u, bool drop_q_power);
/// ψ^C(c_m⊗c_n) = Σ_k [n k]_q q^{km} c_k⊗c_{m+n−k}.
Tensor cylinder_psiC(const CIdx& b, const CIdx& c);
/// P window |a| ≤ dx, 0 ≤ b ≤ dy.
std::vector<Mono> cylinder_window(const Presentation& P, int dx, int dy);

Cylinder build_cylinder(const CylinderOptions& opts = {});

// ---------------------------------------------------------------------------
// GL_q(2): generators ordered γ < β < α < δ < D, D invertible.

struct GlqConvention {
  std::string name;
  bool inverse_base = false;  // coproduct binomials in q⁻² instead of q²
  bool swapped = false;       // coproduct acts on the second index
  Verdict coalgebra;
  Verdict entwining;
  bool passes() const { return coalgebra.ok && entwining.ok; }
};

struct Glq2 {
  PresentationPtr P;
  CoalgebraPtr C;
  EntwiningPtr psi;
  std::vector<GlqConvention> candidates;
  std::string convention;  // name of the passing candidate
  std::vector<Mono> window;
  std::vector<CIdx> cwindow;
  BundlePtr bundle;
};

PresentationPtr glq2_presentation();
/// One candidate coalgebra on c_{m,n}, m ≥ 0.
CoalgebraPtr glq2_coalgebra(bool inverse_base, bool swapped);
/// ψ(c_{i,j}⊗u) on a normal monomial γ^l β^m α^k δ^n D^r.
Tensor glq2_psi(const Presentation& P, const CIdx& c, const Mono& u);

/// Checks every convention on C-indices ≤ cbound (coalgebra) and on
/// P-degree ≤ max_degree with C-indices ≤ ebound (entwining); keeps the
/// unique passing one. Throws NoConsistentConvention when none passes.
Glq2 build_glq2(int max_degree = 2, int cbound = 3, int ebound = 2);

// ---------------------------------------------------------------------------
// A Hopf algebra H = k[x, x⁻¹] as a bundle over k with P = C = H.

struct SelfBundle {
  PresentationPtr H;
  HopfPtr hopf;
  CoalgebraPtr C;
  EntwiningPtr psi;
  BundlePtr bundle;
  std::vector<Mono> window;
};

SelfBundle build_selfbundle(int dx = 3);

}  // namespace psb
