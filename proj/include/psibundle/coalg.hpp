#pragma once

// Basis-indexed coalgebras given by structure functions, and the
// convolution algebra of maps out of them.

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "psibundle/presalg.hpp"
#include "psibundle/tensor.hpp"

namespace psb {

class Coalgebra {
 public:
  struct Def {
    std::string name;
    std::function<Tensor(const CIdx&)> coproduct;  // shape "CC"
    std::function<Scalar(const CIdx&)> counit;
    CIdx e;
    std::function<std::string(const CIdx&)> format;
    /// Filtration degree; Δc = c⊗e + terms whose left index has lower degree.
    std::function<int(const CIdx&)> filtration;
    /// All indices of filtration ≤ bound.
    std::function<std::vector<CIdx>(int)> indices;
  };

  explicit Coalgebra(Def d) : d_(std::move(d)) {}

  const std::string& name() const { return d_.name; }
  Tensor delta(const CIdx& c) const;
  Scalar eps(const CIdx& c) const { return d_.counit(c); }
  const CIdx& e() const { return d_.e; }
  std::string format(const CIdx& c) const { return d_.format(c); }
  int filtration(const CIdx& c) const { return d_.filtration(c); }
  std::vector<CIdx> indices(int bound) const { return d_.indices(bound); }

  /// Δ applied at slot pos (a C slot) of a tensor.
  Tensor delta_at(const Tensor& t, std::size_t pos) const;
  /// ε applied at slot pos of a tensor.
  Tensor eps_at(const Tensor& t, std::size_t pos) const;

 private:
  Def d_;
  mutable std::mutex mu_;
  mutable std::map<CIdx, Tensor> cache_;
};

using CoalgebraPtr = std::shared_ptr<const Coalgebra>;

/// Δⁿ of a C-tensor (shape "C"), associating to the left.
Tensor coproduct_n(const Coalgebra& C, const Tensor& c, int n);
/// Δⁿ associating to the right; equal to coproduct_n by coassociativity.
Tensor coproduct_n_right(const Coalgebra& C, const Tensor& c, int n);

/// Coassociativity, both counit laws and group-likeness of e on the indices.
Verdict check_coalgebra(const Coalgebra& C, const std::vector<CIdx>& indices);

/// Linear map out of C with tensor values of a fixed shape ("P" for algebra
/// values, "PP" for universal 1-forms). Values are memoized and shared by
/// copies.
class ConvMap {
 public:
  ConvMap() = default;
  ConvMap(std::string shape, std::function<Tensor(const CIdx&)> f);

  const std::string& shape() const { return state_->shape; }
  Tensor operator()(const CIdx& c) const;
  /// Linear extension to a tensor with a C slot at pos.
  Tensor apply_at(const Tensor& t, std::size_t pos) const;

 private:
  struct State {
    std::string shape;
    std::function<Tensor(const CIdx&)> f;
    std::mutex mu;
    std::map<CIdx, Tensor> cache;
  };
  std::shared_ptr<State> state_;
};

/// (f*g)(c) = f(c(1))·g(c(2)), multiplying the touching P slots.
ConvMap convolve(const ConvMap& f, const ConvMap& g, const CoalgebraPtr& C, const PresentationPtr& P);
/// The convolution unit c ↦ ε(c)·1.
ConvMap unit_map(const CoalgebraPtr& C, const PresentationPtr& P);
/// Two-sided inverse by the triangular recursion along the filtration,
/// verified on every index of filtration ≤ verify_bound. Throws NotUnitalAtE
/// or NotFiltered.
ConvMap convolution_inverse(const ConvMap& f, const CoalgebraPtr& C, const PresentationPtr& P,
                            int verify_bound);

}  // namespace psb
