#include <random>

#include "doctest.h"
#include "psibundle/scalar.hpp"

using namespace psb;

namespace {

Scalar S(const char* s) { return Scalar::parse(s); }

// Independent oracle: Gaussian binomial from the factorial quotient.
Scalar binom_oracle(int n, int k) { return q_factorial(n) / (q_factorial(k) * q_factorial(n - k)); }

mpz_class classical_binom(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

TEST_CASE("arith examples") {
  CHECK(q() / q() == Scalar(1));
  CHECK((S("1-q^2") / S("1-q")) == S("1+q"));
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), DivisionByZero);
  CHECK((S("1/q") * q()).is_one());
  CHECK(S("(q^2-1)/(q+1)") == S("q-1"));
  CHECK(S("(x*y - y)/(x^2-1)") == S("y/(x+1)"));
}

TEST_CASE("multivariate gcd") {
  Scalar a = S("(q+s)*(q-s^2+alpha)*(q^3+1)");
  Scalar b = S("(q+s)*(alpha*q+1)*(q+1)");
  Scalar r = a / b;
  CHECK(r == S("(q-s^2+alpha)*(q^2-q+1)/(alpha*q+1)"));
  CHECK(r * b == a);
}

TEST_CASE("q combinatorics") {
  CHECK(q_int(0).is_zero());
  CHECK(q_int(1) == Scalar(1));
  CHECK(q_int(3) == S("1+q+q^2"));
  CHECK(q_factorial(0) == Scalar(1));
  CHECK(q_factorial(2) == S("1+q"));
  CHECK(q_factorial(3) == S("(1+q)*(1+q+q^2)"));
  CHECK(q_binom(2, 1) == S("1+q"));
  CHECK(q_binom(5, 0) == Scalar(1));
  CHECK(q_binom(4, 2) == S("1+q+2*q^2+q^3+q^4"));
  CHECK(q_binom(3, -1).is_zero());
  CHECK(q_binom(3, 4).is_zero());
  CHECK(q_binom(3, 1, qpow(-2)) == S("1+q^-2+q^-4"));
}

TEST_CASE("q-binomial symmetry, Pascal and factorial oracle") {
  for (int n = 0; n <= 12; ++n)
    for (int k = 0; k <= n; ++k) {
      CHECK(q_binom(n, k) == q_binom(n, n - k));
      CHECK(q_binom(n, k) == binom_oracle(n, k));
      if (n > 0) CHECK(q_binom(n, k) == q_binom(n - 1, k - 1) + qpow(k) * q_binom(n - 1, k));
    }
}

TEST_CASE("specialize") {
  Assignment two{{"q", 2}}, one{{"q", 1}};
  CHECK(q_binom(2, 1).specialize(two) == 3);
  for (int n = 0; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) CHECK(q_binom(n, k).specialize(one) == mpq_class(classical_binom(n, k)));
  CHECK_THROWS_AS(S("1/(1-q)").specialize(one), DenominatorVanishes);
  CHECK_THROWS_AS(S("q+s").specialize(one), UnassignedIndeterminate);
}

TEST_CASE("specialize commutes with arithmetic") {
  std::mt19937 rng(7);
  std::vector<Scalar> pool = {S("q"), S("1+q"), S("s-q^2"), S("(1+s*q)/(2-q)"), S("3*q^-1"), S("alpha+q*s"),
                              S("(q^2-s)/(1+alpha)"), S("-5"), S("q^3-1")};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> num(1, 9), den(1, 7), opd(0, 3);
  int done = 0;
  while (done < 100) {
    Scalar a = pool[pick(rng)], b = pool[pick(rng)];
    int op = opd(rng);
    Assignment at{{"q", mpq_class(num(rng), den(rng))},
                  {"s", mpq_class(num(rng), den(rng))},
                  {"alpha", mpq_class(num(rng), den(rng))}};
    for (auto& [k, v] : at) v.canonicalize();
    try {
      mpq_class va = a.specialize(at), vb = b.specialize(at);
      if (op == 3 && (vb == 0 || b.is_zero())) continue;
      Scalar r = op == 0 ? a + b : op == 1 ? a - b : op == 2 ? a * b : a / b;
      mpq_class vr = op == 0 ? va + vb : op == 1 ? va - vb : op == 2 ? mpq_class(va * vb) : mpq_class(va / vb);
      CHECK(r.specialize(at) == vr);
      ++done;
    } catch (const DenominatorVanishes&) {
    }
  }
}

TEST_CASE("print and parse round trip") {
  for (const char* t : {"0", "1", "-3", "1+q+2*q^2", "(1+q)/(q^2)", "-q/(1+s)", "(alpha-q*s)/(2+q)", "q^-3",
                        "(1-q)*(1+Γ1)"}) {
    Scalar a = S(t);
    CHECK(Scalar::parse(a.str()) == a);
    CHECK(Scalar::parse(Scalar::parse(a.str()).str()).str() == a.str());
  }
  CHECK(q_binom(4, 2).str() == "1+q+2*q^2+q^3+q^4");
  CHECK(S("q^-1").str() == "1/q");
  CHECK_THROWS_AS(S("1+"), ParseError);
  CHECK_THROWS_AS(S("(q"), ParseError);
}

TEST_CASE("q specialization is scoped and thread local") {
  const Scalar symbolic = q_binom(4, 2);
  {
    QSpecialization at(mpq_class(1, 2));
    CHECK(q() == Scalar(mpq_class(1, 2)));
    CHECK(qpow(-2) == Scalar(4));
    CHECK(q_binom(4, 2) == Scalar(symbolic.specialize({{"q", mpq_class(1, 2)}})));
    {
      QSpecialization inner(mpq_class(3));
      CHECK(q() == Scalar(3));
    }
    CHECK(q() == Scalar(mpq_class(1, 2)));
  }
  CHECK(q() == Scalar::variable("q"));
  CHECK(q_binom(4, 2) == symbolic);
  CHECK_THROWS_AS(QSpecialization(mpq_class(0)), DivisionByZero);
}
