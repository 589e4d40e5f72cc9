// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails. Every criterion runs the same checks as the verify CLI.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "psibundle/bench.hpp"
#include "psibundle/errors.hpp"

using namespace psb;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

SuiteConfig config(const std::string& instance, const std::string& suite) {
  SuiteConfig c;
  c.instance = instance;
  c.suite = suite;
  return c;
}

// Every listed check must be present, pass and have compared something.
void require(Outcome& o, const Report& r, const std::vector<std::string>& ids) {
  for (const auto& id : ids) {
    const CheckRecord* c = r.find(id);
    if (!c) {
      o.ok = false;
      o.detail += " " + id + " missing;";
    } else if (c->status != CheckStatus::pass || c->checked == 0) {
      o.ok = false;
      o.detail += " " + r.instance + " " + id + " " + to_string(c->status) +
                  (c->counterexample ? " (" + *c->counterexample + ")" : "") + ";";
    }
  }
}

Outcome run(SuiteConfig cfg, const std::vector<std::string>& ids) {
  Outcome o;
  require(o, run_suite(cfg), ids);
  return o;
}

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> body;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria;

  criteria.push_back({1, "cylinder entwining on c ≤ 4, |x| ≤ 3, y ≤ 4", 120, [] {
                        auto c = config("cylinder", "entwining");
                        c.x_degree = 3;
                        c.max_degree = 4;
                        c.c_index = 4;
                        return run(c, {"entwining.axioms", "entwining.coaction"});
                      }});
  criteria.push_back({2, "cylinder coalgebra up to c_12, group-like c_0", 10, [] {
                        auto c = config("cylinder", "coalgebra");
                        c.c_index = 4;  // axioms run on indices ≤ 3·c_index
                        return run(c, {"coalgebra.axioms", "coalgebra.psiC", "coalgebra.hopf"});
                      }});
  criteria.push_back({3, "coinvariants: cylinder k[x, x⁻¹], GL_q(2) generated by α, γ", 60, [] {
                        Outcome o = run(config("cylinder", "bundle"), {"bundle.coinvariants"});
                        auto g = config("glq2", "bundle");
                        g.max_degree = 2;
                        require(o, run_suite(g), {"bundle.coinvariants"});
                        return o;
                      }});
  criteria.push_back({4, "χ_M bijective on |x| ≤ 2, y + c ≤ 4", 60, [] {
                        auto c = config("cylinder", "bundle");
                        c.x_degree = 2;
                        c.max_degree = 4;
                        return run(c, {"bundle.chi", "bundle.tau"});
                      }});
  criteria.push_back({5, "Φ and Φ⁻¹ convolution inverse up to n = 10, Φ intertwines", 30, [] {
                        return run(config("cylinder", "gauge"), {"gauge.trivialization", "gauge.phi_inverse", "gauge.theta"});
                      }});
  criteria.push_back({6, "gauge group of symbolic sequences and the gauge condition", 120, [] {
                        return run(config("cylinder", "gauge"), {"gauge.group", "gauge.condition"});
                      }});
  criteria.push_back({7, "trivial-bundle connection forms for symbolic Γ", 300, [] {
                        return run(config("cylinder", "connection"), {"connection.trivial", "connection.gauge_law"});
                      }});
  criteria.push_back({8, "d-covariance for n = 2, 3 and Leibniz", 60, [] {
                        return run(config("cylinder", "connection"),
                                   {"connection.d_covariance", "connection.leibniz", "connection.m_hypothesis",
                                    "connection.horizontal", "connection.projection"});
                      }});
  criteria.push_back({9, "braided line and the braided cylinder", 60, [] {
                        auto c = config("cylinder", "braided");
                        c.x_degree = 2;
                        c.max_degree = 4;
                        return run(c, {"braided.line", "braided.tensor", "braided.identification", "braided.entwining"});
                      }});
  criteria.push_back({10, "GL_q(2) confluence, unique convention and spot values", 600, [] {
                        auto c = config("glq2", "all");
                        c.max_degree = 2;
                        return run(c, {"coalgebra.confluence", "coalgebra.conventions", "coalgebra.axioms",
                                       "entwining.axioms", "entwining.spot_values"});
                      }});
  criteria.push_back({11, "quantum-plane calculi and the quotient connection", 120, [] {
                        return run(config("cylinder", "calculus"), {"calculus.plane1", "calculus.plane2", "calculus.quotient"});
                      }});
  criteria.push_back({12, "dual side: cylinder with κ(x) = 1, self-bundle with κ = ε", 60, [] {
                        Outcome o = run(config("cylinder", "dual"), {"dual.cylinder"});
                        require(o, run_suite(config("selfbundle", "all")),
                                {"dual.right_multiplication", "bundle.coinvariants", "connection.canonical"});
                        return o;
                      }});
  criteria.push_back({13, "every mutation yields a counterexample", 120, [] {
                        Outcome o;
                        for (const auto& m : mutation_names()) {
                          if (m == "none") continue;
                          auto c = config("cylinder", "all");
                          c.mutate = m;
                          const Report r = run_suite(c);
                          bool caught = false;
                          for (const auto& rec : r.checks)
                            if (rec.status == CheckStatus::fail && rec.counterexample) caught = true;
                          if (!caught) {
                            o.ok = false;
                            o.detail += " " + m + " not detected;";
                          }
                        }
                        return o;
                      }});

  bool all = true;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.body();
    } catch (const Error& e) {
      o.ok = false;
      o.detail = std::string(" raised ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) {
      o.ok = false;
      o.detail += " over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s budget;";
    }
    all = all && o.ok;
    std::printf("%s %2d %s (%.2f s)%s\n", o.ok ? "PASS" : "FAIL", c.number, c.title.c_str(), secs, o.detail.c_str());
  }
  return all ? 0 : 1;
}
