// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT

#include "commands.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cache.hpp"
#include "orbital_ssp/analysis.hpp"
#include "orbital_ssp/apps.hpp"
#include "orbital_ssp/core.hpp"
#include "orbital_ssp/hgraph.hpp"
#include "orbital_ssp/ndp.hpp"
#include "orbital_ssp/oracle.hpp"
#include "orbital_ssp/orbital.hpp"
#include "orbital_ssp/pipeline.hpp"
#include "svg.hpp"

namespace orbital_ssp::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Globals {
  bool json = false;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool verbose = false;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance load_instance(const std::string& path) { return parse_instance(read_text(path)); }

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InputError("cannot write '" + path + "'");
  return f;
}

// Output sink: the given stream or a file.
class Sink {
 public:
  Sink(std::ostream& fallback, const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(open_out(path));
      os_ = file_.get();
    } else {
      os_ = &fallback;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

std::string scalar_text(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += scalar_text(v[i]);
    }
    return s + "]";
  }
  return v.dump();
}

// key=value line, or a JSON object in --json mode.
void emit_record(std::ostream& os, const ojson& rec, bool json) {
  if (json) {
    os << rec.dump() << '\n';
    return;
  }
  bool first = true;
  for (auto it = rec.begin(); it != rec.end(); ++it) {
    if (!first) os << ' ';
    first = false;
    os << it.key() << '=' << scalar_text(it.value());
  }
  os << '\n';
}

ojson json_cell(const std::string& s) {
  if (s == "true" || s == "false") return s == "true";
  bool digits = !s.empty() && s.size() <= 18;
  for (std::size_t i = 0; i < s.size() && digits; ++i)
    digits = std::isdigit(static_cast<unsigned char>(s[i])) || (i == 0 && s[i] == '-' && s.size() > 1);
  if (digits) return std::stoll(s);
  return s;
}

// CSV table, or JSON lines with the same keys in --json mode.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void emit(std::ostream& os, bool json) const {
    if (!json) {
      for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
      os << '\n';
    }
    for (const auto& r : rows) {
      if (json) {
        ojson j;
        for (std::size_t i = 0; i < header.size(); ++i) j[header[i]] = json_cell(r[i]);
        os << j.dump() << '\n';
      } else {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << '\n';
      }
    }
  }
};

std::string fmt_double(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << std::fixed << v;
  return ss.str();
}

std::string b01(bool v) { return v ? "1" : "0"; }

std::vector<std::size_t> parse_size_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    BigInt v = parse_dec(tok);
    if (v < 0 || v > BigInt(1000000)) throw InputError("list entry out of range: " + tok);
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

// "a" or "a..b".
std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
  auto p = s.find("..");
  auto one = [](const std::string& t) {
    BigInt v = parse_dec(t);
    if (v < 0 || v > BigInt(1000000)) throw InputError("range bound out of range: " + t);
    return static_cast<std::size_t>(v);
  };
  if (p == std::string::npos) {
    auto v = one(s);
    return {v, v};
  }
  auto lo = one(s.substr(0, p)), hi = one(s.substr(p + 2));
  if (lo > hi) throw InputError("empty range " + s);
  return {lo, hi};
}

CurveKind parse_kind(const std::string& s) {
  if (s == "p") return CurveKind::P;
  if (s == "q") return CurveKind::Q;
  throw InputError("curve kind must be p or q");
}

// Runs body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  unsigned w = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(w);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < w; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
        } catch (...) {
          errors[t] = std::current_exception();
          next = count;
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string instance;
  bool count_only = false;
  std::size_t cap = 1000000;
  std::string metrics_csv;
  std::string dump_final;
  bool q_start = false;
  std::string filter = "exact";
  bool full_build = false;
};

ojson solve_record(const SolveResult& r, bool count_only) {
  ojson j;
  j["N_sols"] = r.n_sols.str();
  if (!count_only) j["indices"] = [&] {
      ojson a = ojson::array();
      for (const auto& x : r.indices) a.push_back(x.str());
      return a;
    }();
  j["truncated"] = r.truncated;
  j["unsound"] = r.unsound;
  j["zero_paths"] = r.zero_paths.str();
  j["rounds"] = r.rounds;
  j["k_peak"] = r.k_peak;
  j["eta_peak"] = r.eta_peak;
  j["v0"] = r.v0.str();
  j["e0"] = r.e0.str();
  j["g0_nodes"] = r.g0_nodes;
  j["g0_arcs"] = r.g0_arcs;
  j["final_nodes"] = r.final_nodes;
  j["final_arcs"] = r.final_arcs;
  j["gm_ok"] = !r.gm_nonempty || r.gm.ok();
  j["cap_bound"] = r.cap_bound;
  j["int"] = r.int_type;
  j["ms"] = r.ms;
  return j;
}

void print_solve(std::ostream& os, const ojson& j, bool json, bool count_only) {
  if (json) {
    os << j.dump() << '\n';
    return;
  }
  os << "N_sols=" << j["N_sols"].get<std::string>();
  if (!count_only) {
    os << " indices=[";
    const auto& a = j["indices"];
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i].get<std::string>();
    os << ']';
  }
  os << '\n';
  ojson rest;
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "N_sols" && it.key() != "indices") rest[it.key()] = it.value();
  emit_record(os, rest, false);
}

int cmd_solve(const Globals& g, const SolveArgs& a, std::ostream& out) {
  if (a.cap == 0) throw InputError("--indices-cap must be positive");
  Instance inst = load_instance(a.instance);
  SolveOptions opt;
  opt.count_only = a.count_only;
  opt.indices_cap = a.cap;
  opt.q_start = a.q_start;
  opt.full_build = a.full_build;
  opt.filter_mode = parse_filter_mode(a.filter);
  spdlog::info("solve n={} m={} T={}", inst.n, inst.m, inst.T.str());
  auto cache = ResultCache::from_env();
  std::string req = "solve/1|" + instance_to_json(inst) + "|" + std::to_string(a.count_only) + "|" +
                    std::to_string(a.cap) + "|" + std::to_string(a.q_start) + "|" + a.filter;
  bool side_outputs = !a.metrics_csv.empty() || !a.dump_final.empty();
  if (!side_outputs) {
    if (auto hit = cache.get(req)) {
      spdlog::info("cache hit {}", cache.path_for(req).string());
      print_solve(out, ojson::parse(*hit), g.json, a.count_only);
      return kExitOk;
    }
  }
  std::unique_ptr<std::ofstream> dump;
  if (!a.dump_final.empty()) {
    dump = std::make_unique<std::ofstream>(open_out(a.dump_final));
    opt.dump_final = dump.get();
  }
  SolveResult r = solve(inst, opt);
  if (r.cap_bound) spdlog::warn("a filter pass stopped at the sweep cap");
  if (r.truncated) spdlog::warn("index list truncated at {}", a.cap);
  if (!a.metrics_csv.empty()) {
    auto f = open_out(a.metrics_csv);
    f << "iter,nodes,arcs,eta_nodes,eta_arcs\n";
    for (const auto& m : r.metrics)
      f << m.iter << ',' << m.nodes << ',' << m.arcs << ',' << fmt_double(m.eta_nodes) << ','
        << fmt_double(m.eta_arcs) << '\n';
  }
  ojson rec = solve_record(r, a.count_only);
  cache.put(req, rec.dump());
  print_solve(out, rec, g.json, a.count_only);
  return r.unsound ? kExitMismatch : kExitOk;
}

// ---------------------------------------------------------------- verify

OracleReport cached_oracle(const ResultCache& cache, const std::string& method, const Instance& inst) {
  std::string req = "oracle/1|" + method + "|" + instance_to_json(inst);
  if (auto hit = cache.get(req)) {
    auto j = ojson::parse(*hit);
    OracleReport r;
    r.method = method;
    r.count = parse_dec(j["count"].get<std::string>());
    for (const auto& s : j["sample"]) r.sample.push_back(parse_dec(s.get<std::string>()));
    r.ms = j["ms"].get<double>();
    return r;
  }
  OracleReport r = run_oracle(method, inst);
  ojson j;
  j["count"] = r.count.str();
  j["sample"] = ojson::array();
  for (const auto& x : r.sample) j["sample"].push_back(x.str());
  j["ms"] = r.ms;
  cache.put(req, j.dump());
  return r;
}

int cmd_verify(const Globals& g, const std::string& path, const std::string& method, bool with_pipeline,
               std::ostream& out) {
  Instance inst = load_instance(path);
  auto cache = ResultCache::from_env();
  std::vector<std::string> methods;
  if (method == "all") methods = {"enum", "mitm", "dp"};
  else if (method == "enum" || method == "mitm" || method == "dp") methods = {method};
  else throw InputError("--method must be enum, mitm, dp or all");
  std::vector<BigInt> counts;
  for (const auto& m : methods) {
    ojson rec;
    rec["method"] = m;
    try {
      auto r = cached_oracle(cache, m, inst);
      rec["count"] = r.count.str();
      rec["ms"] = r.ms;
      ojson s = ojson::array();
      for (const auto& x : r.sample) s.push_back(x.str());
      rec["sample"] = s;
      counts.push_back(r.count);
    } catch (const GuardError& e) {
      if (methods.size() == 1) throw;
      rec["skipped"] = e.what();
    }
    emit_record(out, rec, g.json);
  }
  if (with_pipeline) {
    SolveOptions opt;
    opt.count_only = true;
    auto r = solve(inst, opt);
    ojson rec;
    rec["method"] = "pipeline";
    rec["count"] = r.n_sols.str();
    rec["ms"] = r.ms;
    emit_record(out, rec, g.json);
    counts.push_back(r.n_sols);
  }
  bool agree = std::all_of(counts.begin(), counts.end(), [&](const BigInt& c) { return c == counts.front(); });
  ojson sum;
  sum["agree"] = agree;
  sum["methods_run"] = counts.size();
  emit_record(out, sum, g.json);
  return agree ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string family;
  std::size_t n = 0;
  std::size_t m = 16;
  std::string k1 = "1", k2 = "1", ratio = "2";
  std::string target = "half";
  std::string out;
};

GenParams gen_params(const GenArgs& a, std::uint64_t seed) {
  GenParams p;
  p.family = parse_family(a.family);
  p.n = a.n;
  p.m = a.m;
  p.k1 = parse_dec(a.k1);
  p.k2 = parse_dec(a.k2);
  p.ratio = parse_dec(a.ratio);
  p.seed = seed;
  if (a.target == "half") p.target = TargetMode::Half;
  else if (a.target == "random") p.target = TargetMode::Random;
  else p.T = parse_dec(a.target);
  return p;
}

int cmd_gen(const Globals& g, const GenArgs& a, std::ostream& out) {
  Instance inst = generate(gen_params(a, g.seed));
  Sink s(out, a.out);
  *s << instance_to_json(inst) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  GenArgs gen;
  std::string n_range = "10..16";
  std::string m_range = "8..16";
  std::size_t trials = 100;
  std::string oracle = "auto";
  std::string csv;
  std::string archive;
  std::string filter = "exact";
};

struct BenchRow {
  std::size_t trial = 0, n = 0, m = 0;
  BigInt ihm = 0, oracle = 0;
  bool agree = false;
  double eta_peak = 0;
  std::size_t k_peak = 0;
  double ihm_ms = 0, oracle_ms = 0;
  std::string instance_json;
  std::string oracle_method;
};

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                   static_cast<std::uint32_t>(trial)};
  std::uint32_t v[2];
  ss.generate(v, v + 2);
  return (std::uint64_t{v[0]} << 32) | v[1];
}

int cmd_bench(const Globals& g, const BenchArgs& a, std::ostream& out) {
  auto [nlo, nhi] = parse_range(a.n_range);
  auto [mlo, mhi] = parse_range(a.m_range);
  if (nlo < 1) throw InputError("n must be at least 1");
  auto mode = parse_filter_mode(a.filter);
  auto cache = ResultCache::from_env();
  std::vector<BenchRow> rows(a.trials);
  parallel_for(a.trials, g.threads, [&](std::size_t t) {
    GenArgs ga = a.gen;
    ga.n = nlo + t % (nhi - nlo + 1);
    ga.m = mlo + (t / (nhi - nlo + 1)) % (mhi - mlo + 1);
    Instance inst = generate(gen_params(ga, trial_seed(g.seed, t)));
    BenchRow& r = rows[t];
    r.trial = t;
    r.n = inst.n;
    r.m = inst.m;
    SolveOptions opt;
    opt.count_only = true;
    opt.filter_mode = mode;
    auto sr = solve(inst, opt);
    r.ihm = sr.n_sols;
    r.eta_peak = sr.eta_peak;
    r.k_peak = sr.k_peak;
    r.ihm_ms = sr.ms;
    auto orc = cached_oracle(cache, a.oracle == "auto" ? auto_oracle(inst) : a.oracle, inst);
    r.oracle = orc.count;
    r.oracle_ms = orc.ms;
    r.oracle_method = orc.method;
    r.agree = r.ihm == r.oracle;
    r.instance_json = instance_to_json(inst);
  });
  Table tb;
  tb.header = {"trial", "family", "n", "m", "ihm_count", "oracle_count", "agree",
               "eta_peak", "k_peak", "ihm_ms", "oracle_ms"};
  std::size_t agree = 0;
  for (const auto& r : rows) {
    agree += r.agree;
    tb.rows.push_back({std::to_string(r.trial), a.gen.family, std::to_string(r.n), std::to_string(r.m),
                       r.ihm.str(), r.oracle.str(), b01(r.agree), fmt_double(r.eta_peak),
                       std::to_string(r.k_peak), fmt_double(r.ihm_ms), fmt_double(r.oracle_ms)});
    if (!r.agree) {
      spdlog::error("trial {} disagrees: pipeline {} oracle {}", r.trial, r.ihm.str(), r.oracle.str());
      if (!a.archive.empty()) {
        std::filesystem::create_directories(a.archive);
        auto f = open_out((std::filesystem::path(a.archive) / ("trial_" + std::to_string(r.trial) + ".json")).string());
        f << r.instance_json << '\n';
      }
    }
  }
  Sink s(out, a.csv);
  tb.emit(*s, g.json);
  spdlog::info("agreement {}/{}", agree, rows.size());
  if (!a.csv.empty()) {
    ojson sum;
    sum["trials"] = rows.size();
    sum["agree"] = agree;
    emit_record(out, sum, g.json);
  }
  return agree == rows.size() ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------- analyze

int cmd_analyze_config(const Globals& g, const std::string& path, bool zero_only, std::size_t cap,
                       std::ostream& out) {
  Instance inst = load_instance(path);
  auto cg = build_config_graph(inst, cap, zero_only);
  auto au = product_inequality_audit(cg);
  Table tb;
  tb.header = {"r", "gamma", "mu_r", "Gamma_r", "bound"};
  for (const auto& r : au.rows)
    tb.rows.push_back({std::to_string(r.r), r.gamma.str(), std::to_string(r.mu), r.Gamma.str(), r.bound.str()});
  tb.emit(out, g.json);
  if (cg.truncated) spdlog::warn("configuration graph truncated at {} states; gamma values are lower bounds", cap);
  spdlog::info("mu_0={} gamma0_is_one={} growth_law={} sandwich_upper={} sandwich_lower_next={} "
               "sandwich_lower_prev={} product={} mu_bounded={} max_gamma_bound={}",
               au.mu_0.str(), au.gamma0_is_one, au.growth_law, au.sandwich_upper, au.sandwich_lower_next,
               au.sandwich_lower_prev, au.product, au.mu_bounded, au.max_gamma_bound);
  for (const auto& v : au.violations) spdlog::warn("{}", v);
  return kExitOk;
}

int cmd_analyze_growth(const Globals& g, const GenArgs& ga0, const std::string& nlist, std::size_t trials,
                       const std::string& refs_csv, const std::string& filter, std::ostream& out) {
  auto ns = parse_size_list(nlist);
  if (ns.empty() || trials == 0) throw InputError("growth needs a nonempty --n list and --trials >= 1");
  auto mode = parse_filter_mode(filter);
  std::vector<GrowthSample> samples(ns.size() * trials);
  parallel_for(samples.size(), g.threads, [&](std::size_t i) {
    GenArgs ga = ga0;
    ga.n = ns[i / trials];
    Instance inst = generate(gen_params(ga, trial_seed(g.seed, i)));
    SolveOptions opt;
    opt.count_only = true;
    opt.filter_mode = mode;
    auto r = solve(inst, opt);
    samples[i] = {inst.n, r.k_peak, r.eta_peak};
  });
  auto rows = growth_summary(samples);
  Table tb;
  tb.header = {"n", "kpeak_max", "eta_peak_max"};
  for (const auto& r : rows) tb.rows.push_back({std::to_string(r.n), std::to_string(r.kpeak_max), fmt_double(r.eta_peak_max)});
  tb.emit(out, g.json);
  if (!refs_csv.empty()) {
    Table rt;
    rt.header = {"n", "ref_3logn", "ref_7logn"};
    for (const auto& r : rows)
      rt.rows.push_back({std::to_string(r.n), std::to_string(r.ref_3logn), std::to_string(r.ref_7logn)});
    auto f = open_out(refs_csv);
    rt.emit(f, g.json);
  }
  return kExitOk;
}

int cmd_analyze_vm(const Globals& g, const std::string& path, std::ostream& out) {
  Instance inst = load_instance(path);
  auto st = unique_sum_stats(inst);
  SolveOptions opt;
  opt.count_only = true;
  auto r = solve(inst, opt);
  auto b = vm_bound_check(inst, st.U, r.v0, r.final_nodes);
  ojson rec;
  rec["U"] = b.U.str();
  rec["v0"] = b.v0.str();
  rec["vm"] = b.vm;
  rec["factor"] = b.factor;
  rec["bound"] = b.bound;
  rec["holds"] = b.holds;
  emit_record(out, rec, g.json);
  return kExitOk;
}

int cmd_analyze_sums(const Globals& g, const std::string& path, bool histogram, std::ostream& out) {
  Instance inst = load_instance(path);
  auto st = unique_sum_stats(inst);
  ojson rec;
  rec["U"] = st.U.str();
  rec["N_LO"] = st.N_LO.str();
  rec["method"] = st.method;
  emit_record(out, rec, g.json);
  if (histogram) {
    Table tb;
    tb.header = {"multiplicity", "frequency"};
    for (const auto& [m, f] : st.histogram) tb.rows.push_back({m.str(), f.str()});
    tb.emit(out, g.json);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- apps

int cmd_apps(const Globals& g, const std::string& kind, std::size_t p1, std::size_t p2, std::ostream& out) {
  AppKind k = parse_app(kind);
  auto r = run_app(k, p1, p2);
  ojson rec;
  rec["app"] = app_name(k);
  rec["pipeline_count"] = r.pipeline_count.str();
  rec["dp_count"] = r.dp_count.str();
  rec["agree"] = r.agree;
  emit_record(out, rec, g.json);
  if (k == AppKind::Cubes) {
    for (const auto& x : r.pipeline_indices) {
      ojson d;
      d["index"] = x.str();
      std::string parts;
      for (std::size_t b : cube_bases(x, p2)) parts += (parts.empty() ? "" : "+") + std::to_string(b) + "^3";
      d["parts"] = parts;
      emit_record(out, d, g.json);
    }
  }
  return r.agree ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------- ndp

void emit_chain(std::ostream& os, const Chain& c) {
  for (std::size_t i = 0; i < c.blocks.size(); ++i) {
    const Block& b = c.blocks[i];
    ojson j;
    j["pos"] = i + 1;
    j["order"] = b.order;
    j["reversed"] = b.reversed;
    j["src"] = std::string(1, b.src_kind) + std::to_string(b.src_order) + ":" + std::to_string(b.src_pos);
    j["active"] = i >= c.lo && i <= c.hi;
    os << j.dump() << '\n';
  }
  ojson s;
  s["blocks"] = blocks_string(c);
  s["provenance"] = provenance_string(c);
  s["active_kind"] = std::string(1, kind_char(active_kind(c)));
  s["active"] = {c.lo + 1, c.hi + 1};
  os << s.dump() << '\n';
}

int cmd_ndp_seq(const std::string& kind, std::size_t n, bool check, std::ostream& out) {
  if (n < 1 || n > 62) throw InputError("--n must be in 1..62");
  CurveKind k = parse_kind(kind);
  auto seq = index_sequence(k, n);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    ojson j;
    j["k"] = i;
    j["index"] = seq[i].str();
    out << j.dump() << '\n';
  }
  if (check) {
    bool ok = seq == lb_hb_simulate(n, k == CurveKind::P ? FillRule::LB : FillRule::HB);
    ojson j;
    j["simulation_match"] = ok;
    out << j.dump() << '\n';
    return ok ? kExitOk : kExitMismatch;
  }
  return kExitOk;
}

int cmd_ndp_curve(const std::string& path, const std::string& kind, std::size_t order, std::ostream& out) {
  Instance inst = load_instance(path);
  CurveKind k = parse_kind(kind);
  auto pts = curve_points(inst, k, order);
  auto slots = curve_links(k, order);
  auto idx = index_sequence(k, order);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ojson j;
    j["i"] = i;
    j["x"] = pts[i].x.str();
    j["y"] = pts[i].y.str();
    j["index"] = idx[i].str();
    if (i > 0) {
      j["link"] = slots[i - 1].link;
      j["instance"] = slots[i - 1].instance;
    }
    out << j.dump() << '\n';
  }
  return kExitOk;
}

int cmd_ndp_chain(std::size_t n, const std::string& start, const std::string& taus, std::ostream& out) {
  if (n < 1 || n > 64) throw InputError("--n must be in 1..64");
  Chain c = apply_taus(chain_of(parse_kind(start), n), parse_size_list(taus));
  emit_chain(out, c);
  return kExitOk;
}

int cmd_ndp_family(std::size_t n, std::ostream& out) {
  auto fam = enumerate_ndps(n);
  for (const auto& c : fam) {
    ojson j;
    j["blocks"] = blocks_string(c);
    out << j.dump() << '\n';
  }
  ojson s;
  s["members"] = fam.size();
  if (n <= 20) {
    auto cov = coverage_check(n, fam);
    s["covered"] = cov.covered;
    s["missing"] = cov.missing.size();
  }
  auto st = segment_stats(nullptr, fam);
  s["unique_segments"] = st.unique_segments;
  out << s.dump() << '\n';
  return kExitOk;
}

int cmd_ndp_tv(const std::string& x, std::size_t n, const std::string& start, std::ostream& out) {
  auto tv = transformation_vector(parse_dec(x), n, parse_kind(start));
  ojson j;
  j["index"] = tv.index.str();
  j["taus"] = tv.taus;
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_ndp_segments(const std::string& path, std::ostream& out) {
  Instance inst = load_instance(path);
  auto fam = enumerate_ndps(inst.n);
  auto st = segment_stats(&inst, fam, &inst.T);
  for (const auto& c : st.crossings) {
    ojson j;
    j["x1"] = c.x1;
    j["x2"] = c.x2;
    j["multiplicity"] = c.multiplicity;
    out << j.dump() << '\n';
  }
  ojson s;
  s["crossing_segments"] = st.crossings.size();
  s["multiplicity_sum"] = st.multiplicity_sum;
  s["unique_segments"] = st.unique_segments;
  out << s.dump() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- hgraph

int cmd_hgraph_beta(const Globals& g, std::size_t n, std::ostream& out) {
  if (n < 1 || n > 500) throw InputError("--n must be in 1..500");
  Table tb;
  tb.header = {"r", "beta", "hockey_stick"};
  for (std::size_t r = 1; r <= n; ++r)
    tb.rows.push_back({std::to_string(r), beta(r, n).str(), b01(hockey_stick_holds(n, r))});
  tb.emit(out, g.json);
  return kExitOk;
}

int cmd_hgraph_wormhole(const Globals& g, const std::string& path, const std::string& ks, std::ostream& out) {
  Instance inst = load_instance(path);
  auto k = parse_size_list(ks);
  auto w = wormhole(inst, k);
  Table tb;
  tb.header = {"i", "k", "lower", "upper", "valid"};
  for (std::size_t i = 0; i < k.size(); ++i)
    tb.rows.push_back({std::to_string(i + 1), std::to_string(k[i]), w.lower[i].str(), w.upper[i].str(),
                       b01(w.lower[i] <= inst.T && inst.T <= w.upper[i])});
  tb.emit(out, g.json);
  return kExitOk;
}

int cmd_hgraph_count(const Globals& g, const std::string& path, std::ostream& out) {
  Instance inst = load_instance(path);
  Table tb;
  tb.header = {"r", "total", "valid", "distinct"};
  for (std::size_t r = 1; r <= inst.n; ++r) {
    auto c = count_valid_wormholes(inst, inst.T, r);
    tb.rows.push_back({std::to_string(r), c.total.str(), c.valid.str(), c.distinct.str()});
  }
  tb.emit(out, g.json);
  return kExitOk;
}

// ---------------------------------------------------------------- graph

int cmd_graph_dump(const std::string& path, bool full, std::ostream& out) {
  Instance inst = load_instance(path);
  if (inst.T == 0 || inst.T > inst.total()) throw InputError("target must lie in [1, A_n] to build the graph");
  dispatch_int(engine_bound(inst), [&](auto tag) {
    using Int = decltype(tag);
    auto geom = make_geometry<Int>(inst);
    auto g0 = build_g0(geom, from_big<Int>(inst.T), full ? BuildMode::Full : BuildMode::Reachable);
    dump_graph(out, geom, g0);
  });
  return kExitOk;
}

int cmd_graph_stats(const Globals& g, const std::string& path, std::ostream& out) {
  Instance inst = load_instance(path);
  if (inst.T == 0 || inst.T > inst.total()) throw InputError("target must lie in [1, A_n] to build the graph");
  ojson rec;
  dispatch_int(engine_bound(inst), [&](auto tag) {
    using Int = decltype(tag);
    auto geom = make_geometry<Int>(inst);
    G0Stats st;
    auto g0 = build_g0(geom, from_big<Int>(inst.T), BuildMode::Reachable, &st);
    rec["n"] = inst.n;
    rec["m"] = inst.m;
    rec["v0"] = st.full_nodes.str();
    rec["v0_formula"] = (binomial(inst.n + 3, 4) + 1).str();
    rec["e0"] = st.full_arcs.str();
    rec["roots"] = st.roots;
    rec["reachable_nodes"] = g0.node_count();
    rec["reachable_arcs"] = g0.arc_count();
    rec["dissociated"] = is_dissociated(inst);
  });
  emit_record(out, rec, g.json);
  return kExitOk;
}

int cmd_graph_pairs(const Globals& g, const std::string& path, std::ostream& out) {
  Instance inst = load_instance(path);
  Table tb;
  tb.header = {"k", "J", "dissociated_law", "cp_law"};
  for (std::size_t k = 1; k <= std::min<std::size_t>(inst.n, 64); ++k)
    tb.rows.push_back({std::to_string(k), std::to_string(pair_interactions(inst, k).count),
                       k >= 3 ? std::to_string(j_dissociated(k)) : "", std::to_string(j_constant(k))});
  tb.emit(out, g.json);
  return kExitOk;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out) {
  CLI::App app{"Orbital-line subset-sum solver, oracles and diagnostics"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Structured JSON output")->trigger_on_parse();
  app.add_option("--seed", g.seed, "Base seed for generators and benches");
  app.add_option("--threads", g.threads, "Worker threads for bench and growth runs")->check(CLI::Range(1u, 1024u));
  app.add_flag("-v,--verbose", g.verbose, "Log progress to stderr");
  app.fallthrough();

  std::function<int()> action;

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Count and list solutions with the geometric pipeline");
  solve->add_option("--instance", sa.instance, "Instance file (JSON or plain text, '-' for stdin)")->required();
  solve->add_flag("--count-only", sa.count_only, "Count solutions without listing indices");
  solve->add_option("--indices-cap", sa.cap, "Maximum number of indices to list");
  solve->add_option("--metrics-csv", sa.metrics_csv, "Write per-iteration graph sizes");
  solve->add_option("--dump-final", sa.dump_final, "Write the final graph as JSON lines");
  solve->add_flag("--q-start", sa.q_start, "Solve the reflected target and complement the indices");
  solve->add_option("--filter", sa.filter, "Filter bounds: exact or clipped")->check(CLI::IsMember({"exact", "clipped"}));
  solve->add_flag("--full-build", sa.full_build, "Materialize the whole initial graph");
  solve->callback([&] { action = [&] { return cmd_solve(g, sa, out); }; });

  std::string v_inst, v_method = "all";
  bool v_pipe = false;
  auto* verify = app.add_subcommand("verify", "Count solutions with the independent oracles");
  verify->add_option("--instance", v_inst, "Instance file")->required();
  verify->add_option("--method", v_method, "enum, mitm, dp or all")->check(CLI::IsMember({"enum", "mitm", "dp", "all"}));
  verify->add_flag("--pipeline", v_pipe, "Also run the geometric pipeline");
  verify->callback([&] { action = [&] { return cmd_verify(g, v_inst, v_method, v_pipe, out); }; });

  GenArgs ga;
  auto add_gen_opts = [&](CLI::App* c, GenArgs& a, bool with_n) {
    if (with_n) {
      c->add_option("--n", a.n, "Number of values")->required();
      c->add_option("--m", a.m, "Bit width of random values");
    }
    c->add_option("--k1", a.k1, "Constant, first term");
    c->add_option("--k2", a.k2, "Common difference");
    c->add_option("--ratio", a.ratio, "Geometric ratio");
    c->add_option("--target", a.target, "half, random or a value");
  };
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("family", ga.family, "cp, ap, gp, random or dissociated")->required();
  add_gen_opts(gen, ga, true);
  gen->add_option("--out", ga.out, "Output file (stdout by default)");
  gen->callback([&] { action = [&] { return cmd_gen(g, ga, out); }; });

  BenchArgs ba;
  ba.gen.family = "random";
  ba.gen.target = "random";
  auto* bench = app.add_subcommand("bench", "Differential runs of the pipeline against an oracle");
  bench->add_option("--family", ba.gen.family, "Instance family");
  add_gen_opts(bench, ba.gen, false);
  bench->add_option("--n", ba.n_range, "n or lo..hi");
  bench->add_option("--m", ba.m_range, "m or lo..hi");
  bench->add_option("--trials", ba.trials, "Number of trials");
  bench->add_option("--oracle", ba.oracle, "auto, enum, mitm or dp")->check(CLI::IsMember({"auto", "enum", "mitm", "dp"}));
  bench->add_option("--csv", ba.csv, "CSV output file (stdout by default)");
  bench->add_option("--archive", ba.archive, "Directory for instances that disagree");
  bench->add_option("--filter", ba.filter, "exact or clipped")->check(CLI::IsMember({"exact", "clipped"}));
  bench->callback([&] { action = [&] { return cmd_bench(g, ba, out); }; });

  auto* analyze = app.add_subcommand("analyze", "Configuration graphs, growth and size bounds");
  analyze->require_subcommand(1);
  std::string an_inst;
  bool an_zero = false, an_hist = false;
  std::size_t an_cap = kConfigStateCap;
  auto* an_cfg = analyze->add_subcommand("config", "gamma, mu and product-inequality table");
  an_cfg->add_option("--instance", an_inst, "Instance file")->required();
  an_cfg->add_flag("--zero-only", an_zero, "Restrict to zero paths");
  an_cfg->add_option("--state-cap", an_cap, "Maximum (node, y) states");
  an_cfg->callback([&] { action = [&] { return cmd_analyze_config(g, an_inst, an_zero, an_cap, out); }; });
  GenArgs gg;
  gg.family = "random";
  gg.target = "random";
  std::string g_ns = "10,20", g_refs, g_filter = "exact";
  std::size_t g_trials = 10;
  auto* an_gr = analyze->add_subcommand("growth", "Per-n peak growth over generated trials");
  an_gr->add_option("--family", gg.family, "Instance family");
  add_gen_opts(an_gr, gg, false);
  an_gr->add_option("--n", g_ns, "Comma-separated n values");
  an_gr->add_option("--m", gg.m, "Bit width of random values");
  an_gr->add_option("--trials", g_trials, "Trials per n");
  an_gr->add_option("--refs-csv", g_refs, "Write the 3 log n and 7 log n reference curves");
  an_gr->add_option("--filter", g_filter, "exact or clipped")->check(CLI::IsMember({"exact", "clipped"}));
  an_gr->callback([&] { action = [&] { return cmd_analyze_growth(g, gg, g_ns, g_trials, g_refs, g_filter, out); }; });
  auto* an_vm = analyze->add_subcommand("vm", "Final-graph size against the unique-sum bound");
  an_vm->add_option("--instance", an_inst, "Instance file")->required();
  an_vm->callback([&] { action = [&] { return cmd_analyze_vm(g, an_inst, out); }; });
  auto* an_sums = analyze->add_subcommand("sums", "Distinct subset sums and multiplicities");
  an_sums->add_option("--instance", an_inst, "Instance file")->required();
  an_sums->add_flag("--histogram", an_hist, "Print the multiplicity histogram");
  an_sums->callback([&] { action = [&] { return cmd_analyze_sums(g, an_inst, an_hist, out); }; });

  std::string app_kind;
  std::size_t app_p1 = 0, app_p2 = 0;
  auto* apps = app.add_subcommand("apps", "binomial N K | partitions N K | cubes N K");
  apps->add_option("kind", app_kind, "binomial, partitions or cubes")->required()->check(CLI::IsMember({"binomial", "partitions", "cubes"}));
  apps->add_option("p1", app_p1, "N")->required();
  apps->add_option("p2", app_p2, "K")->required();
  apps->callback([&] { action = [&] { return cmd_apps(g, app_kind, app_p1, app_p2, out); }; });

  auto* ndp = app.add_subcommand("ndp", "Index sequences, curves, chains and NDP families");
  std::string ndp_svg, ndp_inst, ndp_kind = "p", ndp_start = "p", ndp_taus, ndp_x;
  std::size_t ndp_n = 0, ndp_order = 0;
  bool ndp_check = false;
  ndp->add_option("--svg", ndp_svg, "Write an SVG of the curves with the orbital line");
  ndp->add_option("--instance", ndp_inst, "Instance file for --svg");
  ndp->require_subcommand(0, 1);
  auto* n_seq = ndp->add_subcommand("seq", "Index sequence of p_n or q_n");
  n_seq->add_option("--kind", ndp_kind, "p or q");
  n_seq->add_option("--n", ndp_n, "Order")->required();
  n_seq->add_flag("--check", ndp_check, "Compare with the box-filling simulation");
  n_seq->callback([&] { action = [&] { return cmd_ndp_seq(ndp_kind, ndp_n, ndp_check, out); }; });
  auto* n_curve = ndp->add_subcommand("curve", "Vertices of a curve of an instance");
  n_curve->add_option("--instance", ndp_inst, "Instance file")->required();
  n_curve->add_option("--kind", ndp_kind, "p or q");
  n_curve->add_option("--order", ndp_order, "Curve order")->required();
  n_curve->callback([&] { action = [&] { return cmd_ndp_curve(ndp_inst, ndp_kind, ndp_order, out); }; });
  auto* n_chain = ndp->add_subcommand("chain", "Block run after a sequence of tau transforms");
  n_chain->add_option("--n", ndp_n, "Order")->required();
  n_chain->add_option("--start", ndp_start, "p or q");
  n_chain->add_option("--taus", ndp_taus, "Comma-separated characters");
  n_chain->callback([&] { action = [&] { return cmd_ndp_chain(ndp_n, ndp_start, ndp_taus, out); }; });
  auto* n_fam = ndp->add_subcommand("family", "NDP family with coverage summary");
  n_fam->add_option("--n", ndp_n, "Order")->required();
  n_fam->callback([&] { action = [&] { return cmd_ndp_family(ndp_n, out); }; });
  auto* n_tv = ndp->add_subcommand("tv", "Transformation vector of an index");
  n_tv->add_option("--x", ndp_x, "Index")->required();
  n_tv->add_option("--n", ndp_n, "Order")->required();
  n_tv->add_option("--start", ndp_start, "p or q");
  n_tv->callback([&] { action = [&] { return cmd_ndp_tv(ndp_x, ndp_n, ndp_start, out); }; });
  auto* n_seg = ndp->add_subcommand("segments", "Segments of the NDP family crossing the orbital line");
  n_seg->add_option("--instance", ndp_inst, "Instance file")->required();
  n_seg->callback([&] { action = [&] { return cmd_ndp_segments(ndp_inst, out); }; });
  ndp->callback([&] {
    if (!ndp_svg.empty()) {
      if (ndp_inst.empty()) throw InputError("--svg needs --instance");
      auto prev = action;
      action = [&, prev] {
        auto f = open_out(ndp_svg);
        render_svg(f, load_instance(ndp_inst));
        return prev ? prev() : kExitOk;
      };
    } else if (!action) {
      throw InputError("ndp needs a subcommand or --svg");
    }
  });

  auto* hg = app.add_subcommand("hgraph", "Hypergraph counts and wormholes");
  hg->require_subcommand(1);
  std::string hg_inst, hg_path;
  std::size_t hg_n = 0;
  auto* h_beta = hg->add_subcommand("beta", "Path counts per length");
  h_beta->add_option("--n", hg_n, "Order")->required();
  h_beta->callback([&] { action = [&] { return cmd_hgraph_beta(g, hg_n, out); }; });
  auto* h_wh = hg->add_subcommand("wormhole", "Wormhole intervals of a path");
  h_wh->add_option("--instance", hg_inst, "Instance file")->required();
  h_wh->add_option("--path", hg_path, "Strictly decreasing characters, comma-separated")->required();
  h_wh->callback([&] { action = [&] { return cmd_hgraph_wormhole(g, hg_inst, hg_path, out); }; });
  auto* h_cnt = hg->add_subcommand("count", "Valid wormholes per path length");
  h_cnt->add_option("--instance", hg_inst, "Instance file")->required();
  h_cnt->callback([&] { action = [&] { return cmd_hgraph_count(g, hg_inst, out); }; });

  auto* gr = app.add_subcommand("graph", "Initial orbital graph");
  gr->require_subcommand(1);
  std::string gr_inst;
  bool gr_full = false;
  auto* g_dump = gr->add_subcommand("dump", "Nodes and arcs as JSON lines");
  g_dump->add_option("--instance", gr_inst, "Instance file")->required();
  g_dump->add_flag("--full", gr_full, "Include nodes unreachable from the root");
  g_dump->callback([&] { action = [&] { return cmd_graph_dump(gr_inst, gr_full, out); }; });
  auto* g_stats = gr->add_subcommand("stats", "Node and arc counts");
  g_stats->add_option("--instance", gr_inst, "Instance file")->required();
  g_stats->callback([&] { action = [&] { return cmd_graph_stats(g, gr_inst, out); }; });
  auto* g_pairs = gr->add_subcommand("pairs", "Interacting p/q edge pairs per order");
  g_pairs->add_option("--instance", gr_inst, "Instance file")->required();
  g_pairs->callback([&] { action = [&] { return cmd_graph_pairs(g, gr_inst, out); }; });

  auto logger = spdlog::stderr_color_mt("orbital-ssp");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  try {
    app.parse(argc, argv);
    spdlog::set_level(g.verbose ? spdlog::level::info : spdlog::level::warn);
    int rc = action ? action() : kExitOk;
    spdlog::drop_all();
    return rc;
  } catch (const CLI::CallForHelp& e) {
    spdlog::drop_all();
    return app.exit(e, out, std::cerr);
  } catch (const CLI::CallForAllHelp& e) {
    spdlog::drop_all();
    return app.exit(e, out, std::cerr);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, std::cerr);
    spdlog::drop_all();
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    spdlog::drop_all();
    return kExitInput;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    spdlog::drop_all();
    return kExitGuard;
  }
}

}  // namespace orbital_ssp::cli
