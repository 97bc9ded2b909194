// Copyright 2026 The anticonc Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Usage: acceptance [--workers N] [--only ID]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "anticonc/anticonc.hpp"
#include "cli.hpp"
#include "oracles.hpp"

using namespace anticonc;

namespace {

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<std::string(bool&)> body;  // sets ok, returns a one-line detail
};

int g_workers = 1;

Weights from_ll(const std::vector<long long>& raw) {
  std::vector<ExactInt> v;
  for (long long x : raw) v.emplace_back(static_cast<long>(x));
  return Weights(std::move(v));
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Every canonical vector of length 1..n_max with entries <= max_weight.
std::vector<Weights> sweep_vectors(int n_max, int max_weight) {
  std::vector<Weights> all;
  for (int n = 1; n <= n_max; ++n) {
    auto v = canonical_vectors(SweepConfig{n, max_weight, 1});
    all.insert(all.end(), v.begin(), v.end());
  }
  return all;
}

std::string c1_oracle_equivalence(bool& ok) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> len(1, 16);
  std::uniform_int_distribution<long> val(-50, 50);
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<ExactInt> w(static_cast<std::size_t>(len(rng)));
    for (auto& x : w) x = val(rng);
    const Weights ws(w);
    const SumProfile a = profile_naive(ws);
    if (!(profile_dp(ws) == a) || !(profile_mitm(ws) == a) || a.total() != pow2(static_cast<unsigned long>(ws.n())))
      ++mismatches;
  }
  ok = mismatches == 0;
  return fmt("1000 vectors, %d mismatches", mismatches);
}

std::string c2_anchor_cases(bool& ok) {
  int bad = 0;
  for (int n = 1; n <= 20; ++n) {
    const ConcentrationReport z = concentration(Weights(std::vector<ExactInt>(static_cast<std::size_t>(n), 0)));
    if (z.rho != 1 || z.range_size != 1) ++bad;
    for (int base : {2, 10}) {
      std::vector<ExactInt> w;
      ExactInt c = 1;
      for (int i = 0; i < n; ++i, c *= base) w.push_back(c);
      const ConcentrationReport s = concentration(Weights(w));
      if (s.rho != ExactRat(ExactInt(1), pow2(static_cast<unsigned long>(n))) ||
          s.range_size != pow2(static_cast<unsigned long>(n)))
        ++bad;
    }
  }
  ok = bad == 0;
  return fmt("n = 1..20, zero / powers of 2 / powers of 10: %d mismatches", bad);
}

std::string c3_lower_bound(bool& ok) {
  std::size_t points = 0, violations = 0;
  for (int n = 1; n <= 8; ++n) {
    const auto pts = sweep(SweepConfig{n, 12, g_workers});
    points += pts.size();
    for (const auto& p : pts)
      if (ExactRat(p.range_size * p.rho) < 1) ++violations;
    try {
      (void)audit(pts, 20);
    } catch (const InvariantViolated&) {
      ++violations;
    }
  }
  ok = violations == 0;
  return fmt("%zu canonical vectors (n <= 8, weights <= 12, %d workers), %zu violations", points, g_workers,
             violations);
}

std::string c4_injectivity(bool& ok) {
  std::size_t checks = 0, violations = 0;
  for (const auto& w : sweep_vectors(6, 6)) {
    const CubeSet A = unique_preimages(w);
    const CubeSet B = fiber(w, concentration(w).tau);
    for (int k = 1; k <= 3; ++k) {
      ++checks;
      if (!check_injectivity(A, B, k).holds) ++violations;
    }
  }
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    const Weights w = from_ll(oracle::random_weights(rng, 8, 8));
    const CubeSet A = unique_preimages(w);
    const CubeSet B = fiber(w, concentration(w).tau);
    for (int k = 1; k <= 3; ++k) {
      ++checks;
      if (!check_injectivity(A, B, k).holds) ++violations;
    }
  }
  ok = violations == 0;
  return fmt("%zu (w, tau, k) instances, %zu violations", checks, violations);
}

std::string c5_density(bool& ok) {
  std::size_t checks = 0, violations = 0;
  for (const auto& w : sweep_vectors(6, 6)) {
    for (const auto& e : profile(w).entries) {
      const CubeSet B = fiber(w, e.sum);
      for (int k = 1; k <= 3; ++k) {
        ++checks;
        if (density_ratio_max(B, k) > density_cap(B, k)) ++violations;
      }
    }
  }
  ok = violations == 0;
  return fmt("%zu (fiber, k) pairs, %zu violations", checks, violations);
}

std::string c6_initial_bound(bool& ok) {
  int records = 0, bad = 0, undecidable = 0;
  for (int k : {51, 64, 100, 128, 256}) {
    const int top = static_cast<int>(std::floor(k / (16 * M_PI)));
    if (max_hypothesis_s(k) != top) ++bad;
    for (int s = 1; s <= top; ++s) {
      ++records;
      const MomentRecord r = check_initial_bound(k, s);
      if (r.verdict == Verdict::Undecidable) ++undecidable;
      if (r.verdict != Verdict::Holds || !r.in_hypothesis) ++bad;
    }
  }
  ok = bad == 0 && undecidable == 0 && records > 0;
  return fmt("%d (k, s) records, %d not Holds, %d Undecidable", records, bad, undecidable);
}

std::string c7_second_moment(bool& ok) {
  int bad = 0;
  for (int k = 3; k <= 256; ++k)
    if (second_moment_identity(k).verdict != Verdict::Holds) ++bad;
  const SecondMomentResult r = second_moment_identity(3);
  const bool spot = r.lhs == make_rat(37, 24) && r.series == r.lhs && r.mid == make_rat(9, 8);
  ok = bad == 0 && spot;
  return fmt("k = 3..256: %d failures; k=3 lhs %s mid %s", bad, to_string(r.lhs).c_str(), to_string(r.mid).c_str());
}

std::string c8_tail(bool& ok) {
  int bad = 0;
  for (int k = 1; k <= 256; ++k)
    if (tail_check(k).verdict != Verdict::Holds) ++bad;
  ok = bad == 0;
  return fmt("k = 1..256: %d failures", bad);
}

std::string c9_sup_ratio(bool& ok) {
  bool exact_ok = true;
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= 6; ++k) exact_ok &= sup_ratio_exact(CubeSet::singleton_zero(n), k) == 1;
  exact_ok &= sup_ratio_exact(CubeSet::from_strings({"1"}), 2) == make_rat(3, 4);
  exact_ok &= sup_ratio_exact(CubeSet::from_strings({"0", "1"}), 2) == make_rat(5, 4);

  std::mt19937_64 rng(9);
  int passing = 0;
  for (int t = 0; t < 20; ++t) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int k = 1 + static_cast<int>(rng() % 6);
    const std::size_t size = 1 + rng() % 8;
    std::vector<CubeSet::Member> members;
    for (std::size_t i = 0; i < size; ++i) members.push_back(rng() & ((CubeSet::Member{1} << n) - 1));
    const CubeSet A(n, members);
    const double exact = sup_ratio_exact(A, k).get_d();
    const SupRatioEstimate e = sup_ratio_mc(A, k, 100000, static_cast<std::uint64_t>(t), g_workers);
    if (std::abs(e.mean - exact) <= 3 * e.std_error + 1e-12) ++passing;
  }
  ok = exact_ok && passing >= 18;
  return fmt("hand values %s; MC within 3 SE on %d/20 instances", exact_ok ? "match" : "MISMATCH", passing);
}

std::string c10_block(bool& ok) {
  int bad = 0;
  double worst = 0;
  for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {6, 2}, {8, 2}, {6, 3}, {9, 3}, {8, 4}}) {
    const BlockTheory t = block_theory(n, k);
    const ConcentrationReport r = concentration(block_construction(n, k).weights);
    if (t.rho != r.rho || t.range != r.range_size) ++bad;
    const double expected = std::log(k + 1.0) / std::log(std::ldexp(1.0, k) / binom(k, k / 2).get_d());
    const double rel = std::abs(r.delta / r.epsilon - expected) / expected;
    worst = std::max(worst, rel);
    if (rel > 1e-12) ++bad;
  }
  ok = bad == 0;
  return fmt("6 (n, k) pairs, %d mismatches, max relative error in delta/eps %.2e", bad, worst);
}

std::string c11_theorem_substitute(bool& ok) {
  const std::vector<std::string> base = {"frontier", "--n", "8", "--max-weight", "12", "--output", "-"};
  std::vector<std::string> runs[3] = {base, base, base};
  runs[0].insert(runs[0].end(), {"--workers", "1"});
  runs[1].insert(runs[1].end(), {"--workers", "1"});
  runs[2].insert(runs[2].end(), {"--workers", "4"});
  CliRun r[3];
  for (int i = 0; i < 3; ++i) r[i] = cli(runs[i]);
  const bool codes = r[0].code == 0 && r[1].code == 0 && r[2].code == 0;
  const bool stable = codes && r[0].err == r[1].err && r[0].err == r[2].err && r[0].out == r[2].out;
  double value = NAN;
  if (codes) value = cli::Json::parse(r[0].err)["outputs"]["max_delta_over_sqrt_eps"].get<double>();
  ok = stable && std::isfinite(value);
  return fmt("max delta/sqrt(eps) = %.12g (n = 8, weights <= 12); summary %s across runs and workers {1, 4}", value,
             stable ? "byte-identical" : "DIFFERS");
}

std::string c12_determinism(bool& ok) {
  int differing = 0, runs = 0;
  for (const auto& cfg : std::vector<std::vector<std::string>>{{"--n", "3", "--max-weight", "4"},
                                                                {"--n", "6", "--max-weight", "6"}}) {
    std::vector<std::string> a = {"frontier"}, b;
    a.insert(a.end(), cfg.begin(), cfg.end());
    b = a;
    a.insert(a.end(), {"--workers", "1"});
    b.insert(b.end(), {"--workers", "4"});
    const CliRun x = cli(a), y = cli(b);
    ++runs;
    if (x.code != 0 || x.out != y.out || x.err != y.err) ++differing;
  }
  const std::vector<std::vector<std::string>> verify = {
      {"verify", "injectivity", "--weights", "1,1,2,3", "--k", "2"},
      {"verify", "density", "--weights", "1,1,1", "--k", "3"},
      {"verify", "partition", "--weights", "1,1,2", "--k", "2"},
      {"verify", "moment", "--k", "256"},
      {"verify", "second-moment", "--k", "3", "--k-max", "40"},
      {"verify", "tail", "--k", "1", "--k-max", "64"},
      {"verify", "max-ratio", "--k", "2", "--k-max", "64"},
      {"verify", "supratio", "--a-set", "101,011,110,000", "--k", "5"},
      {"verify", "supratio", "--a-set", "101,011,110,000", "--k", "5", "--samples", "50000", "--seed", "42"},
      {"verify", "theorem", "--weights", "1,1,3,3"},
  };
  for (const auto& v : verify) {
    const CliRun x = cli(v), y = cli(v);
    ++runs;
    if (x.code != 0 || x.out != y.out || x.out.empty()) ++differing;
  }
  ok = differing == 0;
  return fmt("%d command pairs, %d differ", runs, differing);
}

}  // namespace

int main(int argc, char** argv) {
  g_workers = std::max(1u, std::thread::hardware_concurrency());
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--workers") g_workers = std::max(1, std::atoi(argv[++i]));
    else if (a == "--only") only = std::atoi(argv[++i]);
  }

  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence naive = dp = mitm", 60, c1_oracle_equivalence},
      {2, "anchor cases rho(0^n) = 1, superincreasing rho = 2^-n", 5, c2_anchor_cases},
      {3, "universal lower bound |R| rho >= 1 over sweep", 600, c3_lower_bound},
      {4, "injectivity of A x kB over sweep and random instances", 300, c4_injectivity},
      {5, "density ratio <= (2^n/|B|)^k for all fibers", 300, c5_density},
      {6, "initial moment bound inside hypothesis", 60, c6_initial_bound},
      {7, "second-moment identity k = 3..256", 10, c7_second_moment},
      {8, "binomial tail <= 2 (4/5)^k for k = 1..256", 10, c8_tail},
      {9, "sup-ratio exact values and MC coverage", 120, c9_sup_ratio},
      {10, "block construction theory = measurement", 30, c10_block},
      {11, "sweep max delta/sqrt(eps) finite and stable", 600, c11_theorem_substitute},
      {12, "determinism of frontier and verify output", 120, c12_determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    bool ok = false;
    std::string detail;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      detail = c.body(ok);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    if (!in_time) detail += fmt(" [over time budget %.0f s]", c.budget_s);
    ok = ok && in_time;
    failed += ok ? 0 : 1;
    std::printf("[%s] %2d %s: %s (%.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
