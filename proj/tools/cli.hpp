// Copyright 2026 The anticonc Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Kept in a header so tests can drive run() in-process.

#pragma once

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "anticonc/anticonc.hpp"

namespace anticonc::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Text };

struct RunConfig {
  std::uint64_t seed = 0;
  long precision_cap_bits = 4096;
  Limits limits;
  Format format = Format::Json;
  bool timing = false;

  PrecisionPolicy precision() const { return {128, static_cast<mpfr_prec_t>(precision_cap_bits)}; }
};

/// Exit codes: 0 success, 1 asserted-invariant or cap failure, 2 usage error.
enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

class UsageError : public Error {
 public:
  using Error::Error;
};

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw UsageError("unknown format '" + s + "' (expected json, csv or text)");
}

inline long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad integer for " + key + ": '" + value + "'");
  }
}

/// Applies one key=value setting shared by the config file and the environment.
inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  auto positive = [&](long v) {
    if (v <= 0) throw UsageError(key + " must be positive");
    return v;
  };
  if (key == "seed")
    cfg.seed = static_cast<std::uint64_t>(parse_long(key, value));
  else if (key == "precision_cap_bits" || key == "precision_bits")
    cfg.precision_cap_bits = positive(parse_long(key, value));
  else if (key == "naive_cap")
    cfg.limits.naive_cap = static_cast<int>(positive(parse_long(key, value)));
  else if (key == "dp_cap")
    cfg.limits.dp_cap = positive(parse_long(key, value));
  else if (key == "mitm_cap")
    cfg.limits.mitm_cap = static_cast<int>(positive(parse_long(key, value)));
  else if (key == "enum_budget")
    cfg.limits.enum_budget = positive(parse_long(key, value));
  else if (key == "sumset_budget")
    cfg.limits.sumset_budget = positive(parse_long(key, value));
  else if (key == "output_format" || key == "format")
    cfg.format = parse_format(value);
  else
    throw UsageError("unknown config key '" + key + "'");
}

/// Simple "key = value" file; '#' starts a comment.
inline void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

struct ParsedWeights {
  Weights weights{0};
  ExactInt scale = 1;  // common denominator that was cleared
};

/// Comma-separated integers or rationals; denominators are cleared by their LCM.
inline ParsedWeights parse_weights(const std::string& text) {
  std::vector<ExactRat> values;
  for (const auto& tok : split(text, ',')) values.push_back(parse_rational(tok));
  ExactInt l = 1;
  for (const auto& q : values) l = lcm(l, ExactInt(q.get_den()));
  std::vector<ExactInt> ints;
  for (const auto& q : values) ints.push_back(ExactInt(q.get_num()) * (l / ExactInt(q.get_den())));
  return ParsedWeights{Weights(std::move(ints)), l};
}

/// Cube vectors as 0/1 strings separated by ',' or ';'.
inline CubeSet parse_cube_set(const std::string& text) {
  std::string s = text;
  for (auto& c : s)
    if (c == ';') c = ',';
  return CubeSet::from_strings(split(s, ','));
}

inline Json rat_json(const ExactRat& q) { return to_string(q); }

inline std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string vector_string(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += std::to_string(x);
  return s;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  /// Records streamed through emit() are written as JSON lines (or CSV rows)
  /// when more than one is expected.
  void set_stream(bool stream) { stream_ = stream; }

  void emit(const Json& record) {
    switch (cfg_.format) {
      case Format::Json:
        out_ << (stream_ ? record.dump() : record.dump(2)) << "\n";
        break;
      case Format::Text:
        if (count_ > 0) out_ << "\n";
        write_text(record, "");
        break;
      case Format::Csv: {
        std::vector<std::pair<std::string, std::string>> flat;
        flatten(record, "", flat);
        if (count_ == 0) {
          for (std::size_t i = 0; i < flat.size(); ++i) out_ << (i ? "," : "") << flat[i].first;
          out_ << "\n";
        }
        for (std::size_t i = 0; i < flat.size(); ++i) out_ << (i ? "," : "") << csv_escape(flat[i].second);
        out_ << "\n";
        break;
      }
    }
    ++count_;
  }

 private:
  static std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

  static void flatten(const Json& j, const std::string& prefix,
                      std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
      for (auto it = j.begin(); it != j.end(); ++it)
        flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
      std::string s;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) s += ";";
        s += j[i].is_array() || j[i].is_object() ? j[i].dump() : scalar(j[i]);
      }
      out.emplace_back(prefix, s);
    } else {
      out.emplace_back(prefix, scalar(j));
    }
  }

  static std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }

  void write_text(const Json& record, const std::string& prefix) {
    std::vector<std::pair<std::string, std::string>> flat;
    flatten(record, prefix, flat);
    for (const auto& [k, v] : flat) out_ << k << ": " << v << "\n";
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  bool stream_ = false;
  std::size_t count_ = 0;
};

class Recorder {
 public:
  Recorder(const RunConfig& cfg, std::string command, Json parameters)
      : cfg_(cfg), command_(std::move(command)), parameters_(std::move(parameters)),
        start_(std::chrono::steady_clock::now()) {}

  Json record(Json outputs) const {
    Json r;
    r["command"] = command_;
    r["parameters"] = parameters_;
    r["outputs"] = std::move(outputs);
    r["tool_version"] = kVersion;
    r["seed"] = cfg_.seed;
    if (cfg_.timing) {
      const auto elapsed = std::chrono::steady_clock::now() - start_;
      r["metadata"] = {{"elapsed_ms", std::chrono::duration<double, std::milli>(elapsed).count()}};
    }
    return r;
  }

 private:
  const RunConfig& cfg_;
  std::string command_;
  Json parameters_;
  std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct ProfileArgs {
  std::string weights;
  std::string method = "auto";
  std::optional<std::string> levy_radius;
  bool show_profile = true;
};

inline int cmd_profile(const RunConfig& cfg, const ProfileArgs& args, Emitter& emit) {
  const ParsedWeights pw = parse_weights(args.weights);
  Json params = {{"weights", args.weights}, {"method", args.method}};
  if (args.levy_radius) params["levy_radius"] = *args.levy_radius;
  Recorder rec(cfg, "profile", params);

  SumProfile p;
  if (args.method == "auto")
    p = profile(pw.weights, cfg.limits);
  else if (args.method == "naive")
    p = profile_naive(pw.weights, cfg.limits);
  else if (args.method == "dp")
    p = profile_dp(pw.weights, cfg.limits);
  else if (args.method == "mitm")
    p = profile_mitm(pw.weights, cfg.limits);
  else
    throw UsageError("unknown method '" + args.method + "'");
  const ConcentrationReport rep = concentration(p);

  Json out;
  out["n"] = pw.weights.n();
  out["weights"] = pw.weights.str();
  out["scale"] = pw.scale.get_str();
  out["rho"] = rat_json(rep.rho);
  out["rho_float"] = rep.rho.get_d();
  out["tau"] = rep.tau.get_str();
  out["range"] = rep.range_size.get_ui();
  out["epsilon"] = rep.epsilon;
  out["delta"] = rep.delta;
  if (args.levy_radius) {
    // The radius is in input units; sums are in units scaled by `scale`.
    const ExactRat r = parse_rational(*args.levy_radius) * ExactRat(pw.scale);
    const LevyResult lv = levy(p, r);
    out["levy"] = {{"radius", rat_json(r)}, {"tau", rat_json(lv.tau)}, {"prob", rat_json(lv.prob)}};
  }
  if (args.show_profile) {
    Json rows = Json::array();
    for (const auto& e : p.entries) rows.push_back(Json::array({e.sum.get_str(), e.count.get_str()}));
    out["profile"] = std::move(rows);
  }
  emit.emit(rec.record(std::move(out)));
  return kOk;
}

struct VerifyArgs {
  std::string lemma;
  std::optional<std::string> weights;
  std::optional<std::string> a_set;
  std::optional<std::string> b_set;
  std::optional<int> k;
  std::optional<int> k_max;
  std::optional<int> s;
  std::string C = "20";
  std::int64_t samples = 0;
  int workers = 1;
};

namespace detail {

struct SetsForWeights {
  CubeSet A;
  CubeSet B;
  ExactInt tau;
};

inline SetsForWeights sets_from_args(const RunConfig& cfg, const VerifyArgs& a) {
  SetsForWeights s;
  if (a.weights) {
    const Weights w = parse_weights(*a.weights).weights;
    const ConcentrationReport rep = concentration(w, cfg.limits);
    s.tau = rep.tau;
    s.A = unique_preimages(w, cfg.limits);
    s.B = fiber(w, rep.tau, cfg.limits);
  }
  if (a.a_set) s.A = parse_cube_set(*a.a_set);
  if (a.b_set) s.B = parse_cube_set(*a.b_set);
  return s;
}

inline int require_k(const VerifyArgs& a) {
  if (!a.k) throw UsageError("verify " + a.lemma + " needs --k");
  return *a.k;
}

inline Json params_of(const VerifyArgs& a) {
  Json p;
  p["lemma"] = a.lemma;
  if (a.weights) p["weights"] = *a.weights;
  if (a.a_set) p["a_set"] = *a.a_set;
  if (a.b_set) p["b_set"] = *a.b_set;
  if (a.k) p["k"] = *a.k;
  if (a.k_max) p["k_max"] = *a.k_max;
  if (a.s) p["s"] = *a.s;
  if (a.lemma == "supratio" || a.lemma == "theorem") p["C"] = a.C;
  if (a.lemma == "supratio") p["samples"] = a.samples;
  return p;
}

inline Json cube_json(const CubeSet& c) {
  Json arr = Json::array();
  for (const auto& s : c.to_strings()) arr.push_back(s);
  return arr;
}

}  // namespace detail

inline int cmd_verify(const RunConfig& cfg, const VerifyArgs& a, Emitter& emit) {
  const Json params = detail::params_of(a);
  Recorder rec(cfg, "verify", params);
  const auto& lemma = a.lemma;
  int code = kOk;
  auto fail_if = [&](bool failed) {
    if (failed) code = kFailure;
  };

  auto k_range = [&] {
    const int lo = detail::require_k(a);
    const int hi = a.k_max.value_or(lo);
    if (hi < lo) throw UsageError("--k-max must be >= --k");
    emit.set_stream(hi > lo);
    std::vector<int> ks;
    for (int k = lo; k <= hi; ++k) ks.push_back(k);
    return ks;
  };

  if (lemma == "injectivity" || lemma == "density" || lemma == "partition") {
    if (!a.weights && !a.b_set) throw UsageError("verify " + lemma + " needs --weights or --b-set");
    const auto sets = detail::sets_from_args(cfg, a);
    const int k = detail::require_k(a);
    Json out;
    if (a.weights) out["tau"] = sets.tau.get_str();
    out["k"] = k;
    out["b_size"] = sets.B.size();
    if (lemma == "injectivity") {
      if (!a.weights && !a.a_set) throw UsageError("verify injectivity needs --weights or --a-set");
      const InjectivityResult r = check_injectivity(sets.A, sets.B, k, cfg.limits);
      out["a_size"] = sets.A.size();
      out["product_size"] = r.product_size;
      out["sumset_size"] = r.sumset_size;
      out["verdict"] = r.holds ? "Holds" : "Violated";
      if (r.witness) {
        out["witness"] = {{"a1", CubeSet::format_member(r.witness->a1, sets.A.n())},
                          {"c1", vector_string(r.witness->c1)},
                          {"a2", CubeSet::format_member(r.witness->a2, sets.A.n())},
                          {"c2", vector_string(r.witness->c2)}};
      }
      // A collision is only an invariant failure when A and B come from weights.
      fail_if(!r.holds && a.weights && !a.a_set && !a.b_set);
    } else if (lemma == "density") {
      const ExactRat value = density_ratio_max(sets.B, k, cfg.limits);
      const ExactRat cap = density_cap(sets.B, k);
      out["density_ratio_max"] = rat_json(value);
      out["cap"] = rat_json(cap);
      out["verdict"] = value <= cap ? "Holds" : "Fails";
      fail_if(value > cap);
    } else {
      if (!a.weights && !a.a_set) throw UsageError("verify partition needs --weights or --a-set");
      const ExactRat total = partition_total(sets.A, sets.B, k, cfg.limits);
      out["a_size"] = sets.A.size();
      out["total"] = rat_json(total);
      out["verdict"] = total == 1 ? "Holds" : "Fails";
      fail_if(total != 1);
    }
    emit.emit(rec.record(std::move(out)));
    return code;
  }

  if (lemma == "moment") {
    const int k = detail::require_k(a);
    std::vector<int> ss;
    if (a.s) {
      ss.push_back(*a.s);
    } else {
      const int top = std::max(1, max_hypothesis_s(k, cfg.precision()));
      for (int s = 1; s <= top; ++s) ss.push_back(s);
    }
    emit.set_stream(ss.size() > 1);
    for (int s : ss) {
      const MomentRecord m = check_initial_bound(k, s, cfg.precision());
      Json out;
      out["k"] = k;
      out["s"] = s;
      out["lhs"] = rat_json(m.lhs);
      out["lhs_float"] = m.lhs.get_d();
      out["rhs"] = m.rhs.str();
      out["rhs_float"] = m.rhs.approx();
      out["in_hypothesis"] = m.in_hypothesis;
      out["verdict"] = to_string(m.verdict);
      fail_if(m.verdict == Verdict::Undecidable || (m.verdict == Verdict::Fails && m.in_hypothesis));
      Json params_s = params;
      params_s["s"] = s;
      emit.emit(Recorder(cfg, "verify", params_s).record(std::move(out)));
    }
    return code;
  }

  if (lemma == "second-moment" || lemma == "tail" || lemma == "max-ratio") {
    for (int k : k_range()) {
      Json out;
      out["k"] = k;
      Verdict v;
      if (lemma == "second-moment") {
        const SecondMomentResult r = second_moment_identity(k);
        out["lhs"] = rat_json(r.lhs);
        out["series"] = rat_json(r.series);
        out["mid"] = rat_json(r.mid);
        out["identity"] = r.identity;
        out["series_ge_mid"] = r.above_mid;
        out["mid_ge_one"] = r.mid_at_least_one;
        v = r.verdict;
      } else if (lemma == "tail") {
        const TailResult r = tail_check(k, cfg.precision());
        out["tail"] = rat_json(r.tail);
        out["tail_float"] = r.tail.get_d();
        out["bound"] = rat_json(r.bound);
        out["bound_float"] = r.bound.get_d();
        v = r.verdict;
      } else {
        const MaxRatioResult r = max_ratio_bound(k);
        out["max_ratio"] = rat_json(r.max_ratio);
        v = r.verdict;
      }
      out["verdict"] = to_string(v);
      fail_if(v != Verdict::Holds);
      Json params_k = params;
      params_k["k"] = k;
      params_k.erase("k_max");
      emit.emit(Recorder(cfg, "verify", params_k).record(std::move(out)));
    }
    return code;
  }

  if (lemma == "supratio") {
    if (!a.weights && !a.a_set) throw UsageError("verify supratio needs --weights or --a-set");
    const auto sets = detail::sets_from_args(cfg, a);
    const int k = detail::require_k(a);
    const ExactRat C = parse_rational(a.C);
    Json out;
    out["n"] = sets.A.n();
    out["k"] = k;
    out["a_size"] = sets.A.size();
    out["a_set_id"] = cube_set_id(sets.A);
    if (sets.A.empty()) throw UsageError("verify supratio needs a nonempty A");
    const SupRatioBoundReport r =
        check_sup_ratio_bound(sets.A, k, C, cfg.limits, a.samples, cfg.seed, cfg.precision());
    if (r.exact) {
      out["exact"] = rat_json(*r.exact);
      out["exact_float"] = r.exact->get_d();
    }
    if (r.estimate) {
      out["mean"] = r.estimate->mean;
      out["std_error"] = r.estimate->std_error;
      out["samples"] = r.estimate->samples;
    }
    out["delta"] = r.delta;
    out["rhs"] = r.rhs.str();
    out["rhs_float"] = r.rhs_approx;
    out["margin"] = r.margin;
    out["verdict"] = to_string(r.verdict);
    out["asserted"] = false;
    emit.emit(rec.record(std::move(out)));
    return kOk;
  }

  if (lemma == "theorem") {
    if (!a.weights) throw UsageError("verify theorem needs --weights");
    const Weights w = parse_weights(*a.weights).weights;
    const ConcentrationReport rep = concentration(w, cfg.limits);
    const TheoremCheck t = theorem_check(rep, parse_rational(a.C).get_d());
    Json out;
    out["rho"] = rat_json(rep.rho);
    out["range"] = rep.range_size.get_ui();
    out["epsilon"] = rep.epsilon;
    out["epsilon_clamped"] = t.epsilon;
    out["delta"] = t.delta;
    out["bound"] = t.bound;
    out["delta_over_sqrt_eps"] = t.ratio;
    out["holds"] = t.holds;
    out["verdict"] = "Reported";
    emit.emit(rec.record(std::move(out)));
    return kOk;
  }

  throw UsageError("unknown lemma '" + lemma +
                   "' (expected injectivity, density, partition, moment, second-moment, tail, "
                   "max-ratio, supratio, theorem)");
}

struct FrontierArgs {
  int n = 1;
  int max_weight = 0;
  int workers = 1;
  std::string output = "-";
  std::optional<std::string> plot_data;
  bool frontier_only = false;
  std::string C = "20";
};

inline constexpr const char* kFrontierHeader =
    "n,weights,rho_num,rho_den,range_size,epsilon,delta,delta_over_eps,delta_over_sqrt_eps";

inline void write_frontier_csv(std::ostream& out, const std::vector<FrontierPoint>& points) {
  out << kFrontierHeader << "\n";
  for (const auto& p : points) {
    out << p.n() << "," << p.weights.str(';') << "," << p.rho.get_num().get_str() << ","
        << p.rho.get_den().get_str() << "," << p.range_size.get_str() << "," << format_g12(p.epsilon) << ","
        << format_g12(p.delta) << "," << format_g12(p.delta_over_eps()) << ","
        << format_g12(p.delta_over_sqrt_eps()) << "\n";
  }
}

inline void write_plot_data(std::ostream& out, const std::vector<FrontierPoint>& points) {
  out << "# epsilon delta\n";
  for (const auto& p : points) out << format_g12(p.epsilon) << " " << format_g12(p.delta) << "\n";
}

inline int cmd_frontier(const RunConfig& cfg, const FrontierArgs& a, Emitter& emit, std::ostream& out,
                        std::ostream& err) {
  Json params = {{"n", a.n}, {"max_weight", a.max_weight}, {"frontier_only", a.frontier_only}, {"C", a.C}};
  Recorder rec(cfg, "frontier", params);
  const SweepConfig sc{a.n, a.max_weight, a.workers};
  const std::vector<FrontierPoint> all = sweep(sc, cfg.limits);
  const std::vector<FrontierPoint> front = pareto_filter(all);
  const auto& rows = a.frontier_only ? front : all;

  if (a.output == "-") {
    write_frontier_csv(out, rows);
  } else {
    std::ofstream f(a.output);
    if (!f) throw UsageError("cannot write '" + a.output + "'");
    write_frontier_csv(f, rows);
  }
  if (a.plot_data) {
    std::ofstream f(*a.plot_data);
    if (!f) throw UsageError("cannot write '" + *a.plot_data + "'");
    write_plot_data(f, rows);
  }

  const AuditReport r = audit(all, parse_rational(a.C).get_d());
  Json o;
  o["points"] = r.points;
  o["frontier_points"] = front.size();
  o["rows_written"] = rows.size();
  o["lower_bound_violations"] = 0;
  o["max_delta_over_eps"] = r.max_delta_over_eps;
  o["argmax_delta_over_eps"] = r.argmax_delta_over_eps->str(';');
  o["max_delta_over_sqrt_eps"] = r.max_delta_over_sqrt_eps;
  o["argmax_delta_over_sqrt_eps"] = r.argmax_delta_over_sqrt_eps->str(';');
  o["above_conjecture"] = r.above_conjecture;
  if (r.first_above_conjecture) o["first_above_conjecture"] = r.first_above_conjecture->str(';');
  o["above_theorem_bound"] = r.above_theorem_bound;
  o["epsilon_zero_convention"] = "delta_over_eps = 1 at epsilon = 0";
  // With the CSV on stdout the summary goes to stderr so the table stays clean.
  if (a.output == "-") {
    Emitter side(cfg, err);
    side.emit(rec.record(std::move(o)));
  } else {
    emit.emit(rec.record(std::move(o)));
  }
  return kOk;
}

struct ConstructArgs {
  std::string kind = "block";
  int n = 0;
  int k = 0;
};

inline int cmd_construct(const RunConfig& cfg, const ConstructArgs& a, Emitter& emit) {
  if (a.kind != "block") throw UsageError("unknown construction '" + a.kind + "'");
  Recorder rec(cfg, "construct", Json{{"kind", a.kind}, {"n", a.n}, {"k", a.k}});
  const BlockParams bp = block_construction(a.n, a.k);
  const BlockTheory theory = block_theory(a.n, a.k);
  const ConcentrationReport rep = concentration(bp.weights, cfg.limits);
  const bool equal = theory.rho == rep.rho && theory.range == rep.range_size;
  Json out;
  out["weights"] = bp.weights.str();
  out["predicted"] = {{"rho", rat_json(theory.rho)}, {"range", theory.range.get_str()}};
  out["measured"] = {{"rho", rat_json(rep.rho)}, {"range", rep.range_size.get_str()}};
  out["equal"] = equal;
  out["epsilon"] = rep.epsilon;
  out["delta"] = rep.delta;
  out["delta_over_eps"] = rep.rho == 1 ? 1.0 : rep.delta / rep.epsilon;
  out["verdict"] = equal ? "Holds" : "Fails";
  emit.emit(rec.record(std::move(out)));
  return equal ? kOk : kFailure;
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Parses args (without the program name) and runs one command.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact subset-sum concentration, range and sumset verification toolkit", "anticonc"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  std::optional<std::uint64_t> seed;
  std::optional<long> precision_bits, naive_cap, dp_cap, mitm_cap, enum_budget, sumset_budget;
  std::optional<std::string> format, config_path;
  bool timing = false;
  app.add_option("--seed", seed, "Seed for Monte Carlo sampling");
  app.add_option("--precision-bits", precision_bits, "Precision cap for interval comparisons");
  app.add_option("--naive-cap", naive_cap, "Max n for full enumeration");
  app.add_option("--dp-cap", dp_cap, "Max sum-range width for the DP profile");
  app.add_option("--mitm-cap", mitm_cap, "Max n for meet-in-the-middle");
  app.add_option("--enum-budget", enum_budget, "Budget for sup-ratio points and sweep candidates");
  app.add_option("--sumset-budget", sumset_budget, "Budget for sumset tuples and convolution steps");
  app.add_option("--format", format, "Output format: json, csv or text");
  app.add_option("--config", config_path, "key=value file with defaults");
  app.add_flag("--timing", timing, "Add elapsed time under 'metadata'");

  ProfileArgs pa;
  bool no_profile = false;
  auto* profile_cmd = app.add_subcommand("profile", "Subset-sum profile, rho and range of a weight vector");
  profile_cmd->add_option("weights", pa.weights, "Comma-separated integers or rationals")->required();
  profile_cmd->add_option("--method", pa.method, "auto, naive, dp or mitm");
  profile_cmd->add_option("--levy", pa.levy_radius, "Also report the Levy concentration at this radius");
  profile_cmd->add_flag("--no-profile", no_profile, "Omit the full sum table");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Check one inequality, identity or lemma instance");
  verify_cmd->add_option("lemma", va.lemma, "injectivity, density, partition, moment, second-moment, "
                                            "tail, max-ratio, supratio, theorem")
      ->required();
  verify_cmd->add_option("--weights", va.weights, "Weight vector defining A and B");
  verify_cmd->add_option("--a-set", va.a_set, "Explicit A as 0/1 strings");
  verify_cmd->add_option("--b-set", va.b_set, "Explicit B as 0/1 strings");
  verify_cmd->add_option("--k", va.k, "Number of summands / binomial trials");
  verify_cmd->add_option("--k-max", va.k_max, "Sweep k up to this value (JSON lines)");
  verify_cmd->add_option("--s", va.s, "Moment order");
  verify_cmd->add_option("--C", va.C, "Constant for reported bounds");
  verify_cmd->add_option("--samples", va.samples, "Monte Carlo samples (0 = exact)");

  FrontierArgs fa;
  auto* frontier_cmd = app.add_subcommand("frontier", "Exhaustive sweep of canonical weight vectors");
  frontier_cmd->add_option("--n", fa.n, "Vector length")->required();
  frontier_cmd->add_option("--max-weight", fa.max_weight, "Largest weight value")->required();
  frontier_cmd->add_option("--workers", fa.workers, "Worker threads");
  frontier_cmd->add_option("--output", fa.output, "CSV path, '-' for stdout");
  frontier_cmd->add_option("--plot-data", fa.plot_data, "Write 'epsilon delta' columns here");
  frontier_cmd->add_flag("--frontier-only", fa.frontier_only, "Only rows with the largest range at their rho");
  frontier_cmd->add_option("--C", fa.C, "Constant for the reported theorem check");

  ConstructArgs ca;
  auto* construct_cmd = app.add_subcommand("construct", "Build a named construction and check its theory");
  construct_cmd->add_option("kind", ca.kind, "Construction name (block)")->required();
  construct_cmd->add_option("--n", ca.n, "Vector length")->required();
  construct_cmd->add_option("--k", ca.k, "Block size")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    RunConfig cfg;
    if (config_path) load_config_file(cfg, *config_path);
    if (const char* env = std::getenv("ANTICONC_PRECISION_BITS"); env && *env)
      apply_setting(cfg, "precision_cap_bits", env);
    if (seed) cfg.seed = *seed;
    if (precision_bits) apply_setting(cfg, "precision_cap_bits", std::to_string(*precision_bits));
    if (naive_cap) apply_setting(cfg, "naive_cap", std::to_string(*naive_cap));
    if (dp_cap) apply_setting(cfg, "dp_cap", std::to_string(*dp_cap));
    if (mitm_cap) apply_setting(cfg, "mitm_cap", std::to_string(*mitm_cap));
    if (enum_budget) apply_setting(cfg, "enum_budget", std::to_string(*enum_budget));
    if (sumset_budget) apply_setting(cfg, "sumset_budget", std::to_string(*sumset_budget));
    if (format) cfg.format = parse_format(*format);
    cfg.timing = timing;
    if (cfg.precision_cap_bits < 128) throw UsageError("precision cap must be at least 128 bits");

    Emitter emit(cfg, out);
    if (*profile_cmd) {
      pa.show_profile = !no_profile;
      return cmd_profile(cfg, pa, emit);
    }
    if (*verify_cmd) return cmd_verify(cfg, va, emit);
    if (*frontier_cmd) return cmd_frontier(cfg, fa, emit, out, err);
    if (*construct_cmd) return cmd_construct(cfg, ca, emit);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BadParams& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace anticonc::cli
