#pragma once

// Command-line front end. Kept out of relconvex.hpp because it pulls in the
// JSON and argument-parsing headers; the tool in tools/ is a thin main() over
// run().

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "relconvex/oracles.hpp"
#include "relconvex/relconvex.hpp"

namespace relconvex::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kViolated = 1, kUsage = 2 };

/// Named numeric columns read from a JSON object or a CSV file.
class Inputs {
 public:
  std::map<std::string, std::vector<double>> columns;

  bool has(const std::string& key) const { return columns.count(key) != 0; }

  const std::vector<double>& get(const std::string& key) const {
    const auto it = columns.find(key);
    if (it == columns.end())
      throw Error(ErrorKind::PreconditionViolation, "missing required input '" + key + "'");
    return it->second;
  }

  std::vector<double> get_or(const std::string& key, std::vector<double> fallback) const {
    return has(key) ? get(key) : std::move(fallback);
  }
};

namespace detail {

inline std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

inline double parse_number(const std::string& text, const std::string& where) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::InvalidValue, "cannot parse '" + s + "' as a number in " + where);
  return v;
}

inline Inputs parse_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidValue, std::string("malformed JSON input: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::InvalidValue, "JSON input must be an object");
  Inputs in;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_array())
      throw Error(ErrorKind::InvalidValue, "input '" + key + "' must be an array of numbers");
    std::vector<double> col;
    for (const auto& v : value) {
      if (!v.is_number())
        throw Error(ErrorKind::InvalidValue, "input '" + key + "' holds a non-numeric entry");
      col.push_back(v.get<double>());
    }
    in.columns[key] = std::move(col);
  }
  return in;
}

/// Header row of column names, then one row per position. Empty cells end a
/// shorter column early.
inline Inputs parse_csv(const std::string& text) {
  std::istringstream ss(text);
  std::string line;
  std::vector<std::string> names;
  Inputs in;
  std::size_t row = 0;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (names.empty()) {
      names = cells;
      for (const auto& name : names) {
        if (name.empty()) throw Error(ErrorKind::InvalidValue, "empty CSV column name");
        in.columns[name];
      }
      continue;
    }
    ++row;
    if (cells.size() > names.size())
      throw Error(ErrorKind::InvalidValue, "CSV row " + std::to_string(row) + " has extra cells");
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].empty()) continue;
      in.columns[names[c]].push_back(
          parse_number(cells[c], "column '" + names[c] + "' row " + std::to_string(row)));
    }
  }
  if (names.empty()) throw Error(ErrorKind::InvalidValue, "empty CSV input");
  return in;
}

inline Inputs parse_inputs(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json(text);
  return parse_csv(text);
}

inline ConvexMap parse_psi(const std::string& text) {
  if (text == "identity") return psi::identity();
  if (text == "exp") return psi::exp();
  if (text == "square") return psi::square();
  if (text == "relu") return psi::relu(0.0);
  if (text.rfind("relu@", 0) == 0) return psi::relu(parse_number(text.substr(5), "--psi"));
  throw Error(ErrorKind::InvalidValue,
              "unknown psi '" + text + "' (expected identity, exp, relu@c or square)");
}

inline std::vector<std::size_t> as_indices(const std::vector<double>& v, const char* name) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 1.0) || v[i] != std::floor(v[i]))
      throw Error(ErrorKind::IndexOutOfRange,
                  std::string(name) + " entry " + std::to_string(i + 1) +
                      " is not a positive integer index",
                  i + 1);
    out.push_back(static_cast<std::size_t>(v[i]));
  }
  return out;
}

inline Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }
inline Json optional_json(const std::optional<std::size_t>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline Json check_json(const CheckReport& r) {
  return Json{{"holds", r.holds},
              {"first_violation", optional_json(r.first_violation)},
              {"margin", r.margin},
              {"threshold", r.threshold}};
}

inline bool close(double x, double y, double rel) {
  return std::fabs(x - y) <= rel * std::max({1.0, std::fabs(x), std::fabs(y)});
}

}  // namespace detail

struct Options {
  std::string input = "-";
  std::string output = "-";
  std::optional<double> tol_abs;
  std::optional<double> tol_rel;
  std::uint64_t seed = 0;
  std::size_t resolution = 256;
  bool skip_verify = false;
  std::string psi = "identity";
  // Per-command.
  bool wrt = false;
  double t1 = 0.0;
  double plateau_step = 1.0;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> bound;
  bool rate = false;
  std::optional<double> decay_threshold;
  std::size_t trials = 100;
};

/// Defaults, then RELCONVEX_TOL_ABS, then explicit flags.
inline Tolerance resolve_tolerance(const Options& opt) {
  Tolerance tol;
  if (const char* env = std::getenv("RELCONVEX_TOL_ABS"); env && *env)
    tol.abs = detail::parse_number(env, "RELCONVEX_TOL_ABS");
  if (opt.tol_abs) tol.abs = *opt.tol_abs;
  if (opt.tol_rel) tol.rel = *opt.tol_rel;
  tol.validate();
  return tol;
}

struct Outcome {
  Json report;
  int code = kOk;
};

class Job {
 public:
  Job(std::string command, Options opt, Tolerance tol, Inputs in)
      : command_(std::move(command)), opt_(std::move(opt)), tol_(tol), in_(std::move(in)) {
    params_["input"] = opt_.input;
    params_["seed"] = opt_.seed;
    params_["skip_verify"] = opt_.skip_verify;
    params_["psi"] = opt_.psi;
  }

  const Json& parameters() const { return params_; }

  Json skeleton() const {
    return Json{{"command", command_},
                {"verdict", nullptr},
                {"margin_or_slacks", Json::object()},
                {"parameters", params_},
                {"tolerance", {{"abs", tol_.abs}, {"rel", tol_.rel}}},
                {"version", kVersion}};
  }

  /// Runs the command. `extend` writes CSV to `csv` and returns no report.
  std::optional<Outcome> execute(std::ostream& csv) {
    if (command_ == "classify") return classify();
    if (command_ == "check") return check();
    if (command_ == "witness") return witness();
    if (command_ == "subdivide") return subdivide();
    if (command_ == "extend") {
      extend(csv);
      return std::nullopt;
    }
    if (command_ == "lupas") return lupas();
    if (command_ == "pecaric") return pecaric();
    if (command_ == "hhf") return bounds_command();
    if (command_ == "niezgoda") return bounds_command();
    if (command_ == "cor2") return bounds_command();
    if (command_ == "majorize") return majorize();
    if (command_ == "diagnose") return diagnose();
    if (command_ == "fuzz") return fuzz();
    throw Error(ErrorKind::InvalidValue, "unknown command '" + command_ + "'");
  }

 private:
  Verify verify() const { return opt_.skip_verify ? Verify::off : Verify::on; }
  RealSeq seq(const char* key) { return RealSeq(in_.get(key)); }
  Witness wit() { return Witness(RealSeq(in_.get("t"))); }
  WeightVec weights(std::size_t n) {
    return in_.has("p") ? WeightVec(in_.get("p")) : WeightVec::uniform(n);
  }

  Outcome finish(Json margins, Json result, bool holds) {
    Outcome o{skeleton(), holds ? kOk : kViolated};
    o.report["verdict"] = holds ? "holds" : "violated";
    o.report["margin_or_slacks"] = std::move(margins);
    o.report["parameters"] = params_;
    o.report["result"] = std::move(result);
    return o;
  }

  Outcome classify() {
    const auto a = seq("a");
    params_["n"] = a.size();
    const auto shape = classify_shape(a, tol_);
    Json bp = nullptr;
    if (shape.breakpoints) bp = {{"m", shape.breakpoints->m}, {"plateau", shape.breakpoints->plateau}};
    return finish(Json::object(),
                  {{"variant", std::string(to_string(shape.variant))},
                   {"breakpoints", bp},
                   {"relative_convex", shape.strictly_v_shaped()}},
                  shape.strictly_v_shaped());
  }

  Outcome check() {
    const auto a = seq("a");
    params_["n"] = a.size();
    params_["wrt"] = opt_.wrt;
    const auto r = opt_.wrt ? is_convex_wrt(a, wit(), tol_) : is_convex(a, tol_);
    return finish({{"margin", r.margin}, {"threshold", r.threshold}},
                  {{"first_violation", detail::optional_json(r.first_violation)}}, r.holds);
  }

  Outcome witness() {
    const auto a = seq("a");
    params_["n"] = a.size();
    params_["t1"] = opt_.t1;
    params_["plateau_step"] = opt_.plateau_step;
    params_["slopes"] = in_.has("s") ? "input" : "canonical";
    const auto s = in_.has("s") ? in_.get("s") : canonical_slopes(a, tol_);
    const auto t = construct_witness(a, s, opt_.t1, opt_.plateau_step, tol_);
    const auto r = is_convex_wrt(a, t, tol_);
    return finish({{"margin", r.margin}, {"threshold", r.threshold}},
                  {{"t", t.values()}, {"s", s}}, r.holds);
  }

  Outcome subdivide() {
    const auto a = seq("a");
    params_["n"] = a.size();
    params_["alpha"] = detail::optional_json(opt_.alpha);
    params_["beta"] = detail::optional_json(opt_.beta);
    if (!opt_.alpha || !opt_.beta)
      throw Error(ErrorKind::IntervalError, "subdivide needs --alpha and --beta");
    const auto t = construct_witness_on_interval(a, *opt_.alpha, *opt_.beta, tol_);
    const auto r = is_convex_wrt(a, t, tol_);
    const bool exact = t.front() == *opt_.alpha && t.back() == *opt_.beta;
    return finish({{"margin", r.margin}, {"threshold", r.threshold}},
                  {{"t", t.values()}, {"endpoints_exact", exact}}, r.holds && exact);
  }

  void extend(std::ostream& csv) {
    const auto ext = build_extension(seq("a"), wit());
    write_samples_csv(csv, sample(ext, opt_.resolution));
  }

  Outcome lupas() {
    const auto a = seq("a"), b = seq("b");
    const auto t = wit();
    params_["n"] = a.size();
    params_["weights"] = in_.has("p") ? "input" : "uniform";
    const auto r = lupas_check(a, b, t, weights(a.size()), tol_, verify());
    return finish({{"slack", r.slack}, {"threshold", r.threshold}},
                  {{"lhs", r.lhs}, {"rhs", r.rhs}}, r.holds);
  }

  Outcome pecaric() {
    const auto a = seq("a"), b = seq("b");
    params_["n"] = a.size();
    const auto r = pecaric_check(a, b, tol_, verify());
    return finish({{"slack", r.slack}, {"threshold", r.threshold}},
                  {{"lhs", r.lhs}, {"rhs", r.rhs}}, r.holds);
  }

  Outcome bounds_command() {
    const auto a = seq("a");
    const auto map = detail::parse_psi(opt_.psi);
    params_["n"] = a.size();
    params_["weights"] = in_.has("p") ? "input" : "uniform";
    const auto p = weights(a.size());
    BoundReport r;
    if (command_ == "hhf")
      r = hhf_bounds(a, wit(), p, map, tol_, verify());
    else if (command_ == "niezgoda")
      r = niezgoda_bound(a, p, map, tol_, verify());
    else
      r = cor2_bounds(a, p, map, tol_, verify());
    Json result{{"lower", detail::optional_json(r.lower)},
                {"value", r.value},
                {"upper", r.upper},
                {"m", detail::optional_json(r.m)},
                {"gamma_t", detail::optional_json(r.gamma_t)},
                {"lambda_t", detail::optional_json(r.lambda_t)},
                {"warnings", r.warnings}};
    return finish({{"slack_lower", detail::optional_json(r.slack_lower)},
                   {"slack_upper", r.slack_upper},
                   {"threshold", r.threshold}},
                  std::move(result), r.holds);
  }

  Outcome majorize() {
    const auto a = seq("a");
    const auto& pv = in_.get("pvec");
    const auto& qv = in_.get("qvec");
    params_["n"] = a.size();
    SidesReport r;
    if (in_.has("t")) {
      params_["mode"] = "relative";
      r = majorization_inequality_check(a, wit(), pv, qv, tol_, verify());
    } else {
      params_["mode"] = "index";
      const auto pi = detail::as_indices(pv, "pvec");
      const auto qi = detail::as_indices(qv, "qvec");
      r = integer_majorization_check(a, pi, qi, tol_, verify());
    }
    return finish({{"margin", r.margin}, {"threshold", r.threshold}},
                  {{"lhs", r.lhs}, {"rhs", r.rhs}}, r.holds);
  }

  Outcome diagnose() {
    const auto a = seq("a");
    const auto t = wit();
    const std::size_t n = a.size();
    params_["n"] = n;
    Json checks = Json::object();
    const auto base = is_convex_wrt(a, t, tol_);
    checks["ratio"] = detail::check_json(base);
    const auto grv = grv_check(a, t, tol_);
    checks["grv"] = detail::check_json(grv);
    const auto det = determinant_all_triples(a, t, tol_);
    checks["determinant"] = detail::check_json(det);
    bool agree = grv.holds == base.holds && det.holds == base.holds;
    if (n <= 400) {
      const auto det_all = determinant_all_triples(a, t, tol_, TripleScan::all);
      checks["determinant_all"] = detail::check_json(det_all);
      agree = agree && det_all.holds == base.holds;
    }
    const auto anchors = slope_from_all_anchors(a, t, tol_);
    checks["slope_anchors"] = detail::check_json(anchors);
    agree = agree && anchors.holds == base.holds;

    const auto da = forward_diff(a);
    if (std::all_of(da.begin(), da.end(), [&](double d) { return d > tol_.abs; })) {
      const auto g2 = grv2_check(a, t, tol_);
      checks["grv2"] = detail::check_json(g2);
      agree = agree && g2.holds == base.holds;
    }

    Json extra = Json::object();
    bool holds = base.holds;
    if (base.holds) {
      const auto map = detail::parse_psi(opt_.psi);
      const auto pres = psi_preservation_check(a, t, map, tol_, Verify::off);
      auto pj = detail::check_json(pres);
      pj["warnings"] = pres.warnings;
      extra["psi_preservation"] = std::move(pj);
      holds = holds && pres.holds;
      if (opt_.bound) {
        if (!opt_.alpha) throw Error(ErrorKind::InvalidValue, "--bound needs --alpha");
        params_["bound"] = *opt_.bound;
        params_["alpha"] = *opt_.alpha;
        const auto md = bounded_monotone_diagnostic(a, t, *opt_.bound, *opt_.alpha, tol_);
        Json mj{{"applicable", md.applicable}, {"reason", md.reason}};
        if (md.applicable) {
          mj["check"] = detail::check_json(md.check);
          holds = holds && md.check.holds;
        }
        extra["bounded_monotone"] = std::move(mj);
      }
    }
    if (opt_.rate) {
      const auto rr = rate_diagnostic(a, t, tol_, opt_.decay_threshold.value_or(0.0), verify());
      extra["rate"] = {{"terms", rr.terms},
                       {"partial_sums", rr.partial_sums},
                       {"max_tail", rr.max_tail},
                       {"decay_threshold", rr.decay_threshold},
                       {"decays", rr.decays}};
    }
    return finish({{"margin", base.margin}, {"threshold", base.threshold}},
                  {{"checks", checks}, {"agreement", agree}, {"diagnostics", extra}},
                  holds && agree);
  }

  Outcome fuzz();

  std::string command_;
  Options opt_;
  Tolerance tol_;
  Inputs in_;
  Json params_ = Json::object();
};

/// Seeded randomized cross-check of the engines against the brute-force
/// oracles. Each trial uses its own derived seed.
inline Outcome Job::fuzz() {
  using namespace oracles;
  params_["trials"] = opt_.trials;
  const char* names[] = {"generator", "characterization", "witness", "lupas", "hhf", "majorization"};
  std::map<std::string, std::pair<std::size_t, std::optional<std::uint64_t>>> tally;
  for (const char* name : names) tally[name] = {0, std::nullopt};
  auto fail = [&](const char* name, std::uint64_t trial) {
    auto& [count, first] = tally[name];
    ++count;
    if (!first) first = trial;
  };
  constexpr double rel = 1e-9;

  for (std::uint64_t k = 0; k < opt_.trials; ++k) {
    const Seeded s = derive(Seeded{opt_.seed}, k);
    Rng rng(s);
    const std::size_t n = 3 + rng.below(10);
    const auto [a, t] = gen_relative_convex_pair(n, derive(s, 1));

    const auto base = is_convex_wrt(a, t, tol_);
    if (!base.holds) fail("generator", k);

    for (const RealSeq& x : {a, gen_perturbed_negative(a, t, derive(s, 2))}) {
      const bool v = is_convex_wrt(x, t, tol_).holds;
      if (determinant_all_triples(x, t, tol_).holds != v ||
          determinant_all_triples(x, t, tol_, TripleScan::all).holds != v ||
          slope_from_all_anchors(x, t, tol_).holds != v || grv_check(x, t, tol_).holds != v)
        fail("characterization", k);
    }

    {
      const auto shape = kAllShapeVariants[rng.below(7)];
      const auto seqv = gen_shape(shape, std::max(n, min_length(shape)), derive(s, 3));
      const auto sched = gen_slope_schedule(seqv, derive(s, 4), tol_);
      const auto w = construct_witness(seqv, sched, rng.uniform(-1.0, 1.0), 1.0, tol_);
      const auto wi = construct_witness_on_interval(seqv, -1.0, 2.0, tol_);
      if (!is_convex_wrt(seqv, w, tol_).holds || !is_convex_wrt(seqv, wi, tol_).holds ||
          wi.front() != -1.0 || wi.back() != 2.0)
        fail("witness", k);
    }

    const auto pw = gen_weights(n, derive(s, 5));
    const WeightVec p(pw);
    {
      const RealSeq b(sample_convex(t.span(), derive(s, 6)));
      const auto r = lupas_check(a, b, t, p, tol_);
      const auto [lhs, rhs] = brute::lupas(a.span(), b.span(), t.span(), pw);
      if (!r.holds || !detail::close(r.lhs, lhs, rel) || !detail::close(r.rhs, rhs, rel))
        fail("lupas", k);
    }
    {
      const std::size_t pick = rng.below(3);
      std::vector<double> sorted = a.values();
      std::sort(sorted.begin(), sorted.end());
      const auto map = pick == 0 ? psi::identity()
                                 : pick == 1 ? psi::exp() : psi::relu(sorted[sorted.size() / 2]);
      const auto r = hhf_bounds(a, t, p, map, tol_);
      const auto [lo, val, up] = brute::hhf(a.span(), t.span(), pw, map);
      if (!r.holds || !detail::close(*r.lower, lo, rel) || !detail::close(r.value, val, rel) ||
          !detail::close(r.upper, up, rel))
        fail("hhf", k);
    }
    {
      std::vector<double> q(n);
      for (auto& v : q) v = rng.uniform(t.front(), t.back());
      const auto pv = gen_majorized_pair(q, 2 * n, derive(s, 7));
      const auto r = majorization_inequality_check(a, t, pv, q, tol_);
      const auto [sp, sq] = brute::majorization_sides(a.span(), t.span(), pv, q);
      // lhs - rhs of the floor / frac form equals sum a*(p) - sum a*(q).
      if (!r.holds || !detail::close(r.lhs - r.rhs, sp - sq, rel)) fail("majorization", k);
    }
  }

  Json result = Json::object();
  bool clean = true;
  for (const char* name : names) {
    const auto& [count, first] = tally[name];
    clean = clean && count == 0;
    result[name] = {{"failures", count},
                    {"first_failing_trial", first ? Json(*first) : Json(nullptr)}};
  }
  return finish(Json::object(), std::move(result), clean);
}

/// Full CLI. `args` excludes the program name. Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Relative convexity toolkit: checks, witnesses, bounds and diagnostics",
               "relconvex"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--input", opt.input, "JSON object or CSV file with named columns; - for stdin");
  app.add_option("--output", opt.output, "Report destination; - for stdout");
  app.add_option("--tol-abs", opt.tol_abs, "Absolute tolerance (default 1e-9)");
  app.add_option("--tol-rel", opt.tol_rel, "Relative tolerance (default 1e-12)");
  app.add_option("--seed", opt.seed, "Seed for fuzz");
  app.add_option("--resolution", opt.resolution, "Sample count for extend")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  app.add_flag("--skip-verify", opt.skip_verify, "Do not verify hypotheses before computing");
  app.add_option("--psi", opt.psi, "identity, exp, relu@c or square");

  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  sub("classify", "Shape class of a");
  sub("check", "Convexity of a, or of a with respect to t with --wrt")
      ->add_flag("--wrt", opt.wrt, "Use the witness column t");
  auto* wit = sub("witness", "Build t from a slope schedule s (canonical when absent)");
  wit->add_option("--t1", opt.t1, "First abscissa");
  wit->add_option("--plateau-step", opt.plateau_step, "Abscissa step on plateau steps");
  auto* subd = sub("subdivide", "Witness for a on [alpha, beta]");
  subd->add_option("--alpha", opt.alpha, "Left endpoint")->required();
  subd->add_option("--beta", opt.beta, "Right endpoint")->required();
  sub("extend", "CSV samples of the polygonal extension through (t, a)");
  sub("lupas", "Lupas-type covariance inequality for a, b sharing the witness t");
  sub("pecaric", "Raw-sum covariance inequality for convex a, b");
  sub("hhf", "Relative Hermite-Hadamard-Fejer sandwich");
  sub("niezgoda", "One-sided endpoint bound for convex a");
  sub("cor2", "Two-sided bound for convex a with index weights");
  sub("majorize", "pvec < qvec inequality; relative to t when given, else by index");
  auto* diag = sub("diagnose", "Equivalent characterizations and prefix diagnostics");
  diag->add_option("--bound", opt.bound, "Upper bound for the monotone diagnostic");
  diag->add_option("--alpha", opt.alpha, "Minimum witness gap for the monotone diagnostic");
  diag->add_flag("--rate", opt.rate, "Include the rate diagnostic");
  diag->add_option("--decay-threshold", opt.decay_threshold, "Threshold for the rate tail");
  sub("fuzz", "Seeded cross-check of the engines against brute-force oracles")
      ->add_option("--trials", opt.trials, "Number of trials");

  std::vector<std::string> owned{"relconvex"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : owned) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  std::ofstream file;
  std::ostream* sink = &out;
  if (opt.output != "-") {
    file.open(opt.output);
    if (!file) {
      err << "relconvex: cannot open output '" << opt.output << "'\n";
      return kUsage;
    }
    sink = &file;
  }

  Tolerance tol;
  std::optional<Job> job;
  try {
    tol = resolve_tolerance(opt);
    Inputs inputs;
    if (command != "fuzz") {
      std::string text;
      if (opt.input == "-") {
        text.assign(std::istreambuf_iterator<char>(in), {});
      } else {
        std::ifstream f(opt.input);
        if (!f) throw Error(ErrorKind::InvalidValue, "cannot read input '" + opt.input + "'");
        text.assign(std::istreambuf_iterator<char>(f), {});
      }
      inputs = detail::parse_inputs(text);
    }
    job.emplace(command, opt, tol, std::move(inputs));
    auto outcome = job->execute(*sink);
    if (!outcome) return kOk;
    *sink << outcome->report.dump(2) << '\n';
    return outcome->code;
  } catch (const Error& e) {
    err << "relconvex: " << e.what() << '\n';
    if (command == "extend") return kUsage;
    Json report = job ? job->skeleton()
                      : Job(command, opt, tol, Inputs{}).skeleton();
    report["verdict"] = "error";
    report["error"] = {{"kind", std::string(to_string(e.kind()))},
                       {"message", e.what()},
                       {"index", detail::optional_json(e.index())}};
    *sink << report.dump(2) << '\n';
    return kUsage;
  }
}

}  // namespace relconvex::cli
