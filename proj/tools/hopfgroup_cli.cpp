// Command-line front end. Exit codes: 0 success, 1 failed suite or refuted
// expectation, 2 usage/parse/library error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>

#include "hopfgroup/convalg.hpp"
#include "hopfgroup/dsl.hpp"
#include "hopfgroup/fourier.hpp"
#include "hopfgroup/harness.hpp"
#include "hopfgroup/operator.hpp"
#include "hopfgroup/tensor.hpp"

using namespace hopfgroup;
using nlohmann::json;

namespace {

struct Options {
  std::string group;
  bool json = false;
  std::string out;
};

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, "'" + path + "' is not JSON: " + e.what());
  }
}

/// DSL text, or @file holding function JSON (or dual JSON, taking its symbol).
BSFunction load_function(const std::string& arg, const GroupPtr& g) {
  if (!arg.empty() && arg[0] == '@') {
    const json j = read_json_file(arg.substr(1));
    if (j.contains("dual")) return dual_from_json(j, g).symbol();
    return function_from_json(j, g);
  }
  return parse_function(arg, g);
}

ConvElement load_dual(const std::string& arg, const GroupPtr& g) {
  if (!arg.empty() && arg[0] == '@') {
    const json j = read_json_file(arg.substr(1));
    if (j.contains("dual")) return dual_from_json(j, g);
    return ConvElement(function_from_json(j, g));
  }
  return parse_dual(arg, g);
}

/// "p^-2..level 2", "-2..2" or "-2..2" with spaces: window H_outer cut at `level`.
Truncation parse_window(const std::string& text, const GroupPtr& g) {
  static const std::regex re(R"(^\s*(?:p\s*\^\s*)?(-?\d+)\s*\.\.\s*(?:level\s*=?\s*)?(-?\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re))
    throw Error(ErrorCode::Parse, "window must look like 'p^-2..level 2', got '" + text + "'");
  const int outer = std::stoi(m[1].str()), level = std::stoi(m[2].str());
  g->require_level(outer);
  g->require_level(level);
  if (outer > level) throw Error(ErrorCode::Level, "window level must be at least the outer level");
  return subgroup_window(g, outer, level);
}

std::string window_text(const Truncation& t, int outer) {
  return "p^" + std::to_string(outer) + "..level " + std::to_string(t.level);
}

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw Error(ErrorCode::Io, "cannot write '" + o.out + "'");
    f << j.dump(2) << "\n";
  }
}

json pairs_json(const TensorDecomposition& t) {
  json terms = json::array();
  for (const auto& [a, b] : t) terms.push_back({{"left", function_to_json(a)}, {"right", function_to_json(b)}});
  return terms;
}

std::string pairs_text(const TensorDecomposition& t, bool dual) {
  std::ostringstream s;
  for (const auto& [a, b] : t) {
    if (dual) s << format_dual(ConvElement(a)) << " (x) " << format_dual(ConvElement(b)) << "\n";
    else s << format_function(a) << " (x) " << format_function(b) << "\n";
  }
  if (t.empty()) s << "0\n";
  return s.str();
}

Side parse_side(const std::string& s) {
  if (s == "right") return Side::Right;
  if (s == "left") return Side::Left;
  throw Error(ErrorCode::Usage, "side must be 'left' or 'right'");
}

int verdict_exit(bool observed, const std::string& expect) {
  if (expect.empty()) return 0;
  if (expect != "yes" && expect != "no") throw Error(ErrorCode::Usage, "--expect must be 'yes' or 'no'");
  return observed == (expect == "yes") ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Hopf-algebraic computations on totally disconnected groups"};
  app.require_subcommand(1);
  Options o;
  std::string fn, with, conv, mult, window, side = "right", check, expect, suites_arg = "all", levels;
  std::vector<std::string> at, groups, suites;
  int level = 0;
  bool dual = false, no_timing = false, reconstruct = false;
  std::optional<std::uint64_t> seed;
  int trials = 100;
  std::size_t max_support = 6;

  auto common = [&](CLI::App* sub, bool needs_group = true) {
    auto* opt = sub->add_option("--group,-g", o.group, "group descriptor, e.g. qp:2");
    if (needs_group) opt->required();
    sub->add_flag("--json", o.json, "machine-readable output");
    sub->add_option("--out", o.out, "also write the JSON result to this file");
  };

  auto* eval = app.add_subcommand("eval", "print a function canonically or evaluate it at points");
  common(eval);
  eval->add_option("--fn", fn, "function (DSL or @file.json)")->required();
  eval->add_option("--at", at, "element literal to evaluate at (repeatable)");

  auto* coproduct = app.add_subcommand("coproduct", "decompose D(f)(1 x g) or (f x 1)D(g)");
  common(coproduct);
  coproduct->add_option("--fn", fn, "f")->required();
  coproduct->add_option("--with", with, "g")->required();
  coproduct->add_option("--side", side, "right: D(f)(1 x g); left: (f x 1)D(g)");
  coproduct->add_flag("--dual", dual, "use the dual coproduct on convolution elements L[...]");

  auto* convolve_cmd = app.add_subcommand("convolve", "convolution product L_f L_g");
  common(convolve_cmd);
  convolve_cmd->add_option("--fn", fn, "f (or L[f])")->required();
  convolve_cmd->add_option("--with", with, "g (or L[g])")->required();

  auto* fourier_cmd = app.add_subcommand("fourier", "Fourier transform onto the dual group");
  common(fourier_cmd);
  fourier_cmd->add_option("--fn", fn, "f")->required();
  fourier_cmd->add_option("--check", check, "plancherel | roundtrip | convolution");
  fourier_cmd->add_option("--with", with, "second function for --check convolution");

  auto* rank = app.add_subcommand("rank", "exact rank of M(mult) L(conv) on a window");
  common(rank);
  rank->add_option("--conv", conv, "convolution symbol")->required();
  rank->add_option("--mult", mult, "multiplier")->required();
  rank->add_option("--window", window, "'p^K..level n': H_K cut into level-n cosets")->required();

  auto* commute = app.add_subcommand("commute", "does L(conv) commute with M(mult) on a window");
  common(commute);
  commute->add_option("--conv", conv, "convolution symbol")->required();
  commute->add_option("--mult", mult, "multiplier")->required();
  commute->add_option("--window", window, "'p^K..level n'")->required();
  commute->add_option("--expect", expect, "yes | no; exit 1 when refuted");

  auto* grouplike = app.add_subcommand("grouplike", "is f a group-like projection");
  common(grouplike);
  grouplike->add_option("--fn", fn, "f")->required();
  grouplike->add_option("--expect", expect, "yes (default) | no; exit 1 when refuted");

  auto* expect_cmd = app.add_subcommand("expect", "conditional expectation and vector state at level n");
  common(expect_cmd);
  expect_cmd->add_option("--fn", fn, "f (or L[f])")->required();
  expect_cmd->add_option("--level", level, "level n of H_n")->required();
  expect_cmd->add_flag("--reconstruct", reconstruct, "also check a = sum_x x E(x^-1 a)");

  auto* verify = app.add_subcommand("verify", "run seeded invariant suites");
  verify->add_option("--group,-g", groups, "group descriptor (repeatable)")->required();
  verify->add_flag("--json", o.json, "machine-readable output");
  verify->add_option("--out", o.out, "also write the JSON report to this file");
  verify->add_option("--suite", suites, "suite id (repeatable) or 'all'");
  verify->add_option("--seed", seed, "64-bit seed; required with --json");
  verify->add_option("--trials", trials, "trials per suite")->check(CLI::Range(1, 100000));
  verify->add_option("--levels", levels, "level span 'lo..hi'");
  verify->add_option("--max-support", max_support, "max support cosets per function")->check(CLI::Range(1, 64));
  verify->add_flag("--no-timing", no_timing, "omit wall-clock fields from the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      GenConfig cfg;
      if (!seed) {
        if (o.json) throw Error(ErrorCode::Usage, "--seed is required with --json");
        seed = std::random_device{}() | (static_cast<std::uint64_t>(std::random_device{}()) << 32);
        std::cout << "seed: " << *seed << "\n";
      }
      cfg.seed = *seed;
      cfg.trials = trials;
      cfg.max_support = max_support;
      cfg.groups = groups;
      if (!levels.empty()) {
        static const std::regex re(R"(^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
        std::smatch m;
        if (!std::regex_match(levels, m, re)) throw Error(ErrorCode::Usage, "--levels must look like 'lo..hi'");
        cfg.levels = std::make_pair(std::stoi(m[1].str()), std::stoi(m[2].str()));
      }
      if (suites.empty() || (suites.size() == 1 && suites[0] == "all")) suites = suite_names();
      for (const std::string& s : suites)
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
          throw Error(ErrorCode::Usage, "unknown suite '" + s + "'");
      for (const std::string& g : groups) (void)make_group(g);
      json reports = json::array();
      std::ostringstream text;
      bool failed = false;
      for (const std::string& s : suites)
        for (const SuiteReport& r : run_suite(s, cfg)) {
          failed = failed || r.status == "fail";
          reports.push_back(to_json(r, !no_timing));
          text << r.suite << " " << r.group << ": " << r.status;
          if (!r.reason.empty()) text << " (" << r.reason << ")";
          text << " [" << r.trials << " trials";
          if (!no_timing) text << ", " << static_cast<long long>(r.wall_ms) << " ms";
          text << "]\n";
          for (const Failure& f : r.failures) {
            text << "  " << f.check << " at level " << f.level << ": " << f.detail << "\n";
            for (const BSFunction& x : f.inputs) text << "    input " << format_function(x) << "\n";
          }
        }
      emit(o, reports.size() == 1 ? reports[0] : reports, text.str());
      return failed ? 1 : 0;
    }

    const GroupPtr g = make_group(o.group);

    if (eval->parsed()) {
      const BSFunction f = load_function(fn, g);
      json j = {{"function", function_to_json(f)}, {"dsl", format_function(f)}};
      std::string text = format_function(f) + "\n";
      if (!at.empty()) {
        json values = json::array();
        for (const std::string& a : at) {
          const GElem x = g->parse_element(a);
          g->validate(x);
          values.push_back({{"at", g->format_element(x)}, {"value", f(x).to_string()}});
          text += "f(" + g->format_element(x) + ") = " + f(x).to_string() + "\n";
        }
        j["values"] = values;
      }
      emit(o, j, text);
      return 0;
    }

    if (coproduct->parsed()) {
      const Side s = parse_side(side);
      TensorDecomposition t;
      if (dual) t = symbols(dual_coproduct(load_dual(fn, g), load_dual(with, g), s));
      else t = s == Side::Right ? coproduct_right(load_function(fn, g), load_function(with, g))
                                : coproduct_left(load_function(fn, g), load_function(with, g));
      json j = {{"side", side}, {"dual", dual}, {"length", t.size()}, {"terms", pairs_json(t)}};
      emit(o, j, pairs_text(t, dual));
      return 0;
    }

    if (convolve_cmd->parsed()) {
      const ConvElement r = conv_mul(load_dual(fn, g), load_dual(with, g));
      emit(o, dual_to_json(r), format_dual(r) + "\n");
      return 0;
    }

    if (fourier_cmd->parsed()) {
      const BSFunction f = load_function(fn, g);
      const BSFunction hat = fourier(f);
      json j = {{"transform", function_to_json(hat)}, {"dsl", format_function(hat)}};
      std::string text = format_function(hat) + "\n";
      bool ok = true;
      if (check == "plancherel") {
        const PlancherelResult r = plancherel_check(f);
        ok = r.equal;
        j["check"] = {{"name", check}, {"norm", r.norm.to_string()}, {"dual_norm", r.dual_norm.to_string()}, {"equal", r.equal}};
        text += "plancherel: " + r.norm.to_string() + " vs " + r.dual_norm.to_string() + (r.equal ? " equal\n" : " DIFFER\n");
      } else if (check == "roundtrip") {
        ok = inverse_fourier(hat) == f;
        j["check"] = {{"name", check}, {"equal", ok}};
        text += std::string("roundtrip: ") + (ok ? "equal\n" : "DIFFER\n");
      } else if (check == "convolution") {
        if (with.empty()) throw Error(ErrorCode::Usage, "--check convolution needs --with");
        const BSFunction h = load_function(with, g);
        ok = fourier(convolve(f, h)) == hat * fourier(h);
        j["check"] = {{"name", check}, {"equal", ok}};
        text += std::string("convolution theorem: ") + (ok ? "equal\n" : "DIFFER\n");
      } else if (!check.empty()) {
        throw Error(ErrorCode::Usage, "--check must be plancherel, roundtrip or convolution");
      }
      emit(o, j, text);
      return ok ? 0 : 1;
    }

    if (rank->parsed() || commute->parsed()) {
      const Truncation t = parse_window(window, g);
      const int outer = std::stoi(std::regex_replace(window, std::regex(R"(^\s*(?:p\s*\^\s*)?(-?\d+).*$)"), "$1"));
      const BSFunction c = load_dual(conv, g).symbol();
      const BSFunction m = load_function(mult, g);
      const bool leaks = !leakage(c, t).empty();
      const TruncMatrix lc = matrix_of_conv(c, t, leaks ? TruncMode::Compressed : TruncMode::Exact);
      const TruncMatrix mm = matrix_of_mult(m, t);
      if (rank->parsed()) {
        const std::size_t r = exact_rank(mm * lc);
        json j = {{"rank", r}, {"window", window_text(t, outer)}, {"dim", t.dim()}, {"leakage", leaks}};
        emit(o, j, "rank " + std::to_string(r) + " on " + window_text(t, outer) + " (dim " + std::to_string(t.dim()) +
                       (leaks ? ", compressed: convolution leaks out of the window)\n" : ")\n"));
        return 0;
      }
      const CommutatorResult r = commutator(lc, mm);
      json j = {{"commute", r.zero}, {"window", window_text(t, outer)}, {"leakage", leaks}};
      std::string text = r.zero ? "commute: yes\n" : "commute: no\n";
      if (r.witness) {
        const auto& [ij, value] = *r.witness;
        j["witness"] = {{"row", t.group->format_element(t.reps[ij.first])},
                        {"column", t.group->format_element(t.reps[ij.second])},
                        {"value", value.to_string()}};
        text += "witness [" + t.group->format_element(t.reps[ij.first]) + ", " +
                t.group->format_element(t.reps[ij.second]) + "] = " + value.to_string() + "\n";
      }
      emit(o, j, text);
      return verdict_exit(r.zero, expect);
    }

    if (grouplike->parsed()) {
      const BSFunction f = load_function(fn, g);
      const GroupLikeVerdict v = is_group_like(f);
      json j = {{"grouplike", v.yes}, {"reason", v.reason}};
      if (v.subgroup_level) j["subgroup_level"] = *v.subgroup_level;
      std::string text = v.yes ? "group-like: yes" : "group-like: no (" + v.reason + ")";
      if (v.subgroup_level) text += ", indicator of H_" + std::to_string(*v.subgroup_level);
      emit(o, j, text + "\n");
      return verdict_exit(v.yes, expect.empty() ? "yes" : expect);
    }

    if (expect_cmd->parsed()) {
      const ConvElement a = load_dual(fn, g);
      const ConvElement e = cond_expectation(a, level);
      const CycScalar tau = vector_state_tau(a, level);
      json j = {{"expectation", dual_to_json(e)}, {"dsl", format_dual(e)}, {"tau", tau.to_string()}};
      std::string text = "E = " + format_dual(e) + "\ntau = " + tau.to_string() + "\n";
      bool ok = true;
      if (reconstruct) {
        const Reconstruction r = coset_reconstruction(a, level);
        ok = r.equal;
        json cosets = json::array();
        for (const GElem& x : r.cosets) cosets.push_back(g->format_element(x));
        j["reconstruction"] = {{"cosets", cosets}, {"equal", r.equal}};
        text += std::string("reconstruction over ") + std::to_string(r.cosets.size()) + " cosets: " +
                (r.equal ? "equal\n" : "DIFFER\n");
      }
      emit(o, j, text);
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    const std::string code(error_code_name(e.code()));
    if (o.json) std::cout << json{{"error", {{"code", code}, {"message", e.what()}}}}.dump(2) << "\n";
    std::cerr << "error " << code << ": " << e.what() << "\n";
    return 2;
  }
  return 2;
}
