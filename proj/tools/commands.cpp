#include "commands.hpp"

#include "sperner/bounds.hpp"
#include "sperner/construct.hpp"
#include "sperner/io.hpp"
#include "sperner/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace sperner::cli {

namespace {

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) { throw Failure{code, msg}; }

Params params_or_fail(int n, int k) {
  try {
    return Params(n, k);
  } catch (const std::invalid_argument& e) {
    fail(precondition, e.what());
  }
}

void emit(std::ostream& out, const std::optional<std::string>& path, const std::string& content) {
  if (!path) {
    out << content;
    return;
  }
  try {
    write_text_file(*path, content);
  } catch (const std::runtime_error& e) {
    fail(io, e.what());
  }
}

std::string describe_failure(const VerifyReport& rep) {
  std::ostringstream s;
  s << "FAIL: " << rep.message;
  if (rep.kind == FailureKind::subset)
    s << "\nwitness: partition " << rep.a_part << " class " << rep.a_class << " is contained in partition "
      << rep.b_part << " class " << rep.b_class;
  return s.str();
}

// --- bound -----------------------------------------------------------------

struct BoundArgs {
  int n = 0, k = 0;
  bool json = false;
};

int cmd_bound(const BoundArgs& a, std::ostream& out) {
  const Params p = params_or_fail(a.n, a.k);
  const TableCell cell = aggregate(a.k, a.n).back();
  std::optional<BigNat> thm;
  std::string thm_note;
  if (auto why = thm_upper_violation(p))
    thm_note = *why;
  else
    thm = thm_upper(p);
  const bool exact = cell.lower.value == cell.upper.value;

  if (a.json) {
    nlohmann::ordered_json j;
    j["n"] = p.n();
    j["k"] = p.k();
    j["c"] = p.c();
    j["r"] = p.r();
    j["nlb"] = nlb(p).str();
    j["mms_floor"] = mms_floor(p).str();
    j["thm_upper"] = thm ? nlohmann::ordered_json(thm->str()) : nlohmann::ordered_json(nullptr);
    j["lower"] = cell.lower.value.str();
    j["lower_source"] = cell.lower.source.str();
    j["upper"] = cell.upper.value.str();
    j["upper_source"] = cell.upper.source.str();
    j["exact"] = exact ? nlohmann::ordered_json(cell.lower.value.str()) : nlohmann::ordered_json(nullptr);
    out << j.dump(2) << '\n';
    return ok;
  }
  out << "n = " << p.n() << ", k = " << p.k() << " (c = " << p.c() << ", r = " << p.r() << ")\n"
      << "nlb:       " << nlb(p) << '\n'
      << "mms_floor: " << mms_floor(p) << '\n'
      << "thm_upper: " << (thm ? thm->str() : "n/a (" + thm_note + ")") << '\n'
      << "lower:     " << cell.lower.value << "  " << cell.lower.source.str() << '\n'
      << "upper:     " << cell.upper.value << "  " << cell.upper.source.str() << '\n'
      << "exact:     " << (exact ? cell.lower.value.str() : std::string("unknown")) << '\n';
  return ok;
}

// --- table / figure ----------------------------------------------------------

struct TableArgs {
  int k_min = 4, k_max = 7, n_max = 33;
  std::optional<std::string> csv;
};

int cmd_table(const TableArgs& a, std::ostream& out) {
  if (a.k_min < 2 || a.k_max < a.k_min) fail(precondition, "need 2 <= k-min <= k-max");
  if (a.n_max < 2 * a.k_min + 2) fail(precondition, "n-max must be at least 2 k-min + 2");
  std::ostringstream s;
  write_table_csv(s, bounds_table(a.k_min, a.k_max, a.n_max));
  emit(out, a.csv, s.str());
  return ok;
}

struct FigureArgs {
  int k = 0, n_max = 100;
  std::optional<std::string> csv, plot;
};

int cmd_figure(const FigureArgs& a, std::ostream& out) {
  if (a.k < 2) fail(precondition, "k must be >= 2");
  if (a.n_max < 2 * a.k + 2) fail(precondition, "n-max must be at least 2k + 2");
  const auto rows = figure_rows(a.k, a.n_max);
  std::ostringstream s;
  write_figure_csv(s, rows);
  emit(out, a.csv, s.str());
  if (a.plot) emit(out, a.plot, figure_svg(a.k, rows));
  return ok;
}

// --- construct -----------------------------------------------------------------

struct ConstructArgs {
  int n = 0, k = 0;
  std::string method;
  std::optional<int> u, m;
  std::uint64_t seed = 0;
  std::string out_path;
};

// Admissible u with the most partitions; the smallest on ties.
int best_u(const Params& p, bool main) {
  const auto us = main ? admissible_main_u(p) : admissible_alt_u(p);
  if (us.empty()) {
    const auto why = main ? main_construction_violation(p, 1) : alt_construction_violation(p, (p.c() + 1) / 2);
    fail(precondition, std::string(main ? "main" : "alternate") + " construction " +
                           why.value_or("has no admissible u"));
  }
  int best = us.front();
  BigNat best_p = main ? main_construction_p(p, best) : alt_construction_p(p, best);
  for (int u : us) {
    const BigNat v = main ? main_construction_p(p, u) : alt_construction_p(p, u);
    if (v > best_p) {
      best = u;
      best_p = v;
    }
  }
  return best;
}

PartitionSystem construct_system(const ConstructArgs& a, const Params& p) {
  if (a.method == "main" || a.method == "alt") {
    const bool main = a.method == "main";
    const int u = a.u ? *a.u : best_u(p, main);
    return realize(main ? plan_main(p, u) : plan_alt(p, u), a.seed);
  }
  if (a.method == "family3k6") {
    if (p.n() != 3 * p.k() - 6)
      fail(precondition, "family3k6 requires n = 3k-6 (n = " + std::to_string(p.n()) + ", k = " +
                             std::to_string(p.k()) + ")");
    return build_3k6(p.k(), a.seed);
  }
  if (!a.m) fail(precondition, "product requires --m");
  const int m = *a.m;
  if (m < p.k() || p.n() - m < p.k())
    fail(precondition, "product requires k <= m <= n-k (m = " + std::to_string(m) + ")");
  const auto left = build_direct(Params(m, p.k()), a.seed);
  const auto right = build_direct(Params(p.n() - m, p.k()), a.seed);
  return product_build(left.system, right.system);
}

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
  const Params p = params_or_fail(a.n, a.k);
  PartitionSystem sys;
  try {
    sys = construct_system(a, p);
  } catch (const NotApplicable& e) {
    fail(precondition, e.what());
  } catch (const std::invalid_argument& e) {
    fail(precondition, e.what());
  }
  const auto rep = verify_system(sys);
  if (!rep) fail(verification, "refusing to write unverified output\n" + describe_failure(rep));
  try {
    write_system_file(a.out_path, sys);
  } catch (const std::runtime_error& e) {
    fail(io, e.what());
  }
  out << "wrote " << sys.size() << " partitions of [" << sys.n << "] into " << sys.k << " classes to "
      << a.out_path << '\n'
      << "verify: ok\n"
      << "almost uniform: " << (verify_almost_uniform(sys, p) ? "yes" : "no") << '\n';
  return ok;
}

// --- verify / brute ----------------------------------------------------------

struct VerifyArgs {
  std::string path;
  bool detecting = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  PartitionSystem sys;
  try {
    sys = read_system_file(a.path);
  } catch (const ParseError& e) {
    fail(io, a.path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    fail(io, e.what());
  }
  const auto rep = verify_system(sys);
  out << a.path << ": " << sys.size() << " partitions, n = " << sys.n << ", k = " << sys.k << '\n';
  if (a.detecting && rep.kind != FailureKind::bad_shape && rep.kind != FailureKind::not_partition) {
    const auto det = verify_detecting(to_detecting_array(sys));
    out << "detecting array: " << (det ? "ok" : "FAIL: " + det.message) << '\n';
    if (static_cast<bool>(det) != static_cast<bool>(rep))
      fail(verification, "detecting-array check disagrees with the direct check");
  }
  if (!rep) {
    out << describe_failure(rep) << '\n';
    return verification;
  }
  out << "Sperner partition system: ok\n";
  if (sys.n >= sys.k && sys.k >= 1)
    out << "almost uniform: " << (verify_almost_uniform(sys, Params(sys.n, sys.k)) ? "yes" : "no") << '\n';
  return ok;
}

struct BruteArgs {
  int n = 0, k = 0, cap = 9;
  bool canonical = false;
  std::optional<std::string> out_path;
};

int cmd_brute(const BruteArgs& a, std::ostream& out) {
  const Params p = params_or_fail(a.n, a.k);
  if (a.n > a.cap) fail(precondition, "n = " + std::to_string(a.n) + " exceeds the brute-force cap " + std::to_string(a.cap));
  BruteResult res;
  try {
    res = brute_force_sp(p, a.cap, a.canonical);
  } catch (const std::invalid_argument& e) {
    fail(precondition, e.what());
  }
  out << "SP(" << a.n << ", " << a.k << ") = " << res.value << '\n' << "witness:\n" << system_to_json(res.witness);
  if (a.out_path) {
    try {
      write_system_file(*a.out_path, res.witness);
    } catch (const std::runtime_error& e) {
      fail(io, e.what());
    }
  }
  return ok;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds, constructions and verification for Sperner partition systems"};
  app.require_subcommand(1);
  std::function<int()> action;

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Known bounds on SP(n, k)");
  bound->add_option("--n", ba.n, "ground set size")->required();
  bound->add_option("--k", ba.k, "number of classes")->required();
  bound->add_flag("--json", ba.json, "print a JSON record");
  bound->callback([&] { action = [&] { return cmd_bound(ba, out); }; });

  TableArgs ta;
  auto* table = app.add_subcommand("table", "Bounds table as CSV, one row per (k, n) with 2k+2 <= n <= n-max");
  table->add_option("--k-min", ta.k_min, "smallest k")->capture_default_str();
  table->add_option("--k-max", ta.k_max, "largest k")->capture_default_str();
  table->add_option("--n-max", ta.n_max, "largest n")->capture_default_str();
  table->add_option("--csv", ta.csv, "output file (stdout if omitted)");
  table->callback([&] { action = [&] { return cmd_table(ta, out); }; });

  FigureArgs fa;
  auto* figure = app.add_subcommand("figure", "Bound curves for one k as CSV");
  figure->add_option("--k", fa.k, "number of classes")->required();
  figure->add_option("--n-max", fa.n_max, "largest n")->capture_default_str();
  figure->add_option("--csv", fa.csv, "output file (stdout if omitted)");
  figure->add_option("--plot", fa.plot, "also write a log-scale SVG chart");
  figure->callback([&] { action = [&] { return cmd_figure(fa, out); }; });

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build, verify and write a system");
  construct->add_option("--n", ca.n, "ground set size")->required();
  construct->add_option("--k", ca.k, "number of classes")->required();
  construct->add_option("--method", ca.method, "construction")
      ->required()
      ->check(CLI::IsMember({"main", "alt", "family3k6", "product"}));
  construct->add_option("--u", ca.u, "split parameter for main/alt (best admissible if omitted)");
  construct->add_option("--m", ca.m, "size of the first factor for product");
  construct->add_option("--seed", ca.seed, "random seed")->capture_default_str();
  construct->add_option("--out", ca.out_path, "output JSON file")->required();
  construct->callback([&] { action = [&] { return cmd_construct(ca, out); }; });

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a system file");
  verify->add_option("path", va.path, "system JSON file")->required();
  verify->add_flag("--detecting", va.detecting, "also run the detecting-array check");
  verify->callback([&] { action = [&] { return cmd_verify(va, out); }; });

  BruteArgs bra;
  auto* brute = app.add_subcommand("brute", "Exact SP(n, k) by exhaustive search");
  brute->add_option("--n", bra.n, "ground set size")->required();
  brute->add_option("--k", bra.k, "number of classes")->required();
  brute->add_option("--cap", bra.cap, "largest n accepted")->capture_default_str();
  brute->add_flag("--canonical", bra.canonical, "root the search at one partition per class-size shape");
  brute->add_option("--out", bra.out_path, "write the witness system here");
  brute->callback([&] { action = [&] { return cmd_brute(bra, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : precondition;
  }
  try {
    return action();
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace sperner::cli
