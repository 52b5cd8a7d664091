#include "knotsum/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "knotsum/decompose.hpp"
#include "knotsum/json_io.hpp"
#include "knotsum/selftest.hpp"
#include "knotsum/statesum.hpp"

namespace knotsum {

using nlohmann::json;

namespace {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string num(cplx z) {
  std::ostringstream os;
  os << std::setprecision(17) << z.real() << (std::signbit(z.imag()) ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

// Accepts "x", "x+yi", "x-yi", "yi", "i", "-i".
cplx parse_complex(std::string s) {
  std::erase(s, ' ');
  if (s.empty()) throw UsageError("empty complex number");
  auto to_d = [&](const std::string& t) -> double {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(t, &pos);
    } catch (const std::exception&) {
      throw UsageError("malformed complex number '" + s + "'");
    }
    if (pos != t.size()) throw UsageError("malformed complex number '" + s + "'");
    return v;
  };
  if (s.back() != 'i') return {to_d(s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not the leading one or part of an exponent.
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E')
      return {to_d(body.substr(0, i)), to_d(body.substr(i))};
  }
  return {0.0, to_d(body)};
}

std::pair<int, int> parse_branches(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      const int m = std::stoi(s);
      return {m, m};
    }
    const int a = std::stoi(s.substr(0, colon));
    const int b = std::stoi(s.substr(colon + 1));
    if (a > b) throw UsageError("--branches: m0 must not exceed m1");
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("--branches: expected m0:m1, got '" + s + "'");
  }
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stoi(item));
    } catch (const std::logic_error&) {
      throw UsageError("expected a comma-separated integer list, got '" + s + "'");
    }
  }
  if (v.empty()) throw UsageError("empty integer list");
  return v;
}

MorseWord resolve_diagram(const std::string& name_or_path) {
  const auto& names = builtin_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) return builtin(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw DomainError("unknown diagram '" + name_or_path + "': not a built-in name or a readable file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_word(ss.str());
}

WeightTable resolve_table(const std::string& flag) {
  std::string path = flag;
  if (path.empty())
    if (const char* env = std::getenv("KNOTSUM_TABLE"); env && *env) path = env;
  if (path.empty()) return default_table();
  WeightTable t = load_table(path);
  require_valid(t);
  return t;
}

Mode parse_mode(const std::string& m) { return m == "dense" ? Mode::Dense : Mode::Pruned; }

std::ofstream open_csv(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write '" + path + "'");
  f << std::setprecision(17);
  return f;
}

void write_trace_csv(const std::string& path, const std::vector<TracePoint>& pts) {
  std::ofstream f = open_csv(path);
  f << "re_w,im_w,h,phase\n";
  for (const auto& p : pts) f << p.w.real() << ',' << p.w.imag() << ',' << p.h << ',' << p.phase << '\n';
}

json saddle_json(const SaddleDatum& s) {
  json dirs = json::array();
  for (const auto& d : s.descent) dirs.push_back(std::arg(d));
  return {{"w", to_json(s.w)},       {"value", to_json(s.value)}, {"hessian", to_json(s.hessian)},
          {"branch", s.branch},      {"root", s.root},             {"degenerate", s.degenerate},
          {"residual", s.residual},  {"descent_angles", dirs}};
}

struct ThimbleArgs {
  std::string family = "bessel";
  std::string k = "1";
  std::string n = "1";
  double t = -3.0;
  std::string branches = "0:0";
  std::string csv;
  bool json = false;
};

ExponentFamily make_family(const ThimbleArgs& a) {
  if (a.family == "bessel") return ExponentFamily::bessel(parse_complex(a.k), parse_complex(a.n));
  const cplx k = parse_complex(a.k);
  if (k.imag() != 0.0) throw UsageError("--k must be real for the Airy family");
  return ExponentFamily::airy(k.real(), a.t);
}

std::vector<SaddleDatum> window_saddles(const ExponentFamily& fam, const ThimbleArgs& a) {
  const auto [m0, m1] = parse_branches(a.branches);
  return find_saddles(fam, SaddleWindow{m0, m1, true});
}

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}
  int run(int argc, const char* const* argv);

 private:
  void emit(const json& result) {
    const json report{{"version", 1}, {"command", echo_}, {"result", result}};
    out_ << report.dump(2) << '\n';
  }

  std::ostream& out_;
  std::ostream& err_;
  json echo_;
};

int Cli::run(int argc, const char* const* argv) {
  CLI::App app{"knotsum: vertex-model knot invariants and Lefschetz thimble experiments", "knotsum"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "knotsum 1.0");

  // Echo of the invocation without the worker count, so output does not depend on it.
  echo_ = json::array();
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--threads") {
      ++i;
      continue;
    }
    if (a.rfind("--threads=", 0) == 0) continue;
    echo_.push_back(a);
  }

  std::string diagram, table, mode = "pruned";
  bool as_json = false, unreduced = false;
  int threads = 0;
  std::optional<int> eval_k;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--diagram", diagram, "built-in name or Morse-word file")->required();
    sub->add_option("--table", table, "weight table JSON (default: $KNOTSUM_TABLE or the built-in table)");
    sub->add_flag("--json", as_json, "JSON output");
    sub->add_option("--threads", threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    sub->add_option("--mode", mode, "enumeration mode")->check(CLI::IsMember({"dense", "pruned"}));
  };

  CLI::App* jones_cmd = app.add_subcommand("jones", "Jones polynomial of a diagram");
  add_common(jones_cmd);
  jones_cmd->add_option("--eval-k", eval_k, "also evaluate at q = exp(2 pi i/(k+2))");
  jones_cmd->add_flag("--unreduced", unreduced, "print the writhe-normalized sum before dividing by the unknot");

  CLI::App* bracket_cmd = app.add_subcommand("bracket", "framed state sum and skein oracle");
  add_common(bracket_cmd);

  CLI::App* stats_cmd = app.add_subcommand("stats", "diagram statistics");
  stats_cmd->add_option("--diagram", diagram, "built-in name or Morse-word file")->required();
  stats_cmd->add_flag("--json", as_json, "JSON output");

  ThimbleArgs ta;
  double duration = 10.0, k0 = 0.5, lambda = 0.25;
  std::string start, nlist = "10,20,30,40,50,60,70,80", contour;
  int saddle_index = 0;
  CLI::App* thimble_cmd = app.add_subcommand("thimble", "Lefschetz thimble laboratory");
  thimble_cmd->require_subcommand(1);
  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", ta.family, "exponent family")->check(CLI::IsMember({"bessel", "airy"}));
    sub->add_option("--k", ta.k, "k (complex for Bessel, e.g. 2.5 or 1+0.5i)");
    sub->add_option("--n", ta.n, "n (Bessel)");
    sub->add_option("--t", ta.t, "t (Airy)");
    sub->add_option("--branches", ta.branches, "sheet window m0:m1");
    sub->add_option("--csv", ta.csv, "CSV output path");
    sub->add_flag("--json", ta.json, "JSON output");
  };
  CLI::App* saddles_cmd = thimble_cmd->add_subcommand("saddles", "critical points in the window");
  add_family(saddles_cmd);
  CLI::App* flow_cmd = thimble_cmd->add_subcommand("flow", "downward gradient flow; CSV re_w,im_w,h,phase");
  add_family(flow_cmd);
  flow_cmd->add_option("--start", start, "start point w")->required();
  flow_cmd->add_option("--duration", duration, "flow time (negative flows upward)");
  CLI::App* integrate_cmd = thimble_cmd->add_subcommand("integrate", "thimble integrals of the window's saddles");
  add_family(integrate_cmd);
  integrate_cmd->add_option("--saddle", saddle_index, "saddle whose thimble trace goes to --csv");
  CLI::App* decompose_cmd = thimble_cmd->add_subcommand("decompose", "integer thimble decomposition of a contour");
  add_family(decompose_cmd);
  decompose_cmd->add_option("--contour", contour, "unit_circle | continued | real_line");
  CLI::App* growth_cmd = thimble_cmd->add_subcommand("growth", "log|I| for k = k0 + n; CSV n,log_abs_I");
  add_family(growth_cmd);
  growth_cmd->add_option("--k0", k0, "k offset");
  growth_cmd->add_option("--nlist", nlist, "comma-separated n values");
  growth_cmd->add_option("--lambda", lambda, "ratio n_Bessel / k");

  std::string complex_path;
  CLI::App* euler_cmd = app.add_subcommand("euler", "graded traces over V and H of a bigraded complex");
  euler_cmd->add_option("--complex", complex_path, "complex JSON")->required();
  euler_cmd->add_flag("--json", as_json, "JSON output");

  bool quick = false;
  std::uint64_t seed = 1;
  CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the invariant suite");
  selftest_cmd->add_flag("--quick", quick, "reduced suite");
  selftest_cmd->add_option("--table", table, "weight table JSON, or 'corrupted' for the built-in broken table");
  selftest_cmd->add_option("--seed", seed, "random seed");
  selftest_cmd->add_option("--threads", threads, "worker threads")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out_, err_);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out_, err_);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out_, err_);
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e, err_, err_);
    return kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    const ComputeOptions co{parse_mode(mode), threads};
    if (jones_cmd->parsed()) {
      const MorseWord w = resolve_diagram(diagram);
      const WeightTable tab = resolve_table(table);
      const StateSumResult r = compute(w, tab, co);
      const LaurentPoly v = unreduced ? r.normalized : jones(w, tab, co);
      std::optional<cplx> value;
      if (eval_k) value = v.eval_at_root_of_unity(*eval_k);
      if (as_json) {
        json res{{"polynomial", to_json(v)}, {"reduced", !unreduced}, {"writhe", r.writhe_used},
                 {"terms_enumerated", r.terms_enumerated}, {"variable", "u = q^(1/4)"}};
        if (value)
          res["evaluation"] = {{"k", *eval_k}, {"value", to_json(*value)}, {"quarter_root", "principal"}};
        emit(res);
      } else {
        out_ << (unreduced ? "normalized: " : "jones: ") << v.to_string() << "\n";
        out_ << "writhe: " << r.writhe_used << "\nterms_enumerated: " << r.terms_enumerated << "\n";
        if (value)
          out_ << "value at k=" << *eval_k << " (principal quarter root): " << num(*value) << "\n";
      }
    } else if (bracket_cmd->parsed()) {
      const MorseWord w = resolve_diagram(diagram);
      const WeightTable tab = resolve_table(table);
      const StateSumResult r = compute(w, tab, co);
      std::optional<LaurentPoly> sk;
      if (stats(w).crossings <= kMaxSkeinCrossings) sk = skein_bracket(w);
      if (as_json) {
        json res{{"framed", to_json(r.framed)}, {"normalized", to_json(r.normalized)},
                 {"terms_enumerated", r.terms_enumerated}, {"writhe", r.writhe_used}};
        if (sk) {
          res["skein"] = to_json(*sk);
          res["agree"] = *sk == r.framed;
        }
        emit(res);
      } else {
        out_ << "framed: " << r.framed.to_string() << "\nnormalized: " << r.normalized.to_string() << "\n";
        if (sk) out_ << "skein: " << sk->to_string() << "\nagree: " << (*sk == r.framed ? "yes" : "no") << "\n";
      }
    } else if (stats_cmd->parsed()) {
      const DiagramStats s = stats(resolve_diagram(diagram));
      if (as_json) {
        emit({{"crossings", s.crossings}, {"cups", s.cups}, {"caps", s.caps}, {"segments", s.segments},
              {"components", s.components}, {"writhe", s.writhe}});
      } else {
        out_ << "crossings=" << s.crossings << "\ncups=" << s.cups << "\ncaps=" << s.caps
             << "\nsegments=" << s.segments << "\ncomponents=" << s.components << "\nwrithe=" << s.writhe << "\n";
      }
    } else if (thimble_cmd->parsed()) {
      const ExponentFamily fam = make_family(ta);
      if (saddles_cmd->parsed()) {
        const auto saddles = window_saddles(fam, ta);
        if (ta.json) {
          json arr = json::array();
          for (const auto& s : saddles) arr.push_back(saddle_json(s));
          emit({{"saddles", arr}});
        } else {
          for (std::size_t i = 0; i < saddles.size(); ++i) {
            const auto& s = saddles[i];
            out_ << i << ": m=" << s.branch << " w=" << num(s.w) << " S=" << num(s.value) << " S''=" << num(s.hessian)
                 << (s.degenerate ? " degenerate" : "") << "\n";
          }
        }
        if (!ta.csv.empty()) {
          std::ofstream f = open_csv(ta.csv);
          f << "re_w,im_w,h,phase\n";
          for (const auto& s : saddles) f << s.w.real() << ',' << s.w.imag() << ',' << s.value.real() << ',' << s.value.imag() << '\n';
        }
      } else if (flow_cmd->parsed()) {
        const FlowTrace tr = flow(fam, parse_complex(start), duration);
        const char* stop = tr.stop == FlowStop::Duration ? "duration" : tr.stop == FlowStop::Cutoff ? "cutoff" : "escape";
        const bool mono = tr.monotone(duration < 0);
        if (ta.json) {
          emit({{"points", tr.points.size()}, {"stop", stop}, {"max_phase_drift", tr.max_phase_drift()},
                {"monotone", mono}, {"end", to_json(tr.points.back().w)}});
        } else {
          out_ << "points: " << tr.points.size() << "\nstop: " << stop << "\nend: " << num(tr.points.back().w)
               << "\nmax_phase_drift: " << num(tr.max_phase_drift()) << "\nmonotone: " << (mono ? "yes" : "no") << "\n";
        }
        if (!ta.csv.empty()) write_trace_csv(ta.csv, tr.points);
      } else if (integrate_cmd->parsed()) {
        const auto saddles = window_saddles(fam, ta);
        json arr = json::array();
        for (std::size_t i = 0; i < saddles.size(); ++i) {
          const auto& s = saddles[i];
          for (int b = 0; b + 1 < static_cast<int>(s.descent.size()); ++b) {
            ThimbleOptions o;
            o.basis = b;
            const ThimbleIntegral ti = integrate_thimble(fam, s, o);
            if (ta.json) {
              arr.push_back({{"saddle", i}, {"basis", b}, {"normalized", to_json(ti.normalized)},
                             {"exponent", to_json(ti.exponent)}, {"log_abs", ti.log_abs()}, {"stokes_hops", ti.hops.size()}});
            } else {
              out_ << i << "/" << b << ": I e^{-S(p)} = " << num(ti.normalized) << "  log|I| = " << num(ti.log_abs())
                   << (ti.hops.empty() ? "" : "  (passes a saddle on a Stokes line)") << "\n";
            }
          }
        }
        if (ta.json) emit({{"thimbles", arr}});
        if (!ta.csv.empty()) {
          if (saddle_index < 0 || saddle_index >= static_cast<int>(saddles.size()))
            throw UsageError("--saddle out of range");
          const SaddleDatum& s = saddles[static_cast<std::size_t>(saddle_index)];
          write_trace_csv(ta.csv, build_thimble(fam, s, s.value.real() - 50.0).polyline);
        }
      } else if (decompose_cmd->parsed()) {
        Contour c;
        if (!contour.empty()) {
          try {
            c = parse_contour(contour);
          } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
          }
        } else if (fam.kind() == FamilyKind::Airy) {
          c = Contour::RealLine;
        } else {
          const bool integer = fam.k().imag() == 0.0 && std::nearbyint(fam.k().real()) == fam.k().real();
          c = integer ? Contour::UnitCircle : Contour::Continued;
        }
        DecompositionOptions o;
        if (c == Contour::Continued) std::tie(o.m0, o.m1) = parse_branches(ta.branches == "0:0" ? "-2:1" : ta.branches);
        const Decomposition d = decompose_contour(fam, c, o);
        if (ta.json) {
          json coeffs = json::array();
          for (std::size_t e = 0; e < d.elements.size(); ++e)
            coeffs.push_back({{"element", d.elements[e].label()}, {"w", to_json(d.elements[e].saddle.w)},
                              {"coefficient", d.coefficients[e]}, {"least_squares", d.least_squares[e]}});
          json pairs = json::array();
          for (auto [i, j] : d.stokes_pairs) pairs.push_back({i, j});
          emit({{"contour", to_string(c)}, {"chamber", d.chamber}, {"coefficients", coeffs},
                {"residual", std::abs(d.residual)}, {"reference", to_json(d.reference)},
                {"max_integer_gap", d.max_gap}, {"dominant", d.dominant}, {"stokes_pairs", pairs}});
        } else {
          out_ << "contour: " << to_string(c) << "\nchamber: " << d.chamber << "\n";
          for (std::size_t e = 0; e < d.elements.size(); ++e)
            out_ << "  " << d.elements[e].label() << "  w=" << num(d.elements[e].saddle.w) << "  a=" << d.coefficients[e] << "\n";
          out_ << "reference: " << num(d.reference) << "\nresidual: " << num(std::abs(d.residual))
               << "\nmax_integer_gap: " << num(d.max_gap) << "\ndominant: "
               << (d.dominant >= 0 ? d.elements[static_cast<std::size_t>(d.dominant)].label() : "none") << "\n";
        }
      } else if (growth_cmd->parsed()) {
        const std::vector<int> ns = parse_int_list(nlist);
        GrowthOptions go;
        go.lambda = lambda;
        const GrowthResult g = growth_dichotomy(k0, ns, go);
        if (ta.json) {
          json pts = json::array();
          for (const auto& p : g.points) pts.push_back({{"n", p.n}, {"k", p.k}, {"log_abs_I", p.log_abs}});
          emit({{"k0", g.k0}, {"lambda", g.lambda}, {"rate", g.rate}, {"intercept", g.intercept}, {"points", pts}});
        } else {
          out_ << "rate: " << num(g.rate) << "\n";
          for (const auto& p : g.points) out_ << "  n=" << p.n << "  log|I|=" << num(p.log_abs) << "\n";
        }
        if (!ta.csv.empty()) {
          std::ofstream f = open_csv(ta.csv);
          f << "n,log_abs_I\n";
          for (const auto& p : g.points) f << p.n << ',' << p.log_abs << '\n';
        }
      }
    } else if (euler_cmd->parsed()) {
      const BigradedComplex c = load_complex(complex_path);
      validate(c);
      const GradedEuler v = euler_V(c);
      const GradedEuler h = euler_H(c);
      const auto groups = cohomology(c);
      if (as_json) {
        json hs = json::array();
        for (const auto& g : groups)
          if (g.free_rank || !g.torsion.empty())
            hs.push_back({{"P", g.p}, {"F", g.f}, {"free_rank", g.free_rank}, {"torsion", g.torsion}});
        emit({{"offset_c", c.offset_c.to_string()}, {"euler_V", to_json(v.poly)}, {"euler_H", to_json(h.poly)},
              {"equal", v == h}, {"cohomology", hs}});
      } else {
        out_ << "offset_c: " << c.offset_c.to_string() << "\neuler_V: " << v.poly.to_string()
             << "\neuler_H: " << h.poly.to_string() << "\nequal: " << (v == h ? "yes" : "no") << "\n";
        for (const auto& g : groups) {
          if (!g.free_rank && g.torsion.empty()) continue;
          out_ << "  H(P=" << g.p << ",F=" << g.f << ") = Z^" << g.free_rank;
          for (const auto t : g.torsion) out_ << " + Z/" << t;
          out_ << "\n";
        }
      }
    } else if (selftest_cmd->parsed()) {
      SelftestOptions so;
      so.quick = quick;
      so.seed = seed;
      so.threads = threads;
      if (table == "corrupted") {
        so.table = corrupted_table();
      } else if (!table.empty()) {
        so.table = load_table(table);  // loaded as-is so a broken table is exercised, not rejected
      } else if (const char* env = std::getenv("KNOTSUM_TABLE"); env && *env) {
        so.table = load_table(env);
      }
      bool all = true;
      for (const auto& g : run_selftest(so)) {
        out_ << (g.passed ? "PASS " : "FAIL ") << g.name << " (" << g.checks << " checks)";
        if (!g.passed) out_ << ": " << g.detail;
        out_ << "\n";
        all = all && g.passed;
      }
      code = all ? kExitOk : kExitDomain;
    }
  } catch (const UsageError& e) {
    err_ << "knotsum: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err_ << "knotsum: " << e.what() << "\n";
    return kExitDomain;
  }
  if (as_json || ta.json) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    err_ << "wall_time_s: " << secs << "\n";
  }
  return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Cli cli(out, err);
  return cli.run(argc, argv);
}

}  // namespace knotsum
