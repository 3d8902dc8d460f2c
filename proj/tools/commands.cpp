#include "commands.hpp"

#include "acceptance.hpp"
#include "plancherel/curve.hpp"
#include "plancherel/io.hpp"
#include "plancherel/observables.hpp"
#include "plancherel/oracle.hpp"
#include "plancherel/toprec.hpp"

#include <chrono>
#include <iostream>
#include <memory>
#include <sstream>

namespace plancherel::cli {
namespace {

struct BadFlags : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out = "-";
  unsigned precision = 0;  // 0: env / default
  int threads = 1;
  std::string format;

  void add(CLI::App* s, const std::string& default_format) {
    format = default_format;
    s->add_option("--out,-o", out, "output path ('-' = stdout)");
    s->add_option("--precision", precision, "working precision in bits (overrides PLANCHEREL_PRECISION)")
        ->check(CLI::Range(32u, 1u << 20));
    s->add_option("--threads", threads, "worker cap")->check(CLI::Range(1, 1024));
    s->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  }
};

// --t2 .. --t6 as decimal strings
struct Couplings {
  std::vector<std::string> t{5};
  void add(CLI::App* s) {
    for (int k = 2; k <= 6; ++k)
      s->add_option("--t" + std::to_string(k), t[k - 2], "coupling t_" + std::to_string(k) + " (decimal)");
  }
  std::vector<Real> values(std::map<std::string, std::string>& args) const {
    int last = -1;
    for (int i = 0; i < 5; ++i)
      if (!t[i].empty()) last = i;
    std::vector<Real> v;
    for (int i = 0; i <= last; ++i) {
      std::string s = t[i].empty() ? "0" : t[i];
      args["t" + std::to_string(i + 2)] = s;
      v.push_back(parse(s, "t" + std::to_string(i + 2)));
    }
    // trailing zero couplings do not change the curve; drop them
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
  }
  static Real parse(const std::string& s, const std::string& what) {
    try {
      return parse_real(s);
    } catch (const std::exception&) {
      throw BadFlags("--" + what + ": not a decimal number: '" + s + "'");
    }
  }
};

Real parse_flag(const std::string& s, const std::string& what) { return Couplings::parse(s, what); }

RunConfig base_config(const std::string& cmd, const Common& c) {
  if (c.precision) set_precision_bits(c.precision);
  RunConfig cfg;
  cfg.command = cmd;
  cfg.precision_bits = precision_bits();
  cfg.threads = c.threads;
  cfg.format = c.format;
  cfg.output = c.out;
  set_oracle_threads(c.threads);
  return cfg;
}

void emit_json(const RunConfig& cfg, json body) { write_atomic(cfg.output, envelope(cfg, std::move(body)).dump(2) + "\n"); }

json curve_json(const PlancherelCurve& c) {
  json j;
  j["family"] = "plancherel";
  j["t"] = json::array();
  for (const auto& t : c.t) j["t"].push_back(dec(t));
  j["u"] = json::array();
  for (const auto& u : c.u) j["u"].push_back(dec(u));
  j["gamma"] = dec(c.gamma);
  j["dy_at_branch"] = {{"plus", dec(c.dy_at_branch(1))}, {"minus", dec(c.dy_at_branch(-1))}};
  j["newton_iterations"] = c.newton_iterations;
  return j;
}

json curve_json(const XpCurve& c) {
  json j;
  j["family"] = "xp";
  j["p"] = c.p;
  j["t"] = dec(c.t.real());
  j["z0"] = dec(c.z0.real());
  j["T"] = dec(c.T.real());
  j["gamma"] = dec(c.gamma.real());
  auto inv = xp_invariants(c);
  j["invariants"] = {{"z0_equation", dec(inv.z0_equation)},
                     {"T_equation", dec(inv.T_equation)},
                     {"gamma_equation", dec(inv.gamma_equation)}};
  j["newton_iterations"] = c.newton_iterations;
  return j;
}

json mirror_json(const MirrorPolynomial& m) {
  json terms = json::array();
  for (const auto& [e, c] : m.terms) terms.push_back({{"u", e.first}, {"v", e.second}, {"coeff", dec(c)}});
  return json{{"z0", dec(m.z0)}, {"terms", terms}};
}

// curve selection shared by curve / fg / diag
struct CurveFlags {
  std::string family = "plancherel";
  Couplings t;
  int p = 0;
  std::string xp_t;
  void add(CLI::App* s) {
    s->add_option("--family", family, "plancherel or xp")->check(CLI::IsMember({"plancherel", "xp"}));
    t.add(s);
    s->add_option("--p", p, "X_p degree (xp family)");
    s->add_option("--t", xp_t, "Kahler parameter t (xp family, decimal)");
  }
  // parses before any computation
  std::function<std::shared_ptr<SpectralCurve>()> prepare(RunConfig& cfg) const {
    cfg.args["family"] = family;
    if (family == "plancherel") {
      auto tv = t.values(cfg.args);
      return [tv] { return std::make_shared<PlancherelCurve>(solve_plancherel(tv)); };
    }
    if (xp_t.empty()) throw BadFlags("--t is required for --family xp");
    cfg.args["p"] = std::to_string(p);
    cfg.args["t"] = xp_t;
    Real tt = parse_flag(xp_t, "t");
    if (!(tt > 0)) throw BadFlags("--t must be positive");
    int pp = p;
    return [pp, tt] { return std::make_shared<XpCurve>(solve_xp(pp, tt)); };
  }
};

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const BadFlags& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadFlags;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadFlags;
  } catch (const OutOfRegime& e) {
    std::cerr << "out of regime: " << e.what() << "\n";
    return kOutOfRegime;
  } catch (const InsufficientOrder& e) {
    std::cerr << "truncation insufficient: " << e.what() << "\n";
    return kTruncation;
  } catch (const TruncationError& e) {
    std::cerr << "truncation insufficient: " << e.what() << "\n";
    return kTruncation;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  }
}

}  // namespace

Commands::Commands(CLI::App& app) : app_(app) {
  // ---- oracle ----
  {
    auto* s = app.add_subcommand("oracle", "exact truncated partition sums");
    auto c = std::make_shared<Common>();
    auto t = std::make_shared<Couplings>();
    auto q = std::make_shared<std::string>();
    auto N = std::make_shared<int>(-1);
    auto mw = std::make_shared<int>(-1);
    auto qdef = std::make_shared<bool>(false);
    auto p = std::make_shared<int>(0);
    auto dmax = std::make_shared<int>(2);
    auto gmax = std::make_shared<int>(2);
    auto timing = std::make_shared<bool>(false);
    c->add(s, "json");
    t->add(s);
    s->add_option("--q", *q, "q (decimal)");
    s->add_option("--N", *N, "max length (-1 unbounded)");
    s->add_option("--max-weight", *mw, "largest |lambda| summed");
    s->add_flag("--qdeformed", *qdef, "q-deformed sum as an exact series in Q and g_s");
    s->add_option("--p", *p, "X_p degree (q-deformed)");
    s->add_option("--dmax", *dmax, "largest Q degree")->check(CLI::Range(0, 64));
    s->add_option("--gmax", *gmax, "largest genus")->check(CLI::Range(0, 16));
    s->add_flag("--timing", *timing, "include wall time (breaks byte-identical output)");
    subs_.emplace_back(s, [=] {
      return guarded([&] {
        RunConfig cfg = base_config("oracle", *c);
        json body;
        auto t0 = std::chrono::steady_clock::now();
        if (*qdef) {
          cfg.args = {{"qdeformed", "true"}, {"p", std::to_string(*p)}};
          cfg.series_order = *dmax;
          cfg.args["dmax"] = std::to_string(*dmax);
          cfg.args["gmax"] = std::to_string(*gmax);
          auto r = z_qdeformed_series({*p, *dmax, *gmax});
          body["kind"] = "qdeformed";
          json tab = json::array();
          for (int g = 0; g <= *gmax; ++g)
            for (int d = 1; d <= *dmax; ++d) tab.push_back({{"g", g}, {"d", d}, {"value", dec(r.connected(g, d))}});
          body["ln_z_coefficients"] = tab;
        } else {
          if (q->empty()) throw BadFlags("--q is required (or --qdeformed)");
          if (*mw < 0) throw BadFlags("--max-weight is required");
          if (*N < -1) throw BadFlags("--N must be >= -1");
          cfg.args["q"] = *q;
          Real qq = parse_flag(*q, "q");
          if (qq < 0) throw BadFlags("--q must be >= 0");
          auto tv = t->values(cfg.args);
          cfg.args["N"] = std::to_string(*N);
          cfg.max_weight = *mw;
          auto r = z_plancherel({qq, tv, *N, *mw});
          body["kind"] = "plancherel_sum";
          body["value"] = dec(r.value);
          if (r.value > 0) body["log_value"] = dec(log(r.value));
          body["last_shell"] = dec(r.last_shell);
          body["last_shell_relative"] = r.value > 0 ? dec(r.last_shell / r.value) : json(nullptr);
          body["partitions"] = r.partitions;
        }
        if (*timing)
          body["timing_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        emit_json(cfg, body);
        return int(kOk);
      });
    });
  }

  // ---- curve ----
  {
    auto* s = app.add_subcommand("curve", "solve the spectral curve");
    auto c = std::make_shared<Common>();
    auto cf = std::make_shared<CurveFlags>();
    auto q = std::make_shared<std::string>();
    c->add(s, "json");
    cf->add(s);
    s->add_option("--q", *q, "report the arctic length at this q (plancherel)");
    subs_.emplace_back(s, [=] {
      return guarded([&] {
        RunConfig cfg = base_config("curve", *c);
        auto make = cf->prepare(cfg);
        std::optional<Real> qq;
        if (!q->empty()) {
          cfg.args["q"] = *q;
          qq = parse_flag(*q, "q");
          if (!(*qq > 0)) throw BadFlags("--q must be positive");
        }
        auto curve = make();
        json body;
        if (auto* pc = dynamic_cast<PlancherelCurve*>(curve.get())) {
          body = curve_json(*pc);
          if (qq) body["nbar_minus_half"] = dec(pc->arctic(*qq));
        } else {
          body = curve_json(*dynamic_cast<XpCurve*>(curve.get()));
        }
        emit_json(cfg, body);
        return int(kOk);
      });
    });
  }

  // ---- fg ----
  {
    auto* s = app.add_subcommand("fg", "free energies F_1..F_gmax by topological recursion");
    auto c = std::make_shared<Common>();
    auto cf = std::make_shared<CurveFlags>();
    auto gmax = std::make_shared<int>(2);
    auto L = std::make_shared<int>(0);
    c->add(s, "json");
    cf->add(s);
    s->add_option("--gmax", *gmax, "largest genus")->check(CLI::Range(1, 8));
    s->add_option("--local-order", *L, "local expansion order (0: automatic)")->check(CLI::Range(0, 400));
    subs_.emplace_back(s, [=] {
      return guarded([&] {
        RunConfig cfg = base_config("fg", *c);
        auto make = cf->prepare(cfg);
        cfg.args["gmax"] = std::to_string(*gmax);
        cfg.local_order = *L ? *L : default_local_order(*gmax);
        cfg.tolerances["reality"] = "1e-20";
        auto curve = make();
        RecursionEngine eng(curve, *gmax, cfg.local_order);
        json body;
        body["convention"] = "ln Z ~ F0 q - F1 + sum_{g>=2} F_g q^(1-g); F1 = (1/24) ln|gamma^2 y'(1) y'(-1)|";
        body["F1"] = dec(f1(*curve));
        json F;
        for (int g = 2; g <= *gmax; ++g) F[std::to_string(g)] = dec(eng.free_energy(g));
        body["F"] = F;
        body["curve"] = curve->family() == Family::plancherel ? curve_json(*dynamic_cast<PlancherelCurve*>(curve.get()))
                                                              : curve_json(*dynamic_cast<XpCurve*>(curve.get()));
        emit_json(cfg, body);
        return int(kOk);
      });
    });
  }

  // ---- shape ----
  {
    auto* s = app.add_subcommand("shape", "limit shape of the rotated partition");
    auto c = std::make_shared<Common>();
    auto t = std::make_shared<Couplings>();
    auto q = std::make_shared<std::string>();
    auto pts = std::make_shared<int>(100);
    auto N = std::make_shared<long>(-1);
    c->add(s, "csv");
    t->add(s);
    s->add_option("--q", *q, "q (decimal)")->required();
    s->add_option("--points", *pts, "number of points")->check(CLI::Range(1, 1000000));
    s->add_option("--N", *N, "add absolute h_I column for this N");
    subs_.emplace_back(s, [=] {
      return guarded([&] {
        RunConfig cfg = base_config("shape", *c);
        cfg.args["q"] = *q;
        Real qq = parse_flag(*q, "q");
        if (!(qq > 0)) throw BadFlags("--q must be positive");
        auto tv = t->values(cfg.args);
        cfg.args["points"] = std::to_string(*pts);
        std::optional<long> NN;
        if (*N >= 0) {
          NN = *N;
          cfg.args["N"] = std::to_string(*N);
        }
        auto curve = solve_plancherel(tv);
        auto shape = limit_shape(curve, qq, *pts, NN, true);
        std::string warning;
        if (!shape.positive)
          warning = "negative equilibrium density (min " + to_decimal(shape.min_density, 6) +
                    "): outside the one-cut regime, shape is not meaningful";
        if (cfg.format == "csv") {
          std::ostringstream os;
          os << "# schema: " << kSchemaVersion << "\n# config: " << cfg.to_json().dump() << "\n";
          if (!warning.empty()) os << "# warning: " << warning << "\n";
          write_shape_csv(shape, os);
          write_atomic(cfg.output, os.str());
        } else {
          json body;
          body["nbar"] = dec(shape.nbar);
          body["min_density"] = dec(shape.min_density);
          if (!warning.empty()) body["warning"] = warning;
          json p = json::array();
          for (const auto& pt : shape.points) {
            json r{{"phi", dec(pt.phi)}, {"lambda_minus_I", dec(pt.rotated_x)}, {"lambda_plus_I", dec(pt.rotated_y)}};
            if (pt.h) r["h"] = dec(*pt.h);
            p.push_back(r);
          }
          body["points"] = p;
          emit_json(cfg, body);
        }
        if (!warning.empty()) {
          std::cerr << "out of regime: " << warning << "\n";
          return int(kOutOfRegime);
        }
        return int(kOk);
      });
    });
  }

  // ---- gw ----
  {
    auto* s = app.add_subcommand("gw", "Gromov-Witten invariants of X_p");
    auto c = std::make_shared<Common>();
    auto p = std::make_shared<int>(0);
    auto gmax = std::make_shared<int>(2);
    auto dmax = std::make_shared<int>(3);
    auto samples = std::make_shared<int>(0);
    c->add(s, "json");
    s->add_option("--p", *p, "X_p degree")->required();
    s->add_option("--gmax", *gmax, "largest genus")->check(CLI::Range(0, 4));
    s->add_option("--dmax", *dmax, "largest degree")->check(CLI::Range(1, 8));
    s->add_option("--samples", *samples, "Fourier samples (0: 4 dmax)")->check(CLI::Range(0, 4096));
    subs_.emplace_back(s, [=] {
      return guarded([&] {
        RunConfig cfg = base_config("gw", *c);
        cfg.args = {{"p", std::to_string(*p)}, {"gmax", std::to_string(*gmax)}, {"dmax", std::to_string(*dmax)}};
        cfg.series_order = *dmax;
        GWOptions o;
        o.samples = *samples;
        o.threads = c->threads;
        cfg.tolerances["doubling"] = "1e-8";
        auto tab = gw_invariants(*p, *gmax, *dmax, o);
        json body;
        json N = json::array();
        auto f0 = xp_f0_series(*p, *dmax);
        auto f1s = xp_f1_series(*p, *dmax);
        for (int g = 0; g <= *gmax; ++g)
          for (int d = 1; d <= *dmax; ++d) {
            json r{{"g", g}, {"d", d}, {"value", dec(tab.N[g][d])}};
            if (g == 0) r["exact"] = to_string(f0[d]);
            if (g == 1) r["exact"] = to_string(BigRational(-f1s[d]));
            N.push_back(r);
          }
        body["N"] = N;
        if (*gmax >= 2) {
          body["fourier"] = {{"radius", dec(tab.radius)},
                             {"samples", tab.samples},
                             {"doubling_change", dec(tab.doubling_change)}};
        }
        emit_json(cfg, body);
        return int(kOk);
      });
    });
  }

  // ---- mirror ----
  {
    auto* s = app.add_subcommand("mirror", "mirror curve H(e^x, e^y) = 0 of X_p");
    auto c = std::make_shared<Common>();
    auto p = std::make_shared<int>(0);
    auto t = std::make_shared<std::string>();
    c->add(s, "json");
    s->add_option("--p", *p, "X_p degree")->required();
    s->add_option("--t", *t, "Kahler parameter (decimal)")->required();
    subs_.emplace_back(s, [=] {
      return guarded([&] {
        RunConfig cfg = base_config("mirror", *c);
        cfg.args = {{"p", std::to_string(*p)}, {"t", *t}};
        Real tt = parse_flag(*t, "t");
        auto m = mirror_curve(*p, tt);
        json body;
        body["general"] = mirror_json(m.general);
        body["general"]["vanishing"] = dec(mirror_vanishing(m.general, 20, Real(2)));
        if (m.specialized) {
          body["displayed"] = mirror_json(*m.specialized);
          body["displayed"]["vanishing"] = dec(mirror_vanishing(*m.specialized, 20, Real(2)));
          Real d = mirror_difference(m.general, *m.specialized);
          body["displayed"]["coefficient_difference"] = isinf(d) ? json("support differs") : dec(d);
        }
        emit_json(cfg, body);
        return int(kOk);
      });
    });
  }

  // ---- diag ----
  {
    auto* s = app.add_subcommand("diag", "loop-equation residuals along the cut");
    auto c = std::make_shared<Common>();
    auto cf = std::make_shared<CurveFlags>();
    auto q = std::make_shared<std::string>("100");
    auto gs = std::make_shared<std::string>("0.1");
    auto trunc = std::make_shared<int>(3);
    auto n = std::make_shared<int>(10);
    c->add(s, "json");
    cf->add(s);
    s->add_option("--q", *q, "q (plancherel)");
    s->add_option("--gs", *gs, "g_s (xp)");
    s->add_option("--trunc", *trunc, "Bernoulli / polylog terms kept")->check(CLI::Range(0, 40));
    s->add_option("--samples", *n, "cut points")->check(CLI::Range(1, 10000));
    subs_.emplace_back(s, [=] {
      return guarded([&] {
        RunConfig cfg = base_config("diag", *c);
        auto make = cf->prepare(cfg);
        cfg.args["trunc"] = std::to_string(*trunc);
        cfg.args["samples"] = std::to_string(*n);
        Real qq = parse_flag(*q, "q"), g = parse_flag(*gs, "gs");
        auto curve = make();
        std::vector<LoopSample> res;
        json body;
        if (auto* pc = dynamic_cast<PlancherelCurve*>(curve.get())) {
          cfg.args["q"] = *q;
          res = loop_residual(*pc, cut_samples(*pc, *n), qq, *trunc);
          body["curve"] = curve_json(*pc);
        } else {
          cfg.args["gs"] = *gs;
          auto* xc = dynamic_cast<XpCurve*>(curve.get());
          res = loop_residual(*xc, cut_samples(*xc, *n), g, *trunc);
          body["curve"] = curve_json(*xc);
        }
        json arr = json::array();
        bool ok = true;
        for (const auto& r : res) {
          arr.push_back({{"x", dec(r.x)}, {"residual", dec(r.residual)}, {"first_omitted", dec(r.first_omitted)}});
          ok = ok && r.residual < r.first_omitted;
        }
        body["samples"] = arr;
        body["below_first_omitted"] = ok;
        emit_json(cfg, body);
        return int(ok ? kOk : kCheckFailed);
      });
    });
  }

  // ---- verify ----
  {
    auto* s = app.add_subcommand("verify", "run the acceptance suite");
    auto c = std::make_shared<Common>();
    auto quick = std::make_shared<bool>(false);
    auto full = std::make_shared<bool>(false);
    c->add(s, "json");
    auto* fq = s->add_flag("--quick", *quick, "fast profile (skips the large oracle sums)");
    s->add_flag("--full", *full, "complete profile (default)")->excludes(fq);
    subs_.emplace_back(s, [=] {
      return guarded([&] {
        RunConfig cfg = base_config("verify", *c);
        AcceptanceOptions o;
        o.quick = *quick;
        o.threads = c->threads;
        std::ostringstream log;
        std::ostream& os = (cfg.output == "-") ? std::cout : log;
        auto res = run_acceptance(o, os);
        if (cfg.output != "-") write_atomic(cfg.output, log.str());
        for (const auto& r : res)
          if (r.status == CriterionResult::fail) return int(kCheckFailed);
        return int(kOk);
      });
    });
  }
}

int Commands::run() {
  for (auto& [s, f] : subs_)
    if (s->parsed()) return f();
  return kBadFlags;
}

}  // namespace plancherel::cli
