#include "edpadic/cli.hpp"

#include <CLI11.hpp>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "edpadic/error.hpp"
#include "edpadic/rational_series.hpp"
#include "edpadic/split.hpp"

namespace edpadic::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t p = 0;
  int k = 1;
  std::string d, x1, a, b, aprime, bprime;
  std::string z, point, P, Q, s1, s2, split_point;
  std::string form = "edwards";
  std::string kind = "wp";
  std::int64_t n = 0;
  std::string points;
  std::int64_t t1 = 0, t2 = 0;
  std::uint64_t samples = 10000;
  int reps = 5;
  int M = 8;
  std::string g2, g3;
  bool triples = false;
};

RingContext ring(const Options& o) {
  if (o.p == 0) throw UsageError("--p is required");
  return RingContext(o.p, o.k);
}

RingElement need(const std::string& value, const char* flag, const RingContext& ctx) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
  return parse_element(value, ctx);
}

Bridge bridge_of(const Options& o) {
  const RingContext ctx = ring(o);
  const RingElement d = need(o.d, "--d", ctx);
  return derive_bridge(d, o.x1.empty() ? default_x1(d) : parse_element(o.x1, ctx));
}

ShortWCurve short_of(const Options& o) {
  const RingContext ctx = ring(o);
  return ShortWCurve(need(o.a, "--a", ctx), need(o.b, "--b", ctx));
}

QuadWCurve quad_of(const Options& o) {
  const RingContext ctx = ring(o);
  return QuadWCurve(need(o.aprime, "--aprime", ctx), need(o.bprime, "--bprime", ctx));
}

EdwardsPoint edwards_point(const EdwardsCurve& e, const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  EdwardsPoint P = parse_edwards_point(text, e.context());
  if (!on_curve(e, P)) throw Error(ErrorCode::NotOnCurve, P.to_string() + " is not on the curve");
  return P;
}

template <class Curve>
WPoint weierstrass_point(const Curve& c, const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  WPoint P = parse_wpoint(text, c.context());
  if (!on_curve(c, P)) throw Error(ErrorCode::NotOnCurve, P.to_string() + " is not on the curve");
  return P;
}

SplitPoint split_point(const GroupContext& g, const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  return parse_split_point(text, g.context());
}

void check_form(const std::string& form, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (form == a) return;
  }
  throw UsageError("unsupported --form " + form);
}

// Exhaustive checks for one bridge at desk scale.
std::string selftest(const Options& o, bool& all_ok) {
  const Bridge br = bridge_of(o);
  const RingContext& ctx = br.context();
  if (ctx.modulus() > 20000) throw Error(ErrorCode::TooLarge, "selftest runs exhaustively; keep p^k <= 20000");
  std::ostringstream log;
  int passed = 0, total = 0;
  auto check = [&](const std::string& name, const std::function<bool()>& fn) {
    ++total;
    bool ok = false;
    std::string why;
    try {
      ok = fn();
    } catch (const Error& e) {
      why = std::string(" (") + e.what() + ")";
    }
    passed += ok ? 1 : 0;
    log << (ok ? "ok   " : "FAIL ") << name << why << "\n";
  };
  const SymbolicParams sym = symbolic_params();
  check("differential identity, symbolic, M = 8", [&] { return verify_differential_identity(sym, 8); });
  check("inverse-parameter coefficients", [&] {
    const auto w = inverse_parameter_series(sym, 8);
    auto is = [](const GPoly& c, long n, long dd, int e2, int e3) {
      Rational q(n, dd);
      q.canonicalize();
      return c == GPoly::monomial(q, e2, e3);
    };
    return is(w.coeff(5), 1, 10, 1, 0) && is(w.coeff(7), 3, 28, 0, 1) && is(w.coeff(9), 1, 120, 2, 0) &&
           is(w.coeff(11), 23, 1540, 1, 1);
  });
  check("unit inverses and Hensel roots", [&] {
    for (std::uint64_t r = 0; r < ctx.modulus(); ++r) {
      const auto x = RingElement::from_residue(ctx, r);
      if (!x.is_unit()) continue;
      if (!(x * x.inverse() == RingElement::one(ctx))) return false;
      const auto s = sqrt_hensel(x * x);
      if (!(s * s == x * x)) return false;
    }
    return true;
  });
  const auto pts = affine_points(br.edwards());
  check("alpha/beta inverse bijections", [&] {
    const auto wp_count = count_points_fp(br.quad()) * (ctx.modulus() / ctx.prime());
    for (const auto& P : pts) {
      if (!(beta(br, alpha(br, P)) == P)) return false;
    }
    return pts.size() == wp_count;
  });
  const bool small = pts.size() <= 400;
  if (small) {
    check("Edwards law total, alpha a homomorphism", [&] {
      for (const auto& P : pts) {
        for (const auto& Q : pts) {
          if (!(alpha(br, edwards_add(br.edwards(), P, Q)) == add_points(br.quad(), alpha(br, P), alpha(br, Q)))) {
            return false;
          }
        }
      }
      return true;
    });
  }
  const ExpContext ex(br);
  check("Exp_E homomorphism, Log_E inverse, image = kernel", [&] {
    std::set<EdwardsPoint> image, kernel;
    for (std::uint64_t z = 0; z < ctx.modulus(); z += ctx.prime()) {
      const auto Z = RingElement::from_residue(ctx, z);
      const auto P = ex.exp(Z);
      if (!(ex.log(P) == Z)) return false;
      if (!(edwards_add(br.edwards(), P, ex.exp(RingElement::from_residue(ctx, ctx.prime()))) ==
            ex.exp(Z + RingElement::from_residue(ctx, ctx.prime())))) {
        return false;
      }
      image.insert(P);
    }
    for (const auto& P : pts) {
      if (mod_e(P).is_neutral()) kernel.insert(P);
    }
    return image == kernel && image.size() == ctx.modulus() / ctx.prime();
  });
  check("split/unsplit round trip and homomorphism", [&] {
    const GroupContext g(ex);
    if (g.n() * g.kernel_order() != pts.size()) return false;
    std::vector<SplitPoint> sp;
    for (const auto& P : pts) {
      sp.push_back(split(g, P));
      if (!(unsplit(g, sp.back()) == P)) return false;
    }
    const std::size_t step = small ? 1 : pts.size() / 50 + 1;
    for (std::size_t i = 0; i < pts.size(); i += step) {
      for (std::size_t j = 0; j < pts.size(); j += step) {
        if (!(split(g, edwards_add(g.curve(), pts[i], pts[j])) == split_add(g, sp[i], sp[j]))) return false;
      }
    }
    return true;
  });
  all_ok = passed == total;
  log << "selftest: " << passed << "/" << total << " checks passed";
  return log.str();
}

std::string series_command(const Options& o) {
  auto emit = [&](const auto& s) -> std::string {
    using C = std::decay_t<decltype(s.coeff(0))>;
    if constexpr (std::is_same_v<C, Rational>) {
      if (o.triples) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [e, num, den] : to_triples(s)) arr.push_back({e, num.get_str(), den.get_str()});
        return arr.dump();
      }
    } else {
      if (o.triples) throw UsageError("--triples needs numeric --g2 and --g3");
    }
    return s.to_string();
  };
  auto build = [&](const auto& params) -> std::string {
    if (o.kind == "wp") return emit(wp_series(params, o.M));
    if (o.kind == "wpp") return emit(wp_prime_series(params, o.M));
    if (o.kind == "inverse") return emit(inverse_parameter_series(params, o.M));
    if (o.kind == "log") return emit(revert_series(inverse_parameter_series(params, o.M)));
    if (o.kind == "identity") return verify_differential_identity(params, o.M) ? "true" : "false";
    throw UsageError("--kind must be wp, wpp, inverse, log or identity");
  };
  if (o.g2.empty() != o.g3.empty()) throw UsageError("give both --g2 and --g3 or neither");
  if (o.g2.empty()) return build(symbolic_params());
  try {
    return build(numeric_params(Rational(o.g2), Rational(o.g3)));
  } catch (const std::invalid_argument&) {
    throw UsageError("--g2/--g3 must be rationals n or n/d");
  }
}

AffineDivisor parse_divisor(const EdwardsCurve& e, const std::string& text) {
  // "(x, y):m; (x, y):m"
  AffineDivisor out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(' ') == std::string::npos) continue;
    const auto colon = item.rfind(':');
    if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "expected (x, y):m in " + item);
    std::int64_t m = 0;
    try {
      m = std::stoll(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad multiplicity in " + item);
    }
    out.emplace_back(edwards_point(e, item.substr(0, colon), "--points"), m);
  }
  return out;
}

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

// One JSON object per line: {"cmd": "...", "args": {"flag": value, ...}}.
int batch(std::istream& in, std::ostream& out, std::ostream& err) {
  std::string line;
  int worst = kOk;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::ordered_json reply;
    std::vector<std::string> argv;
    try {
      const auto j = nlohmann::json::parse(line);
      if (!j.contains("cmd") || !j["cmd"].is_string()) throw UsageError("missing \"cmd\"");
      if (j["cmd"] == "batch") throw UsageError("batch cannot nest");
      argv.push_back(j["cmd"].get<std::string>());
      if (j.contains("args")) {
        for (const auto& [key, value] : j["args"].items()) {
          if (value.is_boolean()) {
            if (value.get<bool>()) argv.push_back("--" + key);
            continue;
          }
          argv.push_back("--" + key);
          argv.push_back(value.is_string() ? value.get<std::string>() : value.dump());
        }
      }
    } catch (const std::exception& e) {
      reply = {{"ok", false}, {"status", kUsageError}, {"error", "UsageError"}, {"message", e.what()}};
      out << reply.dump() << "\n";
      worst = std::max(worst, kUsageError);
      continue;
    }
    std::ostringstream o, e;
    std::istringstream none;
    const int status = dispatch(argv, none, o, e);
    std::string text = o.str();
    while (!text.empty() && text.back() == '\n') text.pop_back();
    if (status == kOk) {
      reply = {{"ok", true}, {"output", text}};
    } else {
      std::string msg = e.str();
      while (!msg.empty() && msg.back() == '\n') msg.pop_back();
      const std::string name = msg.substr(0, msg.find(':'));
      reply = {{"ok", false}, {"status", status}, {"error", status == kUsageError ? "UsageError" : name}, {"message", msg}};
    }
    worst = std::max(worst, status);
    out << reply.dump() << "\n";
  }
  (void)err;
  return worst == kUsageError ? kUsageError : kOk;
}

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edwards and Weierstrass curve arithmetic over Z/p^k", "edpadic"};
  app.require_subcommand(1);
  Options o;
  std::function<std::string()> action;
  bool selftest_ok = true;
  bool is_batch = false;

  auto ring_opts = [&](CLI::App* c) {
    c->add_option("--p", o.p, "prime p >= 5")->required();
    c->add_option("--k", o.k, "precision k >= 1");
  };
  auto edwards_opts = [&](CLI::App* c) {
    ring_opts(c);
    c->add_option("--d", o.d, "Edwards parameter (a nonresidue mod p)")->required();
    c->add_option("--x1", o.x1, "bridge parameter; defaults to the least admissible value");
  };
  auto form_opts = [&](CLI::App* c) {
    ring_opts(c);
    c->add_option("--form", o.form, "edwards | weierstrass | quad");
    c->add_option("--d", o.d, "Edwards parameter");
    c->add_option("--x1", o.x1, "bridge parameter");
    c->add_option("--a", o.a, "short form coefficient a");
    c->add_option("--b", o.b, "short form coefficient b");
    c->add_option("--aprime", o.aprime, "quadratic form coefficient a'");
    c->add_option("--bprime", o.bprime, "quadratic form coefficient b'");
  };

  auto* derive = app.add_subcommand("derive", "derive the Edwards/Weierstrass bridge (JSON)");
  edwards_opts(derive);
  derive->callback([&] { action = [&] { return bridge_of(o).to_json(); }; });

  auto* exp = app.add_subcommand("exp", "exponential of z in pZ/p^k");
  form_opts(exp);
  exp->add_option("--z", o.z, "element of valuation >= 1")->required();
  exp->callback([&] {
    action = [&]() -> std::string {
      check_form(o.form, {"edwards", "weierstrass"});
      if (o.form == "weierstrass") {
        const auto c = short_of(o);
        return exp_w(c, parse_element(o.z, c.context())).to_string();
      }
      const ExpContext ex(bridge_of(o));
      return ex.exp(parse_element(o.z, ex.context())).to_string();
    };
  });

  auto* log = app.add_subcommand("log", "logarithm of a kernel point");
  form_opts(log);
  log->add_option("--point", o.point, "(x, y) on the Edwards curve or [Z:X:Y] on the short form")->required();
  log->callback([&] {
    action = [&]() -> std::string {
      check_form(o.form, {"edwards", "weierstrass"});
      if (o.form == "weierstrass") {
        const auto c = short_of(o);
        return log_w(c, weierstrass_point(c, o.point, "--point")).to_string();
      }
      const ExpContext ex(bridge_of(o));
      return ex.log(edwards_point(ex.curve(), o.point, "--point")).to_string();
    };
  });

  auto* add = app.add_subcommand("add", "add two points");
  form_opts(add);
  add->add_option("--P", o.P, "first point")->required();
  add->add_option("--Q", o.Q, "second point")->required();
  add->callback([&] {
    action = [&]() -> std::string {
      check_form(o.form, {"edwards", "weierstrass", "quad"});
      if (o.form == "weierstrass") {
        const auto c = short_of(o);
        return add_points(c, weierstrass_point(c, o.P, "--P"), weierstrass_point(c, o.Q, "--Q")).to_string();
      }
      if (o.form == "quad") {
        const auto c = quad_of(o);
        return add_points(c, weierstrass_point(c, o.P, "--P"), weierstrass_point(c, o.Q, "--Q")).to_string();
      }
      const EdwardsCurve e(need(o.d, "--d", ring(o)));
      return edwards_add(e, edwards_point(e, o.P, "--P"), edwards_point(e, o.Q, "--Q")).to_string();
    };
  });

  auto* smul = app.add_subcommand("smul", "scalar multiple n P");
  form_opts(smul);
  smul->add_option("--n", o.n, "integer scalar (may be negative)")->required();
  smul->add_option("--P", o.P, "point")->required();
  smul->callback([&] {
    action = [&]() -> std::string {
      check_form(o.form, {"edwards", "weierstrass", "quad"});
      if (o.form == "weierstrass") {
        const auto c = short_of(o);
        return scalar_mul(c, o.n, weierstrass_point(c, o.P, "--P")).to_string();
      }
      if (o.form == "quad") {
        const auto c = quad_of(o);
        return scalar_mul(c, o.n, weierstrass_point(c, o.P, "--P")).to_string();
      }
      const EdwardsCurve e(need(o.d, "--d", ring(o)));
      return scalar_mul(e, o.n, edwards_point(e, o.P, "--P")).to_string();
    };
  });

  auto* spl = app.add_subcommand("split", "split a point into ((x, y), c)");
  edwards_opts(spl);
  spl->add_option("--point", o.point, "(x, y) over Z/p^k")->required();
  spl->callback([&] {
    action = [&] {
      const GroupContext g{ExpContext(bridge_of(o))};
      return split(g, edwards_point(g.curve(), o.point, "--point")).to_string();
    };
  });

  auto* unspl = app.add_subcommand("unsplit", "recombine ((x, y), c) into a point");
  edwards_opts(unspl);
  unspl->add_option("--split", o.split_point, "((x, y), c)")->required();
  unspl->callback([&] {
    action = [&] {
      const GroupContext g{ExpContext(bridge_of(o))};
      return unsplit(g, split_point(g, o.split_point, "--split")).to_string();
    };
  });

  auto* sadd = app.add_subcommand("split-add", "componentwise sum of split points");
  edwards_opts(sadd);
  sadd->add_option("--s1", o.s1, "((x, y), c)")->required();
  sadd->add_option("--s2", o.s2, "((x, y), c)")->required();
  sadd->callback([&] {
    action = [&] {
      const GroupContext g{ExpContext(bridge_of(o))};
      return split_add(g, split_point(g, o.s1, "--s1"), split_point(g, o.s2, "--s2")).to_string();
    };
  });

  auto* count = app.add_subcommand("count", "brute-force point count");
  form_opts(count);
  count->callback([&] {
    action = [&]() -> std::string {
      check_form(o.form, {"edwards", "weierstrass", "quad"});
      if (o.form == "weierstrass") return std::to_string(count_points_fp(short_of(o)));
      if (o.form == "quad") return std::to_string(count_points_fp(quad_of(o)));
      return std::to_string(count_affine(EdwardsCurve(need(o.d, "--d", ring(o)))));
    };
  });

  auto* anom = app.add_subcommand("anomalous", "is y^2 = x^3 + ax + b anomalous over F_p");
  anom->add_option("--p", o.p, "prime")->required();
  anom->add_option("--a", o.a, "coefficient a")->required();
  anom->add_option("--b", o.b, "coefficient b")->required();
  anom->callback([&] {
    action = [&] {
      o.k = 1;
      const auto c = short_of(o);
      const std::uint64_t n = count_points_fp(c);
      return std::string("anomalous: ") + (n == c.context().prime() ? "true" : "false") + ", order " + std::to_string(n);
    };
  });

  auto* div = app.add_subcommand("divisor", "canonical form of a divisor class");
  edwards_opts(div);
  div->add_option("--points", o.points, "\"(x, y):m; ...\" affine part");
  div->add_option("--t1", o.t1, "multiplicity of Omega1");
  div->add_option("--t2", o.t2, "multiplicity of Omega2");
  div->callback([&] {
    action = [&] {
      const EdwardsCurve e(need(o.d, "--d", ring(o)));
      return divisor_reduce(e, parse_divisor(e, o.points), o.t1, o.t2).to_string();
    };
  });

  auto* series = app.add_subcommand("series", "Laurent series of wp, wp', -2wp/wp' or its reversion");
  series->add_option("--kind", o.kind, "wp | wpp | inverse | log | identity");
  series->add_option("--M", o.M, "truncation parameter M");
  series->add_option("--g2", o.g2, "numeric g2 (symbolic if omitted)");
  series->add_option("--g3", o.g3, "numeric g3 (symbolic if omitted)");
  series->add_flag("--triples", o.triples, "print (exponent, numerator, denominator) triples");
  series->callback([&] { action = [&] { return series_command(o); }; });

  auto* self = app.add_subcommand("selftest", "run the invariant checks for one configuration");
  edwards_opts(self);
  self->callback([&] { action = [&] { return selftest(o, selftest_ok); }; });

  auto* bench = app.add_subcommand("bench", "direct vs split addition timings (JSON)");
  edwards_opts(bench);
  bench->add_option("--samples", o.samples, "additions per timed loop");
  bench->add_option("--reps", o.reps, "repetitions");
  bench->callback([&] {
    action = [&] {
      const GroupContext g{ExpContext(bridge_of(o))};
      return bench_compare(g, o.samples, o.reps).to_json();
    };
  });

  app.add_subcommand("batch", "JSON-lines: {\"cmd\": ..., \"args\": {...}} per line")->callback([&] { is_batch = true; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }
  if (is_batch) return batch(in, out, err);
  try {
    out << action() << "\n";
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kDomainError;
  }
  return selftest_ok ? kOk : kDomainError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  return dispatch(args, in, out, err);
}

}  // namespace edpadic::cli
