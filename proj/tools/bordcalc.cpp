// bordcalc: command-line front end for the Z/2 bordism calculator.
//
//   bordcalc <command> [expr...] [--degree N] [--json] [--config PATH]
//            [--fuel N] [--slack N] [--timing]
//
// Expression commands read one expression per line from stdin when no
// argument is given. Exit status: 0 ok, 1 check failure, 2 usage, 3 capacity/fuel.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bordcalc/bordcalc.hpp"

using json = nlohmann::json;
using namespace bordcalc;

namespace {

constexpr const char* kSchema = "bordcalc.report/1";

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kCapacity = 3 };

struct Item {
  std::string input;
  std::string text;  // human-readable answer
  json data = json::object();
  int code = kOk;
};

struct Options {
  std::optional<std::string> config_path;
  std::optional<int> degree;
  std::optional<long long> fuel;
  std::optional<int> slack;
  bool json = false;
  bool timing = false;
};

json terms_json(const gf2::GradedPoly& p) {
  json out = json::array();
  for (const auto& m : p.terms()) out.push_back(gf2::to_string(*p.table(), m));
  return out;
}

json poly_json(const gf2::GradedPoly& p) {
  json j{{"text", gf2::to_string(p)}, {"terms", terms_json(p)}};
  if (!p.is_zero() && p.homogeneous()) j["degree"] = p.degree();
  return j;
}

json presentation_json(const Presentation& p, NormalFormEngine& engine) {
  json basis = json::array();
  for (const auto& m : p.terms()) basis.push_back(to_string(m));
  json j{{"text", to_string(p)}, {"basis", basis}, {"geometric", is_geometric(p, engine)}};
  if (!p.is_zero() && p.homogeneous()) j["degree"] = p.degree();
  return j;
}

json quotient_json(const QuotientElem& q) {
  json j = json::object();
  for (const auto& [k, c] : q) j["x" + std::to_string(k)] = to_string(c);
  return j;
}

json free_json(const FreeBZ2Elem& x) {
  json j = json::object();
  for (const auto& [k, c] : x) j["s" + std::to_string(k)] = gf2::to_string(c);
  return j;
}

class Runner {
 public:
  Runner(Config cfg, Options opt) : cfg_(std::move(cfg)), opt_(std::move(opt)), engine_(RewriteOptions{cfg_.fuel, true}) {}

  const Config& config() const { return cfg_; }

  /// Run `fn` on one input, mapping library errors to exit codes.
  Item guarded(const std::string& input, const std::function<void(Item&)>& fn) {
    Item it;
    it.input = input;
    auto fail = [&](int code, const std::string& kind, const std::string& msg) {
      it.code = code;
      it.text = kind + ": " + msg;
      it.data = json{{"error", kind}, {"message", msg}};
    };
    try {
      fn(it);
    } catch (const ParseError& e) {
      fail(kUsage, "parse_error", e.what());
      it.data["position"] = e.position;
      it.data["expected"] = e.expected;
    } catch (const NotDivisible& e) {
      fail(kCheckFailed, "not_divisible", e.what());
      it.data["alpha"] = gf2::to_string(e.alpha);
    } catch (const FuelExhausted& e) {
      fail(kCapacity, "fuel_exhausted", e.what());
      it.data["stuck_term"] = e.stuck_term;
    } catch (const CapacityError& e) {
      fail(kCapacity, "capacity", e.what());
    } catch (const ContractViolation& e) {
      fail(kUsage, "contract", e.what());
    } catch (const IntegrityError& e) {
      fail(kCheckFailed, "integrity", e.what());
    }
    return it;
  }

  Presentation presentation(const std::string& s) { return parse_presentation(s, engine_); }

  Item nf(const std::string& s) {
    return guarded(s, [&](Item& it) {
      auto y = engine_.normal_form(presentation(s));
      it.text = to_string(y);
      it.data = presentation_json(y, engine_);
    });
  }

  Item loc(const std::string& s) {
    return guarded(s, [&](Item& it) {
      auto l = localize(presentation(s));
      it.text = gf2::to_string(l);
      it.data = poly_json(l);
    });
  }

  Item alpha_of(const std::string& s) {
    return guarded(s, [&](Item& it) {
      auto a = alpha(presentation(s));
      it.text = gf2::to_string(a);
      it.data = poly_json(a);
    });
  }

  Item gamma_of(const std::string& s) {
    return guarded(s, [&](Item& it) {
      auto g = engine_.gamma(presentation(s));
      it.text = to_string(g);
      it.data = presentation_json(g, engine_);
    });
  }

  Item divide(const std::string& s) {
    return guarded(s, [&](Item& it) {
      auto y = divide_e(presentation(s), engine_);
      it.text = to_string(y);
      it.data = presentation_json(y, engine_);
    });
  }

  Item member_of(const std::string& s) {
    return guarded(s, [&](Item& it) {
      auto r = member(parse_laurent(s), cfg_.slack);
      using St = MemberResult::Status;
      const char* status = r.status == St::Member ? "member" : r.status == St::NotMember ? "not_member" : "undecided";
      it.data = json{{"status", status}, {"slack", r.slack}, {"candidates", r.candidates}};
      if (r.expansion) {
        it.text = to_string(*r.expansion);
        it.data["expansion"] = presentation_json(*r.expansion, engine_);
      } else {
        it.text = status;
      }
    });
  }

  Item geometric(const std::string& s) {
    return guarded(s, [&](Item& it) {
      bool g = is_geometric(presentation(s), engine_);
      it.text = g ? "true" : "false";
      it.data = json{{"geometric", g}};
    });
  }

  Item quotient(const std::string& s) {
    return guarded(s, [&](Item& it) {
      auto q = quotient_reduce(presentation(s), engine_);
      it.text = to_string(q);
      it.data = json{{"text", it.text}, {"components", quotient_json(q)}};
    });
  }

  Item euler_of(int m, int k) {
    return guarded(std::to_string(m) + " " + std::to_string(k), [&](Item& it) {
      auto p = euler(m, k);
      it.text = to_string(p);
      it.data = presentation_json(p, engine_);
    });
  }

  Item phi_of(const std::string& s) {
    return guarded(s, [&](Item& it) {
      auto m = parse_manifold(s);
      auto f = phi(m);
      it.text = gf2::to_string(f);
      it.data = poly_json(f);
      it.data["dimension"] = dimension(m);
    });
  }

  /// Accepts a bundle-algebra polynomial, or a manifold whose fixed-set class is used.
  Item delta_of(const std::string& s) {
    return guarded(s, [&](Item& it) {
      BundleAlgElem x;
      try {
        x = parse_bundle(s);
      } catch (const ParseError& bundle_err) {
        try {
          x = phi(parse_manifold(s));
        } catch (const ParseError& manifold_err) {
          throw manifold_err.position > bundle_err.position ? manifold_err : bundle_err;
        }
      }
      auto d = delta(x, cfg_.coef_max_degree);
      it.text = to_string(d);
      it.data = json{{"text", it.text}, {"components", free_json(d)}};
    });
  }

  Item compare(const std::string& s) {
    return guarded(s, [&](Item& it) {
      auto m = parse_manifold(s);
      auto lhs = dictionary(phi(m));
      auto pt = pt_class(m, engine_);
      auto rhs = localize(pt);
      bool ok = lhs == rhs;
      it.code = ok ? kOk : kCheckFailed;
      it.text = (ok ? "equal: " : "DIFFER: ") + gf2::to_string(lhs) + (ok ? "" : " vs " + gf2::to_string(rhs));
      it.data = json{{"equal", ok},
                     {"fixed_point_side", poly_json(lhs)},
                     {"localized_side", poly_json(rhs)},
                     {"pt_class", presentation_json(pt, engine_)}};
    });
  }

  Item charnum(const std::string& s, const std::optional<std::string>& ref) {
    return guarded(s, [&](Item& it) {
      auto sp = parse_space(s);
      if (ref) sp = sp.with_reference(*ref);
      auto nums = sw_numbers(sp);
      json nonzero = json::array();
      std::string listed;
      for (const auto& [key, v] : nums)
        if (v) {
          nonzero.push_back(key_to_string(key));
          listed += (listed.empty() ? "" : ", ") + key_to_string(key);
        }
      it.data = json{{"space", to_string(sp)}, {"dimension", sp.dimension()}, {"nonzero", nonzero}};
      std::string cls;
      if (ref) {
        auto c = identify_in_NBO1(sp);
        cls = to_string(c);
        it.data["class"] = json{{"text", cls}, {"components", free_json(c)}};
      } else {
        auto c = identify_in_N(sp);
        cls = gf2::to_string(c);
        it.data["class"] = poly_json(c);
      }
      it.text = "nonzero: {" + listed + "}; class " + cls;
    });
  }

  Item verify_suite(const std::string& suite, int degree) {
    return guarded(suite, [&](Item& it) {
      Config c = cfg_;
      c.max_degree = degree;
      auto checks = verify(suite, c);
      json arr = json::array();
      std::string text;
      for (const auto& k : checks) {
        arr.push_back(json{{"suite", k.suite}, {"name", k.name}, {"degree", k.degree}, {"passed", k.passed},
                           {"detail", k.detail}});
        text += std::string(k.passed ? "PASS" : "FAIL") + "  " + k.suite + " d<=" + std::to_string(k.degree) +
                "  " + k.name + "  (" + k.detail + ")\n";
      }
      bool ok = all_passed(checks);
      it.code = ok ? kOk : kCheckFailed;
      text += ok ? "all checks passed" : "some checks FAILED";
      it.text = text;
      it.data = json{{"suite", suite}, {"max_degree", degree}, {"passed", ok}, {"checks", arr}};
    });
  }

  Item basis_table(int d_min, int d_max) {
    return guarded(std::to_string(d_min) + ".." + std::to_string(d_max), [&](Item& it) {
      if (d_min > d_max) throw ContractViolation("basis-table: --min exceeds --degree");
      if (d_max > cfg_.coef_max_degree)
        throw CapacityError("basis-table: degree " + std::to_string(d_max) + " exceeds coef.max_degree");
      const CoefRing ring = cfg_.coef_ring();
      json rows = json::array();
      std::string text;
      for (int d = d_min; d <= d_max; ++d) {
        const int t_max = cfg_.window;
        auto basis = basis_in_window(d, t_max, false, ring);
        std::vector<LaurentElem> images;
        for (const auto& b : basis) images.push_back(localize(b));
        auto wb = window_basis(Window::for_degree(d, t_max), images);
        json geo = json::array(), obs = json::array();
        for (const auto& b : basis) (b.epow() == 0 ? geo : obs).push_back(to_string(b));
        rows.push_back(json{{"degree", d},
                            {"t_max", t_max},
                            {"count", basis.size()},
                            {"rank", wb.rank()},
                            {"geometric", geo},
                            {"obstruction", obs}});
        text += "degree " + std::to_string(d) + ": " + std::to_string(basis.size()) + " monomials, rank " +
                std::to_string(wb.rank()) + " (" + std::to_string(geo.size()) + " geometric, " +
                std::to_string(obs.size()) + " e-divisible)\n";
        for (const auto& b : basis) text += "  " + to_string(b) + "\n";
        if (wb.rank() != basis.size()) it.code = kCheckFailed;
      }
      if (!text.empty()) text.pop_back();
      it.text = text;
      it.data = json{{"window", cfg_.window}, {"degrees", rows}};
    });
  }

 private:
  Config cfg_;
  Options opt_;
  NormalFormEngine engine_;
};

std::vector<std::string> stdin_lines() {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(std::cin, line)) {
    auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    auto b = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(a, b - a + 1));
  }
  return out;
}

int emit(const std::string& command, const Options& opt, const Config& cfg, const std::vector<Item>& items,
         double seconds) {
  int code = kOk;
  for (const auto& it : items) code = std::max(code, it.code);
  if (opt.json) {
    json results = json::array();
    for (const auto& it : items) results.push_back(json{{"input", it.input}, {"output", it.data}, {"exit", it.code}});
    json report{{"schema", kSchema},
                {"command", command},
                {"config",
                 {{"max_degree", cfg.max_degree},
                  {"fuel", cfg.fuel},
                  {"slack", cfg.slack},
                  {"window", cfg.window},
                  {"coef.max_degree", cfg.coef_max_degree}}},
                {"results", results},
                {"exit", code}};
    if (opt.timing) report["timing_ms"] = seconds * 1000.0;
    std::cout << report.dump(2) << "\n";
  } else {
    for (const auto& it : items) {
      if (items.size() > 1) std::cout << it.input << "  =>  ";
      (it.code == kUsage || it.code == kCapacity ? std::cerr : std::cout) << it.text << "\n";
    }
    if (opt.timing) std::cerr << "elapsed: " << seconds << " s\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calculator for the Z/2-equivariant unoriented bordism ring"};
  app.require_subcommand(1);
  Options opt;
  std::string config_path;
  int degree = 0;
  long long fuel = 0;
  int slack = 0;

  auto global = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--degree", degree, "maximum degree");
    sub->add_option("--fuel", fuel, "rewrite steps allowed per call")->check(CLI::PositiveNumber);
    sub->add_option("--slack", slack, "membership slack cap")->check(CLI::NonNegativeNumber);
    sub->add_flag("--json", opt.json, "emit a JSON report");
    sub->add_flag("--timing", opt.timing, "report elapsed time");
  };

  struct ExprCommand {
    const char* name;
    const char* help;
    Item (Runner::*fn)(const std::string&);
  };
  const std::vector<ExprCommand> expr_commands{
      {"nf", "normal form in the additive basis", &Runner::nf},
      {"loc", "image in N_*[c_j, e, e^-1]", &Runner::loc},
      {"alpha", "augmentation to N_*", &Runner::alpha_of},
      {"gamma", "the class Gamma(x) with e*Gamma(x) = x + xbar", &Runner::gamma_of},
      {"divide-e", "solve e*y = x", &Runner::divide},
      {"member", "is a Laurent element a localized class?", &Runner::member_of},
      {"geometric", "does the class have an e-free normal form?", &Runner::geometric},
      {"quotient", "image in the obstruction quotient", &Runner::quotient},
      {"phi", "fixed-set class of a catalog manifold", &Runner::phi_of},
      {"delta", "sphere-bundle boundary of a bundle class or manifold", &Runner::delta_of},
      {"compare", "fixed-point data against localization", &Runner::compare},
  };

  std::vector<std::string> exprs;
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : expr_commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("expr", exprs, "expressions (stdin when omitted)");
    global(sub);
    subs[c.name] = sub;
  }

  int euler_m = 0, euler_k = 0;
  auto* euler_cmd = app.add_subcommand("euler", "Euler class of m tau + k sigma");
  euler_cmd->add_option("m", euler_m)->required()->check(CLI::NonNegativeNumber);
  euler_cmd->add_option("k", euler_k)->required()->check(CLI::NonNegativeNumber);
  global(euler_cmd);

  std::optional<std::string> ref;
  auto* charnum_cmd = app.add_subcommand("charnum", "Stiefel-Whitney numbers of a space");
  charnum_cmd->add_option("space", exprs, "space descriptions (stdin when omitted)");
  charnum_cmd->add_option("--ref", ref, "degree-1 class of a map to BO(1)");
  global(charnum_cmd);

  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));
  global(verify_cmd);

  int d_min = 0;
  auto* table_cmd = app.add_subcommand("basis-table", "additive basis per degree");
  table_cmd->add_option("--min", d_min, "lowest degree");
  global(table_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  auto given = [&](const char* flag) { return chosen->count(flag) > 0; };

  Config cfg;
  try {
    cfg = load_config(given("--config") ? std::optional<std::string>(config_path) : std::nullopt);
    if (given("--fuel")) cfg.fuel = static_cast<std::size_t>(fuel);
    if (given("--slack")) cfg.slack = slack;
    if (given("--degree")) cfg.max_degree = degree;
    cfg.validate();
  } catch (const ContractViolation& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapacityError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kCapacity;
  }

  Runner runner(cfg, opt);
  const std::string name = chosen->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Item> items;

  auto inputs = [&] { return exprs.empty() ? stdin_lines() : exprs; };

  if (name == "euler") {
    items.push_back(runner.euler_of(euler_m, euler_k));
  } else if (name == "charnum") {
    for (const auto& s : inputs()) items.push_back(runner.charnum(s, ref));
  } else if (name == "verify") {
    items.push_back(runner.verify_suite(suite, cfg.max_degree));
  } else if (name == "basis-table") {
    items.push_back(runner.basis_table(d_min, given("--degree") ? degree : std::max(d_min, 4)));
  } else {
    auto it = std::find_if(expr_commands.begin(), expr_commands.end(),
                           [&](const ExprCommand& c) { return name == c.name; });
    for (const auto& s : inputs()) items.push_back((runner.*(it->fn))(s));
  }
  if (items.empty()) {
    std::cerr << name << ": no input\n";
    return kUsage;
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(name, opt, cfg, items, secs);
}
