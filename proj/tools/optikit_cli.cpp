// optikit: counting, enumeration, law checking, theorem suites, and
// profunctor round-trips for optics over finite sets.
//
// Exit codes: 0 success, 1 property failure, 2 usage error, 3 cap/audit
// failure.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "optikit/suites.hpp"

using namespace optikit;
using nlohmann::json;

namespace {

struct Caps {
  int carrier = 1 << 22;
  int funlist = 4;
  uint64_t universe = uint64_t(1) << 25;  // id cap for quotient tables
};

Caps caps_from_env() {
  Caps c;
  const char* env = std::getenv("OPTIKIT_CAPS");
  if (env == nullptr) return c;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw DomainMismatch("OPTIKIT_CAPS: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    uint64_t val = std::stoull(item.substr(eq + 1));
    if (key == "carrier")
      c.carrier = static_cast<int>(val);
    else if (key == "funlist")
      c.funlist = static_cast<int>(val);
    else if (key == "universe")
      c.universe = val;
    else
      throw DomainMismatch("OPTIKIT_CAPS: unknown key '" + key + "'");
  }
  return c;
}

Action make_action(const std::string& name, const std::string& monoid_table,
                   int state_size) {
  Action act;
  if (name == "lens")
    act = product_action();
  else if (name == "prism")
    act = coproduct_action();
  else if (name == "iso")
    act = trivial_action();
  else if (name == "affine")
    act = affine_action();
  else if (name == "achromatic")
    act = achromatic_action();
  else if (name == "grate")
    act = grate_action();
  else if (name == "state")
    act = state_action(state_size);
  else if (name == "writer") {
    if (monoid_table.empty()) {
      act = writer_action();
    } else {
      // "size:unit:t00,t01,...": row-major multiplication table
      std::stringstream ss(monoid_table);
      std::string sz, un, tab;
      if (!std::getline(ss, sz, ':') || !std::getline(ss, un, ':') ||
          !std::getline(ss, tab))
        throw DomainMismatch("--monoid-table: expected size:unit:t0,t1,...");
      Monoid m{std::stoi(sz), std::stoi(un), {}};
      std::stringstream ts(tab);
      std::string cell;
      while (std::getline(ts, cell, ',')) m.tab.push_back(std::stoi(cell));
      act = writer_action(std::move(m));
    }
  } else {
    throw DomainMismatch("unknown action '" + name + "'");
  }
  return act;
}

Sig parse_sizes(const std::vector<int>& sizes) {
  if (sizes.size() == 2) return Sig{sizes[0], sizes[0], sizes[1], sizes[1]};
  if (sizes.size() == 4) return Sig{sizes[0], sizes[1], sizes[2], sizes[3]};
  throw DomainMismatch("--sizes takes 2 (S,A with S=S', A=A') or 4 (S,S',A,A') values");
}

json read_json_source(const std::string& src) {
  if (src == "-") return json::parse(std::cin);
  std::ifstream in(src);
  if (!in) throw DomainMismatch("cannot open '" + src + "'");
  return json::parse(in);
}

int run(int argc, char** argv) {
  CLI::App app{"optics over finite sets: quotient oracle, law checker, theorem suites"};
  app.require_subcommand(1);

  std::string action = "lens";
  std::vector<int> sizes = {2, 2};
  int bound = 0;  // 0 = default for the signature
  std::string format = "table";
  std::string monoid_table;
  int state_size = 2;
  int seed = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--action", action,
                    "lens|prism|iso|affine|achromatic|writer|state|grate")
        ->default_val("lens");
    sub->add_option("--sizes", sizes, "S,S',A,A' (or S,A meaning S=S', A=A')")
        ->delimiter(',')
        ->expected(2, 4);
    sub->add_option("--bound", bound, "residual bound (default max(S,S',2)+1)");
    sub->add_option("--format", format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--monoid-table", monoid_table,
                    "writer monoid as size:unit:t0,t1,...");
    sub->add_option("--state-size", state_size, "state set size for --action state");
    sub->add_option("--seed", seed, "seed for sampled suites");
  };

  auto* c_count = app.add_subcommand("count", "print the number of optic classes");
  auto* c_enum = app.add_subcommand("enumerate",
                                    "stream canonical representatives and concrete forms");
  auto* c_lawful = app.add_subcommand("lawful", "print a law report per class");
  auto* c_check = app.add_subcommand("check", "run a named theorem suite");
  auto* c_round = app.add_subcommand("roundtrip",
                                     "profunctor round-trips and Tambara squares");
  auto* c_comp = app.add_subcommand("compose", "compose two optics given as JSON");
  for (auto* s : {c_count, c_enum, c_lawful, c_check, c_round}) add_common(s);

  std::string suite_id;
  bool list_suites = false;
  c_check->add_option("id", suite_id, "suite id");
  c_check->add_flag("--list", list_suites, "list available suite ids");

  std::vector<std::string> compose_srcs;
  c_comp->add_option("files", compose_srcs,
                     "two JSON files (or '-' for stdin holding a two-element array)")
      ->expected(1, 2);
  c_comp->add_option("--format", format, "json|table")
      ->check(CLI::IsMember({"json", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Caps caps = caps_from_env();
  Sig sig = parse_sizes(sizes);
  if (sig.s < 0 || sig.sp < 0 || sig.a < 0 || sig.ap < 0)
    throw DomainMismatch("sizes must be >= 0");

  if (c_check->parsed()) {
    if (list_suites) {
      for (auto& [id, fn] : suites::registry()) std::cout << id << "\n";
      return 0;
    }
    if (suite_id.empty()) {
      std::cerr << "usage: optikit check <id> (see check --list)\n";
      return 2;
    }
    SuiteConfig cfg;
    cfg.seed = seed;
    cfg.table_cap = caps.universe;
    cfg.funlist_cap = caps.funlist;
    SuiteResult r = suites::run_suite(suite_id, cfg);
    if (format == "json") {
      std::cout << json{{"id", r.id}, {"pass", r.pass}, {"notes", r.notes}}.dump(2)
                << "\n";
    } else {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << "\n";
      for (auto& n : r.notes) std::cout << "  " << n << "\n";
    }
    return r.pass ? 0 : 1;
  }

  if (c_comp->parsed()) {
    json j1, j2;
    if (compose_srcs.size() == 1) {
      json arr = read_json_source(compose_srcs[0]);
      if (!arr.is_array() || arr.size() != 2)
        throw DomainMismatch("compose: expected a two-element JSON array");
      j1 = arr[0];
      j2 = arr[1];
    } else {
      j1 = read_json_source(compose_srcs[0]);
      j2 = read_json_source(compose_srcs[1]);
    }
    ConcreteOptic p = concrete_from_json(j1);
    ConcreteOptic q = concrete_from_json(j2);
    ConcreteOptic pq =
        std::holds_alternative<StatefulC>(p.body) &&
                std::holds_alternative<StatefulC>(q.body)
            ? ConcreteOptic{Sig{p.sig.s, q.sig.sp, q.sig.a, q.sig.ap},
                            compose_stateful(std::get<StatefulC>(p.body), p.sig,
                                             std::get<StatefulC>(q.body), q.sig)}
            : compose_concrete(p, q, caps.funlist);
    json out = to_json(pq);
    if (format == "table")
      std::cout << out.at("kind").get<std::string>() << "\n" << out.dump(2) << "\n";
    else
      std::cout << out.dump(2) << "\n";
    return 0;
  }

  Action act = make_action(action, monoid_table, state_size);
  act.carrier_cap = caps.carrier;
  int b = bound > 0 ? bound : default_bound(sig);
  if (act.kind == ActionKind::Trivial) b = std::max(1, bound);

  if (c_count->parsed()) {
    OpticTable tab = build_quotient(act, sig, b, caps.universe);
    if (format == "json")
      std::cout << json{{"action", action_name(act.kind)},
                        {"sig", to_json(sig)},
                        {"bound", b},
                        {"count", tab.class_count()}}
                       .dump(2)
                << "\n";
    else
      std::cout << tab.class_count() << "\n";
    return 0;
  }

  if (c_enum->parsed()) {
    OpticTable tab = build_quotient(act, sig, b, caps.universe);
    for (size_t c = 0; c < tab.class_count(); ++c) {
      Rep rep = tab.canon(static_cast<int>(c));
      json line{{"class", c}, {"canon", to_json(rep, act.kind)}};
      try {
        line["concrete"] = to_json(concretize(act, rep, sig));
      } catch (const CapExceeded&) {
        line["concrete"] = nullptr;
      }
      if (format == "json")
        std::cout << line.dump() << "\n";
      else
        std::cout << "class " << c << ": " << line.at("canon").dump() << "\n";
    }
    return 0;
  }

  if (c_lawful->parsed()) {
    if (sig.s != sig.sp || sig.a != sig.ap)
      throw DomainMismatch("lawful: laws need S = S' and A = A' (use --sizes S,A)");
    OpticTable tab = build_quotient(act, sig, b, caps.universe);
    int lawful = 0;
    for (size_t c = 0; c < tab.class_count(); ++c) {
      Rep rep = tab.canon(static_cast<int>(c));
      ConcreteOptic co = concretize(act, rep, sig);
      LawReport lr = concrete_laws(co);
      if (!act.kleisli() && act.kind != ActionKind::Grate) {
        LawVerdict v = is_lawful(act, rep, sig.s, sig.a, b);
        if (v.lawful != lr.all())
          throw AuditFailure("law engines disagree on class " + std::to_string(c));
      }
      lawful += lr.all();
      json line{{"class", c}, {"lawful", lr.all()}};
      json laws = json::object();
      for (auto& [n, ok] : lr.laws) laws[n] = ok;
      line["laws"] = laws;
      if (format == "json")
        std::cout << line.dump() << "\n";
      else
        std::cout << "class " << c << ": " << (lr.all() ? "lawful" : "unlawful")
                  << " " << laws.dump() << "\n";
    }
    if (format == "table") std::cout << "lawful classes: " << lawful << "\n";
    return 0;
  }

  if (c_round->parsed()) {
    if (act.kleisli() || act.kind == ActionKind::Grate ||
        act.kind == ActionKind::Achromatic)
      throw DomainMismatch("roundtrip: lens|prism|iso|affine only");
    OpticTable tab = build_quotient(act, sig, b, caps.universe);
    TambaraProf P{act, sig.a, sig.ap};
    int rt_ok = 0;
    for (size_t c = 0; c < tab.class_count(); ++c) {
      Rep p = tab.canon(static_cast<int>(c));
      ProfTransformation tr{act, p, sig.s, sig.sp, sig.a, sig.ap};
      rt_ok += tab.class_of(profunctor_to_optic(tr)) == static_cast<int>(c);
    }
    // Tambara squares on the cell at the unprimed boundary
    int rb = act.kind == ActionKind::Product || act.kind == ActionKind::Coproduct
                 ? 2 : 1;
    auto reps = enumerate_cell_reps(act, sig.a, sig.ap, sig.a, sig.ap, rb);
    std::vector<Residual> ms = act.enumerate_residuals(rb);
    int cap_x = 2 * std::max(sig.a, sig.ap);
    struct Square { const char* name; int ok = 0, total = 0; };
    Square nat{"naturality"}, din{"dinaturality"}, unit{"unit"}, tens{"tensor"};
    Fn f1 = sig.a > 1 ? decode_fn(sig.a, sig.a, 1) : id_fn(sig.a);
    Fn g1 = sig.ap > 1 ? decode_fn(sig.ap, sig.ap, 2) : id_fn(sig.ap);
    for (const Rep& x : reps) {
      ++unit.total;
      unit.ok += P.key(P.zeta(act.unit(), x, sig.a, sig.ap), sig.a, sig.ap) ==
                 P.key(x, sig.a, sig.ap);
      for (const Residual& m : ms) {
        int mx = act.act_obj(m, sig.a), my = act.act_obj(m, sig.ap);
        if (mx > cap_x || my > cap_x) continue;
        Rep zx = P.zeta(m, x, sig.a, sig.ap);
        Fn Mf = act.act_left(m, KHom{sig.a, sig.a, f1}).fn;
        Fn Mg = act.act_left(m, KHom{sig.ap, sig.ap, g1}).fn;
        ++nat.total;
        nat.ok += P.key(P.zeta(m, P.dimap(f1, g1, x), sig.a, sig.ap), mx, my) ==
                  P.key(P.dimap(Mf, Mg, zx), mx, my);
        for (const Residual& n : ms) {
          Residual mn = act.residual_tensor(m, n);
          int nx = act.act_obj(n, sig.a), ny = act.act_obj(n, sig.ap);
          int mnx = act.act_obj(mn, sig.a), mny = act.act_obj(mn, sig.ap);
          if (nx > cap_x || ny > cap_x || mnx > cap_x || mny > cap_x) continue;
          Rep two = P.zeta(m, P.zeta(n, x, sig.a, sig.ap), nx, ny);
          Fn med = act.residual_tensor_mediator(m, n, sig.a);
          Fn medp = act.residual_tensor_mediator(m, n, sig.ap);
          Rep relab{two.m, KHom{mnx, two.l.cod, compose(two.l.fn, med)},
                    KHom{two.r.fn.dom, mny,
                         compose(invert_bijection(medp), two.r.fn)}};
          ++tens.total;
          tens.ok += P.key(relab, mnx, mny) ==
                     P.key(P.zeta(mn, x, sig.a, sig.ap), mnx, mny);
        }
      }
      for (const ResHom& phi : act.generator_homs(std::max(sig.a, sig.ap))) {
        int mx = act.act_obj(phi.dom, sig.a), nx = act.act_obj(phi.cod, sig.a);
        int my = act.act_obj(phi.dom, sig.ap), ny = act.act_obj(phi.cod, sig.ap);
        if (mx > cap_x || nx > cap_x || my > cap_x || ny > cap_x) continue;
        Fn phiX = act.act_morphism(phi, sig.a);
        Fn phiY = act.act_morphism(phi, sig.ap);
        Rep lhs = P.dimap(phiX, id_fn(ny),
                          P.zeta(phi.cod, x, sig.a, sig.ap));
        Rep rhs = P.dimap(id_fn(mx), phiY, P.zeta(phi.dom, x, sig.a, sig.ap));
        ++din.total;
        din.ok += P.key(lhs, mx, ny) == P.key(rhs, mx, ny);
      }
    }
    bool pass = rt_ok == static_cast<int>(tab.class_count()) &&
                nat.ok == nat.total && din.ok == din.total &&
                unit.ok == unit.total && tens.ok == tens.total;
    json squares = json::object();
    for (const Square* sq : {&nat, &din, &unit, &tens})
      squares[sq->name] = json{{"pass", sq->ok}, {"total", sq->total}};
    json out{{"action", action_name(act.kind)},
             {"sig", to_json(sig)},
             {"classes", tab.class_count()},
             {"roundtrip_ok", rt_ok},
             {"squares", squares},
             {"pass", pass}};
    if (format == "json")
      std::cout << out.dump(2) << "\n";
    else
      std::cout << (pass ? "PASS" : "FAIL") << " roundtrip: " << rt_ok << "/"
                << tab.class_count() << " classes, squares " << squares.dump()
                << "\n";
    return pass ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const AuditFailure& e) {
    std::cerr << "audit failure: " << e.what() << "\n";
    return 3;
  } catch (const DomainMismatch& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
