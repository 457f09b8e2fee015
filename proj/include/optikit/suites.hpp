#pragma once
// Named check suites shared by the CLI (`check <id>`) and the acceptance
// test binary.  Each suite verifies one headline property of the library at
// desk scale and reports pass/fail with details.

#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "json_io.hpp"
#include "profunctor.hpp"

namespace optikit {

struct SuiteResult {
  std::string id;
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAIL: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

struct SuiteConfig {
  int seed = 0;
  uint64_t table_cap = uint64_t(1) << 25;
  int funlist_cap = 4;
};

namespace suites {

inline uint64_t ipow(uint64_t b, uint64_t e) { return checked_pow(b, e); }

inline int quotient_bound(ActionKind k, const Sig& g) {
  switch (k) {
    case ActionKind::Trivial: return 1;
    case ActionKind::Affine:
      return std::max({2, g.sp, static_cast<int>(ipow(g.sp, g.ap))});
    default: return std::max({g.s, g.sp, 2}) + 1;
  }
}

inline uint64_t concrete_count(ActionKind k, const Sig& g) {
  switch (k) {
    case ActionKind::Product:  // Get x Put
      return checked_mul(ipow(g.a, g.s), ipow(g.sp, uint64_t(g.s) * g.ap));
    case ActionKind::Coproduct:  // Matching x Review
      return checked_mul(ipow(uint64_t(g.sp) + g.a, g.s), ipow(g.sp, g.ap));
    case ActionKind::Trivial:  // forward x backward
      return checked_mul(ipow(g.a, g.s), ipow(g.sp, g.ap));
    case ActionKind::Affine:  // step
      return ipow(uint64_t(g.sp) + ipow(g.sp, g.ap) * g.a, g.s);
    default:
      throw DomainMismatch("no closed-form concrete count for this instance");
  }
}

// 1. Class count equals the concrete cardinality; the concretization map is
// constant on classes and injective across classes.
inline SuiteResult quotient_concrete(const SuiteConfig&) {
  SuiteResult r{"quotient-concrete"};
  const ActionKind kinds[] = {ActionKind::Product, ActionKind::Coproduct,
                              ActionKind::Trivial, ActionKind::Affine};
  const uint64_t frozen[] = {64, 64, 16, 100};
  for (size_t ki = 0; ki < 4; ++ki) {
    Action act{kinds[ki]};
    Sig g{2, 2, 2, 2};
    OpticTable tab = build_quotient(act, g, quotient_bound(kinds[ki], g));
    std::ostringstream os;
    os << action_name(kinds[ki]) << " at (2,2,2,2): " << tab.class_count()
       << " classes";
    r.note(os.str());
    r.check(tab.class_count() == frozen[ki],
            std::string(action_name(kinds[ki])) + " frozen count at (2,2,2,2)");
    r.check(tab.class_count() == concrete_count(kinds[ki], g),
            std::string(action_name(kinds[ki])) + " concrete cardinality");
    // constancy + injectivity of the concretization, via round-trip and keys
    std::set<ClassKey> keys;
    for (size_t c = 0; c < tab.class_count(); ++c) {
      Rep rep = tab.canon(static_cast<int>(c));
      r.check(tab.class_of(abstractify(act, concretize(act, rep, g))) ==
                  static_cast<int>(c),
              "concretize/abstractify preserves the class");
      keys.insert(class_key(act, rep, g));
    }
    r.check(keys.size() == tab.class_count(), "concretization injective");
    for (int s = 1; s <= 2; ++s)
      for (int sp = 1; sp <= 2; ++sp)
        for (int a = 1; a <= 2; ++a)
          for (int ap = 1; ap <= 2; ++ap) {
            Sig gg{s, sp, a, ap};
            OpticTable t2 = build_quotient(act, gg, quotient_bound(kinds[ki], gg));
            r.check(t2.class_count() == concrete_count(kinds[ki], gg),
                    std::string(action_name(kinds[ki])) + " count in {1,2}^4");
          }
  }
  return r;
}

// 2. Class counts are identical at bound B and B+1.
inline SuiteResult bound_stability(const SuiteConfig&) {
  SuiteResult r{"bound-stability"};
  const ActionKind kinds[] = {ActionKind::Product, ActionKind::Coproduct,
                              ActionKind::Trivial, ActionKind::Affine};
  for (ActionKind k : kinds) {
    Action act{k};
    for (int s = 1; s <= 2; ++s)
      for (int a = 1; a <= 2; ++a) {
        Sig g{s, s, a, a};
        int b = quotient_bound(k, g);
        try {
          bound_stability_audit(act, g, b);
        } catch (const AuditFailure& e) {
          r.check(false, std::string(action_name(k)) + " stability: " + e.what());
        }
      }
    Sig g{2, 2, 2, 2};
    try {
      bound_stability_audit(act, g, quotient_bound(k, g));
    } catch (const AuditFailure& e) {
      r.check(false, std::string(action_name(k)) + " stability at (2,2,2,2): " +
                         e.what());
    }
  }
  r.note("counts stable at B+1 for every audited configuration");
  return r;
}

// 3. Identity and associativity of composition at class level.
inline SuiteResult category_axioms(const SuiteConfig& cfg) {
  SuiteResult r{"category-axioms"};
  const ActionKind kinds[] = {ActionKind::Product, ActionKind::Coproduct,
                              ActionKind::Trivial, ActionKind::Affine};
  for (ActionKind k : kinds) {
    Action act{k};
    // exhaustive over the chain (1,1) -> (1,1) -> (2,2) -> (2,2)
    int rb = k == ActionKind::Trivial ? 1 : (k == ActionKind::Affine ? 1 : 2);
    auto ps = enumerate_cell_reps(act, 1, 1, 1, 1, rb);
    auto qs = enumerate_cell_reps(act, 1, 1, 2, 2, rb);
    auto rs = enumerate_cell_reps(act, 2, 2, 2, 2, rb);
    for (const Rep& p : ps)
      for (const Rep& q : qs)
        for (const Rep& rr : rs) {
          Rep left = compose_optics(act, compose_optics(act, p, q, 2, 2), rr, 2, 2);
          Rep right = compose_optics(act, p, compose_optics(act, q, rr, 2, 2), 2, 2);
          r.check(class_key(act, left, Sig{1, 1, 2, 2}) ==
                      class_key(act, right, Sig{1, 1, 2, 2}),
                  "associativity (exhaustive chain)");
        }
    Rep id2 = identity_optic(act, 2);
    for (const Rep& p : rs) {
      Sig g{2, 2, 2, 2};
      r.check(class_key(act, compose_optics(act, id2, p, 2, 2), g) ==
                  class_key(act, p, g),
              "left identity");
      r.check(class_key(act, compose_optics(act, p, id2, 2, 2), g) ==
                  class_key(act, p, g),
              "right identity");
    }
    // 200 seeded random triples at sizes 2
    std::mt19937 rng(static_cast<unsigned>(cfg.seed));
    auto all2 = enumerate_cell_reps(act, 2, 2, 2, 2, rb);
    std::uniform_int_distribution<size_t> pick(0, all2.size() - 1);
    for (int t = 0; t < 200; ++t) {
      const Rep& p = all2[pick(rng)];
      const Rep& q = all2[pick(rng)];
      const Rep& rr = all2[pick(rng)];
      Rep left = compose_optics(act, compose_optics(act, p, q, 2, 2), rr, 2, 2);
      Rep right = compose_optics(act, p, compose_optics(act, q, rr, 2, 2), 2, 2);
      r.check(class_key(act, left, Sig{2, 2, 2, 2}) ==
                  class_key(act, right, Sig{2, 2, 2, 2}),
              "associativity (seeded triples)");
    }
  }
  r.note("identity and associativity hold for all tested triples");
  return r;
}

// 4. Quotient lawfulness coincides with the concrete law reports.
inline SuiteResult lens_laws_equiv(const SuiteConfig&) {
  SuiteResult r{"lens-laws-equiv"};
  const ActionKind kinds[] = {ActionKind::Product, ActionKind::Coproduct,
                              ActionKind::Trivial};
  const int expect_lawful[] = {2, 2, 2};
  for (size_t ki = 0; ki < 3; ++ki) {
    Action act{kinds[ki]};
    Sig g{2, 2, 2, 2};
    OpticTable tab = build_quotient(act, g, quotient_bound(kinds[ki], g));
    ChainTable ct = build_chain_table(act, 2, 2, 2,
                                      kinds[ki] == ActionKind::Trivial ? 1 : 2);
    int lawful = 0;
    for (size_t c = 0; c < tab.class_count(); ++c) {
      Rep rep = tab.canon(static_cast<int>(c));
      LawVerdict v = is_lawful(act, rep, 2, 2, 2, uint64_t(1) << 24, &ct);
      LawReport lr = concrete_laws(concretize(act, rep, g));
      r.check(lr.all() == v.lawful, "concrete laws match quotient lawfulness");
      lawful += v.lawful;
    }
    std::ostringstream os;
    os << action_name(kinds[ki]) << ": " << lawful << " lawful classes";
    r.note(os.str());
    r.check(lawful == expect_lawful[ki], "lawful class count");
  }
  return r;
}

// 5. The third prism law follows from the first two, exhaustively.
inline SuiteResult prism_third_law(const SuiteConfig&) {
  SuiteResult r{"prism-third-law"};
  long checked = 0;
  for (int s = 1; s <= 3; ++s)
    for (int a = 1; a <= 3; ++a) {
      uint64_t mn = fn_count(s, s + a), rn = fn_count(a, s);
      for (uint64_t mi = 0; mi < mn; ++mi)
        for (uint64_t ri = 0; ri < rn; ++ri) {
          PrismC pr{decode_fn(s, s + a, mi), decode_fn(a, s, ri)};
          LawReport lr = concrete_laws(ConcreteOptic{Sig{s, s, a, a}, pr});
          bool l1 = lr.laws[0].second, l2 = lr.laws[1].second,
               l3 = lr.laws[2].second;
          if (l1 && l2) {
            ++checked;
            r.check(l3, "third law implied by the first two");
          }
        }
    }
  std::ostringstream os;
  os << checked << " two-law prisms checked, sizes <= 3";
  r.note(os.str());
  return r;
}

// 6. Lawfulness is closed under composition, tensor, and change of base
// along X |-> X x X.
inline SuiteResult lawful_closure(const SuiteConfig&) {
  SuiteResult r{"lawful-closure"};
  const ActionKind kinds[] = {ActionKind::Product, ActionKind::Coproduct,
                              ActionKind::Trivial, ActionKind::Affine};
  for (ActionKind k : kinds) {
    Action act{k};
    Sig g{2, 2, 2, 2};
    OpticTable tab = build_quotient(act, g, quotient_bound(k, g));
    std::vector<Rep> lawful;
    for (size_t c = 0; c < tab.class_count(); ++c) {
      Rep rep = tab.canon(static_cast<int>(c));
      if (is_lawful(act, rep, 2, 2, 2).lawful) lawful.push_back(rep);
    }
    for (const Rep& p : lawful)
      for (const Rep& q : lawful) {
        Rep pq = compose_optics(act, p, q, 2, 2);
        r.check(is_lawful(act, pq, 2, 2, 2).lawful,
                "composite of lawful optics is lawful");
      }
    if (k == ActionKind::Product) {
      for (const Rep& p : lawful)
        for (const Rep& q : lawful) {
          Rep t = tensor_optics(act, p, g, q, g);
          r.check(is_lawful(act, t, 4, 4, 2).lawful,
                  "tensor of lawful optics is lawful");
          Rep fp = map_optic(act, diagonal_functor(), p, g);
          r.check(is_lawful(act, fp, 4, 4, 2).lawful,
                  "diagonal-functor image of a lawful optic is lawful");
        }
    }
    std::ostringstream os;
    os << action_name(k) << ": closure over " << lawful.size()
       << " lawful classes";
    r.note(os.str());
  }
  return r;
}

// 7. The teleological structure: costate bijection, the four counit squares,
// and the canonical decomposition of every optic.
inline SuiteResult teleological(const SuiteConfig&) {
  SuiteResult r{"teleological"};
  Action act = product_action();
  // costates (S, S') -> (I, I) biject with plain morphisms S -> S'
  {
    int s = 2, sp = 3;
    r.check(build_quotient(act, Sig{s, sp, 1, 1}, 3).class_count() ==
                fn_count(s, sp),
            "costate count equals hom-set size");
    for (uint64_t fi = 0; fi < fn_count(s, sp); ++fi) {
      Fn f = decode_fn(s, sp, fi);
      Rep cs = morphism_to_costate(act, KHom{s, sp, f});
      r.check(equal_fn(costate_to_morphism(act, cs).fn, f),
              "costate/morphism round-trip");
    }
  }
  auto costate_of = [&](const Rep& p) { return costate_to_morphism(act, p).fn; };
  int s = 2, sp = 2, t = 2, tp = 2;
  Rep idX = iota(act, id_fn(s), id_fn(sp));          // identity on (S, S')
  Rep idXstar = iota(act, id_fn(sp), id_fn(s));      // identity on (S', S)
  Rep idYstar = iota(act, id_fn(tp), id_fn(t));      // identity on (T', T)
  Rep epsX = counit_optic(act, s, sp);
  Rep epsY = counit_optic(act, t, tp);
  Sig sigX{s, sp, s, sp}, sigXstar{sp, s, sp, s}, sigYstar{tp, t, tp, t};
  // extranaturality for every dualisable morphism iota(u, v)
  for (uint64_t ui = 0; ui < fn_count(s, t); ++ui)
    for (uint64_t vi = 0; vi < fn_count(tp, sp); ++vi) {
      Fn u = decode_fn(s, t, ui), v = decode_fn(tp, sp, vi);
      Rep f = iota(act, u, v);                       // (S,S') -> (T,T')
      Rep fstar = iota(act, v, u);                   // (T',T) -> (S',S)
      Sig sigf{s, sp, t, tp};
      Rep lhs_in = switched_tensor_optics(act, f, sigf, idYstar, sigYstar);
      Rep lhs = compose_optics(act, lhs_in, epsY, 1, 1);
      Rep rhs_in = switched_tensor_optics(act, idX, sigX, fstar,
                                          Sig{tp, t, sp, s});
      Rep rhs = compose_optics(act, rhs_in, epsX, 1, 1);
      r.check(equal_fn(costate_of(lhs), costate_of(rhs)),
              "counit extranaturality square");
    }
  // symmetry square
  {
    Rep sym = iota(act, swap_fn(sp, s), swap_fn(s, sp));  // X* (x)~ X -> X (x)~ X*
    Rep lhs = compose_optics(act, sym, epsX, 1, 1);
    r.check(equal_fn(costate_of(lhs), id_fn(sp * s)), "counit symmetry square");
  }
  // monoidality square
  {
    Rep t1 = switched_tensor_optics(act, idX, sigX, epsY, Sig{t * tp, t * tp, 1, 1});
    Rep t2 = switched_tensor_optics(act, t1, Sig{s * t * tp, sp, s, sp}, idXstar,
                                    sigXstar);
    Rep rhs = compose_optics(act, t2, epsX, 1, 1);
    r.check(equal_fn(costate_of(rhs), id_fn(s * t * tp * sp)),
            "counit monoidality square");
  }
  // unit square
  r.check(equal_fn(costate_of(counit_optic(act, 1, 1)), id_fn(1)),
          "counit unit square");
  // decomposition of every optic class at sizes 2, lens and iso actions
  {
    Sig g{2, 2, 2, 2};
    OpticTable tab = build_quotient(act, g, 3);
    for (size_t c = 0; c < tab.class_count(); ++c) {
      Rep p = tab.canon(static_cast<int>(c));
      int m = p.m.a, a = g.a, ap = g.ap;
      Rep j1 = iota(act, compose(swap_fn(m, a), p.l.fn), id_fn(1));
      Rep j2 = iota(act, id_fn(1), compose(p.r.fn, swap_fn(ap, m)));
      Rep inner = switched_tensor_optics(act, j1, Sig{g.s, 1, a * m, 1}, j2,
                                         Sig{1, g.sp, 1, ap * m});
      Rep idA = iota(act, id_fn(a), id_fn(1));
      Rep idAp = iota(act, id_fn(1), id_fn(ap));
      Rep epsM = counit_optic(act, m, 1);
      Rep o1 = switched_tensor_optics(act, idA, Sig{a, 1, a, 1}, epsM,
                                      Sig{m, m, 1, 1});
      Rep outer = switched_tensor_optics(act, o1, Sig{a * m, m, a, 1}, idAp,
                                         Sig{1, ap, 1, ap});
      Rep comp = compose_optics(act, inner, outer, a, ap);
      r.check(tab.class_of(comp) == static_cast<int>(c),
              "canonical decomposition reproduces the optic");
    }
    r.note("decomposition verified for all 64 classes at sizes 2");
  }
  return r;
}

// 8. Optics are exactly the extensional Tambara transformations; the
// structure maps satisfy the coherence axioms and reject a mutation.
inline SuiteResult profunctor_roundtrip(const SuiteConfig&) {
  SuiteResult r{"profunctor-roundtrip"};
  for (ActionKind kind : {ActionKind::Product, ActionKind::Coproduct}) {
    Action act{kind};
    TambaraProf P{act, 2, 2};
    auto reps = enumerate_cell_reps(act, 2, 2, 2, 2, 2);
    {
      std::set<ClassKey> ks;
      for (const Rep& x : reps) ks.insert(P.key(x, 2, 2));
      r.check(ks.size() == 64, "cell (2,2) covers all 64 classes");
    }
    Fn f1 = decode_fn(2, 2, 1), f2 = decode_fn(2, 2, 2);
    Fn g1 = decode_fn(2, 2, 2), g2 = decode_fn(2, 2, 1);
    std::vector<Residual> ms = act.enumerate_residuals(2);
    for (const Rep& x : reps) {
      r.check(P.key(P.dimap(id_fn(2), id_fn(2), x), 2, 2) == P.key(x, 2, 2),
              "dimap preserves identities");
      r.check(P.key(P.dimap(f2, g2, P.dimap(f1, g1, x)), 2, 2) ==
                  P.key(P.dimap(compose(f1, f2), compose(g2, g1), x), 2, 2),
              "dimap functoriality");
      r.check(P.key(P.zeta(act.unit(), x, 2, 2), 2, 2) == P.key(x, 2, 2),
              "unit coherence square");
      for (const Residual& m : ms) {
        int mx = act.act_obj(m, 2);
        if (mx > 4) continue;
        Rep zx = P.zeta(m, x, 2, 2);
        Fn Mf = act.act_left(m, KHom{2, 2, f1}).fn;
        Fn Mg = act.act_left(m, KHom{2, 2, g1}).fn;
        r.check(P.key(P.zeta(m, P.dimap(f1, g1, x), 2, 2), mx, mx) ==
                    P.key(P.dimap(Mf, Mg, zx), mx, mx),
                "naturality of the strength");
        for (const Residual& n : ms) {
          Residual mn = act.residual_tensor(m, n);
          int nx = act.act_obj(n, 2), mnx = act.act_obj(mn, 2);
          if (nx > 4 || mnx > 4) continue;
          Rep two = P.zeta(m, P.zeta(n, x, 2, 2), nx, nx);
          Fn med = act.residual_tensor_mediator(m, n, 2);
          Rep relab = P.dimap(invert_bijection(med), med, two);
          r.check(P.key(relab, mnx, mnx) == P.key(P.zeta(mn, x, 2, 2), mnx, mnx),
                  "tensor coherence square");
        }
      }
      for (const ResHom& phi : act.generator_homs(2)) {
        int mx = act.act_obj(phi.dom, 2), nx = act.act_obj(phi.cod, 2);
        if (mx > 4 || nx > 4) continue;
        Fn phiX = act.act_morphism(phi, 2);
        Rep lhs = P.dimap(phiX, id_fn(nx), P.zeta(phi.cod, x, 2, 2));
        Rep rhs = P.dimap(id_fn(mx), phiX, P.zeta(phi.dom, x, 2, 2));
        r.check(P.key(lhs, mx, nx) == P.key(rhs, mx, nx),
                "dinaturality in the residual");
      }
    }
    // mutation rejection
    {
      const Rep& x = reps[3];
      Residual m{2, 0};
      Rep bad = P.zeta(m, x, 2, 2);
      bad.r.fn.tab[0] = (bad.r.fn.tab[0] + 1) % bad.r.fn.cod;
      bool broken = false;
      for (const ResHom& phi : act.generator_homs(2)) {
        if (!(phi.dom == m)) continue;
        int mx = act.act_obj(phi.dom, 2), nx = act.act_obj(phi.cod, 2);
        if (nx > 4) continue;
        Fn phiX = act.act_morphism(phi, 2);
        Rep lhs = P.dimap(phiX, id_fn(nx), P.zeta(phi.cod, x, 2, 2));
        if (!(P.key(lhs, mx, nx) == P.key(P.dimap(id_fn(mx), phiX, bad), mx, nx))) {
          broken = true;
          break;
        }
      }
      if (!broken) {
        int mx = act.act_obj(m, 2);
        Fn Mf = act.act_left(m, KHom{2, 2, f1}).fn;
        Fn Mg = act.act_left(m, KHom{2, 2, g1}).fn;
        broken = !(P.key(P.zeta(m, P.dimap(f1, g1, x), 2, 2), mx, mx) ==
                   P.key(P.dimap(Mf, Mg, bad), mx, mx));
      }
      r.check(broken, "corrupted strength is rejected");
    }
  }
  // round-trip and replay: lens action, all 64 classes
  {
    Action act = product_action();
    Sig g{2, 2, 2, 2};
    OpticTable tab = build_quotient(act, g, 3);
    TambaraProf P{act, 2, 2};
    auto cells = enumerate_cell_reps(act, 2, 2, 2, 2, 1);
    std::set<int> images;
    for (size_t c = 0; c < tab.class_count(); ++c) {
      Rep p = tab.canon(static_cast<int>(c));
      ProfTransformation tr{act, p, 2, 2, 2, 2};
      images.insert(tab.class_of(profunctor_to_optic(tr)));
      r.check(tab.class_of(profunctor_to_optic(tr)) == static_cast<int>(c),
              "round-trip through the transformation");
      // the replay formula (strength then dimap) equals optic composition
      for (size_t i = 0; i < cells.size(); i += 9) {
        const Rep& q = cells[i];
        Rep via_formula = P.dimap(p.l.fn, p.r.fn, P.zeta(p.m, q, 2, 2));
        Rep via_compose = tr.apply(q, 2, 2);
        r.check(P.key(via_formula, 2, 2) == P.key(via_compose, 2, 2),
                "replay formula equals optic composition");
      }
    }
    r.check(images.size() == tab.class_count(),
            "distinct classes give distinct transformations");
  }
  return r;
}

// 9. Comonoid homomorphism <=> lawful.
inline SuiteResult comonoid_lawful(const SuiteConfig&) {
  SuiteResult r{"comonoid-lawful"};
  const ActionKind kinds[] = {ActionKind::Product, ActionKind::Coproduct,
                              ActionKind::Trivial, ActionKind::Affine};
  for (ActionKind k : kinds) {
    Action act{k};
    Sig g{2, 2, 2, 2};
    OpticTable tab = build_quotient(act, g, quotient_bound(k, g));
    int lawful = 0;
    for (size_t c = 0; c < tab.class_count(); ++c) {
      Rep p = tab.canon(static_cast<int>(c));
      bool lv = is_lawful(act, p, 2, 2, k == ActionKind::Affine ? 1 : 2).lawful;
      r.check(is_comonoid_homomorphism(act, p, 2, 2) == lv,
              "comonoid homomorphism iff lawful");
      lawful += lv;
    }
    std::ostringstream os;
    os << action_name(k) << ": " << lawful << " comonoid homomorphisms";
    r.note(os.str());
  }
  return r;
}

// 10. Coalgebra laws for coordinate traversals, and the equivalence between
// the linear-lens laws and the three lens laws.
inline SuiteResult coalgebra_laws(const SuiteConfig& cfg) {
  SuiteResult r{"coalgebra-laws"};
  for (int a = 1; a <= 2; ++a)
    for (int n = 0; n <= 3; ++n) {
      TraversalC tr = coordinate_traversal(a, n, cfg.funlist_cap);
      int s = static_cast<int>(ipow(a, n));
      r.check(concrete_laws(ConcreteOptic{Sig{s, s, a, a}, tr}).all(),
              "coordinate traversal satisfies the coalgebra laws");
    }
  // all linear lenses at sizes 2: Rezip/ZipZip <=> GetPut/PutGet/PutPut
  {
    Sig g{2, 2, 2, 2};
    Action act = product_action();
    OpticTable tab = build_quotient(act, g, 3);
    int hom = static_cast<int>(hom_size(g.ap, g.sp));
    uint64_t total = fn_count(g.s, hom * g.a);
    int lawful_linear = 0;
    for (uint64_t i = 0; i < total; ++i) {
      ConcreteOptic lin{g, LinearC{decode_fn(g.s, hom * g.a, i)}};
      bool linlaws = concrete_laws(lin).all();
      ConcreteOptic lens{g, detail::as_lens(lin)};
      r.check(linlaws == concrete_laws(lens).all(),
              "linear-lens laws iff the three lens laws");
      if (linlaws) {
        ++lawful_linear;
        // a lawful linear lens is a coalgebra: its affine/traversal images
        // satisfy the counit and comultiplication laws
        r.check(concrete_laws(convert(lens, Flavour::Affine)).all(),
                "lawful linear lens is a step-coalgebra");
        r.check(concrete_laws(convert(lens, Flavour::Traversal)).all(),
                "lawful linear lens is an unzip-coalgebra");
        r.check(is_lawful(act, abstractify(act, lin), 2, 2, 2).lawful,
                "lawful linear lens is lawful as an optic");
      }
    }
    std::ostringstream os;
    os << lawful_linear << " lawful linear lenses at sizes 2";
    r.note(os.str());
  }
  return r;
}

// 11. Stateful lenses: a hand-built lawful example, closure of the laws
// under the composition listing, and mget of the composite as a Kleisli
// composite.
inline SuiteResult stateful_lenses(const SuiteConfig&) {
  SuiteResult r{"stateful-lenses"};
  int q = 2;
  Sig g{2, 2, 2, 2};
  // mget s = \q0 -> (s xor q0, q0);  mput s q a = \q0 -> (a xor q0, q0)
  StatefulC st{q, Fn{2, 16, {}}, Fn{8, 16, {}}};
  for (int s = 0; s < 2; ++s) {
    uint64_t e = 0, w = 1;
    for (int q0 = 0; q0 < 2; ++q0) {
      e += static_cast<uint64_t>(pair_ix(s ^ q0, q0, 2)) * w;
      w *= 4;
    }
    st.mget.tab.push_back(static_cast<int>(e));
  }
  for (int s = 0; s < 2; ++s)
    for (int qa = 0; qa < 2; ++qa)
      for (int a = 0; a < 2; ++a) {
        (void)s;
        (void)qa;
        uint64_t e = 0, w = 1;
        for (int q0 = 0; q0 < 2; ++q0) {
          e += static_cast<uint64_t>(pair_ix(a ^ q0, q0, 2)) * w;
          w *= 4;
        }
        st.mput.tab.push_back(static_cast<int>(e));
      }
  LawReport lr = concrete_laws(ConcreteOptic{g, st});
  for (auto& [n, ok] : lr.laws) r.check(ok, "hand-built stateful lens: " + n);
  r.check(!equal_fn(st.mget, Fn{2, 16, {pair_ix(0, 0, 2) * 1, 0}}),
          "example is not degenerate");
  StatefulC comp = compose_stateful(st, g, st, g);
  LawReport lc = concrete_laws(ConcreteOptic{g, comp});
  for (auto& [n, ok] : lc.laws) r.check(ok, "composite stateful lens: " + n);
  // composite mget is the Kleisli composition of the two mgets
  Action act = state_action(q);
  KHom inner{2, 2, st.mget};
  KHom outer{2, 2, st.mget};
  KHom kleisli = act.kcomp(outer, inner);
  r.check(equal_fn(kleisli.fn, comp.mget), "composite mget is Kleisli mget");
  // existential round-trip
  Rep rep = abstractify(act, ConcreteOptic{g, st});
  ConcreteOptic back = concretize(act, rep, g);
  const StatefulC& b = std::get<StatefulC>(back.body);
  r.check(equal_fn(b.mget, st.mget) && equal_fn(b.mput, st.mput),
          "stateful concretize/abstractify round-trip");
  return r;
}

// 12. iota is not faithful: with S empty, distinct right legs give the same
// optic.
inline SuiteResult iota_nonfaithful(const SuiteConfig&) {
  SuiteResult r{"iota-nonfaithful"};
  Action act = product_action();
  Sig g{0, 2, 2, 2};
  OpticTable tab = build_quotient(act, g, 3);
  r.note("lens classes at (0,2,2,2): " + std::to_string(tab.class_count()));
  Fn f{0, 2, {}};
  Fn ga = id_fn(2), gb = constant_fn(2, 2, 0);
  r.check(!equal_fn(ga, gb), "the two right legs differ");
  r.check(tab.class_of(iota(act, f, ga)) == tab.class_of(iota(act, f, gb)),
          "iota identifies them");
  return r;
}

// 13. Every lawful lens decomposes through its constant complement.
inline SuiteResult constant_complement(const SuiteConfig&) {
  SuiteResult r{"constant-complement"};
  Action act = product_action();
  for (int s : {2, 4}) {
    Sig g{s, s, 2, 2};
    int found = 0;
    uint64_t gn = fn_count(s, 2), pn = fn_count(s * 2, s);
    for (uint64_t gi = 0; gi < gn; ++gi)
      for (uint64_t pi = 0; pi < pn; ++pi) {
        LensC ln{decode_fn(s, 2, gi), decode_fn(s * 2, s, pi)};
        if (!concrete_laws(ConcreteOptic{g, ln}).all()) continue;
        ++found;
        Complement cm = lens_complement(ln, g);
        r.check(equal_fn(compose(cm.bwd, cm.fwd), id_fn(s)),
                "complement: bwd after fwd is the identity");
        r.check(equal_fn(compose(cm.fwd, cm.bwd), id_fn(cm.c * 2)),
                "complement: fwd after bwd is the identity");
        Rep crep{Residual{cm.c, 0}, KHom{s, cm.c * 2, cm.fwd},
                 KHom{cm.c * 2, s, cm.bwd}};
        Rep lrep = abstractify(act, ConcreteOptic{g, ln});
        r.check(class_key(act, crep, g) == class_key(act, lrep, g),
                "complement pair represents the same class");
      }
    std::ostringstream os;
    os << found << " lawful lenses at (" << s << ",2)";
    r.note(os.str());
  }
  return r;
}

// Extra check: for every lawful class at sizes 2 the bounded search finds a
// representative whose inner endomorphism is strictly of the form psi . A.
inline SuiteResult onthenose(const SuiteConfig&) {
  SuiteResult r{"onthenose"};
  const ActionKind kinds[] = {ActionKind::Product, ActionKind::Coproduct,
                              ActionKind::Trivial};
  for (ActionKind k : kinds) {
    Action act{k};
    Sig g{2, 2, 2, 2};
    OpticTable tab = build_quotient(act, g, quotient_bound(k, g));
    int found = 0;
    for (size_t c = 0; c < tab.class_count(); ++c) {
      Rep p = tab.canon(static_cast<int>(c));
      if (!is_lawful(act, p, 2, 2, k == ActionKind::Trivial ? 1 : 2).lawful)
        continue;
      OnTheNoseResult res =
          onthenose_search(act, p, 2, 2, k == ActionKind::Trivial ? 1 : 2);
      r.check(res.status == OnTheNoseResult::Status::Found,
              "strict representative found for a lawful class");
      if (res.status != OnTheNoseResult::Status::Found) continue;
      ++found;
      r.check(tab.class_of(res.rep) == static_cast<int>(c),
              "strict representative stays in the class");
      Fn psiA = act.act_morphism(ResHom{res.rep.m, res.rep.m, res.psi}, 2);
      r.check(equal_fn(compose(res.rep.l.fn, res.rep.r.fn), psiA),
              "inner endomorphism is psi . A on the nose");
    }
    std::ostringstream os;
    os << action_name(k) << ": " << found << " strict representatives";
    r.note(os.str());
  }
  return r;
}

using SuiteFn = SuiteResult (*)(const SuiteConfig&);

inline const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> reg = {
      {"quotient-concrete", quotient_concrete},
      {"bound-stability", bound_stability},
      {"category-axioms", category_axioms},
      {"lens-laws-equiv", lens_laws_equiv},
      {"prism-third-law", prism_third_law},
      {"lawful-closure", lawful_closure},
      {"teleological", teleological},
      {"profunctor-roundtrip", profunctor_roundtrip},
      {"comonoid-lawful", comonoid_lawful},
      {"coalgebra-laws", coalgebra_laws},
      {"stateful-lenses", stateful_lenses},
      {"iota-nonfaithful", iota_nonfaithful},
      {"constant-complement", constant_complement},
      {"onthenose", onthenose},
  };
  return reg;
}

inline SuiteResult run_suite(const std::string& id, const SuiteConfig& cfg) {
  for (auto& [name, fn] : registry())
    if (name == id) return fn(cfg);
  throw DomainMismatch("unknown check suite '" + id + "'");
}

}  // namespace suites
}  // namespace optikit
