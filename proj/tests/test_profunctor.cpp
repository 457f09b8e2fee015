#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optikit/profunctor.hpp>

#include <set>

using namespace optikit;

TEST_CASE("Tambara structure: dimap functoriality, strength coherence, "
          "mutation rejection") {
  for (ActionKind kind : {ActionKind::Product, ActionKind::Coproduct}) {
    Action act{kind};
    TambaraProf P{act, 2, 2};
    auto reps = enumerate_cell_reps(act, 2, 2, 2, 2, 2);
    // the bounded cell covers all 64 classes
    {
      std::set<ClassKey> ks;
      for (const Rep& r : reps) ks.insert(P.key(r, 2, 2));
      CHECK(ks.size() == 64);
    }
    Fn f1 = decode_fn(2, 2, 1), f2 = decode_fn(2, 2, 2);
    Fn g1 = decode_fn(2, 2, 2), g2 = decode_fn(2, 2, 1);
    std::vector<Residual> ms = act.enumerate_residuals(2);
    for (const Rep& r : reps) {
      CHECK(P.key(P.dimap(id_fn(2), id_fn(2), r), 2, 2) == P.key(r, 2, 2));
      CHECK(P.key(P.dimap(f2, g2, P.dimap(f1, g1, r)), 2, 2) ==
            P.key(P.dimap(compose(f1, f2), compose(g2, g1), r), 2, 2));
      CHECK(P.key(P.zeta(act.unit(), r, 2, 2), 2, 2) == P.key(r, 2, 2));
      for (const Residual& m : ms) {
        int mx = act.act_obj(m, 2);
        if (mx > 4) continue;
        Rep zr = P.zeta(m, r, 2, 2);
        Fn Mf = act.act_left(m, KHom{2, 2, f1}).fn;
        Fn Mg = act.act_left(m, KHom{2, 2, g1}).fn;
        CHECK(P.key(P.zeta(m, P.dimap(f1, g1, r), 2, 2), mx, mx) ==
              P.key(P.dimap(Mf, Mg, zr), mx, mx));
        for (const Residual& n : ms) {
          Residual mn = act.residual_tensor(m, n);
          int nx = act.act_obj(n, 2), mnx = act.act_obj(mn, 2);
          if (nx > 4 || mnx > 4) continue;
          Rep two = P.zeta(m, P.zeta(n, r, 2, 2), nx, nx);
          Fn med = act.residual_tensor_mediator(m, n, 2);
          Rep relab = P.dimap(invert_bijection(med), med, two);
          CHECK(P.key(relab, mnx, mnx) == P.key(P.zeta(mn, r, 2, 2), mnx, mnx));
        }
      }
      for (const ResHom& phi : act.generator_homs(2)) {
        int mx = act.act_obj(phi.dom, 2), nx = act.act_obj(phi.cod, 2);
        if (mx > 4 || nx > 4) continue;
        Fn phiX = act.act_morphism(phi, 2);
        CHECK(P.key(P.dimap(phiX, id_fn(nx), P.zeta(phi.cod, r, 2, 2)), mx,
                    nx) ==
              P.key(P.dimap(id_fn(mx), phiX, P.zeta(phi.dom, r, 2, 2)), mx,
                    nx));
      }
    }
    // a corrupted strength breaks naturality or dinaturality
    {
      const Rep& r = reps[3];
      Residual m{2, 0};
      Rep bad = P.zeta(m, r, 2, 2);
      bad.r.fn.tab[0] = (bad.r.fn.tab[0] + 1) % bad.r.fn.cod;
      bool broken = false;
      for (const ResHom& phi : act.generator_homs(2)) {
        if (!(phi.dom == m)) continue;
        int mx = act.act_obj(phi.dom, 2), nx = act.act_obj(phi.cod, 2);
        if (nx > 4) continue;
        Fn phiX = act.act_morphism(phi, 2);
        Rep lhs = P.dimap(phiX, id_fn(nx), P.zeta(phi.cod, r, 2, 2));
        if (!(P.key(lhs, mx, nx) == P.key(P.dimap(id_fn(mx), phiX, bad), mx,
                                          nx))) {
          broken = true;
          break;
        }
      }
      if (!broken) {
        int mx = act.act_obj(m, 2);
        Fn Mf = act.act_left(m, KHom{2, 2, f1}).fn;
        Fn Mg = act.act_left(m, KHom{2, 2, g1}).fn;
        broken = !(P.key(P.zeta(m, P.dimap(f1, g1, r), 2, 2), mx, mx) ==
                   P.key(P.dimap(Mf, Mg, bad), mx, mx));
      }
      CHECK(broken);
    }
  }
}

TEST_CASE("optics round-trip through extensional transformations") {
  Action act = product_action();
  Sig g{2, 2, 2, 2};
  OpticTable tab = build_quotient(act, g, 3);
  TambaraProf P{act, 2, 2};
  auto cells = enumerate_cell_reps(act, 2, 2, 2, 2, 1);
  std::set<int> images;
  for (size_t c = 0; c < tab.class_count(); ++c) {
    Rep p = tab.canon(static_cast<int>(c));
    ProfTransformation t{act, p, 2, 2, 2, 2};
    Rep back = profunctor_to_optic(t);
    CHECK(tab.class_of(back) == static_cast<int>(c));
    images.insert(tab.class_of(back));
    // naturality of the transformation: it commutes with postcomposition
    if (c < 8) {
      for (size_t i = 0; i < cells.size(); i += 11)
        for (size_t j = 0; j < cells.size(); j += 13) {
          const Rep& q = cells[i];
          const Rep& q0 = cells[j];
          Rep lhs = compose_optics(act, p, compose_optics(act, q, q0, 2, 2),
                                   2, 2);
          Rep rhs = compose_optics(act, t.apply(q, 2, 2), q0, 2, 2);
          CHECK(P.key(lhs, 2, 2) == P.key(rhs, 2, 2));
        }
    }
    // the evaluator form (strength then dimap) is the same transformation
    for (size_t i = 0; i < cells.size(); i += 9) {
      const Rep& q = cells[i];
      CHECK(P.key(P.dimap(p.l.fn, p.r.fn, P.zeta(p.m, q, 2, 2)), 2, 2) ==
            P.key(t.apply(q, 2, 2), 2, 2));
    }
  }
  CHECK(images.size() == tab.class_count());
}

TEST_CASE("comonoid homomorphisms are exactly the lawful optics") {
  struct Cfg {
    Action act;
    int bound;
    int chain_bound;
  };
  const Cfg cfgs[] = {{product_action(), 3, 2},
                      {coproduct_action(), 3, 2},
                      {trivial_action(), 1, 1},
                      {affine_action(), 4, 1}};
  Sig g{2, 2, 2, 2};
  for (const Cfg& cfg : cfgs) {
    OpticTable tab = build_quotient(cfg.act, g, cfg.bound);
    for (size_t c = 0; c < tab.class_count(); ++c) {
      Rep p = tab.canon(static_cast<int>(c));
      bool lawful = is_lawful(cfg.act, p, 2, 2, cfg.chain_bound).lawful;
      CHECK(is_comonoid_homomorphism(cfg.act, p, 2, 2) == lawful);
    }
  }
}

TEST_CASE("counit and comultiplication of the boundary comonoid") {
  Action act = product_action();
  Sig g{2, 2, 2, 2};
  OpticTable tab = build_quotient(act, g, 3);
  // the counit of the identity optic is the identity morphism, and the
  // comultiplication squares commute for the identity (it is lawful)
  Rep idp = identity_optic(act, 2);
  CHECK(equal_fn(comonoid_counit(act, idp), id_fn(2)));
  CHECK(is_comonoid_homomorphism(act, idp, 2, 2));
  // a non-lawful class fails at least one square
  int failing = 0;
  for (size_t c = 0; c < tab.class_count(); ++c) {
    Rep p = tab.canon(static_cast<int>(c));
    if (!is_lawful(act, p, 2, 2, 2).lawful &&
        !is_comonoid_homomorphism(act, p, 2, 2))
      ++failing;
  }
  CHECK(failing == 62);
}
