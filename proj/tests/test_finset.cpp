#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optikit/finset.hpp>

using namespace optikit;

TEST_CASE("identity and composition") {
  for (int n = 0; n <= 4; ++n) {
    Fn id = id_fn(n);
    CHECK(compose(id, id) == id);
  }
  // associativity, exhaustively at sizes <= 3
  for (int a = 0; a <= 2; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int c = 1; c <= 3; ++c)
        for (const Fn& f : enumerate_functions(a, b))
          for (const Fn& g : enumerate_functions(b, c)) {
            CHECK(compose(g, compose(f, id_fn(a))) == compose(g, f));
            CHECK(compose(compose(g, f), id_fn(a)) == compose(g, f));
            for (const Fn& h : enumerate_functions(c, 2))
              CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
          }
}

TEST_CASE("enumeration is lexicographic and complete") {
  auto fns = enumerate_functions(2, 2);
  REQUIRE(fns.size() == 4);
  CHECK(fns[0].tab == std::vector<int>{0, 0});
  CHECK(fns[1].tab == std::vector<int>{0, 1});
  CHECK(fns[2].tab == std::vector<int>{1, 0});
  CHECK(fns[3].tab == std::vector<int>{1, 1});
  for (uint64_t i = 0; i < 4; ++i) CHECK(encode_fn(fns[i]) == i);
  CHECK(fn_count(0, 0) == 1);
  CHECK(fn_count(3, 0) == 0);
  CHECK(fn_count(0, 5) == 1);
  CHECK(enumerate_functions(3, 2).size() == 8);
}

TEST_CASE("product universal property, sizes <= 3") {
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      auto s = build_structured(StructKind::Product, a, b);
      CHECK(s.carrier == a * b);
      for (int x = 1; x <= 2; ++x)
        for (const Fn& f : enumerate_functions(x, a))
          for (const Fn& g : enumerate_functions(x, b)) {
            Fn h = pair_fn(f, g);
            CHECK(compose(s.med1, h) == f);
            CHECK(compose(s.med2, h) == g);
            // uniqueness: any mediator with the same projections equals h
            for (const Fn& k : enumerate_functions(x, s.carrier))
              if (compose(s.med1, k) == f && compose(s.med2, k) == g)
                CHECK(k == h);
          }
    }
}

TEST_CASE("coproduct universal property, sizes <= 3") {
  for (int a = 0; a <= 2; ++a)
    for (int b = 1; b <= 3; ++b) {
      auto s = build_structured(StructKind::Coproduct, a, b);
      CHECK(s.carrier == a + b);
      for (int x = 1; x <= 2; ++x)
        for (const Fn& f : enumerate_functions(a, x))
          for (const Fn& g : enumerate_functions(b, x)) {
            Fn h = copair_fn(f, g);
            CHECK(compose(h, s.med1) == f);
            CHECK(compose(h, s.med2) == g);
          }
    }
}

TEST_CASE("exponential: currying is inverse to eval-composition") {
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int c = 1; c <= 2; ++c) {
        Fn ev = eval_fn(a, b);
        for (const Fn& h : enumerate_functions(c * a, b)) {
          Fn cur = curry_fn(h, c, a);
          // eval . (cur x id_A) == h
          Fn back = compose(ev, tensor_fn(cur, id_fn(a)));
          CHECK(back == h);
        }
      }
}

TEST_CASE("canonical encodings are strict for the unitors and associator") {
  // 1 x A and A x 1 are literally A under pair_ix
  for (int a = 0; a < 5; ++a) {
    CHECK(pair_ix(0, a, 5) == a);
    CHECK(pair_ix(a, 0, 1) == a);
  }
  // (A x B) x C and A x (B x C) share indices
  int A = 2, B = 3, C = 4;
  for (int x = 0; x < A; ++x)
    for (int y = 0; y < B; ++y)
      for (int z = 0; z < C; ++z)
        CHECK(pair_ix(pair_ix(x, y, B), z, C) ==
              pair_ix(x, pair_ix(y, z, C), B * C));
}

TEST_CASE("symmetry is an involution and natural") {
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      Fn s = swap_fn(a, b);
      CHECK(compose(swap_fn(b, a), s) == id_fn(a * b));
      for (const Fn& f : enumerate_functions(a, 2))
        for (const Fn& g : enumerate_functions(b, 2))
          CHECK(compose(swap_fn(2, 2), tensor_fn(f, g)) ==
                compose(tensor_fn(g, f), s));
    }
}

TEST_CASE("hom encoding round-trips") {
  for (int a = 0; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (const Fn& f : enumerate_functions(a, b)) {
        uint64_t h = hom_encode(f);
        CHECK(hom_decode(h, a, b) == f);
        for (int x = 0; x < a; ++x) CHECK(hom_apply(h, x, b) == f(x));
      }
}
