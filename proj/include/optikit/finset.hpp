#pragma once
// Skeletal finite sets and tabulated functions.
//
// A finite set is identified with {0, ..., size-1}.  All structured carriers
// (products, coproducts, exponentials) are flattened onto this spine with the
// canonical encodings below, which makes the monoidal structure *strict*:
// unitors and associators are identity tables, only symmetries move elements.
//
//   pair        (a, b)  ->  a * |B| + b
//   coproduct   inl a -> a,  inr b -> |A| + b
//   exponential h : A -> B  ->  sum_a h(a) * |B|^a      (digit a, base |B|)

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace optikit {

struct OptikitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainMismatch : OptikitError {
  using OptikitError::OptikitError;
};
struct CapExceeded : OptikitError {
  using OptikitError::OptikitError;
};
struct AuditFailure : OptikitError {
  using OptikitError::OptikitError;
};

struct FiniteSet {
  int size = 0;
  std::vector<std::string> labels;  // optional, |labels| == size when present
};

// A function {0..dom-1} -> {0..cod-1} as a lookup table.
struct Fn {
  int dom = 0;
  int cod = 0;
  std::vector<int> tab;

  int operator()(int x) const { return tab[static_cast<size_t>(x)]; }
  friend bool operator==(const Fn&, const Fn&) = default;
};

inline Fn make_fn(int dom, int cod, std::vector<int> tab) {
  if (static_cast<int>(tab.size()) != dom)
    throw DomainMismatch("table length != dom");
  for (int v : tab)
    if (v < 0 || v >= cod) throw DomainMismatch("table entry out of codomain");
  return Fn{dom, cod, std::move(tab)};
}

inline Fn id_fn(int n) {
  Fn f{n, n, std::vector<int>(static_cast<size_t>(n))};
  std::iota(f.tab.begin(), f.tab.end(), 0);
  return f;
}

// g after f.
inline Fn compose(const Fn& g, const Fn& f) {
  if (f.cod != g.dom) throw DomainMismatch("compose: cod(f) != dom(g)");
  Fn h{f.dom, g.cod, {}};
  h.tab.reserve(static_cast<size_t>(f.dom));
  for (int x = 0; x < f.dom; ++x) h.tab.push_back(g(f(x)));
  return h;
}

inline bool equal_fn(const Fn& f, const Fn& g) { return f == g; }

inline Fn constant_fn(int dom, int cod, int value) {
  return Fn{dom, cod, std::vector<int>(static_cast<size_t>(dom), value)};
}

// ---- counting with overflow protection -----------------------------------

inline uint64_t checked_mul(uint64_t a, uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) throw CapExceeded("count overflow");
  return a * b;
}

inline uint64_t checked_pow(uint64_t base, uint64_t exp) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

// |cod|^|dom| functions dom -> cod (1 when dom = 0, 0 when cod = 0 < dom).
inline uint64_t fn_count(int dom, int cod) {
  return checked_pow(static_cast<uint64_t>(cod), static_cast<uint64_t>(dom));
}

// Functions in lexicographic table order: index is the big-endian base-|cod|
// reading of the table, so index 0 is the all-zeros table.
inline Fn decode_fn(int dom, int cod, uint64_t index) {
  Fn f{dom, cod, std::vector<int>(static_cast<size_t>(dom))};
  for (int i = dom - 1; i >= 0; --i) {
    f.tab[static_cast<size_t>(i)] = static_cast<int>(index % cod);
    index /= cod;
  }
  if (index != 0) throw DomainMismatch("decode_fn: index out of range");
  return f;
}

inline uint64_t encode_fn(const Fn& f) {
  uint64_t idx = 0;
  for (int i = 0; i < f.dom; ++i)
    idx = checked_mul(idx, static_cast<uint64_t>(f.cod)) +
          static_cast<uint64_t>(f.tab[static_cast<size_t>(i)]);
  return idx;
}

inline std::vector<Fn> enumerate_functions(int dom, int cod) {
  uint64_t n = fn_count(dom, cod);
  std::vector<Fn> out;
  out.reserve(static_cast<size_t>(n));
  for (uint64_t i = 0; i < n; ++i) out.push_back(decode_fn(dom, cod, i));
  return out;
}

// ---- product -------------------------------------------------------------

inline int pair_ix(int a, int b, int bsize) { return a * bsize + b; }

inline Fn proj1(int asize, int bsize) {
  Fn f{asize * bsize, asize, {}};
  f.tab.reserve(static_cast<size_t>(f.dom));
  for (int a = 0; a < asize; ++a)
    for (int b = 0; b < bsize; ++b) f.tab.push_back(a);
  return f;
}

inline Fn proj2(int asize, int bsize) {
  Fn f{asize * bsize, bsize, {}};
  f.tab.reserve(static_cast<size_t>(f.dom));
  for (int a = 0; a < asize; ++a)
    for (int b = 0; b < bsize; ++b) f.tab.push_back(b);
  return f;
}

// <f, g> : X -> A x B from f : X -> A, g : X -> B.
inline Fn pair_fn(const Fn& f, const Fn& g) {
  if (f.dom != g.dom) throw DomainMismatch("pair_fn: dom mismatch");
  Fn h{f.dom, f.cod * g.cod, {}};
  h.tab.reserve(static_cast<size_t>(f.dom));
  for (int x = 0; x < f.dom; ++x) h.tab.push_back(pair_ix(f(x), g(x), g.cod));
  return h;
}

// f x g : A x B -> A' x B'.
inline Fn tensor_fn(const Fn& f, const Fn& g) {
  Fn h{f.dom * g.dom, f.cod * g.cod, {}};
  h.tab.reserve(static_cast<size_t>(h.dom));
  for (int a = 0; a < f.dom; ++a)
    for (int b = 0; b < g.dom; ++b)
      h.tab.push_back(pair_ix(f(a), g(b), g.cod));
  return h;
}

// s_{A,B} : A x B -> B x A.
inline Fn swap_fn(int asize, int bsize) {
  Fn f{asize * bsize, bsize * asize, {}};
  f.tab.resize(static_cast<size_t>(f.dom));
  for (int a = 0; a < asize; ++a)
    for (int b = 0; b < bsize; ++b)
      f.tab[static_cast<size_t>(pair_ix(a, b, bsize))] = pair_ix(b, a, asize);
  return f;
}

// ---- coproduct -----------------------------------------------------------

inline Fn inl_fn(int asize, int bsize) {
  Fn f{asize, asize + bsize, {}};
  f.tab.resize(static_cast<size_t>(asize));
  std::iota(f.tab.begin(), f.tab.end(), 0);
  return f;
}

inline Fn inr_fn(int asize, int bsize) {
  Fn f{bsize, asize + bsize, {}};
  f.tab.resize(static_cast<size_t>(bsize));
  std::iota(f.tab.begin(), f.tab.end(), asize);
  return f;
}

// [f, g] : A + B -> X from f : A -> X, g : B -> X.
inline Fn copair_fn(const Fn& f, const Fn& g) {
  if (f.cod != g.cod) throw DomainMismatch("copair_fn: cod mismatch");
  Fn h{f.dom + g.dom, f.cod, f.tab};
  h.tab.insert(h.tab.end(), g.tab.begin(), g.tab.end());
  return h;
}

// f + g : A + B -> A' + B'.
inline Fn coprod_fn(const Fn& f, const Fn& g) {
  Fn h{f.dom + g.dom, f.cod + g.cod, {}};
  h.tab.reserve(static_cast<size_t>(h.dom));
  for (int a = 0; a < f.dom; ++a) h.tab.push_back(f(a));
  for (int b = 0; b < g.dom; ++b) h.tab.push_back(f.cod + g(b));
  return h;
}

// ---- exponential ---------------------------------------------------------

inline uint64_t hom_size(int asize, int bsize) { return fn_count(asize, bsize); }

// Digit a of the encoding of h : A -> B, i.e. h(a).
inline int hom_apply(uint64_t h, int a, int bsize) {
  for (int i = 0; i < a; ++i) h /= static_cast<uint64_t>(bsize);
  return static_cast<int>(h % static_cast<uint64_t>(bsize));
}

inline uint64_t hom_encode(const Fn& f) {
  uint64_t h = 0, w = 1;
  for (int a = 0; a < f.dom; ++a) {
    h += static_cast<uint64_t>(f(a)) * w;
    w = checked_mul(w, static_cast<uint64_t>(f.cod));
  }
  return h;
}

inline Fn hom_decode(uint64_t h, int asize, int bsize) {
  Fn f{asize, bsize, std::vector<int>(static_cast<size_t>(asize))};
  for (int a = 0; a < asize; ++a) {
    f.tab[static_cast<size_t>(a)] = static_cast<int>(h % bsize);
    h /= static_cast<uint64_t>(bsize);
  }
  return f;
}

// eval : B^A x A -> B.
inline Fn eval_fn(int asize, int bsize) {
  uint64_t e = hom_size(asize, bsize);
  if (checked_mul(e, static_cast<uint64_t>(asize)) > (1u << 28))
    throw CapExceeded("eval_fn carrier too large");
  Fn f{static_cast<int>(e) * asize, bsize, {}};
  f.tab.reserve(static_cast<size_t>(f.dom));
  for (uint64_t h = 0; h < e; ++h)
    for (int a = 0; a < asize; ++a) f.tab.push_back(hom_apply(h, a, bsize));
  return f;
}

// curry(h : C x A -> B) : C -> B^A.
inline Fn curry_fn(const Fn& h, int csize, int asize) {
  if (h.dom != csize * asize) throw DomainMismatch("curry_fn: dom mismatch");
  uint64_t e = hom_size(asize, h.cod);
  if (e > (1u << 28)) throw CapExceeded("curry_fn codomain too large");
  Fn f{csize, static_cast<int>(e), {}};
  f.tab.reserve(static_cast<size_t>(csize));
  for (int c = 0; c < csize; ++c) {
    uint64_t enc = 0, w = 1;
    for (int a = 0; a < asize; ++a) {
      enc += static_cast<uint64_t>(h(pair_ix(c, a, asize))) * w;
      w = checked_mul(w, static_cast<uint64_t>(h.cod));
    }
    f.tab.push_back(static_cast<int>(enc));
  }
  return f;
}

// ---- structured carriers -------------------------------------------------

enum class StructKind { Product, Coproduct, Exponential, Unit };

// A carrier built from two parts, together with its mediating tables.
// Product: med1/med2 are the projections; Coproduct: the injections;
// Exponential (B^A for parts (A, B)): med1 is eval : B^A x A -> B.
struct StructuredObject {
  StructKind kind = StructKind::Unit;
  int part1 = 0;
  int part2 = 0;
  int carrier = 1;
  Fn med1;
  Fn med2;
};

inline StructuredObject build_structured(StructKind kind, int a, int b) {
  StructuredObject s{kind, a, b, 0, {}, {}};
  switch (kind) {
    case StructKind::Product:
      s.carrier = a * b;
      s.med1 = proj1(a, b);
      s.med2 = proj2(a, b);
      break;
    case StructKind::Coproduct:
      s.carrier = a + b;
      s.med1 = inl_fn(a, b);
      s.med2 = inr_fn(a, b);
      break;
    case StructKind::Exponential: {
      uint64_t e = hom_size(a, b);
      if (e > (1u << 24)) throw CapExceeded("exponential carrier too large");
      s.carrier = static_cast<int>(e);
      s.med1 = eval_fn(a, b);
      break;
    }
    case StructKind::Unit:
      s.carrier = 1;
      break;
  }
  return s;
}

}  // namespace optikit
