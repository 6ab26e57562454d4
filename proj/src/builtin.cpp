#include "ballchain/builtin.hpp"

#include <cmath>

namespace ballchain::builtin {

namespace {

Term term2(int e1, int e2, cdouble c) {
  return Term{MultiIndex{std::vector<int>{e1, e2}}, c};
}

PolyMap bump_map(cdouble c) {
  // z + c (z1^2, 0): a Q-class demo map (not an automorphism)
  std::vector<std::vector<Term>> coords(2);
  coords[0].push_back(term2(1, 0, 1.0));
  coords[0].push_back(term2(2, 0, c));
  coords[1].push_back(term2(0, 1, 1.0));
  return PolyMap(2, std::move(coords));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Operator golden_operator() {
  const double alpha = (1.0 - std::sqrt(5.0)) / 4.0;
  CMatrix m(2);
  m(0, 0) = 1.0 - 2.0 * alpha;
  m(0, 1) = 1.0;
  m(1, 1) = 0.5 - 2.0 * alpha;
  return Operator(m);
}

std::vector<std::string> operator_names() {
  return {"identity2", "identity3", "golden",     "diag-1-2.5",
          "diag-1-2",  "diag-1-3",  "diag-1-0.6", "nilpotent2"};
}

Operator get_operator(const std::string& name) {
  if (name == "identity2") return Operator::identity(2);
  if (name == "identity3") return Operator::identity(3);
  if (name == "golden") return golden_operator();
  if (name == "diag-1-2.5") return Operator::diagonal({1.0, 2.5});
  if (name == "diag-1-2") return Operator::diagonal({1.0, 2.0});
  if (name == "diag-1-3") return Operator::diagonal({1.0, 3.0});
  if (name == "diag-1-0.6") return Operator::diagonal({1.0, 0.6});
  if (name == "nilpotent2") {
    CMatrix m(2);
    m(0, 1) = 1.0;
    return Operator(m);
  }
  throw Error(Errc::usage_error, "unknown builtin operator: " + name);
}

AutomorphismWord shear_word(cdouble a) {
  AutomorphismWord w;
  w.dim = 2;
  w.factors.push_back(ShearFactor::shear(2, 0, {term2(0, 2, a)}));
  w.normalized = true;
  return w;
}

std::vector<std::string> word_names() {
  return {"identity2",  "shear-0.15", "shear-0.25", "shear-0.3",
          "shear-0.4",  "shear-0.5",  "shear-0.6",  "shear-0.8",
          "shear-3.0",  "two-term-ktilde", "shear3d-0.2", "bumpword-0.4"};
}

AutomorphismWord get_word(const std::string& name) {
  if (name == "identity2") {
    AutomorphismWord w;
    w.dim = 2;
    w.normalized = true;
    return w;
  }
  if (name == "shear-0.15") return shear_word(0.15);
  if (name == "shear-0.25") return shear_word(0.25);
  if (name == "shear-0.3") return shear_word(0.3);
  if (name == "shear-0.4") return shear_word(0.4);
  if (name == "shear-0.5") return shear_word(0.5);
  if (name == "shear-0.6") return shear_word(0.6);
  if (name == "shear-0.8") return shear_word(0.8);
  if (name == "shear-3.0") return shear_word(3.0);
  if (name == "two-term-ktilde") {
    AutomorphismWord w;
    w.dim = 2;
    w.factors.push_back(ShearFactor::shear(2, 0, {term2(0, 2, 0.1), term2(0, 3, 0.05)}));
    w.normalized = true;
    return w;
  }
  if (name == "shear3d-0.2") {
    AutomorphismWord w;
    w.dim = 3;
    w.factors.push_back(
        ShearFactor::shear(3, 0, {Term{MultiIndex{std::vector<int>{0, 1, 1}}, 0.2}}));
    w.normalized = true;
    return w;
  }
  if (name == "bumpword-0.4") {
    // (z1, z2 + 0.4 z1^2): the shear form of the q-class example
    AutomorphismWord w;
    w.dim = 2;
    w.factors.push_back(ShearFactor::shear(2, 1, {term2(2, 0, 0.4)}));
    w.normalized = true;
    return w;
  }
  throw Error(Errc::usage_error, "unknown builtin word: " + name);
}

std::vector<std::string> map_names() {
  return {"identity2", "identity3", "shear-0.15", "shear-0.25", "shear-0.3",
          "shear-0.4", "shear-0.5", "shear-0.6",  "shear-0.8",  "shear-3.0",
          "two-term-ktilde", "shear3d-0.2", "bump-0.25", "bump-0.4", "bump-0.6"};
}

PolyMap get_map(const std::string& name) {
  if (name == "identity2") return PolyMap::identity(2);
  if (name == "identity3") return PolyMap::identity(3);
  if (name == "bump-0.25") return bump_map(0.25);
  if (name == "bump-0.4") return bump_map(0.4);
  if (name == "bump-0.6") return bump_map(0.6);
  return to_polymap(get_word(name));
}

std::vector<std::string> field_names() {
  return {"linear-identity", "linear-golden", "spiral-shear-0.3", "two-piece"};
}

HerglotzField get_field(const std::string& name) {
  if (name == "linear-identity")
    return HerglotzField(Operator::identity(2), {FieldPiece{1.0, LinearGenerator{}}});
  if (name == "linear-golden")
    return HerglotzField(golden_operator(), {FieldPiece{1.0, LinearGenerator{}}});
  if (name == "spiral-shear-0.3")
    return HerglotzField(Operator::identity(2),
                         {FieldPiece{1.0, SpirallikeGenerator{get_map("shear-0.3")}}});
  if (name == "two-piece") {
    std::vector<FieldPiece> pieces;
    pieces.push_back(FieldPiece{0.5, SpirallikeGenerator{get_map("shear-0.3")}});
    pieces.push_back(FieldPiece{0.5, LinearGenerator{}});
    return HerglotzField(Operator::identity(2), std::move(pieces));
  }
  throw Error(Errc::usage_error, "unknown builtin field: " + name);
}

std::vector<AutomorphismWord> repeat_candidates(const AutomorphismWord& w, int count) {
  return std::vector<AutomorphismWord>(static_cast<std::size_t>(count), w);
}

std::vector<AutomorphismWord> truncated_candidates(const AutomorphismWord& w, int count) {
  std::vector<AutomorphismWord> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const int cap = 2 + i;
    AutomorphismWord t = w;
    for (ShearFactor& f : t.factors) {
      if (f.kind == ShearFactor::Kind::linear) continue;
      std::vector<Term> kept;
      for (const Term& term : f.poly)
        if (term.exp.degree() <= cap) kept.push_back(term);
      f.poly = std::move(kept);
    }
    t.normalized = false;
    out.push_back(normalize(t));
  }
  return out;
}

std::vector<AutomorphismWord> perturbed_candidates(const AutomorphismWord& w, double scale,
                                                   int count, std::uint64_t seed) {
  std::vector<AutomorphismWord> out;
  out.reserve(count);
  std::uint64_t state = seed;
  for (int i = 0; i < count; ++i) {
    AutomorphismWord p = w;
    for (ShearFactor& f : p.factors) {
      if (f.kind == ShearFactor::Kind::linear) continue;
      for (Term& t : f.poly) {
        state = splitmix64(state);
        const double dre = (static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5) * 2.0 * scale;
        state = splitmix64(state);
        const double dim_ = (static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5) * 2.0 * scale;
        t.coeff += cdouble{dre, dim_};
      }
    }
    p.normalized = false;
    out.push_back(normalize(p));
  }
  return out;
}

}  // namespace ballchain::builtin
