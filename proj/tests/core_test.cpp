// Copyright 2026 The itsnt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "itsnt/program.hpp"

namespace itsnt {
namespace {

const Var x("x"), y("y"), z("z"), k("k");

Rational half(long n) { return Rational(n, 2); }

// Random polynomial with small integer or half-integer coefficients.
Poly random_poly(std::mt19937& rng, const std::vector<Var>& vars, unsigned max_deg) {
  std::uniform_int_distribution<int> coeff(-4, 4), deg(0, static_cast<int>(max_deg)),
      nterms(0, 4);
  Poly p;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Monomial m;
    for (const auto& v : vars) {
      int d = deg(rng);
      if (d > 0) m[v] = static_cast<unsigned>(d);
    }
    p += Poly::monomial(m, Rational(coeff(rng), (rng() % 2) ? 1 : 2));
  }
  return p;
}

void for_each_point(const std::vector<Var>& vars, int lo, int hi,
                    const std::function<void(const Valuation&)>& f, Valuation cur = {},
                    size_t i = 0) {
  if (i == vars.size()) {
    f(cur);
    return;
  }
  for (int a = lo; a <= hi; ++a) {
    cur[vars[i]] = a;
    for_each_point(vars, lo, hi, f, cur, i + 1);
  }
}

TEST(Poly, EvaluatesAcceleratedUpdate) {
  Poly p = Poly(x) - Poly(y) * Poly(k) - Poly(half(1)) * Poly(k).pow(2) + Poly(half(1)) * Poly(k);
  EXPECT_EQ(p.eval({{x, 0}, {y, 0}, {k, 2}}), Rational(-1));
}

TEST(Poly, EvaluatesProduct) {
  Poly p = Poly(x) * Poly(y) + Poly(3);
  EXPECT_EQ(p.eval({{x, 2}, {y, -5}}), Rational(-7));
}

TEST(Poly, MissingVariableIsReported) {
  Poly p = Poly(x) + Poly(z);
  try {
    p.eval({{x, 1}});
    FAIL() << "expected MissingVariable";
  } catch (const MissingVariable& e) {
    EXPECT_EQ(e.var(), z);
  }
}

TEST(Poly, CanonicalFormCancels) {
  Poly p = Poly(x) * Poly(y) - Poly(y) * Poly(x);
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ((Poly(x) + Poly(1)).pow(2), Poly(x) * Poly(x) + Poly(2) * Poly(x) + Poly(1));
}

TEST(Poly, IntegerValuedness) {
  Poly tri = Poly(half(1)) * Poly(k).pow(2) - Poly(half(1)) * Poly(k);
  EXPECT_TRUE(is_integer_valued(tri));
  EXPECT_FALSE(is_integer_valued(Poly(half(1)) * Poly(k)));
  EXPECT_TRUE(is_integer_valued(Poly(x) * Poly(y)));
  EXPECT_FALSE(is_integer_valued(Poly(half(1)) * Poly(x) * Poly(y)));
}

TEST(Poly, CoefficientsRoundTrip) {
  Poly p = Poly(x) * Poly(k).pow(2) + Poly(3) * Poly(k) + Poly(y);
  auto cs = p.coefficients_in(k);
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_EQ(cs[2], Poly(x));
  EXPECT_EQ(Poly::from_coefficients(cs, k), p);
  EXPECT_EQ(p.linear_coefficient(k), Poly(3));
}

TEST(PolyProperty, SubstitutionIsEvaluationHomomorphism) {
  std::mt19937 rng(7);
  const std::vector<Var> vars{x, y};
  std::uniform_int_distribution<int> val(-5, 5);
  for (int iter = 0; iter < 300; ++iter) {
    Poly p = random_poly(rng, vars, 2);
    Subst s{{x, random_poly(rng, vars, 1)}, {y, random_poly(rng, vars, 1)}};
    Valuation v{{x, val(rng)}, {y, val(rng)}};
    Valuation image;
    // Image values may be rational; skip those points since Valuation is integral.
    Rational sx = s.at(x).eval(v), sy = s.at(y).eval(v);
    if (sx.get_den() != 1 || sy.get_den() != 1) continue;
    image[x] = sx.get_num();
    image[y] = sy.get_num();
    EXPECT_EQ(p.substitute(s).eval(v), p.eval(image)) << p << " under " << s.at(x) << ", " << s.at(y);
  }
}

TEST(PolyProperty, IntegerValuednessMatchesBruteForce) {
  std::mt19937 rng(11);
  const std::vector<Var> vars{x, y};
  for (int iter = 0; iter < 300; ++iter) {
    Poly p = random_poly(rng, vars, 3);
    bool all_integral = true;
    for_each_point(vars, -3, 3, [&](const Valuation& v) {
      if (p.eval(v).get_den() != 1) all_integral = false;
    });
    EXPECT_EQ(is_integer_valued(p), all_integral) << p;
  }
}

TEST(Atom, NormalizesOverIntegers) {
  Atom a(Poly(2) * Poly(x) + Poly(3));
  EXPECT_EQ(a.lhs(), Poly(x) + Poly(1));
  EXPECT_TRUE(Atom(Poly(5)).is_trivially_true());
  EXPECT_TRUE(Atom(Poly(-3)).is_trivially_false());
  EXPECT_EQ(Atom(Poly(x)).negate().lhs(), -Poly(x) - Poly(1));
}

TEST(AtomProperty, NormalizationPreservesIntegerSolutions) {
  std::mt19937 rng(3);
  const std::vector<Var> vars{x, y};
  for (int iter = 0; iter < 200; ++iter) {
    Poly p = random_poly(rng, vars, 1);
    Atom a(p);
    for_each_point(vars, -4, 4, [&](const Valuation& v) {
      EXPECT_EQ(a.holds(v), p.eval(v) >= 0) << p;
      EXPECT_NE(a.holds(v), a.negate().holds(v)) << p;
    });
  }
}

TEST(Constraint, SimplifyMergesAndDetectsFalse) {
  Constraint c{Atom(Poly(x)), Atom(Poly(x) - Poly(2)), Atom(Poly(1))};
  Constraint s = simplify(c);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].lhs(), Poly(x) - Poly(2));
  EXPECT_TRUE(is_trivially_false(simplify({Atom(Poly(x)), Atom(Poly(-1))})));
  EXPECT_EQ(to_string(Constraint{}), "true");
}

TEST(Update, ComposeNegatingUpdate) {
  // x -> -x composed with itself is the identity.
  UpdateMap neg(Subst{{x, -Poly(x)}});
  EXPECT_TRUE(compose_updates(neg, neg).is_identity());
}

TEST(Update, ComposeConstantUpdate) {
  UpdateMap first(Subst{{x, Poly(y)}});
  UpdateMap second(Subst{{y, Poly(0)}, {x, Poly(x) + Poly(1)}});
  UpdateMap c = compose_updates(first, second);
  EXPECT_EQ(c(x), Poly(y) + Poly(1));
  EXPECT_EQ(c(y), Poly(0));
}

TEST(UpdateProperty, CompositionMatchesSequentialApplication) {
  std::mt19937 rng(5);
  const std::vector<Var> vars{x, y};
  std::uniform_int_distribution<int> val(-4, 4);
  auto int_poly = [&]() {
    Poly p = random_poly(rng, vars, 1);
    return p * Poly(Rational(p.denominator_lcm()));
  };
  for (int iter = 0; iter < 200; ++iter) {
    UpdateMap f(Subst{{x, int_poly()}, {y, int_poly()}});
    UpdateMap g(Subst{{x, int_poly()}, {y, int_poly()}});
    Valuation v{{x, val(rng)}, {y, val(rng)}};
    Valuation mid{{x, f(x).eval(v).get_num()}, {y, f(y).eval(v).get_num()}};
    UpdateMap c = compose_updates(f, g);
    for (const auto& var : vars) EXPECT_EQ(c(var).eval(v), g(var).eval(mid));
  }
}

TEST(Program, RenameApartAvoidsClashes) {
  NameGenerator names;
  names.reserve(VarSet{x, y, z});
  Transition t;
  t.source = FunSym("f");
  t.target = FunSym("g");
  t.args = {x, y};
  t.guard = {Atom(Poly(z))};
  t.update = UpdateMap(Subst{{x, Poly(z)}});
  refresh_temps(t);
  ASSERT_EQ(t.temps, std::vector<Var>{z});
  auto [r, ren] = rename_apart(t, VarSet{z}, names);
  ASSERT_EQ(r.temps.size(), 1u);
  EXPECT_NE(r.temps[0], z);
  EXPECT_EQ(r.update(x), Poly(r.temps[0]));
  EXPECT_EQ(ren.at(z), Poly(r.temps[0]));
}

TEST(Program, PrintsTransition) {
  Transition t;
  t.id = 2;
  t.source = FunSym("f");
  t.target = FunSym("f");
  t.args = {x, y};
  t.guard = make_atoms(Poly(y), Rel::kGt, Poly(0));
  t.update = UpdateMap(Subst{{x, Poly(x) - Poly(y)}, {y, Poly(y) + Poly(1)}});
  EXPECT_EQ(t.to_string(), "t2: f(x, y) -> f(x - y, y + 1) [y - 1 >= 0]");
  EXPECT_EQ((Configuration{FunSym("start"), {0, -1}}).to_string(), "start(0, -1)");
}

}  // namespace
}  // namespace itsnt
