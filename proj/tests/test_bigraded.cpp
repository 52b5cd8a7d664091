#include <doctest.h>

#include <random>

#include "knotsum/bigraded.hpp"

using namespace knotsum;

namespace {

BigradedComplex pair_complex(std::int64_t weight) {
  BigradedComplex c;
  c.generators = {{1, 0}, {1, 1}};
  c.q = IntMatrix(2, 2);
  c.q(1, 0) = weight;
  return c;
}

// Simplicial cochains of a triangle: three vertices in F = 0, three edges in F = 1.
BigradedComplex circle_complex() {
  BigradedComplex c;
  c.generators = {{0, 0}, {0, 0}, {0, 0}, {0, 1}, {0, 1}, {0, 1}};
  c.q = IntMatrix(6, 6);
  const int edges[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (int e = 0; e < 3; ++e) {
    c.q(static_cast<std::size_t>(3 + e), static_cast<std::size_t>(edges[e][1])) += 1;
    c.q(static_cast<std::size_t>(3 + e), static_cast<std::size_t>(edges[e][0])) -= 1;
  }
  return c;
}

const BigradeGroup* group_at(const std::vector<BigradeGroup>& gs, std::int64_t p, int f) {
  for (const auto& g : gs)
    if (g.p == p && g.f == f) return &g;
  return nullptr;
}

}  // namespace

TEST_SUITE("bigraded") {
  TEST_CASE("rationals normalise") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(parse_rational("-3/9") == Rational(-1, 3));
    CHECK(parse_rational("5") == Rational(5));
    CHECK(Rational(1, 2).to_string() == "1/2");
    CHECK_THROWS((void)Rational(1, 0));
    CHECK_THROWS((void)parse_rational("1/x"));
  }

  TEST_CASE("determinant") {
    IntMatrix m(3, 3);
    const std::int64_t vals[3][3] = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = vals[i][j];
    CHECK(determinant(m) == 4);
    CHECK(determinant(IntMatrix::identity(5)) == 1);
  }

  TEST_CASE("Smith normal form") {
    IntMatrix a(3, 4);
    const std::int64_t vals[3][4] = {{2, 4, 4, 0}, {-6, 6, 12, 3}, {10, -4, -16, 9}};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) a(i, j) = vals[i][j];
    const SmithForm s = smith_normal_form(a);
    CHECK(s.u * a * s.v == s.d);
    CHECK(std::abs(determinant(s.u)) == 1);
    CHECK(std::abs(determinant(s.v)) == 1);
    const auto f = s.invariant_factors();
    for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i] % f[i - 1] == 0);
    CHECK(s.rank() == 3);
    for (std::size_t i = 0; i < s.d.rows(); ++i)
      for (std::size_t j = 0; j < s.d.cols(); ++j)
        if (i != j) CHECK(s.d(i, j) == 0);
  }

  TEST_CASE("random Smith forms are unimodular") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> dim(1, 6), val(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
      IntMatrix a(static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)));
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = val(rng);
      const SmithForm s = smith_normal_form(a);
      CHECK(s.u * a * s.v == s.d);
      CHECK(std::abs(determinant(s.u)) == 1);
      CHECK(std::abs(determinant(s.v)) == 1);
    }
  }

  TEST_CASE("validation") {
    BigradedComplex zero;
    zero.generators = {{0, 0}, {2, 1}};
    zero.q = IntMatrix(2, 2);
    CHECK_NOTHROW(validate(zero));
    CHECK_NOTHROW(validate(pair_complex(1)));

    BigradedComplex skip;
    skip.generators = {{0, 0}, {0, 2}};
    skip.q = IntMatrix(2, 2);
    skip.q(1, 0) = 1;
    try {
      validate(skip);
      FAIL("expected ComplexError");
    } catch (const ComplexError& e) {
      CHECK(std::string(e.what()).find("Q[1][0]") != std::string::npos);
    }

    BigradedComplex shape = pair_complex(1);
    shape.q = IntMatrix(2, 3);
    CHECK_THROWS_AS(validate(shape), ComplexError);

    std::mt19937_64 rng(4);
    for (int i = 0; i < 10; ++i) CHECK_THROWS_AS(validate(corrupted_complex(rng)), ComplexError);
  }

  TEST_CASE("hand cohomology") {
    const auto acyclic = cohomology(pair_complex(1));
    for (const auto& g : acyclic) {
      CHECK(g.free_rank == 0);
      CHECK(g.torsion.empty());
    }

    const auto two = cohomology(pair_complex(2));
    const BigradeGroup* top = group_at(two, 1, 1);
    REQUIRE(top != nullptr);
    CHECK(top->free_rank == 0);
    CHECK(top->torsion == std::vector<std::int64_t>{2});
    CHECK(group_at(two, 1, 0)->free_rank == 0);

    BigradedComplex z;
    z.generators = {{0, 0}, {0, 1}, {3, 0}};
    z.q = IntMatrix(3, 3);
    for (const auto& g : cohomology(z)) CHECK(g.free_rank == g.dim);

    const auto circle = cohomology(circle_complex());
    CHECK(group_at(circle, 0, 0)->free_rank == 1);
    CHECK(group_at(circle, 0, 1)->free_rank == 1);
    CHECK(group_at(circle, 0, 1)->torsion.empty());
  }

  TEST_CASE("hand Euler characteristics") {
    CHECK(euler_V(pair_complex(1)).poly.is_zero());
    CHECK(euler_H(pair_complex(1)).poly.is_zero());
    CHECK(euler_V(pair_complex(2)).poly.is_zero());
    CHECK(euler_H(pair_complex(2)).poly.is_zero());

    BigradedComplex single;
    single.offset_c = Rational(1, 2);
    single.generators = {{3, 2}};
    single.q = IntMatrix(1, 1);
    CHECK(euler_V(single).poly == LaurentPoly::monomial(12));
    CHECK(euler_V(single).offset_c == Rational(1, 2));
    CHECK(euler_V(single) == euler_H(single));

    CHECK(euler_V(circle_complex()) == euler_H(circle_complex()));
    CHECK(euler_H(circle_complex()).poly.is_zero());
  }

  TEST_CASE("random complexes satisfy the Euler identity") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
      const BigradedComplex c = random_complex(rng);
      REQUIRE(c.generators.size() <= 30);
      CHECK_NOTHROW(validate(c));
      CHECK(euler_V(c) == euler_H(c));
    }
  }

  TEST_CASE("cohomology is invariant under a change of basis") {
    const BigradedComplex c = circle_complex();
    // Elementary operations inside each bigrade: add vertex 0 to vertex 1, edge 3 to edge 5.
    IntMatrix t = IntMatrix::identity(6), t_inv = IntMatrix::identity(6);
    t(1, 0) = 2;
    t_inv(1, 0) = -2;
    t(5, 3) = -1;
    t_inv(5, 3) = 1;
    const BigradedComplex d = change_basis(c, t, t_inv);
    CHECK_NOTHROW(validate(d));
    const auto a = cohomology(c), b = cohomology(d);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].free_rank == b[i].free_rank);
      CHECK(a[i].torsion == b[i].torsion);
    }
    IntMatrix mix = IntMatrix::identity(6);
    mix(3, 0) = 1;
    IntMatrix mix_inv = IntMatrix::identity(6);
    mix_inv(3, 0) = -1;
    CHECK_THROWS_AS((void)change_basis(c, mix, mix_inv), ComplexError);
  }
}
