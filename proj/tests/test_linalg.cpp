#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "otarith/errors.hpp"
#include "otarith/linalg.hpp"

using namespace otarith;
using otarith::testing::random_matrix;

namespace {

bool is_row_hnf(const IntMatrix& h) {
  std::size_t col = 0;
  bool zero_rows = false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    while (col < h.cols() && h(i, col) == 0) {
      for (std::size_t k = i; k < h.rows(); ++k)
        if (h(k, col) != 0) return false;
      ++col;
    }
    if (col == h.cols()) {
      zero_rows = true;
      continue;
    }
    if (zero_rows || h(i, col) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, col) < 0 || h(k, col) >= h(i, col)) return false;
    ++col;
  }
  return true;
}

IntMatrix diag_of(const IntVector& d, std::size_t r, std::size_t c) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

}  // namespace

TEST(Hnf, IdentityIsFixed) {
  auto h = hnf(IntMatrix::identity(2));
  EXPECT_EQ(h.h, IntMatrix::identity(2));
  EXPECT_EQ(h.u, IntMatrix::identity(2));
}

TEST(Hnf, PermutationSpansZ2) { EXPECT_EQ(hnf(IntMatrix{{0, 1}, {1, 0}}).h, IntMatrix::identity(2)); }

TEST(Hnf, DiagonalAlreadyReduced) { EXPECT_EQ(hnf(IntMatrix{{2, 0}, {0, 3}}).h, (IntMatrix{{2, 0}, {0, 3}})); }

TEST(Hnf, EmptyMatrix) { EXPECT_EQ(hnf(IntMatrix(0, 0)).h.rows(), 0u); }

TEST(Hnf, ModularMatchesPlainOnAugmentedLattice) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    IntMatrix a = random_matrix(rng, 1 + rng() % 4, 3, 12);
    Int d = 1 + static_cast<long>(rng() % 30);
    IntVector ds(3, d);
    IntMatrix stacked = a.stacked(IntMatrix::diagonal(ds));
    EXPECT_EQ(hnf_modular(a, d), hnf_basis(stacked));
  }
}

TEST(Snf, DiagonalTwoThree) {
  auto s = snf(IntMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(s.divisors, (IntVector{1, 6}));
}

TEST(Snf, Identity) { EXPECT_EQ(snf(IntMatrix::identity(3)).divisors, (IntVector{1, 1, 1})); }

TEST(Snf, DiagonalTwoFour) { EXPECT_EQ(snf(IntMatrix{{2, 0}, {0, 4}}).divisors, (IntVector{2, 4})); }

TEST(LatticeIndex, Examples) {
  EXPECT_EQ(lattice_index(IntMatrix{{2, 0}, {0, 2}}, IntMatrix::identity(2)), 4);
  EXPECT_EQ(lattice_index(IntMatrix{{1, 1}, {0, 3}}, IntMatrix{{1, 1}, {0, 3}}), 1);
  EXPECT_EQ(lattice_index(IntMatrix{{1, 1}, {0, 3}}, IntMatrix::identity(2)), 3);
}

TEST(LatticeIndex, Errors) {
  try {
    lattice_index(IntMatrix::identity(2), IntMatrix{{2, 0}, {0, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSublattice);
  }
  try {
    lattice_index(IntMatrix{{1, 1}, {2, 2}}, IntMatrix::identity(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularLattice);
  }
}

TEST(SolveIntegral, Examples) {
  EXPECT_EQ(*solve_integral(IntMatrix::identity(2), IntVector{5, -2}), (IntVector{5, -2}));
  EXPECT_FALSE(solve_integral(IntMatrix{{2, 0}, {0, 2}}, IntVector{1, 0}).has_value());
  EXPECT_EQ(*solve_integral(IntMatrix{{1, 1}, {0, 2}}, IntVector{1, 3}), (IntVector{1, 1}));
}

TEST(Kernel, LeftKernelAnnihilates) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    IntMatrix a = random_matrix(rng, 2 + rng() % 4, 1 + rng() % 3, 6);
    IntMatrix k = left_kernel(a);
    EXPECT_EQ(k.rows() + hnf(a).rank, a.rows());
    for (std::size_t i = 0; i < k.rows(); ++i)
      for (const auto& x : IntVector(k.row(i) * a)) EXPECT_EQ(x, 0);
  }
}

TEST(Kernel, ModularKernelIsFullRankAndSound) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
    IntMatrix a = random_matrix(rng, r, c, 20);
    IntVector mods(c);
    for (auto& m : mods) m = 2 + static_cast<long>(rng() % 9);
    IntMatrix k = left_kernel_mod(a, mods);
    ASSERT_EQ(k.rows(), r);
    for (std::size_t i = 0; i < k.rows(); ++i) {
      IntVector img = k.row(i) * a;
      for (std::size_t j = 0; j < c; ++j) EXPECT_EQ(img[j] % mods[j], 0);
    }
    // Brute force: the index equals the image size in prod Z/m_j.
    Int index = ::abs(determinant(k));
    std::set<IntVector> image;
    std::vector<long> x(r, 0);
    long bound = 1;
    for (const auto& m : mods) bound = std::lcm(bound, m.get_si());
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      if (i == r) {
        IntVector xv(x.begin(), x.end());
        IntVector img = xv * a;
        for (std::size_t j = 0; j < c; ++j) mpz_fdiv_r(img[j].get_mpz_t(), img[j].get_mpz_t(), mods[j].get_mpz_t());
        image.insert(img);
        return;
      }
      for (x[i] = 0; x[i] < bound; ++x[i]) walk(i + 1);
    };
    if (std::pow(bound, r) <= 20000) {
      walk(0);
      EXPECT_EQ(index, Int(static_cast<unsigned long>(image.size())));
    }
  }
}

TEST(Determinant, BareissMatchesRational) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + rng() % 5;
    IntMatrix a = random_matrix(rng, n, n, 9);
    EXPECT_EQ(Rational(determinant(a)), determinant(to_rational(a)));
  }
}

// Property suite; the acceptance binary runs it at 10^4 matrices.
TEST(Properties, HnfAndSnfInvariants) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 1000; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix a = random_matrix(rng, r, c, 9);
    HermiteForm h = hnf(a);
    EXPECT_EQ(h.u * a, h.h);
    EXPECT_EQ(::abs(determinant(h.u)), 1);
    EXPECT_TRUE(is_row_hnf(h.h));
    EXPECT_EQ(hnf(h.h).h, h.h);

    SmithForm s = snf(a);
    EXPECT_EQ(s.left * a * s.right, diag_of(s.divisors, r, c));
    EXPECT_EQ(::abs(determinant(s.left)), 1);
    EXPECT_EQ(::abs(determinant(s.right)), 1);
    for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) {
      if (s.divisors[i] == 0) {
        EXPECT_EQ(s.divisors[i + 1], 0);
      } else {
        EXPECT_EQ(s.divisors[i + 1] % s.divisors[i], 0);
      }
    }
    if (r == c) {
      Int prod = 1;
      for (const auto& d : s.divisors) prod *= d;
      EXPECT_EQ(prod, ::abs(determinant(a)));
      if (determinant(a) != 0) {
        IntMatrix sup = hnf_basis(a.stacked(IntMatrix::identity(r)));
        EXPECT_EQ(lattice_index(a, sup) * ::abs(determinant(sup)), ::abs(determinant(a)));
      }
    }
  }
}

TEST(Properties, ReduceModHnfLandsInFundamentalDomain) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    IntMatrix a = random_matrix(rng, 3, 3, 7);
    if (determinant(a) == 0) continue;
    IntMatrix h = hnf_basis(a);
    IntVector v = random_matrix(rng, 1, 3, 50).row_vector(0);
    IntVector r = reduce_mod_hnf(v, h);
    IntVector diff(3);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_GE(r[i], 0);
      EXPECT_LT(r[i], h(i, i));
      diff[i] = v[i] - r[i];
    }
    EXPECT_TRUE(solve_integral(h, diff).has_value());
  }
}
