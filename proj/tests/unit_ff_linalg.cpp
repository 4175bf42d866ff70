// Exact prime-field arithmetic and the small dense-matrix kit: frozen values
// first, then exhaustive axioms at desk-scale moduli, then randomized
// round-trip properties with a fixed seed.
#include <cstdint>
#include <set>
#include <vector>

#include "doctest.h"
#include "keycast/errors.hpp"
#include "keycast/field.hpp"
#include "keycast/matrix.hpp"
#include "keycast/rng.hpp"

using namespace keycast;

namespace {

Mat random_matrix(Rng& rng, const Field& F, int r, int c) {
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = rng.uniform(F.q);
  return m;
}

}  // namespace

TEST_SUITE("ff_linalg") {
  TEST_CASE("field construction accepts primes and rejects everything else") {
    for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u, 97u}) CHECK(Field(q).q == q);
    for (std::uint32_t q : {0u, 1u, 4u, 6u, 9u, 15u, 91u})
      CHECK_THROWS_AS(Field{q}, Error);
    try {
      Field f(12);
      (void)f;
      FAIL("Field(12) must throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Validation);
      CHECK(e.code() == "BadParams");
    }
  }

  TEST_CASE("frozen scalar values") {
    CHECK(Field(5).inv(2) == 3);
    CHECK(Field(7).inv(1) == 1);
    CHECK(Field(3).inv(2) == 2);
    CHECK(Field(13).inv(5) == 8);  // 5*8 = 40 = 3*13 + 1
    CHECK(Field(5).neg(2) == 3);
    CHECK(Field(5).neg(0) == 0);
    CHECK(Field(7).pow(3, 0) == 1);
    CHECK(Field(7).pow(3, 6) == 1);  // Fermat
    CHECK(Field(7).pow(2, 5) == 4);  // 32 mod 7
    CHECK(Field(5).reduce(123456789ULL) == 123456789ULL % 5);
  }

  TEST_CASE("field axioms hold exhaustively at small moduli") {
    for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
      Field F(q);
      for (std::uint32_t a = 0; a < q; ++a) {
        CHECK(F.add(a, F.neg(a)) == 0);
        if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
        for (std::uint32_t b = 0; b < q; ++b) {
          CHECK(F.add(a, b) == F.add(b, a));
          CHECK(F.mul(a, b) == F.mul(b, a));
          CHECK(F.sub(a, b) == F.add(a, F.neg(b)));
          for (std::uint32_t c = 0; c < q; ++c) {
            CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
            CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
          }
        }
      }
    }
  }

  TEST_CASE("zero has no inverse") {
    CHECK_THROWS_AS(Field(5).inv(0), Error);
    CHECK_THROWS_AS(Field(5).inv(5), Error);  // non-canonical zero
  }

  TEST_CASE("frozen matrix inverse over F_3") {
    Field F(3);
    Mat A(2, 2);
    A.at(0, 0) = 1; A.at(0, 1) = 1;
    A.at(1, 0) = 1; A.at(1, 1) = 2;
    Mat Ai = mat_inverse(F, A);
    CHECK(Ai.at(0, 0) == 2);
    CHECK(Ai.at(0, 1) == 2);
    CHECK(Ai.at(1, 0) == 2);
    CHECK(Ai.at(1, 1) == 1);
    CHECK(mat_mul(F, A, Ai) == Mat::identity(2));
    CHECK(mat_mul(F, Ai, A) == Mat::identity(2));
  }

  TEST_CASE("singular matrices: try_inverse is empty, mat_inverse names the site") {
    Field F(3);
    Mat S(2, 2);
    S.at(0, 0) = 1; S.at(0, 1) = 1;
    S.at(1, 0) = 2; S.at(1, 1) = 2;  // row2 = 2*row1
    CHECK(!try_inverse(F, S).has_value());
    try {
      mat_inverse(F, S, "decode at node 'v1'");
      FAIL("singular inverse must throw");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("decode at node 'v1'") != std::string::npos);
    }
  }

  TEST_CASE("frozen ranks") {
    Field F(5);
    Mat A(2, 2);
    A.at(0, 0) = 1; A.at(0, 1) = 2;
    A.at(1, 0) = 2; A.at(1, 1) = 4;  // row2 = 2*row1
    CHECK(mat_rank(F, A) == 1);
    CHECK(mat_rank(F, Mat(3, 3)) == 0);
    CHECK(mat_rank(F, Mat::identity(3)) == 3);
    Mat R(2, 3);
    R.at(0, 0) = 1; R.at(1, 1) = 1;
    CHECK(mat_rank(F, R) == 2);
  }

  TEST_CASE("random invertible matrices round-trip through the inverse") {
    Field F(5);
    Rng rng(42);
    int found = 0;
    while (found < 50) {
      Mat A = random_matrix(rng, F, 3, 3);
      auto Ai = try_inverse(F, A);
      if (!Ai) {
        CHECK(mat_rank(F, A) < 3);
        continue;
      }
      ++found;
      CHECK(mat_rank(F, A) == 3);
      CHECK(mat_mul(F, A, *Ai) == Mat::identity(3));
      CHECK(mat_mul(F, *Ai, A) == Mat::identity(3));
    }
  }

  TEST_CASE("mat_mul associativity and mat_vec consistency on random triples") {
    Field F(7);
    Rng rng(7);
    for (int it = 0; it < 25; ++it) {
      Mat A = random_matrix(rng, F, 2, 3);
      Mat B = random_matrix(rng, F, 3, 3);
      Mat C = random_matrix(rng, F, 3, 2);
      CHECK(mat_mul(F, mat_mul(F, A, B), C) == mat_mul(F, A, mat_mul(F, B, C)));
      std::vector<std::uint32_t> x = {rng.uniform(7), rng.uniform(7), rng.uniform(7)};
      auto via_vec = mat_vec(F, A, x);
      Mat X(3, 1);
      for (int i = 0; i < 3; ++i) X.at(i, 0) = x[i];
      Mat via_mul = mat_mul(F, A, X);
      for (int i = 0; i < 2; ++i) CHECK(via_vec[i] == via_mul.at(i, 0));
    }
  }

  TEST_CASE("transpose involutes and reverses products") {
    Field F(5);
    Rng rng(11);
    for (int it = 0; it < 20; ++it) {
      Mat A = random_matrix(rng, F, 2, 3);
      Mat B = random_matrix(rng, F, 3, 4);
      CHECK(mat_transpose(mat_transpose(A)) == A);
      CHECK(mat_transpose(mat_mul(F, A, B)) ==
            mat_mul(F, mat_transpose(B), mat_transpose(A)));
    }
  }

  TEST_CASE("frozen Vandermonde columns") {
    Field F5(5), F7(7);
    CHECK(vandermonde_column(F5, 2, 3) == std::vector<std::uint32_t>{1, 2, 4});
    CHECK(vandermonde_column(F5, 0, 4) == std::vector<std::uint32_t>{1, 0, 0, 0});
    CHECK(vandermonde_column(F7, 1, 3) == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(vandermonde_column(F7, 3, 4) == std::vector<std::uint32_t>{1, 3, 2, 6});
    Mat v = vandermonde_vector(F5, 2, 3);
    CHECK(v.rows == 3);
    CHECK(v.cols == 1);
    for (int i = 0; i < 3; ++i) CHECK(v.at(i, 0) == vandermonde_column(F5, 2, 3)[i]);
  }

  TEST_CASE("any d distinct evaluation points give an invertible Vandermonde system") {
    Field F(7);
    const int d = 3;
    for (std::uint32_t a = 0; a < 7; ++a)
      for (std::uint32_t b = a + 1; b < 7; ++b)
        for (std::uint32_t c = b + 1; c < 7; ++c) {
          Mat V = vandermonde_cols(F, {a, b, c}, d);
          CHECK(V.rows == d);
          CHECK(V.cols == d);
          CHECK(mat_rank(F, V) == d);
        }
    // and a repeated point never does
    CHECK(mat_rank(F, vandermonde_cols(F, {2, 2, 5}, d)) == 2);
  }

  TEST_CASE("symmetric construction from the upper triangle") {
    Field F(3);
    Mat S = sym_from_upper(F, 2, {1, 2, 0});
    CHECK(S.at(0, 0) == 1);
    CHECK(S.at(0, 1) == 2);
    CHECK(S.at(1, 0) == 2);
    CHECK(S.at(1, 1) == 0);
    CHECK_THROWS_AS(sym_from_upper(F, 2, {1, 2}), Error);
    CHECK(sym_upper_count(1) == 1);
    CHECK(sym_upper_count(2) == 3);
    CHECK(sym_upper_count(3) == 6);
    CHECK(sym_upper_count(4) == 10);
  }

  TEST_CASE("the symmetric space over F_2 in dimension 2 has exactly 8 members") {
    Field F(2);
    std::set<std::vector<std::uint32_t>> seen;
    for (std::uint32_t code = 0; code < 8; ++code) {
      std::vector<std::uint32_t> upper = {code & 1, (code >> 1) & 1, (code >> 2) & 1};
      Mat S = sym_from_upper(F, 2, upper);
      CHECK(S.at(0, 1) == S.at(1, 0));
      seen.insert(S.a);
    }
    CHECK(seen.size() == 8);
  }

  TEST_CASE("rng determinism and uniform range") {
    Rng a(123), b(123), c(124);
    bool any_diff = false;
    for (int i = 0; i < 100; ++i) {
      auto va = a.next_u64();
      CHECK(va == b.next_u64());
      if (va != c.next_u64()) any_diff = true;
    }
    CHECK(any_diff);
    Rng r(9);
    for (int i = 0; i < 1000; ++i) CHECK(r.uniform(7) < 7);
    // split substreams are deterministic and distinct
    Rng base(55);
    CHECK(base.split(0).next_u64() == Rng(55).split(0).next_u64());
    CHECK(base.split(0).next_u64() != base.split(1).next_u64());
  }
}
