#include "test_util.hpp"

using namespace matlie;
using testutil::q;

namespace {

const Field Q = Field::rationals();

bool scalar_multiple(const Matrix& b, const Matrix& a) {
  const auto v = scalar_value(inverse(b) * a);
  return v && !v->is_zero();
}

Matrix column(const Field& f, std::size_t n, std::size_t i) { return column_of(Matrix::identity(f, n), i - 1); }

AlgebraMap trace_shift(const Field& f, std::size_t n) {
  return AlgebraMap::from_function(f, n, [&](const Matrix& x) { return x + trace(x) * Matrix::identity(f, n); });
}

TEST(ConjugatorFromImages, IdentityN3) {
  const auto r = conjugator_from_images(shift_matrix(Q, 3), matrix_unit(Q, 3, 3, 1));
  EXPECT_EQ(power(shift_matrix(Q, 3), 2) * matrix_unit(Q, 3, 3, 1), matrix_unit(Q, 3, 1, 1));
  EXPECT_EQ(r.conjugator, Matrix::identity(Q, 3));
  EXPECT_EQ(r.kernel_vector, column(Q, 3, 1));
  EXPECT_EQ(r.kernel_dim, 1u);
  EXPECT_TRUE(r.verified);
}

TEST(ConjugatorFromImages, HandComputedUpperUnipotent) {
  // B = [[1,1],[0,1]]: B S B^-1 = S, B E21 B^-1 = [[1,-1],[1,-1]], M = [[1,-1],[0,0]],
  // ker(I - M) = <e1>, columns S(1,1)^T = (1,0)^T and (1,1)^T.
  const Matrix b = q({{1, 1}, {0, 1}});
  const auto map = AlgebraMap::conjugation(b);
  EXPECT_EQ(map.image_of_shift(), shift_matrix(Q, 2));
  EXPECT_EQ(map.image(2, 1), q({{1, -1}, {1, -1}}));
  const auto r = conjugator_from_images(map.image_of_shift(), map.image(2, 1));
  EXPECT_EQ(r.kernel_vector, column(Q, 2, 1));
  EXPECT_EQ(r.conjugator, b);
  EXPECT_TRUE(scalar_multiple(b, r.conjugator));
}

TEST(ConjugatorFromImages, RandomGf7) {
  const Field f = Field::prime(7);
  Rng rng(61);
  const Matrix b = random_invertible(f, 4, rng);
  const Matrix bi = inverse(b);
  const auto r = conjugator_from_images(b * shift_matrix(f, 4) * bi, b * matrix_unit(f, 4, 4, 1) * bi);
  EXPECT_TRUE(r.verified);
  EXPECT_TRUE(scalar_multiple(b, r.conjugator));
}

TEST(ConjugatorFromImages, BadPairs) {
  EXPECT_ERRC(conjugator_from_images(Matrix(Q, 3, 3), Matrix(Q, 3, 3)), Errc::NotAnAutomorphismImagePair);
  EXPECT_ERRC(conjugator_from_images(Matrix::identity(Q, 2), Matrix::identity(Q, 2)), Errc::NotAnAutomorphismImagePair);
  EXPECT_ERRC(conjugator_from_images(shift_matrix(Q, 2), shift_matrix(Q, 3)), Errc::MixedShapes);
}

TEST(AlgebraMapType, ShapesAndIndices) {
  EXPECT_ERRC(AlgebraMap(Q, 2, {Matrix::identity(Q, 2)}, {}), Errc::DimensionMismatch);
  const auto id = AlgebraMap::identity(Q, 2);
  EXPECT_EQ(id.image(1, 2), matrix_unit(Q, 2, 1, 2));
  EXPECT_ERRC(id.image(3, 1), Errc::IndexOutOfRange);
  EXPECT_ERRC(AlgebraMap::conjugation(Matrix::identity(Q, 2), FieldAutomorphism::frobenius(1)),
              Errc::IncompatibleAutomorphism);
}

TEST(RecoverAutomorphism, Examples) {
  const auto r = recover_automorphism(AlgebraMap::identity(Q, 4));
  EXPECT_EQ(r.conjugator, Matrix::identity(Q, 4));
  EXPECT_TRUE(r.verified);
  Rng rng(62);
  const Matrix b = random_invertible(Q, 3, rng);
  const auto rb = recover_automorphism(AlgebraMap::conjugation(b));
  EXPECT_TRUE(rb.verified);
  EXPECT_TRUE(scalar_multiple(b, rb.conjugator));
  EXPECT_ERRC(recover_automorphism(AlgebraMap::transpose_map(Q, 3)), Errc::NotAnAutomorphism);
  EXPECT_ERRC(recover_automorphism(trace_shift(Q, 3)), Errc::NotAnAutomorphism);
}

TEST(RecoverAntiAutomorphism, Examples) {
  const auto t = AlgebraMap::transpose_map(Q, 2);
  EXPECT_EQ(t.image_of_transposed_shift(), matrix_unit(Q, 2, 1, 2));
  EXPECT_EQ(t.image(1, 2), matrix_unit(Q, 2, 2, 1));
  const auto r = recover_antiautomorphism(t);
  EXPECT_EQ(r.kernel_vector, column(Q, 2, 1));
  EXPECT_EQ(r.conjugator, Matrix::identity(Q, 2));
  EXPECT_ERRC(recover_antiautomorphism(AlgebraMap::identity(Q, 3)), Errc::NotAnAntiAutomorphism);
}

TEST(RecoverAntiAutomorphism, SymplecticInvolution) {
  for (const Field& f : {Q, Field::prime(7)}) {
    const auto ex = reproduce_symplectic_example(f);
    EXPECT_EQ(ex.phi_transposed_shift, symplectic_involution(transpose(shift_matrix(f, 8))));
    EXPECT_EQ(ex.m, matrix_unit(f, 8, 5, 5));
    EXPECT_EQ(ex.recovery.kernel_vector, column(f, 8, 5));
    EXPECT_EQ(ex.recovery.kernel_dim, 1u);
    EXPECT_TRUE(ex.recovery.verified);
    Matrix expected(f, 8, 8);
    for (std::size_t i = 0; i < 4; ++i) {
      expected(i, 4 + i) = f.neg(f.one());
      expected(4 + i, i) = f.one();
    }
    EXPECT_EQ(ex.recovery.conjugator, expected);
    EXPECT_EQ(ex.recovery.conjugator, symplectic_form(f, 8));
  }
  EXPECT_ERRC(symplectic_form(Q, 5), Errc::OddDimension);
}

TEST(Twisted, ReducesToPlainForIdentityTwist) {
  Rng rng(63);
  const Matrix b = random_invertible(Q, 3, rng);
  const auto m = AlgebraMap::conjugation(b);
  EXPECT_EQ(recover_twisted_automorphism(m).conjugator, recover_automorphism(m).conjugator);
  const auto a = AlgebraMap::anti_conjugation(b);
  EXPECT_EQ(recover_twisted_antiautomorphism(a).conjugator, recover_antiautomorphism(a).conjugator);
}

TEST(Twisted, Gf4FrobeniusIsSemilinear) {
  // x acts as code 2 and x^2 = x + 1 = code 3, so f(x) = x + 1
  const Field f = Field::extension(2, 2);
  const auto frob = FieldAutomorphism::frobenius(1);
  for (std::uint64_t c = 0; c < 4; ++c)
    EXPECT_EQ(std::get<std::uint64_t>(frob.apply(f, Elem{c})), static_cast<std::uint64_t>(oracle::kGf4Frobenius[c]));
  const auto beta = AlgebraMap::conjugation(Matrix::identity(f, 2), frob);
  Matrix x(f, 2, 2);
  x(0, 0) = Elem{std::uint64_t{2}};
  Matrix expected(f, 2, 2);
  expected(0, 0) = Elem{std::uint64_t{3}};
  EXPECT_EQ(beta(x), expected);
}

TEST(Twisted, Gf4AndGf9Roundtrips) {
  struct Case {
    Field f;
    std::size_t n;
  };
  Rng rng(64);
  for (const Case& c : {Case{Field::extension(2, 2), 2}, Case{Field::extension(3, 2), 3}, Case{Field::extension(2, 3), 3}})
    for (unsigned p = 1; p < c.f.degree(); ++p)
      for (int t = 0; t < 20; ++t) {
        const auto twist = FieldAutomorphism::frobenius(p);
        const Matrix b = random_invertible(c.f, c.n, rng);
        const auto beta = AlgebraMap::conjugation(b, twist);
        const auto r = recover_twisted_automorphism(beta);
        EXPECT_TRUE(r.verified);
        EXPECT_TRUE(scalar_multiple(b, r.conjugator));
        const Matrix x = random_matrix(c.f, c.n, c.n, rng);
        EXPECT_EQ(beta(x), r.conjugator * entrywise_map(x, twist) * inverse(r.conjugator));
        EXPECT_ERRC(recover_automorphism(beta), Errc::PreconditionViolated);

        const auto anti = AlgebraMap::anti_conjugation(b, twist);
        const auto ra = recover_twisted_antiautomorphism(anti);
        EXPECT_TRUE(ra.verified);
        EXPECT_TRUE(scalar_multiple(b, ra.conjugator));
        EXPECT_EQ(anti(x), ra.conjugator * transpose(entrywise_map(x, twist)) * inverse(ra.conjugator));
        EXPECT_ERRC(recover_twisted_automorphism(anti), Errc::NotATwistedAutomorphism);
      }
}

TEST(Roundtrip, AutomorphismAndAntiAutomorphism) {
  std::uint64_t seed = 65;
  for (const Field& f : {Q, Field::prime(5), Field::prime(7), Field::extension(2, 2)})
    for (std::size_t n = 2; n <= 6; ++n) {
      Rng rng(seed++);
      for (int t = 0; t < 200; ++t) {
        const Matrix b = random_invertible(f, n, rng);
        const auto r = recover_automorphism(AlgebraMap::conjugation(b));
        ASSERT_TRUE(r.verified);
        ASSERT_EQ(r.kernel_dim, 1u);
        ASSERT_TRUE(scalar_multiple(b, r.conjugator)) << f.describe() << " n=" << n;
        const auto ra = recover_antiautomorphism(AlgebraMap::anti_conjugation(b));
        ASSERT_TRUE(ra.verified);
        ASSERT_EQ(ra.kernel_dim, 1u);
        ASSERT_TRUE(scalar_multiple(b, ra.conjugator)) << f.describe() << " n=" << n;
      }
    }
}

TEST(Roundtrip, ScalarAmbiguity) {
  Rng rng(66);
  for (const Field& f : {Q, Field::prime(5), Field::extension(3, 2)})
    for (int t = 0; t < 20; ++t) {
      const Matrix b = random_invertible(f, 3, rng);
      const auto map = AlgebraMap::anti_conjugation(b);
      const auto r = recover_antiautomorphism(map);
      const Matrix scaled = random_nonzero_scalar(f, rng) * r.conjugator;
      EXPECT_TRUE(detail::reproduces_units(map, r.conjugator, true));
      EXPECT_TRUE(detail::reproduces_units(map, scaled, true));
    }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify_map(AlgebraMap::identity(Q, 3)), MapKind::Automorphism);
  EXPECT_EQ(classify_map(AlgebraMap::transpose_map(Q, 3)), MapKind::AntiAutomorphism);
  const auto psi = trace_shift(Q, 2);
  EXPECT_FALSE(is_multiplicative(psi));
  EXPECT_FALSE(is_multiplicative(psi, true));
  EXPECT_EQ(classify_map(psi), MapKind::LieAutomorphism);
  const auto collapse = AlgebraMap::from_function(Q, 2, [](const Matrix& x) { return trace(x) * Matrix::identity(Q, 2); });
  EXPECT_EQ(classify_map(collapse), MapKind::None);
  EXPECT_EQ(to_string(MapKind::LieAutomorphism), "LieAutomorphism");
}

TEST(Classify, NegatedTransposeIsLieOnly) {
  const auto neg = AlgebraMap::transpose_map(Q, 3).negated();
  EXPECT_TRUE(preserves_brackets(neg));
  EXPECT_EQ(classify_map(neg), MapKind::LieAutomorphism);
}

TEST(Decompose, Identity) {
  const auto d = decompose_lie_automorphism(AlgebraMap::identity(Q, 3));
  EXPECT_EQ(d.sigma_kind, SigmaKind::Automorphism);
  EXPECT_TRUE(scalar_multiple(Matrix::identity(Q, 3), d.sigma_conjugator));
  EXPECT_TRUE(d.tau_coefficient.is_zero());
  EXPECT_TRUE(d.residual_zero);
}

TEST(Decompose, TraceShift) {
  for (std::size_t n : {2, 3}) {
    const auto psi = trace_shift(Q, n);
    EXPECT_EQ(trace(psi.image(1, 1)), Scalar::from_int(Q, 1 + static_cast<long long>(n)));
    const auto d = decompose_lie_automorphism(psi);
    EXPECT_EQ(d.sigma_kind, SigmaKind::Automorphism);
    EXPECT_TRUE(scalar_multiple(Matrix::identity(Q, n), d.sigma_conjugator));
    EXPECT_EQ(d.tau_coefficient, Scalar::from_int(Q, 1));
    EXPECT_TRUE(d.residual_zero);
    EXPECT_TRUE(tau_trace_property_check(psi, d));
  }
}

TEST(Decompose, NegativeTranspose) {
  const auto psi = AlgebraMap::transpose_map(Q, 3).negated();
  const auto d = decompose_lie_automorphism(psi);
  EXPECT_EQ(d.sigma_kind, SigmaKind::NegativeAntiAutomorphism);
  EXPECT_EQ(d.sigma_conjugator, Matrix::identity(Q, 3));
  EXPECT_TRUE(d.tau_coefficient.is_zero());
  EXPECT_TRUE(d.residual_zero);
  EXPECT_TRUE(tau_trace_property_check(psi, d));
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; j <= 3; ++j) {
      const Matrix u = matrix_unit(Q, 3, i, j);
      EXPECT_EQ(psi.image(i, j), d.sigma(u) + d.tau(u) * Matrix::identity(Q, 3));
    }
}

TEST(Decompose, NegativeTransposeOnM2TakesAutomorphismBranch) {
  // -X^T = J X J^{-1} - tr(X) I on M_2, and the automorphism branch is tried first
  const auto d = decompose_lie_automorphism(AlgebraMap::transpose_map(Q, 2).negated());
  EXPECT_EQ(d.sigma_kind, SigmaKind::Automorphism);
  EXPECT_EQ(d.tau_coefficient, Scalar::from_int(Q, -1));
  EXPECT_TRUE(d.residual_zero);
}

TEST(Decompose, RandomSigmaPlusTau) {
  Rng rng(67);
  for (const Field& f : {Q, Field::prime(5), Field::prime(7)})
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = rng.between(2, 4);
      if (f.characteristic() && n % f.characteristic() == 0) continue;
      const Matrix b = random_invertible(f, n, rng);
      Scalar c(f, random_elem(f, rng));
      if (c.is_zero()) c = Scalar::from_int(f, 2);
      const bool anti = rng.coin();
      const Matrix bi = inverse(b);
      const auto psi = AlgebraMap::from_function(f, n, [&](const Matrix& x) {
        const Matrix s = anti ? -(b * transpose(x) * bi) : b * x * bi;
        return s + c * trace(x) * Matrix::identity(f, n);
      });
      const Scalar n_scalar = Scalar::from_int(f, static_cast<long long>(n));
      if ((c * n_scalar + Scalar::from_int(f, anti ? -1 : 1)).is_zero()) continue;  // psi(I) = 0: not bijective
      const auto d = decompose_lie_automorphism(psi);
      EXPECT_TRUE(d.residual_zero);
      EXPECT_TRUE(tau_trace_property_check(psi, d));
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) {
          const Matrix u = matrix_unit(f, n, i, j);
          EXPECT_EQ(psi.image(i, j), d.sigma(u) + d.tau(u) * Matrix::identity(f, n));
        }
      if (n >= 3) {
        EXPECT_EQ(d.sigma_kind, anti ? SigmaKind::NegativeAntiAutomorphism : SigmaKind::Automorphism);
        EXPECT_EQ(d.tau_coefficient, c);
        EXPECT_TRUE(scalar_multiple(b, d.sigma_conjugator));
      }
    }
}

TEST(Decompose, TwistedTauIsSemilinear) {
  const Field f = Field::extension(2, 2);
  const auto twist = FieldAutomorphism::frobenius(1);
  Rng rng(68);
  const Matrix b = random_invertible(f, 3, rng);
  const Scalar c(f, Elem{std::uint64_t{2}});
  const Matrix bi = inverse(b);
  const auto psi = AlgebraMap::from_function(
      f, 3, [&](const Matrix& x) { return b * x * bi + c * trace(x) * Matrix::identity(f, 3); }, twist);
  const auto d = decompose_lie_automorphism(psi);
  EXPECT_TRUE(d.residual_zero);
  EXPECT_EQ(d.tau_coefficient, c);
  EXPECT_EQ(d.twist.power(), 1u);
  EXPECT_FALSE(d.warnings.empty());
}

TEST(Decompose, Errors) {
  EXPECT_ERRC(decompose_lie_automorphism(AlgebraMap::identity(Field::prime(3), 3)), Errc::CharacteristicDividesN);
  EXPECT_ERRC(decompose_lie_automorphism(AlgebraMap::identity(Field::prime(2), 2)), Errc::CharacteristicDividesN);
  const auto collapse = AlgebraMap::from_function(Q, 2, [](const Matrix& x) { return trace(x) * Matrix::identity(Q, 2); });
  EXPECT_ERRC(decompose_lie_automorphism(collapse), Errc::NotDecomposable);
}

TEST(Decompose, ClassificationWarnings) {
  EXPECT_TRUE(detail::classification_warnings(Q, 5).empty());
  EXPECT_FALSE(detail::classification_warnings(Field::prime(5), 5).empty());  // 5 < 2^4
  EXPECT_TRUE(detail::classification_warnings(Field::prime(5), 3).empty());
  const auto d = decompose_lie_automorphism(AlgebraMap::identity(Field::prime(3), 4));
  EXPECT_FALSE(d.warnings.empty());
  EXPECT_TRUE(d.residual_zero);
}

TEST(Tau, TraceForm) {
  const auto psi = trace_shift(Q, 3);
  const auto d = decompose_lie_automorphism(psi);
  EXPECT_TRUE(d.tau(matrix_unit(Q, 3, 1, 2)).is_zero());
  EXPECT_EQ(d.tau(matrix_unit(Q, 3, 2, 2)), d.tau(matrix_unit(Q, 3, 1, 1)));
  EXPECT_EQ(d.tau(matrix_unit(Q, 3, 2, 2)), Scalar::from_int(Q, 1));
  Rng rng(69);
  for (int t = 0; t < 50; ++t) {
    const Matrix x = random_matrix(Q, 3, 3, rng), y = random_matrix(Q, 3, 3, rng);
    EXPECT_TRUE(d.tau(bracket(x, y)).is_zero());
  }
}

TEST(Tau, ResidualNotScalar) {
  const auto d = decompose_lie_automorphism(AlgebraMap::identity(Q, 2));
  EXPECT_ERRC(tau_trace_property_check(AlgebraMap::transpose_map(Q, 2), d), Errc::ResidualNotScalar);
}

}  // namespace
