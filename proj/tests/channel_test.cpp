#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qfex/channel.hpp"
#include "qfex/io.hpp"
#include "qfex/util.hpp"

using namespace qfex;

namespace {

DenseOperator mat2(Complex a, Complex b, Complex c, Complex d) {
  DenseOperator m(2, 2);
  m << a, b, c, d;
  return m;
}

DenseOperator random_unitary(Rng& rng, Eigen::Index n) {
  DenseOperator g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  Eigen::HouseholderQR<DenseOperator> qr(g);
  return qr.householderQ() * DenseOperator::Identity(n, n);
}

}  // namespace

TEST_CASE("standard error basis at d = 2") {
  const ErrorBasis basis = ErrorBasis::standard(2);
  CHECK((basis.op(0, 0) - DenseOperator::Identity(2, 2)).norm() < 1e-15);
  CHECK((basis.op(1, 0) - mat2(0, 1, 1, 0)).norm() < 1e-15);       // X
  CHECK((basis.op(0, 1) - mat2(1, 0, 0, -1)).norm() < 1e-15);      // Z
  CHECK((basis.op(1, 1) - mat2(0, -1, 1, 0)).norm() < 1e-15);      // XZ
}

TEST_CASE("standard error basis at d = 3") {
  const ErrorBasis basis = ErrorBasis::standard(3);
  const Complex omega = std::exp(Complex(0, 2.0 * std::numbers::pi / 3.0));
  Ket e2 = Ket::Zero(3);
  e2(2) = 1.0;
  const Ket z_e2 = basis.op(0, 1) * e2;
  CHECK((z_e2 - omega * omega * e2).norm() < 1e-14);
  // X|0> = |2> under the lowering convention.
  Ket e0 = Ket::Zero(3);
  e0(0) = 1.0;
  const Ket x_e0 = basis.op(1, 0) * e0;
  CHECK(std::abs(x_e0(2) - 1.0) < 1e-15);
  CHECK_THROWS_AS(ErrorBasis::standard(4), argument_error);
}

TEST_CASE("error basis orthonormality under Tr(N^dag M)/d") {
  for (std::uint32_t d : {2u, 3u, 5u}) {
    const ErrorBasis basis = ErrorBasis::standard(d);
    for (std::uint32_t u = 0; u < d * d; ++u)
      for (std::uint32_t v = 0; v < d * d; ++v) {
        const Complex ip = (basis.op(u).adjoint() * basis.op(v)).trace() /
                           static_cast<double>(d);
        CHECK(std::abs(ip - (u == v ? 1.0 : 0.0)) < 1e-12);
      }
  }
}

TEST_CASE("expansion of a basis element is a delta") {
  const ErrorBasis basis = ErrorBasis::standard(3);
  for (std::uint32_t w = 0; w < 9; ++w) {
    const auto coeff = expand_in_error_basis(basis.op(w), basis);
    for (std::uint32_t v = 0; v < 9; ++v)
      CHECK(std::abs(coeff[v] - (v == w ? 1.0 : 0.0)) < 1e-12);
  }
}

TEST_CASE("amplitude damping expansion coefficients") {
  const ErrorBasis basis = ErrorBasis::standard(2);
  for (double gamma : {0.1, 0.35, 0.8}) {
    const auto ch = QuantumChannel::amplitude_damping(gamma);
    const auto c0 = expand_in_error_basis(ch.kraus[0], basis);
    const double s = std::sqrt(1.0 - gamma);
    CHECK(std::abs(c0[0] - (1.0 + s) / 2.0) < 1e-12);  // identity component
    CHECK(std::abs(c0[1] - (1.0 - s) / 2.0) < 1e-12);  // Z component
    CHECK(std::abs(c0[2]) < 1e-12);
    CHECK(std::abs(c0[3]) < 1e-12);
    const auto c1 = expand_in_error_basis(ch.kraus[1], basis);
    CHECK(std::abs(c1[2] - std::sqrt(gamma) / 2.0) < 1e-12);   // X
    CHECK(std::abs(c1[3] + std::sqrt(gamma) / 2.0) < 1e-12);   // XZ
    CHECK(std::abs(c1[0]) < 1e-12);
    CHECK(std::abs(c1[1]) < 1e-12);
  }
}

TEST_CASE("error distribution closed forms") {
  for (double gamma : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    const auto p =
        error_distribution(QuantumChannel::amplitude_damping(gamma));
    const double root = std::sqrt(1.0 - gamma);
    CHECK(std::abs(p(0, 0) - (2.0 - gamma + 2.0 * root) / 4.0) < 1e-12);
    CHECK(std::abs(p(1, 0) - gamma / 4.0) < 1e-12);
    CHECK(std::abs(p(0, 1) - (2.0 - gamma - 2.0 * root) / 4.0) < 1e-12);
    CHECK(std::abs(p(1, 1) - gamma / 4.0) < 1e-12);
  }

  const auto ident = error_distribution(QuantumChannel::identity(2));
  CHECK(std::abs(ident[0] - 1.0) < 1e-15);

  const auto dep = error_distribution(QuantumChannel::depolarizing(0.3));
  CHECK(std::abs(dep[0] - 0.7) < 1e-12);
  for (std::uint32_t s = 1; s < 4; ++s) CHECK(std::abs(dep[s] - 0.1) < 1e-12);
}

TEST_CASE("error distribution is representation independent") {
  Rng rng(5);
  const auto ch = QuantumChannel::amplitude_damping(0.27);
  const DenseOperator w = random_unitary(rng, 2);
  std::vector<DenseOperator> mixed = {
      w(0, 0) * ch.kraus[0] + w(0, 1) * ch.kraus[1],
      w(1, 0) * ch.kraus[0] + w(1, 1) * ch.kraus[1]};
  const auto p1 = error_distribution(ch);
  const auto p2 = error_distribution(QuantumChannel(2, 1, mixed));
  for (std::size_t s = 0; s < 4; ++s)
    CHECK(std::abs(p1.p[s] - p2.p[s]) < 1e-12);
}

TEST_CASE("product distribution") {
  const auto p = error_distribution(QuantumChannel::amplitude_damping(0.4));
  const ProductDistribution p2(p, 2);
  const double head = (2.0 - 0.4 + 2.0 * std::sqrt(0.6)) / 4.0;
  CHECK(std::abs(p2(std::vector<std::uint32_t>{0, 0}) - head * head) < 1e-12);
  CHECK(std::abs(p2.total() - 1.0) < 1e-9);

  const ProductDistribution p1(p, 1);
  for (std::uint32_t s = 0; s < 4; ++s)
    CHECK(p1(std::vector<std::uint32_t>{s}) == p.p[s]);

  const ProductDistribution ident(
      error_distribution(QuantumChannel::identity(2)), 3);
  CHECK(ident(std::vector<std::uint32_t>{0, 0, 0}) == 1.0);

  // Vector addressing agrees with tuple addressing.
  const auto x = SymplecticVector::from_string("0110", 2);
  CHECK(p2(x) == p2(std::vector<std::uint32_t>{x.symbol(0), x.symbol(1)}));
}

TEST_CASE("choi states of reference channels") {
  const DenseOperator m_id = choi_state(QuantumChannel::identity(2));
  DenseOperator phi = DenseOperator::Zero(4, 4);
  phi(0, 0) = phi(0, 3) = phi(3, 0) = phi(3, 3) = 0.5;
  CHECK((m_id - phi).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(std::abs(m_id.trace() - 1.0) < 1e-14);

  // Fully dephasing channel {|0><0|, |1><1|}.
  const QuantumChannel dq(2, 1, {mat2(1, 0, 0, 0), mat2(0, 0, 0, 1)});
  DenseOperator expect = DenseOperator::Zero(4, 4);
  expect(0, 0) = expect(3, 3) = 0.5;
  CHECK((choi_state(dq) - expect).cwiseAbs().maxCoeff() < 1e-15);

  for (double gamma : {0.2, 0.6}) {
    const DenseOperator m =
        choi_state(QuantumChannel::amplitude_damping(gamma));
    CHECK(std::abs(m(0, 3) - std::sqrt(1.0 - gamma) / 2.0) < 1e-14);
    CHECK(std::abs(m.trace() - 1.0) < 1e-14);
  }
}

TEST_CASE("kraus recovery from a choi state") {
  // Phi+ recovers a channel equivalent to the identity.
  const DenseOperator m_id = choi_state(QuantumChannel::identity(2));
  const QuantumChannel rec = kraus_from_choi(m_id, 2);
  Rng rng(3);
  DenseOperator rho(2, 2);
  rho << 0.7, Complex(0.1, -0.2), Complex(0.1, 0.2), 0.3;
  CHECK((apply_channel(rec, rho) - rho).cwiseAbs().maxCoeff() < 1e-12);

  // The diagonal Choi state gives the dephasing distribution (1/2 on I, Z).
  DenseOperator diag = DenseOperator::Zero(4, 4);
  diag(0, 0) = diag(3, 3) = 0.5;
  const auto p = error_distribution(kraus_from_choi(diag, 2));
  CHECK(std::abs(p(0, 0) - 0.5) < 1e-12);
  CHECK(std::abs(p(0, 1) - 0.5) < 1e-12);
  CHECK(std::abs(p(1, 0)) < 1e-12);
  CHECK(std::abs(p(1, 1)) < 1e-12);

  // Round trip over assorted channels.
  for (double gamma : {0.0, 0.3, 0.9}) {
    const DenseOperator m =
        choi_state(QuantumChannel::amplitude_damping(gamma));
    const DenseOperator m2 = choi_state(kraus_from_choi(m, 2));
    CHECK((m - m2).cwiseAbs().maxCoeff() < 1e-9);
  }

  DenseOperator bad = -DenseOperator::Identity(4, 4);
  CHECK_THROWS_AS(kraus_from_choi(bad, 2), validation_error);

  // PSD but with the wrong marginal: not trace preserving.
  DenseOperator not_tp = DenseOperator::Zero(4, 4);
  not_tp(0, 0) = 1.0;
  CHECK_THROWS_AS(kraus_from_choi(not_tp, 2), validation_error);
}

TEST_CASE("alternative primitive roots") {
  const ErrorBasis b2 = ErrorBasis::standard(3, 2);
  const Complex omega2 = std::exp(Complex(0, 4.0 * std::numbers::pi / 3.0));
  CHECK(std::abs(b2.omega() - omega2) < 1e-15);
  Ket e1 = Ket::Zero(3);
  e1(1) = 1.0;
  CHECK(((b2.op(0, 1) * e1) - omega2 * e1).norm() < 1e-14);
  // Orthonormality is root independent.
  for (std::uint32_t u = 0; u < 9; ++u)
    for (std::uint32_t v = 0; v < 9; ++v) {
      const Complex ip =
          (b2.op(u).adjoint() * b2.op(v)).trace() / 3.0;
      CHECK(std::abs(ip - (u == v ? 1.0 : 0.0)) < 1e-12);
    }
  CHECK_THROWS_AS(ErrorBasis::standard(3, 3), argument_error);
  // A Pauli channel defined with the alternative root still recovers its
  // distribution in its own basis.
  const ErrorDistribution q(3, {0.4, 0.1, 0.05, 0.05, 0.1, 0.05, 0.05,
                                0.1, 0.1});
  const auto back = error_distribution(QuantumChannel::pauli(q, b2), b2);
  for (std::size_t s = 0; s < 9; ++s)
    CHECK(std::abs(back.p[s] - q.p[s]) < 1e-12);
}

TEST_CASE("product distribution cap") {
  const auto p = error_distribution(QuantumChannel::depolarizing(0.1));
  CHECK_THROWS_AS(ProductDistribution(p, 11).total(), resource_error);
}

TEST_CASE("unitary composition") {
  const auto ch = QuantumChannel::amplitude_damping(0.3);
  const auto same = compose_unitary(DenseOperator::Identity(2, 2), ch);
  const auto p0 = error_distribution(ch), p1 = error_distribution(same);
  for (std::size_t s = 0; s < 4; ++s) CHECK(p0.p[s] == p1.p[s]);

  // X applied after the identity channel is the pure X error.
  const auto x_shift =
      compose_unitary(mat2(0, 1, 1, 0), QuantumChannel::identity(2));
  const auto px = error_distribution(x_shift);
  CHECK(std::abs(px(1, 0) - 1.0) < 1e-12);

  CHECK_THROWS_AS(compose_unitary(mat2(1, 1, 0, 1), ch), argument_error);
}

TEST_CASE("pauli channel in a scrambled frame recovers its distribution") {
  Rng rng(17);
  for (int t = 0; t < 5; ++t) {
    std::vector<double> probs(4);
    double sum = 0;
    for (auto& x : probs) {
      x = -std::log(1.0 - rng.uniform());
      sum += x;
    }
    for (auto& x : probs) x /= sum;
    const ErrorDistribution q(2, probs);
    const ErrorBasis frame = ErrorBasis::from_frame(random_unitary(rng, 2));
    const auto ch = QuantumChannel::pauli(q, frame);
    const auto back = error_distribution(ch, frame);
    for (std::size_t s = 0; s < 4; ++s)
      CHECK(std::abs(back.p[s] - q.p[s]) < 1e-12);
  }
}

TEST_CASE("apply channel basics") {
  DenseOperator one = DenseOperator::Zero(2, 2);
  one(1, 1) = 1.0;
  const auto out =
      apply_channel(QuantumChannel::amplitude_damping(1.0), one);
  DenseOperator zero = DenseOperator::Zero(2, 2);
  zero(0, 0) = 1.0;
  CHECK((out - zero).cwiseAbs().maxCoeff() < 1e-15);

  const DenseOperator mixed = 0.5 * DenseOperator::Identity(2, 2);
  const auto fixed = apply_channel(QuantumChannel::depolarizing(0.37), mixed);
  CHECK((fixed - mixed).cwiseAbs().maxCoeff() < 1e-15);

  Rng rng(29);
  const auto ch = QuantumChannel::amplitude_damping(0.4);
  DenseOperator rho(2, 2);
  rho << 0.6, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.4;
  const auto evolved = apply_channel(ch, rho);
  CHECK(std::abs(evolved.trace() - rho.trace()) < 1e-12);
  CHECK((evolved - evolved.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(apply_channel(ch, DenseOperator::Identity(3, 3)),
                  dimension_error);
}

TEST_CASE("channel validation") {
  // Non trace preserving.
  CHECK_THROWS_AS(QuantumChannel(2, 1, {mat2(1, 0, 0, 0.5)}),
                  validation_error);
  // Null padding is accepted up to (d^m)^2 operators.
  std::vector<DenseOperator> padded = {DenseOperator::Identity(2, 2),
                                       DenseOperator::Zero(2, 2),
                                       DenseOperator::Zero(2, 2),
                                       DenseOperator::Zero(2, 2)};
  CHECK_NOTHROW(QuantumChannel(2, 1, padded));
  padded.push_back(DenseOperator::Zero(2, 2));
  CHECK_THROWS_AS(QuantumChannel(2, 1, padded), argument_error);
  // Composite dimension is rejected.
  CHECK_THROWS_AS(QuantumChannel(4, 1, {DenseOperator::Identity(4, 4)}),
                  argument_error);
  // Non-finite entries are rejected.
  DenseOperator nan_op = DenseOperator::Identity(2, 2);
  nan_op(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(QuantumChannel(2, 1, {nan_op}), validation_error);
}

TEST_CASE("tensor power") {
  const auto ch = QuantumChannel::amplitude_damping(0.5);
  const auto ch2 = ch.tensor_power(2);
  CHECK(ch2.m == 2);
  CHECK(ch2.kraus.size() == 4);
  CHECK(ch2.dim() == 4);
  CHECK((ch2.kraus[0] - kron(ch.kraus[0], ch.kraus[0])).norm() < 1e-15);
  CHECK((ch2.kraus[1] - kron(ch.kraus[0], ch.kraus[1])).norm() < 1e-15);
  CHECK_THROWS_AS(ch.tensor_power(0), argument_error);
}

TEST_CASE("error operator over vectors") {
  const ErrorBasis basis = ErrorBasis::standard(2);
  const auto zz = error_operator(basis, SymplecticVector::from_string("0101", 2));
  CHECK((zz - kron(basis.op(0, 1), basis.op(0, 1))).norm() < 1e-15);
  const auto xi = error_operator(basis, SymplecticVector::from_string("1000", 2));
  CHECK((xi - kron(basis.op(1, 0), basis.op(0, 0))).norm() < 1e-15);
}
