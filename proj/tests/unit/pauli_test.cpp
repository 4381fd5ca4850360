#include <doctest.h>

#include "pcslab/pauli.hpp"
#include "test_util.hpp"

using namespace pcs;

namespace {
double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}
}  // namespace

TEST_CASE("pauli: products carry the right phases") {
  auto X = PauliString::from_string("X");
  auto Z = PauliString::from_string("Z");
  auto iY = PauliString::from_string("+iY");

  CHECK((X * X).str() == "+I");
  CHECK((X * Z).str() == "-iY");
  CHECK((iY * iY).str() == "-I");

  // 2x2 matrix oracle for the nontrivial cases.
  CHECK(max_abs_diff((X * Z).to_matrix(), X.to_matrix() * Z.to_matrix()) == 0.0);
  CHECK(max_abs_diff((iY * iY).to_matrix(), iY.to_matrix() * iY.to_matrix()) == 0.0);
}

TEST_CASE("pauli: commutation") {
  auto X = PauliString::from_string("X");
  auto Z = PauliString::from_string("Z");
  CHECK(X.commutes_with(X));
  CHECK_FALSE(X.commutes_with(Z));
  CHECK(PauliString::from_string("XX").commutes_with(PauliString::from_string("ZZ")));

  // matrix oracle: commutator vanishes iff commutes_with.
  auto XX = PauliString::from_string("XX");
  auto ZZ = PauliString::from_string("ZZ");
  Eigen::MatrixXcd comm =
      XX.to_matrix() * ZZ.to_matrix() - ZZ.to_matrix() * XX.to_matrix();
  CHECK(comm.cwiseAbs().maxCoeff() == 0.0);
  Eigen::MatrixXcd anti = X.to_matrix() * Z.to_matrix() - Z.to_matrix() * X.to_matrix();
  CHECK(anti.cwiseAbs().maxCoeff() > 1.0);
}

TEST_CASE("pauli: weight") {
  CHECK(PauliString::from_string("III").weight() == 0);
  CHECK(PauliString::from_string("ZZXIZ").weight() == 4);
  CHECK(PauliString::from_string("XIY").weight() == 2);
}

TEST_CASE("pauli: to_matrix basics") {
  CHECK(max_abs_diff(PauliString::from_string("I").to_matrix(),
                     Eigen::MatrixXcd::Identity(2, 2)) == 0.0);
  Eigen::MatrixXcd y(2, 2);
  y << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
  CHECK(max_abs_diff(PauliString::from_string("Y").to_matrix(), y) == 0.0);

  // Kronecker oracle: XZ == X (x) Z with qubit 0 leftmost.
  Eigen::MatrixXcd x = PauliString::from_string("X").to_matrix();
  Eigen::MatrixXcd z = PauliString::from_string("Z").to_matrix();
  Eigen::MatrixXcd kron(4, 4);
  kron.setZero();
  kron.block<2, 2>(0, 2) = z;
  kron.block<2, 2>(2, 0) = z;
  CHECK(max_abs_diff(PauliString::from_string("XZ").to_matrix(), kron) == 0.0);
}

TEST_CASE("pauli: errors") {
  CHECK_THROWS_AS(PauliString::from_string("X") * PauliString::from_string("XX"),
                  std::invalid_argument);
  CHECK_THROWS_AS(PauliString::from_string("X").commutes_with(PauliString::from_string("XX")),
                  std::invalid_argument);
  CHECK_THROWS_AS(PauliString::identity(16).to_matrix(14), std::length_error);
  CHECK_THROWS_AS(PauliString::from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::from_string("XQ"), std::invalid_argument);
}

TEST_CASE("pauli: product and commutation agree with the dense oracle on random strings") {
  Rng rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    uint32_t n = 1 + rng.next_u64() % 6;
    PauliString a = testutil::random_pauli(n, rng);
    PauliString b = testutil::random_pauli(n, rng);
    CHECK(max_abs_diff((a * b).to_matrix(), a.to_matrix() * b.to_matrix()) == 0.0);
    Eigen::MatrixXcd comm =
        a.to_matrix() * b.to_matrix() - b.to_matrix() * a.to_matrix();
    CHECK(a.commutes_with(b) == (comm.cwiseAbs().maxCoeff() == 0.0));
    // symplectic parity form
    int sym = 0;
    for (uint32_t q = 0; q < n; ++q) {
      sym ^= (a.x_bit(q) & b.z_bit(q)) ^ (a.z_bit(q) & b.x_bit(q));
    }
    CHECK(a.commutes_with(b) == (sym == 0));
  }
}

TEST_CASE("pauli: text form round-trips") {
  for (const char* s : {"+I", "-iXZY", "+iY", "-Z", "+XXIZ"}) {
    CHECK(PauliString::from_string(s).str() == s);
  }
  CHECK(PauliString::from_string("XZY").str() == "+XZY");
  CHECK(PauliString::from_string("iX").str() == "+iX");
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    PauliString p = testutil::random_pauli(1 + rng.next_u64() % 10, rng);
    CHECK(PauliString::from_string(p.str()) == p);
  }
}
