// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "portsim/ensembles.hpp"
#include "portsim/recycling.hpp"

using namespace portsim;
using namespace portsim::recycling;

namespace {

HermitianOperator singlet_projector() {
  const PureState s = qcore::build_singlet_resource(1, 2, qcore::ResourceKind::Singlet);
  return HermitianOperator(s.layout(), s.amplitudes() * s.amplitudes().adjoint(),
                           OperatorKind::Density);
}

}  // namespace

TEST_CASE("twirl fixes the singlet") {
  const HermitianOperator p = singlet_projector();
  const HermitianOperator tw = twirl_ports(p, TwirlMode::CliffordTensor, 0, 0);
  CHECK((tw.matrix() - p.matrix()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("twirl of |00> is the f=0 Werner state") {
  const SystemLayout pair({{"A1", 2}, {"B1", 2}});
  Matrix rho = Matrix::Zero(4, 4);
  rho(0, 0) = 1.0;
  const HermitianOperator in(pair, rho, OperatorKind::Density);
  const HermitianOperator tw = twirl_ports(in, TwirlMode::CliffordTensor, 0, 0);
  const Matrix pm = singlet_projector().matrix();
  const Matrix expectation = (Matrix::Identity(4, 4) - pm) / 3.0;  // f = <singlet|00> = 0
  CHECK((tw.matrix() - expectation).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("haar-mc twirl converges to the exact Clifford average") {
  const SystemLayout pair({{"A1", 2}, {"B1", 2}});
  CounterRng rng(123);
  Matrix g(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) g(r, c) = Complex(rng.next_gaussian(), rng.next_gaussian());
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  const HermitianOperator in(pair, rho, OperatorKind::Density);
  const HermitianOperator exact = twirl_ports(in, TwirlMode::CliffordTensor, 0, 0);
  const HermitianOperator mc = twirl_ports(in, TwirlMode::HaarMc, 10000, 7);
  CHECK(qcore::trace_distance(exact, mc) <= 0.02);
  CHECK_THROWS_AS(twirl_ports(in, TwirlMode::HaarMc, 0, 7), ArgumentError);
}

TEST_CASE("twirl output is a valid density operator commuting with the collective action") {
  const SystemLayout pair({{"A1", 2}, {"B1", 2}});
  CounterRng rng(55);
  Matrix g(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) g(r, c) = Complex(rng.next_gaussian(), rng.next_gaussian());
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  const HermitianOperator tw =
      twirl_ports(HermitianOperator(pair, rho, OperatorKind::Density), TwirlMode::CliffordTensor, 0, 0);
  CHECK(tw.trace() == doctest::Approx(1.0).epsilon(1e-9));
  Eigen::SelfAdjointEigenSolver<Matrix> es(tw.matrix(), Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > -1e-9);

  const auto& cliffords = ensembles::single_qubit_cliffords();
  CounterRng pick(99);
  for (int t = 0; t < 5; ++t) {
    const Matrix& c = cliffords[static_cast<size_t>(pick.next_below(cliffords.size()))];
    Matrix u(4, 4);
    for (int r = 0; r < 2; ++r)
      for (int cc = 0; cc < 2; ++cc) u.block(2 * r, 2 * cc, 2, 2) = c(r, cc) * c;
    const Matrix comm = u * tw.matrix() - tw.matrix() * u;
    CHECK(comm.cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("zero-round run leaves an empty trace") {
  const RecycleTrace trace = recycle_protocol_run(4, 0, 17);
  CHECK(trace.rounds.empty());
  CHECK(trace.ports == 4);
}

TEST_CASE("recycle run is reproducible and well-formed") {
  const RecycleTrace a = recycle_protocol_run(4, 2, 2024);
  const RecycleTrace b = recycle_protocol_run(4, 2, 2024);
  REQUIRE(a.rounds.size() == 2);
  for (size_t r = 0; r < a.rounds.size(); ++r) {
    CHECK(a.rounds[r].port == b.rounds[r].port);
    CHECK(a.rounds[r].fid_teleported == b.rounds[r].fid_teleported);
    CHECK(a.rounds[r].fid_resource_est == b.rounds[r].fid_resource_est);
    CHECK(a.rounds[r].fid_teleported >= 0.0);
    CHECK(a.rounds[r].fid_teleported <= 1.0 + 1e-12);
    CHECK(a.rounds[r].lemma2_bound ==
          doctest::Approx(std::max(0.0, 1.0 - 11.0 * static_cast<double>(r + 1) / 8.0)));
  }
}

TEST_CASE("a full-length run keeps exactly one consumed port per round") {
  const RecycleTrace t = recycle_protocol_run(4, 3, 5);
  REQUIRE(t.rounds.size() == 3);
  for (const auto& row : t.rounds) {
    CHECK(row.fid_resource_est >= 0.0);
    CHECK(row.fid_teleported >= 0.0);
    CHECK(row.fid_teleported <= 1.0 + 1e-12);
  }
}

TEST_CASE("recycle argument validation") {
  CHECK_THROWS_AS(recycle_protocol_run(4, 4, 1), ArgumentError);   // k >= N
  CHECK_THROWS_AS(recycle_protocol_run(4, -1, 1), ArgumentError);
  RecycleOptions tight;
  tight.max_qubits = 10;
  CHECK_THROWS_AS(recycle_protocol_run(6, 3, 1, tight), ResourceLimitError);
}

TEST_CASE("port marginal fidelity") {
  const PureState fresh = qcore::build_singlet_resource(3, 2, qcore::ResourceKind::Singlet);
  for (int p = 1; p <= 3; ++p) {
    CHECK(port_marginal_fidelity(fresh, p) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(port_marginal_fidelity(fresh, 2, {2}), ArgumentError);
}

TEST_CASE("teleported fidelity expectation tracks the single-round average") {
  // round-1 recorded fidelity is |<ideal|out>| whose seed average equals the
  // dense exact protocol fidelity; a modest sample must sit inside 4 sigma
  const int seeds = 200;
  double sum = 0.0, sumsq = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const RecycleTrace t = recycle_protocol_run(3, 1, static_cast<std::uint64_t>(1000 + s));
    const double f = t.rounds[0].success ? t.rounds[0].fid_teleported : 0.0;
    sum += f;
    sumsq += f * f;
  }
  const double mean = sum / seeds;
  const double var = std::max(0.0, sumsq / seeds - mean * mean);
  const double sigma = std::sqrt(var / seeds);
  const double exact = pgm::exact_protocol_fidelity(3);
  CHECK(std::abs(mean - exact) <= 4.0 * sigma + 1e-6);
}
