// Copyright 2026 The ghz-decay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ghzdecay/channels.hpp"
#include "ghzdecay/sampling.hpp"
#include "test_support.hpp"

using namespace ghzdecay;
using testsupport::max_abs_diff;

namespace {

const double inv_sqrt2 = std::sqrt(0.5);

DensityMatrix random_state(int num_qubits, std::uint64_t seed) {
  GaussianStream gauss(seed);
  SplitMix64 rng(seed ^ 0xABCDEF);
  return testsupport::random_mixed(num_qubits, 3, gauss, rng);
}

DensityMatrix balanced_ghz_density(int n) {
  return density_from_pure(make_generalized_ghz(
      GhzSpec(n, 0, +1, cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0})));
}

}  // namespace

TEST_SUITE("channels") {

TEST_CASE("depolarizing Kraus weights follow the Pauli decomposition") {
  const auto idle = SingleQubitChannel::depolarizing(0.0);
  CHECK(idle.kraus_ops().size() == 1);
  CHECK(idle.is_exact_identity());

  const auto ch = SingleQubitChannel::depolarizing(0.4);
  REQUIRE(ch.kraus_ops().size() == 4);
  CHECK(std::norm(ch.kraus_ops()[0].m00) == doctest::Approx(0.7));
  CHECK(std::norm(ch.kraus_ops()[1].m01) == doctest::Approx(0.1));

  CHECK_THROWS_AS(SingleQubitChannel::depolarizing(-0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(SingleQubitChannel::depolarizing(1.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(SingleQubitChannel::depolarizing(std::nan("")),
                  std::invalid_argument);
}

TEST_CASE("depolarizing action is the isotropic shrink") {
  // p = 1 sends any state to the maximally mixed one (oracle: the
  // four-term Pauli sum evaluated on paper gives diag(1/2, 1/2)).
  const DensityMatrix rho = random_state(1, 42);
  const DensityMatrix out =
      apply_local(rho, SingleQubitChannel::depolarizing(1.0));
  CHECK(std::abs(out(0, 0) - cplx{0.5, 0}) < 1e-14);
  CHECK(std::abs(out(1, 1) - cplx{0.5, 0}) < 1e-14);
  CHECK(std::abs(out(0, 1)) < 1e-14);

  for (double p : {0.1, 0.35, 0.8}) {
    const DensityMatrix mixed =
        apply_local(rho, SingleQubitChannel::depolarizing(p));
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 2; ++c) {
        const cplx expected = (1.0 - p) * rho(r, c) +
                              (r == c ? cplx{p / 2.0, 0} : cplx{});
        CHECK(std::abs(mixed(r, c) - expected) < 1e-14);
      }
    }
  }
}

TEST_CASE("dephasing kills off-diagonals only") {
  CHECK(SingleQubitChannel::dephasing(0.0).is_exact_identity());

  const DensityMatrix rho = random_state(1, 7);
  for (double p : {0.2, 0.6, 1.0}) {
    const DensityMatrix out =
        apply_local(rho, SingleQubitChannel::dephasing(p));
    CHECK(std::abs(out(0, 0) - rho(0, 0)) < 1e-15);
    CHECK(std::abs(out(1, 1) - rho(1, 1)) < 1e-15);
    CHECK(std::abs(out(0, 1) - (1.0 - p) * rho(0, 1)) < 1e-15);
  }

  // Complete phase loss on |+><+|.
  const DensityMatrix plus(
      1, {cplx{0.5, 0}, cplx{0.5, 0}, cplx{0.5, 0}, cplx{0.5, 0}});
  const DensityMatrix out =
      apply_local(plus, SingleQubitChannel::dephasing(1.0));
  CHECK(std::abs(out(0, 0) - cplx{0.5, 0}) < 1e-15);
  CHECK(std::abs(out(0, 1)) < 1e-15);
}

TEST_CASE("thermal family covers damping through diffusion") {
  SUBCASE("nbar = 0 is amplitude damping") {
    const auto ch = SingleQubitChannel::thermal(0.0, 0.3);
    CHECK(ch.kraus_ops().size() == 2);  // the up-jump pair vanished
    const DensityMatrix excited = density_from_pure(PureState::basis_state(1, 1));
    const DensityMatrix out = apply_local(excited, ch);
    CHECK(out(0, 0).real() == doctest::Approx(0.3));
    CHECK(out(1, 1).real() == doctest::Approx(0.7));
  }

  SUBCASE("p = 0 keeps only identity parts") {
    const auto ch = SingleQubitChannel::thermal(1.0, 0.0);
    CHECK(ch.kraus_ops().size() == 2);  // K1 = K3 = 0 dropped
    for (std::uint64_t basis : {0, 1}) {
      const DensityMatrix rho =
          density_from_pure(PureState::basis_state(1, basis));
      const DensityMatrix out = apply_local(rho, ch);
      CHECK(max_abs_diff(out.elements(), rho.elements()) < 1e-15);
    }
  }

  SUBCASE("diffusive limit uses equal bath prefactors") {
    const auto ch = SingleQubitChannel::thermal_diffusive(0.4);
    CHECK(ch.kraus_ops()[0].m00.real() == doctest::Approx(inv_sqrt2));
    CHECK(ch.kraus_ops()[2].m11.real() == doctest::Approx(inv_sqrt2));
    CHECK(ch.diffusive());
  }

  SUBCASE("completeness holds across the parameter grid") {
    for (double nbar : {0.0, 0.5, 1.0, 5.0}) {
      for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        CHECK_NOTHROW(SingleQubitChannel::thermal(nbar, p));
      }
    }
  }

  CHECK_THROWS_AS(SingleQubitChannel::thermal(-0.5, 0.2),
                  std::invalid_argument);
}

TEST_CASE("custom Kraus sets must be complete") {
  // Identity with wrong weight.
  Mat2 bad{cplx{0.5, 0}, {}, {}, cplx{0.5, 0}};
  CHECK_THROWS_AS(SingleQubitChannel::custom({bad}), std::invalid_argument);

  SplitMix64 rng(3);
  CHECK_NOTHROW(
      SingleQubitChannel::custom({testsupport::random_unitary2(rng)}));
}

TEST_CASE("identity application is exact") {
  const DensityMatrix rho = random_state(3, 99);
  const DensityMatrix out = apply_local(rho, SingleQubitChannel::identity());
  CHECK(max_abs_diff(out.elements(), rho.elements()) == 0.0);
}

TEST_CASE("corner coherence decays as (1-p)^N") {
  for (int n : {2, 3, 5}) {
    const DensityMatrix rho = balanced_ghz_density(n);
    const std::size_t top = rho.dim() - 1;
    for (double p : {0.15, 0.5, 0.85}) {
      const DensityMatrix dephased =
          apply_local(rho, SingleQubitChannel::dephasing(p));
      CHECK(std::abs(dephased(0, top) -
                     rho(0, top) * std::pow(1.0 - p, n)) < 1e-12);
      const DensityMatrix depolarized =
          apply_local(rho, SingleQubitChannel::depolarizing(p));
      CHECK(std::abs(depolarized(0, top) -
                     rho(0, top) * std::pow(1.0 - p, n)) < 1e-12);
    }
  }
}

TEST_CASE("qubit sweep agrees with the full operator-sum expansion") {
  for (int n : {1, 2, 3}) {
    const DensityMatrix rho = random_state(n, 1000 + n);
    for (double p : {0.3, 0.9}) {
      const std::vector<SingleQubitChannel> channels = {
          SingleQubitChannel::depolarizing(p),
          SingleQubitChannel::dephasing(p),
          SingleQubitChannel::thermal(0.7, p),
          SingleQubitChannel::thermal_diffusive(p),
      };
      for (const auto& ch : channels) {
        const DensityMatrix fast = apply_local(rho, ch);
        const auto brute = testsupport::brute_force_apply(
            rho.elements(), n, ch.kraus_ops());
        CHECK(max_abs_diff(fast.elements(), brute) < 1e-12);
      }
    }
  }
}

TEST_CASE("heterogeneous application") {
  const DensityMatrix ghz = balanced_ghz_density(2);

  SUBCASE("all-identity list is a no-op") {
    const std::vector<SingleQubitChannel> ids(2,
                                              SingleQubitChannel::identity());
    const DensityMatrix out = apply_local_heterogeneous(ghz, ids);
    CHECK(max_abs_diff(out.elements(), ghz.elements()) == 0.0);
  }

  SUBCASE("dephasing a single qubit scales the coherence once") {
    const double p = 0.35;
    const std::vector<SingleQubitChannel> chs = {
        SingleQubitChannel::dephasing(p), SingleQubitChannel::identity()};
    const DensityMatrix out = apply_local_heterogeneous(ghz, chs);
    CHECK(std::abs(out(0, 3) - ghz(0, 3) * (1.0 - p)) < 1e-14);
  }

  SUBCASE("a repeated channel equals apply_local") {
    const auto ch = SingleQubitChannel::thermal(0.5, 0.4);
    const std::vector<SingleQubitChannel> chs(2, ch);
    CHECK(max_abs_diff(apply_local_heterogeneous(ghz, chs).elements(),
                       apply_local(ghz, ch).elements()) == 0.0);
  }

  SUBCASE("length mismatch is rejected") {
    const std::vector<SingleQubitChannel> chs(3,
                                              SingleQubitChannel::identity());
    CHECK_THROWS_AS(apply_local_heterogeneous(ghz, chs),
                    std::invalid_argument);
  }
}

TEST_CASE("trace preservation and positivity across the families") {
  for (int n : {2, 3}) {
    const DensityMatrix rho = random_state(n, 55 + n);
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      for (const auto& ch : {SingleQubitChannel::depolarizing(p),
                             SingleQubitChannel::dephasing(p),
                             SingleQubitChannel::thermal(0.5, p),
                             SingleQubitChannel::thermal_diffusive(p)}) {
        const DensityMatrix out = apply_local(rho, ch);
        CHECK(std::abs(out.trace() - cplx{1.0, 0}) < 1e-10);
        CHECK(out.min_eigenvalue() >= -1e-10);
      }
    }
  }
}

TEST_CASE("channels on distinct qubits commute") {
  const DensityMatrix rho = random_state(3, 77);
  const auto ch = SingleQubitChannel::thermal(0.8, 0.45);
  const auto id = SingleQubitChannel::identity();
  const std::vector<SingleQubitChannel> on_a = {ch, id, id};
  const std::vector<SingleQubitChannel> on_c = {id, id, ch};
  const DensityMatrix ac = apply_local_heterogeneous(
      apply_local_heterogeneous(rho, on_a), on_c);
  const DensityMatrix ca = apply_local_heterogeneous(
      apply_local_heterogeneous(rho, on_c), on_a);
  CHECK(max_abs_diff(ac.elements(), ca.elements()) < 1e-12);
}

TEST_CASE("depolarizing commutes with local basis changes") {
  SplitMix64 rng(31);
  const DensityMatrix rho = random_state(3, 81);
  const auto depol = SingleQubitChannel::depolarizing(0.4);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat2 u = testsupport::random_unitary2(rng);
    const auto rotate = SingleQubitChannel::custom({u});
    const DensityMatrix a =
        apply_local(apply_local(rho, depol), rotate);
    const DensityMatrix b =
        apply_local(apply_local(rho, rotate), depol);
    CHECK(max_abs_diff(a.elements(), b.elements()) < 1e-12);
  }
}

TEST_CASE("time maps") {
  const TimeMap decay = TimeMap::exponential_decay(2.0);
  CHECK(time_to_p(decay, 0.0) == 0.0);
  CHECK(time_to_p(decay, std::log(4.0)) == doctest::Approx(0.75));

  const double omega = 3.0;
  const TimeMap rabi = TimeMap::rabi_oscillation(omega);
  CHECK(time_to_p(rabi, std::numbers::pi / omega) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const TimeMap diffusive = TimeMap::diffusive_linear(1.5);
  CHECK(time_to_p(diffusive, 0.0) == 0.0);
  CHECK(time_to_p(diffusive, 1.0) == doctest::Approx(1.0 - std::exp(-1.5)));

  CHECK_THROWS_AS(time_to_p(decay, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(TimeMap::exponential_decay(-1.0), std::invalid_argument);

  // Clamped output for any admissible input.
  for (double t : {0.0, 0.3, 2.0, 100.0}) {
    for (const TimeMap& map : {decay, rabi, diffusive}) {
      const double p = time_to_p(map, t);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
}

}  // TEST_SUITE
