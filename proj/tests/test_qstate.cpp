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
#include <cstdio>
#include <filesystem>

#include "ghzdecay/qstate.hpp"
#include "ghzdecay/qstate_io.hpp"
#include "ghzdecay/sampling.hpp"
#include "test_support.hpp"

using namespace ghzdecay;

namespace {
const double inv_sqrt2 = std::sqrt(0.5);
}

TEST_SUITE("qstate") {

TEST_CASE("bitflip complements within the register") {
  CHECK(bitflip(2, 3) == 5);
  CHECK(bitflip(0, 4) == 15);
  CHECK(bitflip(5, 3) == 2);
  CHECK_THROWS_AS(bitflip(8, 3), std::out_of_range);

  SplitMix64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.next() % 10);
    const std::uint64_t k = rng.next() & ((std::uint64_t{1} << n) - 1);
    CHECK(bitflip(bitflip(k, n), n) == k);
  }
}

TEST_CASE("generalized two-branch states put amplitudes on (k, k-bar)") {
  const PureState balanced = make_generalized_ghz(
      GhzSpec(3, 0, +1, cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0}));
  CHECK(balanced.amplitude(0).real() == doctest::Approx(inv_sqrt2));
  CHECK(balanced.amplitude(7).real() == doctest::Approx(inv_sqrt2));
  for (std::size_t i = 1; i < 7; ++i) {
    CHECK(balanced.amplitude(i) == cplx{});
  }

  const PureState shifted = make_generalized_ghz(
      GhzSpec(3, 2, +1, cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0}));
  CHECK(shifted.amplitude(2).real() == doctest::Approx(inv_sqrt2));
  CHECK(shifted.amplitude(5).real() == doctest::Approx(inv_sqrt2));

  const PureState odd =
      make_generalized_ghz(GhzSpec(2, 0, -1, cplx{0.6, 0}, cplx{0.8, 0}));
  CHECK(odd.amplitude(0) == cplx{0.6, 0});
  CHECK(odd.amplitude(3) == cplx{-0.8, 0});
  double norm = 0.0;
  for (std::size_t i = 0; i < odd.dim(); ++i) {
    norm += std::norm(odd.amplitude(i));
  }
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero branch amplitudes are rejected") {
  CHECK_THROWS_AS(GhzSpec(1, 0, +1, cplx{0.6, 0}, cplx{0.8, 0}),
                  std::invalid_argument);  // single qubit excluded
  CHECK_THROWS_AS(GhzSpec(2, 0, +1, cplx{1.0, 0}, cplx{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(GhzSpec(2, 0, +1, cplx{}, cplx{1.0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(GhzSpec(2, 0, +1, cplx{0.9, 0}, cplx{0.1, 0}),
                  std::invalid_argument);  // norm != 1
  CHECK_THROWS_AS(GhzSpec(2, 0, 2, cplx{0.6, 0}, cplx{0.8, 0}),
                  std::invalid_argument);
}

TEST_CASE("label canonicalization keeps the projector") {
  const GhzSpec canonical(3, 5, +1, cplx{0.6, 0}, cplx{0.0, 0.8});
  CHECK(canonical.label == 2);
  CHECK(canonical.alpha == cplx{0.0, 0.8});
  CHECK(canonical.beta == cplx{0.6, 0});

  // Same ray: projectors match even though amplitude order changed.
  const DensityMatrix direct = density_from_pure(
      PureState(3, [] {
        std::vector<cplx> a(8);
        a[5] = cplx{0.6, 0};
        a[2] = cplx{0.0, 0.8};
        return a;
      }()));
  const DensityMatrix via_spec =
      density_from_pure(make_generalized_ghz(canonical));
  CHECK(testsupport::max_abs_diff(direct.elements(), via_spec.elements()) <
        1e-15);
}

TEST_CASE("mixtures build valid diagonal-plus-corner states") {
  SUBCASE("degenerate single-term mixture equals the projector") {
    const GhzSpec spec(3, 0, +1, cplx{0.6, 0}, cplx{0.8, 0});
    const GhzMixtureSpec mix(3, spec.alpha, spec.beta, {{{0, +1}, 1.0}});
    const DensityMatrix rho = make_ghz_diagonal(mix);
    const DensityMatrix proj = density_from_pure(make_generalized_ghz(spec));
    CHECK(testsupport::max_abs_diff(rho.elements(), proj.elements()) < 1e-15);
  }

  SUBCASE("opposite parities cancel the coherences") {
    const GhzMixtureSpec mix(2, cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0},
                             {{{0, +1}, 0.5}, {{0, -1}, 0.5}});
    const DensityMatrix rho = make_ghz_diagonal(mix);
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) {
        const cplx expected = (r == c && (r == 0 || r == 3))
                                  ? cplx{0.5, 0.0}
                                  : cplx{};
        CHECK(std::abs(rho(r, c) - expected) < 1e-15);
      }
    }
  }

  SUBCASE("two-label mixture has trace 1 and rank 2") {
    const GhzMixtureSpec mix(3, cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0},
                             {{{0, +1}, 0.5}, {{2, +1}, 0.5}});
    const DensityMatrix rho = make_ghz_diagonal(mix);
    CHECK(std::abs(rho.trace() - cplx{1.0, 0}) < 1e-14);
    // Two equal-weight orthogonal projectors: purity 1/2.
    CHECK(rho.purity() == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("weights must sum to one") {
    CHECK_THROWS_AS(
        GhzMixtureSpec(2, cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0},
                       {{{0, +1}, 0.7}, {{0, -1}, 0.7}}),
        std::invalid_argument);
  }
}

TEST_CASE("density_from_pure") {
  const DensityMatrix ground = density_from_pure(PureState::basis_state(1, 0));
  CHECK(ground(0, 0) == cplx{1.0, 0});
  CHECK(ground(1, 1) == cplx{});

  const PureState bell = make_generalized_ghz(
      GhzSpec(2, 0, +1, cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0}));
  const DensityMatrix rho = density_from_pure(bell);
  for (std::size_t r : {std::size_t{0}, std::size_t{3}}) {
    for (std::size_t c : {std::size_t{0}, std::size_t{3}}) {
      CHECK(rho(r, c).real() == doctest::Approx(0.5));
    }
  }
  CHECK(rho(1, 1) == cplx{});

  GaussianStream gauss(11);
  for (int n : {1, 2, 4}) {
    const PureState psi = haar_random_pure(n, gauss);
    CHECK(density_from_pure(psi).purity() ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("parity overlap identity") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 5);
    const GhzSpec base = testsupport::random_ghz_spec(n, rng);
    const GhzSpec plus(n, base.label, +1, base.alpha, base.beta);
    const GhzSpec minus(n, base.label, -1, base.alpha, base.beta);
    const cplx overlap = inner_product(make_generalized_ghz(plus),
                                       make_generalized_ghz(minus));
    const double expected =
        std::norm(plus.alpha) - std::norm(plus.beta);
    CHECK(std::abs(overlap - cplx{expected, 0}) < 1e-12);
  }
}

TEST_CASE("mixtures are supported only on complement pairs") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 4);
    const auto mix = testsupport::random_ghz_mixture(n, 3, rng);
    const DensityMatrix rho = make_ghz_diagonal(mix);
    for (std::size_t r = 0; r < rho.dim(); ++r) {
      for (std::size_t c = 0; c < rho.dim(); ++c) {
        if (c != r && c != bitflip(r, n)) {
          CHECK(rho(r, c) == cplx{});
        }
      }
    }
  }
}

TEST_CASE("construction validates the invariants") {
  std::vector<cplx> short_vec(3, cplx{});
  CHECK_THROWS_AS(PureState(2, short_vec), std::invalid_argument);

  std::vector<cplx> unnormalized(4, cplx{0.5, 0});
  unnormalized[0] = cplx{1.0, 0};
  CHECK_THROWS_AS(PureState(2, unnormalized), std::invalid_argument);

  // Non-Hermitian.
  std::vector<cplx> bad(4, cplx{});
  bad[0 * 2 + 1] = cplx{0.5, 0};
  bad[0] = cplx{1.0, 0};
  CHECK_THROWS_AS(DensityMatrix(1, bad), std::invalid_argument);

  // Wrong trace.
  std::vector<cplx> traceless(4, cplx{});
  traceless[0] = cplx{0.5, 0};
  CHECK_THROWS_AS(DensityMatrix(1, traceless), std::invalid_argument);
}

TEST_CASE("snapshots round-trip through binary and JSON") {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / "ghzdecay_qstate_io_test";
  fs::create_directories(dir);

  GaussianStream gauss(23);
  const PureState psi = haar_random_pure(3, gauss);
  const DensityMatrix rho = density_from_pure(psi);

  for (const char* name : {"state.qsnap", "state.json"}) {
    const std::string path = (dir / name).string();
    save_state(psi, path);
    const StateSnapshot loaded = load_state(path);
    REQUIRE(std::holds_alternative<PureState>(loaded));
    const PureState& back = std::get<PureState>(loaded);
    for (std::size_t i = 0; i < psi.dim(); ++i) {
      CHECK(back.amplitude(i) == psi.amplitude(i));
    }
  }
  for (const char* name : {"rho.qsnap", "rho.json"}) {
    const std::string path = (dir / name).string();
    save_state(rho, path);
    const StateSnapshot loaded = load_state(path);
    REQUIRE(std::holds_alternative<DensityMatrix>(loaded));
    CHECK(testsupport::max_abs_diff(
              std::get<DensityMatrix>(loaded).elements(), rho.elements()) ==
          0.0);
  }

  const std::string garbage = (dir / "garbage.qsnap").string();
  {
    std::FILE* f = std::fopen(garbage.c_str(), "wb");
    std::fputs("not a snapshot", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(load_state(garbage), std::invalid_argument);
  fs::remove_all(dir);
}

}  // TEST_SUITE
