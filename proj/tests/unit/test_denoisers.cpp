#include <doctest.h>

#include <cmath>

#include "ramp/denoisers.hpp"
#include "ramp/rng.hpp"

using namespace ramp;

namespace {

double fd_partial(const Denoiser& d, std::vector<double> h, int j, double step = 1e-6) {
  std::vector<double> hp = h, hm = h;
  hp[static_cast<std::size_t>(j)] += step;
  hm[static_cast<std::size_t>(j)] -= step;
  return (d.eval(std::span<const double>(hp.data(), hp.size())) -
          d.eval(std::span<const double>(hm.data(), hm.size()))) /
         (2 * step);
}

}  // namespace

TEST_CASE("relu_denoiser basics") {
  auto d = relu_denoiser();
  double hneg[] = {-2.0};
  double hpos[] = {3.0};
  CHECK(d.eval({hneg, 1}) == 0.0);
  CHECK(d.eval({hpos, 1}) == 3.0);
  CHECK(d.partial({hpos, 1}, 0) == 1.0);
  double hist[] = {0.5, 3.0};  // earlier slots do not matter
  CHECK(d.partial({hist, 2}, 0) == 0.0);
  CHECK(d.partial({hist, 2}, 1) == 1.0);
  CHECK(d.pl_order == 1);
  CHECK(d.lipschitz == 1.0);

  Vector v(3);
  v << -1, 0, 2;
  Vector out(3);
  for (int i = 0; i < 3; ++i) {
    double h[] = {v(i)};
    out(i) = d.eval({h, 1});
  }
  CHECK(out(0) == 0.0);
  CHECK(out(1) == 0.0);
  CHECK(out(2) == 2.0);
}

TEST_CASE("relu derivative at zero is pinned to 0") {
  auto d = relu_denoiser();
  double h[] = {0.0};
  CHECK(d.partial({h, 1}, 0) == 0.0);
}

TEST_CASE("identity_denoiser basics") {
  auto d = identity_denoiser();
  double h[] = {7.0};
  CHECK(d.eval({h, 1}) == 7.0);
  CHECK(d.partial({h, 1}, 0) == 1.0);
  double h2[] = {1.0, 7.0};
  CHECK(d.partial({h2, 2}, 0) == 0.0);
}

TEST_CASE("poly_denoiser: x^2") {
  auto d = poly_denoiser({0, 0, 1});
  double h[] = {3.0};
  CHECK(d.eval({h, 1}) == doctest::Approx(9.0));
  CHECK(d.partial({h, 1}, 0) == doctest::Approx(6.0));
  CHECK(d.pl_order == 2);
  CHECK(std::isinf(d.lipschitz));
}

TEST_CASE("poly_denoiser: constant") {
  auto d = poly_denoiser({5});
  double h[] = {-100.0};
  CHECK(d.eval({h, 1}) == 5.0);
  CHECK(d.partial({h, 1}, 0) == 0.0);
  CHECK(d.pl_order == 0);
}

TEST_CASE("poly_denoiser: empty coeffs rejected") {
  CHECK_THROWS_AS(poly_denoiser({}), std::invalid_argument);
}

TEST_CASE("poly [0,1] extensionally equals identity") {
  auto p = poly_denoiser({0, 1});
  auto id = identity_denoiser();
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    double h[] = {rng.gaussian(), rng.gaussian(), rng.gaussian()};
    CHECK(p.eval({h, 3}) == doctest::Approx(id.eval({h, 3})));
  }
}

TEST_CASE("degree-2 schedule over T=3 steps stays within k^T") {
  auto sched = DenoiserSchedule::uniform(poly_denoiser({0, 0, 1}), 3);
  long long deg = iterate_degree(sched, 3);
  CHECK(deg <= 8);  // k^T = 2^3
  CHECK(deg > 0);
}

TEST_CASE("partials agree with central finite differences") {
  Rng rng(55);
  auto check_fd = [&](const Denoiser& d, bool avoid_kink) {
    for (int trial = 0; trial < 100; ++trial) {
      int len = 1 + static_cast<int>(rng.below(3));
      std::vector<double> h(static_cast<std::size_t>(len));
      for (auto& v : h) {
        v = 2.0 * rng.gaussian();
        if (avoid_kink)
          while (std::abs(v) < 1e-3) v = 2.0 * rng.gaussian();
      }
      for (int j = 0; j < len; ++j) {
        double exact = d.partial(std::span<const double>(h.data(), h.size()), j);
        CHECK(exact == doctest::Approx(fd_partial(d, h, j)).epsilon(1e-5).scale(1.0));
      }
    }
  };
  check_fd(relu_denoiser(), true);
  check_fd(identity_denoiser(), false);
  check_fd(poly_denoiser({1, -2, 0.5, 0.25}), false);
}

TEST_CASE("clip: within cutoff is untouched") {
  ClipConfig cfg;
  cfg.cutoff = 5.0;
  Vector v(2);
  v << 1, -3;
  CHECK(clip(v, cfg) == v);
}

TEST_CASE("clip: cutoff formula at eps=0.02, c_t=16") {
  auto cfg = ClipConfig::make(0.02, 16.0);
  double want = std::sqrt(16.0 * std::log(50.0));
  CHECK(cfg.cutoff == doctest::Approx(want));
  CHECK(cfg.cutoff == doctest::Approx(7.9116).epsilon(1e-4));
  CHECK(clip_scalar(10.0, cfg) == doctest::Approx(want));
  CHECK(clip_scalar(-10.0, cfg) == doctest::Approx(-want));
  // stored cutoff must match recomputation exactly
  CHECK(cfg.cutoff == std::sqrt(cfg.c_t * std::log(1.0 / cfg.eps)));
}

TEST_CASE("clip: idempotent bit-exactly and 1-Lipschitz") {
  auto cfg = ClipConfig::make(0.05, 16.0);
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    Vector u(100), v(100);
    for (int i = 0; i < 100; ++i) {
      u(i) = 6.0 * rng.gaussian();
      v(i) = 6.0 * rng.gaussian();
    }
    Vector cu = clip(u, cfg);
    CHECK(clip(cu, cfg) == cu);
    CHECK((clip(u, cfg) - clip(v, cfg)).norm() <= (u - v).norm() + 1e-12);
  }
}

TEST_CASE("clip: eps=0 sentinel disables clipping") {
  auto cfg = ClipConfig::make(0.0, 16.0);
  CHECK(std::isinf(cfg.cutoff));
  Vector v(3);
  v << 1e9, -1e9, 0;
  CHECK(clip(v, cfg) == v);
}
