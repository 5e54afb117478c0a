#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "fuselet/fixture.hpp"
#include "fuselet/metrics.hpp"

using namespace fuselet;

namespace {

Image step_image(std::size_t w, std::size_t h, std::size_t at_col) {
  Image img(w, h, 20.0);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = at_col; c < w; ++c) img(r, c) = 220.0;
  return img;
}

std::vector<std::pair<int, int>> edge_pixels(const Image& e) {
  std::vector<std::pair<int, int>> px;
  for (std::size_t r = 0; r < e.height(); ++r)
    for (std::size_t c = 0; c < e.width(); ++c)
      if (e(r, c) != 0.0) px.emplace_back(static_cast<int>(r), static_cast<int>(c));
  return px;
}

std::size_t components(const Image& e) {
  const int h = static_cast<int>(e.height());
  const int w = static_cast<int>(e.width());
  std::vector<char> seen(e.size(), 0);
  std::size_t count = 0;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (e(r, c) == 0.0 || seen[r * w + c]) continue;
      ++count;
      std::queue<std::pair<int, int>> q;
      q.push({r, c});
      seen[r * w + c] = 1;
      while (!q.empty()) {
        const auto [y, x] = q.front();
        q.pop();
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int ny = y + dy;
            const int nx = x + dx;
            if (ny < 0 || nx < 0 || ny >= h || nx >= w) continue;
            if (e(ny, nx) == 0.0 || seen[ny * w + nx]) continue;
            seen[ny * w + nx] = 1;
            q.push({ny, nx});
          }
      }
    }
  }
  return count;
}

// UIQI written out with its own accumulation, for oracle comparisons.
double reference_uiqi(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double vx = 0, vy = 0, cxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    vx += (x[i] - mx) * (x[i] - mx) / (n - 1);
    vy += (y[i] - my) * (y[i] - my) / (n - 1);
    cxy += (x[i] - mx) * (y[i] - my) / (n - 1);
  }
  return 4 * cxy * mx * my / ((vx + vy) * (mx * mx + my * my));
}

}  // namespace

TEST_CASE("entropy") {
  CHECK(entropy(Image(8, 8, 3.0)) == 0.0);
  Image half(8, 8, 0.0);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 8; ++c) half(r, c) = 255.0;
  CHECK(entropy(half) == 1.0);
  const Image four(4, 1, std::vector<double>{0, 10, 20, 30});
  CHECK(entropy(four) == 2.0);
  // Samples are rounded and clamped first.
  CHECK(entropy(Image(2, 1, std::vector<double>{-40.0, 0.2})) == 0.0);

  const Image x = random_image(32, 32, 1);
  std::vector<double> rev(x.samples().rbegin(), x.samples().rend());
  const double h = entropy(x);
  CHECK(h == entropy(Image(32, 32, rev)));
  CHECK(h >= 0.0);
  CHECK(h <= 8.0);
  CHECK(entropy(circshift(x, 3, -4)) == h);
}

TEST_CASE("gradient magnitude") {
  const StatMap g = gradient_magnitude(Image(2, 2, std::vector<double>{0, 2, 2, 2}));
  REQUIRE(g.width() == 1);
  REQUIRE(g.height() == 1);
  CHECK(g(0, 0) == 2.0);

  Image ramp(6, 5);
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 6; ++c) ramp(r, c) = static_cast<double>(c);
  const StatMap gr = gradient_magnitude(ramp);
  CHECK(gr.width() == 5);
  CHECK(gr.height() == 4);
  for (double v : gr.samples()) CHECK(v == 0.5);

  const StatMap gc = gradient_magnitude(Image(4, 4, 9.0));
  for (double v : gc.samples()) CHECK(v == 0.0);
  CHECK_THROWS_AS(gradient_magnitude(Image(1, 4)), std::invalid_argument);
}

TEST_CASE("similarity") {
  const Image a = random_image(16, 16, 2);
  const Image b = random_image(16, 16, 3);
  CHECK(similarity(a, a, a) == 1.0);
  CHECK(similarity(a, b, Image(16, 16, 50.0)) == 0.0);
  CHECK(similarity(Image(8, 8, 1.0), Image(8, 8, 2.0), Image(8, 8, 3.0)) == 1.0);

  const Image f = random_image(16, 16, 4);
  // Brute-force gradients on the interior grid.
  double diff = 0, ng = 0, ni = 0;
  for (int m = 0; m < 15; ++m) {
    for (int n = 0; n < 15; ++n) {
      auto grad = [&](const Image& im) {
        return 0.5 * (std::abs(im(m, n) - im(m + 1, n + 1)) + std::abs(im(m, n) - im(m + 1, n)));
      };
      const double ideal = std::max(grad(a), grad(b));
      diff += (grad(f) - ideal) * (grad(f) - ideal);
      ng += grad(f) * grad(f);
      ni += ideal * ideal;
    }
  }
  const double expect = 1.0 - std::sqrt(diff) / (std::sqrt(ng) + std::sqrt(ni));
  CHECK(similarity(a, b, f) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(similarity(a, b, f) == similarity(b, a, f));
  const double s = similarity(a, b, f);
  CHECK(s >= 0.0);
  CHECK(s <= 1.0);
  CHECK_THROWS_AS(similarity(a, b, Image(8, 8)), DimensionMismatch);
}

TEST_CASE("UIQI") {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{2, 4, 6, 8};
  CHECK(uiqi(x, y) == doctest::Approx(0.64).epsilon(1e-13));
  CHECK(uiqi(x, x) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(uiqi(x, y) == uiqi(y, x));

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Image p = random_image(9, 1, seed, -5.0, 20.0);
    const Image q = random_image(9, 1, seed + 50, -5.0, 20.0);
    const std::vector<double> pv(p.samples().begin(), p.samples().end());
    const std::vector<double> qv(q.samples().begin(), q.samples().end());
    const double v = uiqi(pv, qv);
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
    CHECK(v == doctest::Approx(reference_uiqi(pv, qv)).epsilon(1e-12));
    // Correlation x luminance x contrast.
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < 9; ++i) {
      mx += pv[i] / 9;
      my += qv[i] / 9;
    }
    double vx = 0, vy = 0, cxy = 0;
    for (std::size_t i = 0; i < 9; ++i) {
      vx += (pv[i] - mx) * (pv[i] - mx) / 8;
      vy += (qv[i] - my) * (qv[i] - my) / 8;
      cxy += (pv[i] - mx) * (qv[i] - my) / 8;
    }
    const double sx = std::sqrt(vx);
    const double sy = std::sqrt(vy);
    const double three = cxy / (sx * sy) * (2 * mx * my / (mx * mx + my * my)) *
                         (2 * sx * sy / (vx + vy));
    CHECK(std::abs(three - v) < 1e-12);
  }

  const std::vector<double> c5(4, 5.0), c7(4, 7.0), zero(4, 0.0);
  CHECK(uiqi(c5, c5) == 1.0);
  CHECK(uiqi(zero, zero) == 1.0);
  CHECK(uiqi(c5, c7) == 0.0);
  CHECK(uiqi(std::vector<double>{-1, 1}, std::vector<double>{1, -1}) == 0.0);
  CHECK_THROWS_AS(uiqi(x, std::vector<double>{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(uiqi(std::vector<double>{1}, std::vector<double>{1}), std::invalid_argument);
}

TEST_CASE("weighted fusion quality against a brute-force window walk") {
  const Image a = random_image(8, 8, 5);
  const Image b = random_image(8, 8, 6);
  const Image f = random_image(8, 8, 7);
  double num = 0, den = 0;
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      std::vector<double> wa, wb, wf;
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
          wa.push_back(a.wrapped(r + dr, c + dc));
          wb.push_back(b.wrapped(r + dr, c + dc));
          wf.push_back(f.wrapped(r + dr, c + dc));
        }
      double sa = 0, sb = 0;
      for (int i = 0; i < 9; ++i) {
        sa += wa[i] * wa[i] / 9;
        sb += wb[i] * wb[i] / 9;
      }
      const double lambda = sa / (sa + sb);
      const double cw = std::max(sa, sb);
      num += cw * (lambda * reference_uiqi(wa, wf) + (1 - lambda) * reference_uiqi(wb, wf));
      den += cw;
    }
  }
  CHECK(weighted_fusion_quality(a, b, f) == doctest::Approx(num / den).epsilon(1e-12));
}

TEST_CASE("weighted fusion quality properties") {
  const Image a = random_image(16, 16, 8);
  const Image b = random_image(16, 16, 9);
  const Image f = random_image(16, 16, 10);
  CHECK(weighted_fusion_quality(a, a, a) == doctest::Approx(1.0).epsilon(1e-14));
  const double q = weighted_fusion_quality(a, b, f);
  CHECK(std::abs(q - weighted_fusion_quality(b, a, f)) < 1e-12);
  CHECK(q >= -1.0);
  CHECK(q <= 1.0);
  CHECK(std::abs(q - weighted_fusion_quality(circshift(a, 3, 5), circshift(b, 3, 5),
                                             circshift(f, 3, 5))) < 1e-9);

  const Image zero(8, 8, 0.0);
  CHECK(weighted_fusion_quality(zero, zero, zero) == 1.0);
  CHECK(weighted_fusion_quality(zero, zero, Image(8, 8, 1.0)) == 0.0);
  CHECK_THROWS_AS(weighted_fusion_quality(Image(2, 2), Image(2, 2), Image(2, 2)),
                  std::invalid_argument);
  QConfig even;
  even.window_size = 4;
  CHECK_THROWS_AS(weighted_fusion_quality(a, b, f, even), std::invalid_argument);
}

TEST_CASE("Canny on trivial and step images") {
  CHECK(edge_pixels(canny_edges(Image(16, 16, 90.0))).empty());

  const Image edges = canny_edges(step_image(32, 24, 16));
  const auto px = edge_pixels(edges);
  REQUIRE_FALSE(px.empty());
  std::vector<int> per_row(24, 0);
  for (const auto& [r, c] : px) {
    CHECK(std::abs(c - 16) <= 1);
    ++per_row[static_cast<std::size_t>(r)];
  }
  for (int n : per_row) CHECK(n == 1);  // one thin line, top to bottom
  CHECK(components(edges) == 1);
  for (double v : edges.samples()) CHECK((v == 0.0 || v == 255.0));
}

TEST_CASE("Canny traces a closed rectangle contour") {
  Image img(48, 40, 30.0);
  const int top = 10, bottom = 29, left = 12, right = 35;
  for (int r = top; r <= bottom; ++r)
    for (int c = left; c <= right; ++c) img(r, c) = 200.0;
  const Image edges = canny_edges(img);
  const auto px = edge_pixels(edges);
  REQUIRE_FALSE(px.empty());
  // Every edge pixel hugs the boundary...
  for (const auto& [r, c] : px) {
    const bool near_vertical = (std::abs(c - left) <= 1 || std::abs(c - right) <= 1) &&
                               r >= top - 1 && r <= bottom + 1;
    const bool near_horizontal = (std::abs(r - top) <= 1 || std::abs(r - bottom) <= 1) &&
                                 c >= left - 1 && c <= right + 1;
    CHECK((near_vertical || near_horizontal));
  }
  // ...every boundary pixel has an edge pixel next to it...
  auto covered = [&](int r, int c) {
    for (int dr = -1; dr <= 1; ++dr)
      for (int dc = -1; dc <= 1; ++dc)
        if (edges(static_cast<std::size_t>(r + dr), static_cast<std::size_t>(c + dc)) != 0.0)
          return true;
    return false;
  };
  for (int c = left; c <= right; ++c) {
    CHECK(covered(top, c));
    CHECK(covered(bottom, c));
  }
  for (int r = top; r <= bottom; ++r) {
    CHECK(covered(r, left));
    CHECK(covered(r, right));
  }
  // ...and the contour is one connected piece.
  CHECK(components(edges) == 1);
}

TEST_CASE("Piella metric") {
  const MultifocusFixture fx = make_multifocus_fixture(32, 2.0);
  const Image& a = fx.truth;
  CHECK(piella_metric(a, a, a) == doctest::Approx(1.0).epsilon(1e-14));

  const Image& b = fx.left_blurred;
  const Image& f = fx.right_blurred;
  QConfig no_edges;
  no_edges.alpha = 0.0;
  CHECK(piella_metric(a, b, f, no_edges) == weighted_fusion_quality(a, b, f));
  CHECK(piella_metric(a, b, f) == doctest::Approx(piella_metric(b, a, f)).epsilon(1e-12));
  const double pm = piella_metric(a, b, f);
  CHECK(pm >= -1.0);
  CHECK(pm <= 1.0);

  // Edges one column apart are anti-correlated in every window they share.
  const Image s = step_image(32, 16, 16);
  const Image t = step_image(32, 16, 17);
  REQUIRE(weighted_fusion_quality(canny_edges(s), canny_edges(s), canny_edges(t)) < 0.0);
  QConfig root;
  root.alpha = 0.5;
  CHECK_THROWS_AS(piella_metric(s, s, t, root), std::domain_error);
  CHECK_NOTHROW(piella_metric(s, s, t));
}

TEST_CASE("metrics report") {
  const Image a = random_image(32, 32, 11);
  const MetricsReport r = evaluate_fusion(a, a, a);
  CHECK(r.en1 == entropy(a));
  CHECK(r.en2 == r.en1);
  CHECK(r.en3 == r.en1);
  CHECK(r.s == 1.0);
  CHECK(r.pm == doctest::Approx(1.0).epsilon(1e-14));

  QConfig bad;
  bad.alpha = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = QConfig{};
  bad.canny.high_quantile = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
