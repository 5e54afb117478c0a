#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "fuselet/fixture.hpp"
#include "fuselet/fusion.hpp"
#include "fuselet/image_io.hpp"
#include "fuselet/metrics.hpp"
#include "fuselet/nsct.hpp"
#include "fuselet/wavelet.hpp"

namespace py = pybind11;
using namespace fuselet;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Image to_image(const Array& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  const auto h = static_cast<std::size_t>(a.shape(0));
  const auto w = static_cast<std::size_t>(a.shape(1));
  return Image(w, h, std::vector<double>(a.data(), a.data() + a.size()));
}

template <typename Tag>
Array to_array(const Raster<Tag>& img) {
  Array out({img.height(), img.width()});
  const auto s = img.samples();
  std::copy(s.begin(), s.end(), out.mutable_data());
  return out;
}

FusionConfig make_config(const std::string& domain, const std::string& rule,
                         const std::vector<int>& levels, int wavelet_levels, double threshold) {
  const auto d = parse_domain(domain);
  if (!d) throw std::invalid_argument("unknown domain '" + domain + "'");
  const auto r = parse_rule(rule);
  if (!r) throw std::invalid_argument("unknown rule '" + rule + "'");
  FusionConfig cfg;
  cfg.domain = *d;
  cfg.rule = *r;
  cfg.nsct_levels = levels;
  cfg.wavelet_levels = wavelet_levels;
  cfg.threshold = WammThreshold(threshold);
  cfg.validate();
  return cfg;
}

QConfig make_qconfig(double alpha) {
  QConfig q;
  q.alpha = alpha;
  q.validate();
  return q;
}

}  // namespace

PYBIND11_MODULE(_fuselet, m) {
  m.doc() = "Multiscale image fusion (NSCT and wavelet) with fusion quality metrics.";

  static py::exception<DimensionMismatch> dim_error(m, "DimensionMismatch", PyExc_ValueError);
  static py::exception<ImageIoError> io_error(m, "ImageIoError", PyExc_OSError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DimensionMismatch& e) {
      py::set_error(dim_error, e.what());
    } catch (const ImageIoError& e) {
      py::set_error(io_error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def(
      "fuse",
      [](const Array& a, const Array& b, const std::string& domain, const std::string& rule,
         const std::vector<int>& levels, int wavelet_levels, double threshold) {
        const FusionConfig cfg = make_config(domain, rule, levels, wavelet_levels, threshold);
        const Image ia = to_image(a);
        const Image ib = to_image(b);
        Image f = [&] {
          py::gil_scoped_release release;
          return fuse(ia, ib, cfg);
        }();
        return to_array(f);
      },
      py::arg("a"), py::arg("b"), py::arg("domain") = "nsct", py::arg("rule") = "wamm",
      py::arg("levels") = std::vector<int>{2, 3}, py::arg("wavelet_levels") = 3,
      py::arg("threshold") = WammThreshold::kDefault,
      "Fuse two registered images of equal shape. The result is not clamped.");

  m.def("wamm_weights",
        [](double match, double threshold) {
          const WammWeights w = wamm_weights(match, WammThreshold(threshold));
          return py::make_tuple(w.w_min, w.w_max);
        },
        py::arg("match"), py::arg("threshold") = WammThreshold::kDefault,
        "Return (w_min, w_max) for a match measure and threshold.");

  m.def(
      "nsct_forward",
      [](const Array& img, const std::vector<int>& levels) {
        const NsctPyramid p = nsct_forward(to_image(img), levels);
        py::list scales;
        for (const auto& scale : p.bands) {
          py::list dirs;
          for (const Image& b : scale) dirs.append(to_array(b));
          scales.append(dirs);
        }
        return py::make_tuple(to_array(p.low), scales);
      },
      py::arg("image"), py::arg("levels") = std::vector<int>{2, 3},
      "Return (low, bands) with bands[s][d], finest scale first.");

  m.def(
      "nsct_inverse",
      [](const Array& low, const std::vector<std::vector<Array>>& bands) {
        NsctPyramid p;
        p.low = to_image(low);
        for (const auto& scale : bands) {
          std::vector<Image> dirs;
          for (const Array& b : scale) dirs.push_back(to_image(b));
          int l = 0;
          while ((std::size_t{1} << l) < dirs.size()) ++l;
          p.levels.push_back(l);
          p.bands.push_back(std::move(dirs));
        }
        return to_array(nsct_inverse(p));
      },
      py::arg("low"), py::arg("bands"));

  m.def(
      "dwt_forward",
      [](const Array& img, int levels) {
        const WaveletPyramid p = dwt_forward(to_image(img), levels);
        py::list details;
        for (const auto& d : p.details)
          details.append(py::make_tuple(to_array(d.lh), to_array(d.hl), to_array(d.hh)));
        return py::make_tuple(to_array(p.ll), details);
      },
      py::arg("image"), py::arg("levels") = 3,
      "Return (ll, details) with details[j] = (lh, hl, hh), finest level first.");

  m.def(
      "dwt_inverse",
      [](const Array& ll, const std::vector<std::tuple<Array, Array, Array>>& details) {
        WaveletPyramid p;
        p.ll = to_image(ll);
        for (const auto& [lh, hl, hh] : details)
          p.details.push_back({to_image(lh), to_image(hl), to_image(hh)});
        return to_array(dwt_inverse(p));
      },
      py::arg("ll"), py::arg("details"));

  m.def("entropy", [](const Array& img) { return entropy(to_image(img)); }, py::arg("image"));
  m.def("similarity",
        [](const Array& a, const Array& b, const Array& f) {
          return similarity(to_image(a), to_image(b), to_image(f));
        },
        py::arg("a"), py::arg("b"), py::arg("fused"));
  m.def("uiqi",
        [](const Array& x, const Array& y) {
          return uiqi(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
                      std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
        },
        py::arg("x"), py::arg("y"));
  m.def("weighted_fusion_quality",
        [](const Array& a, const Array& b, const Array& f) {
          return weighted_fusion_quality(to_image(a), to_image(b), to_image(f));
        },
        py::arg("a"), py::arg("b"), py::arg("fused"));
  m.def("piella_metric",
        [](const Array& a, const Array& b, const Array& f, double alpha) {
          return piella_metric(to_image(a), to_image(b), to_image(f), make_qconfig(alpha));
        },
        py::arg("a"), py::arg("b"), py::arg("fused"), py::arg("alpha") = 1.0);
  m.def("canny_edges", [](const Array& img) { return to_array(canny_edges(to_image(img))); },
        py::arg("image"), "Binary edge map with values 0 and 255.");
  m.def(
      "evaluate",
      [](const Array& a, const Array& b, const Array& f, double alpha) {
        const MetricsReport r =
            evaluate_fusion(to_image(a), to_image(b), to_image(f), make_qconfig(alpha));
        py::dict d;
        d["en1"] = r.en1;
        d["en2"] = r.en2;
        d["en3"] = r.en3;
        d["s"] = r.s;
        d["pm"] = r.pm;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("fused"), py::arg("alpha") = 1.0,
      "Return a dict with en1, en2, en3, s and pm.");

  m.def("load_image", [](const std::filesystem::path& p) { return to_array(load_image(p)); },
        py::arg("path"));
  m.def("save_image",
        [](const Array& img, const std::filesystem::path& p) { save_image(to_image(img), p); },
        py::arg("image"), py::arg("path"),
        "Write 8-bit PNG for a .png suffix, binary PGM otherwise.");
  m.def(
      "multifocus_fixture",
      [](std::size_t size, double sigma, std::uint64_t seed) {
        const MultifocusFixture fx = make_multifocus_fixture(size, sigma, seed);
        return py::make_tuple(to_array(fx.truth), to_array(fx.left_blurred),
                              to_array(fx.right_blurred));
      },
      py::arg("size") = 128, py::arg("sigma") = 2.0, py::arg("seed") = 20121,
      "Return (truth, a, b): a scene and two complementary defocused views.");
}
