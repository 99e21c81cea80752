#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "adawm/attacks.hpp"
#include "adawm/codec.hpp"
#include "adawm/metrics.hpp"
#include "adawm/psychovisual.hpp"

namespace py = pybind11;
using namespace adawm;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

GrayImage to_image(const U8Array& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D uint8 array");
    const int h = static_cast<int>(a.shape(0));
    const int w = static_cast<int>(a.shape(1));
    std::vector<std::uint8_t> px(a.data(), a.data() + static_cast<std::size_t>(w) * h);
    return GrayImage(w, h, std::move(px));
}

U8Array to_array(const GrayImage& img) {
    U8Array out({img.height(), img.width()});
    std::memcpy(out.mutable_data(), img.pixels().data(), img.pixels().size());
    return out;
}

EmbedParams make_params(bool adaptive, double alpha, double beta, double fixed_sf, double floor) {
    EmbedParams p;
    p.adaptive = adaptive;
    p.psychovisual.alpha = alpha;
    p.psychovisual.beta = beta;
    p.fixed_sf = fixed_sf;
    p.magnitude_floor = floor;
    p.validate();
    return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Adaptive DWT-DCT blind watermarking";
    m.attr("PAYLOAD_BITS") = kPayloadBits;

    const EmbedParams d;
    m.def(
        "embed",
        [](const U8Array& cover, const std::string& payload_hex, bool adaptive, double alpha, double beta,
           double fixed_sf, double floor) {
            const GrayImage img = to_image(cover);
            const EmbedParams p = make_params(adaptive, alpha, beta, fixed_sf, floor);
            GrayImage out;
            {
                py::gil_scoped_release release;
                out = embed(img, Payload::from_hex(payload_hex), p);
            }
            return to_array(out);
        },
        py::arg("cover"), py::arg("payload_hex"), py::arg("adaptive") = d.adaptive,
        py::arg("alpha") = d.psychovisual.alpha, py::arg("beta") = d.psychovisual.beta,
        py::arg("fixed_sf") = d.fixed_sf, py::arg("magnitude_floor") = d.magnitude_floor,
        "Embed a 64-hex-digit payload into a 512x512 grayscale image.");

    m.def(
        "extract",
        [](const U8Array& image) {
            const Extraction x = extract_detailed(to_image(image), EmbedParams{});
            return py::make_tuple(x.payload.to_hex(), x.confidence);
        },
        py::arg("image"), "Blind extraction. Returns (payload_hex, per-bit confidence).");

    m.def(
        "canny_edges",
        [](const U8Array& image, double sigma, double low, double high) {
            PsychovisualParams p;
            p.canny_sigma = sigma;
            p.canny_low = low;
            p.canny_high = high;
            p.validate();
            const EdgeMap e = canny_edges(to_image(image), p);
            return to_array(GrayImage(e.width, e.height, e.bits));
        },
        py::arg("image"), py::arg("sigma") = 1.4, py::arg("low") = 0.1, py::arg("high") = 0.2);

    m.def(
        "strength_factors",
        [](const U8Array& image, double alpha, double beta) {
            PsychovisualParams p;
            p.alpha = alpha;
            p.beta = beta;
            return adaptive_strength(to_image(image), p);
        },
        py::arg("image"), py::arg("alpha") = 0.5, py::arg("beta") = 0.25);

    m.def(
        "attack",
        [](const U8Array& image, const std::string& kind, int kernel, double density, double variance, int quality,
           std::uint64_t seed) {
            AttackSpec s;
            s.kind = attack_kind_from_string(kind);
            s.kernel = kernel;
            s.density = density;
            s.variance = variance;
            s.quality = quality;
            s.seed = seed;
            s.validate();
            return to_array(apply_attack(to_image(image), s));
        },
        py::arg("image"), py::arg("kind"), py::arg("kernel") = 3, py::arg("density") = 0.01,
        py::arg("variance") = 0.0, py::arg("quality") = 75, py::arg("seed") = 0);

    m.def("psnr", [](const U8Array& a, const U8Array& b) { return psnr(to_image(a), to_image(b)); });
    m.def("ssim", [](const U8Array& a, const U8Array& b) { return ssim(to_image(a), to_image(b)); });
    m.def("nc", [](const std::string& a, const std::string& b) {
        return nc(Payload::from_hex(a), Payload::from_hex(b));
    });
    m.def("ber", [](const std::string& a, const std::string& b) {
        return ber(Payload::from_hex(a), Payload::from_hex(b));
    });

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const std::invalid_argument& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });
}
