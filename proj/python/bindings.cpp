#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wavemu/error.hpp"
#include "wavemu/gf2/matrix.hpp"
#include "wavemu/harness/selftest.hpp"
#include "wavemu/harness/sweep.hpp"
#include "wavemu/link/baselines.hpp"
#include "wavemu/link/channel.hpp"
#include "wavemu/link/sdm.hpp"
#include "wavemu/link/waveform.hpp"
#include "wavemu/phy/chain.hpp"
#include "wavemu/phy/coding.hpp"

namespace py = pybind11;
using namespace wavemu;

namespace {

using BitArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using CplxArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

Bits to_bits(const BitArray& a) {
    Bits b(a.data(), a.data() + a.size());
    for (auto v : b)
        if (v > 1) throw py::value_error("bits must be 0 or 1");
    return b;
}

BitArray from_bits(const Bits& b) { return BitArray(static_cast<py::ssize_t>(b.size()), b.data()); }

std::vector<cplx> to_cplx(const CplxArray& a) { return {a.data(), a.data() + a.size()}; }

CplxArray from_cplx(const std::vector<cplx>& v) { return CplxArray(static_cast<py::ssize_t>(v.size()), v.data()); }

}  // namespace

PYBIND11_MODULE(_wavemu, m) {
    m.doc() = "OFDM PHY emulation of analog symbols";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
    py::register_exception<FramingError>(m, "FramingError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<PhyConfig>(m, "PhyConfig")
        .def(py::init([](int modulation, const std::string& rate) {
                 auto c = PhyConfig::standard(modulation, parse_code_rate(rate));
                 c.validate();
                 return c;
             }),
             py::arg("modulation") = 64, py::arg("rate") = "3/4")
        .def_readonly("modulation", &PhyConfig::modulation)
        .def_property_readonly("rate", [](const PhyConfig& c) { return to_string(c.rate); })
        .def_property_readonly("data_bits_per_symbol", &PhyConfig::data_bits_per_symbol)
        .def_property_readonly("coded_bits_per_symbol", &PhyConfig::coded_bits_per_symbol)
        .def_property_readonly("samples_per_ofdm", &PhyConfig::samples_per_ofdm)
        .def_readonly("data_subcarriers", &PhyConfig::data_subcarriers)
        .def("__repr__", [](const PhyConfig& c) { return "PhyConfig(" + c.fingerprint() + ")"; });

    m.def("scramble", [](const BitArray& b, int seed) { return from_bits(scramble(to_bits(b), static_cast<std::uint8_t>(seed))); },
          py::arg("bits"), py::arg("seed") = 0b1011101);
    m.def("conv_encode", [](const BitArray& b) { return from_bits(conv_encode(to_bits(b)).first); });
    m.def("viterbi_decode", [](const BitArray& b) { return from_bits(viterbi_decode(to_bits(b))); });

    m.def(
        "tx",
        [](const BitArray& b, const PhyConfig& cfg) { return from_cplx(tx_chain(to_bits(b), cfg).samples); },
        py::arg("bits"), py::arg("config") = PhyConfig::standard());
    m.def(
        "rx",
        [](const CplxArray& s, const PhyConfig& cfg) {
            BasebandFrame f{to_cplx(s), 0};
            if (f.samples.size() % static_cast<std::size_t>(cfg.samples_per_ofdm()) != 0)
                throw FramingError("sample count is not a whole number of OFDM symbols");
            f.ofdm_symbol_count = static_cast<int>(f.samples.size() / static_cast<std::size_t>(cfg.samples_per_ofdm()));
            return from_bits(rx_chain(f, cfg));
        },
        py::arg("samples"), py::arg("config") = PhyConfig::standard());
    m.def(
        "awgn",
        [](const CplxArray& s, double snr_db, std::uint64_t seed) {
            return from_cplx(awgn(BasebandFrame{to_cplx(s), 0}, snr_db, seed).samples);
        },
        py::arg("samples"), py::arg("snr_db"), py::arg("seed") = 1);

    m.def("gaussian_symbols", [](std::size_t k, std::uint64_t seed) { return from_cplx(gaussian_symbols(k, seed)); },
          py::arg("k"), py::arg("seed") = 1);
    m.def(
        "ideal_link",
        [](const CplxArray& s, double snr_db, std::uint64_t seed) {
            return from_cplx(ideal_analog_link(to_cplx(s), snr_db, seed));
        },
        py::arg("symbols"), py::arg("snr_db"), py::arg("seed") = 1);

    py::class_<Emulator>(m, "Emulator")
        .def(py::init([](const PhyConfig& cfg) { return Emulator(cfg); }), py::arg("config") = PhyConfig::standard())
        .def_property_readonly("chosen", &Emulator::chosen)
        .def_property_readonly("scale", &Emulator::scale)
        .def_property_readonly("rank", &Emulator::certified_rank)
        .def(
            "emulate",
            [](const Emulator& e, const CplxArray& s, double snr_db, std::uint64_t seed, const std::string& mode) {
                const auto sym = to_cplx(s);
                std::vector<cplx> est;
                {
                    py::gil_scoped_release release;
                    est = e.emulated_link(sym, snr_db, seed, parse_recovery_mode(mode)).estimates;
                }
                return from_cplx(est);
            },
            py::arg("symbols"), py::arg("snr_db") = kNoiseless, py::arg("seed") = 1, py::arg("mode") = "soft")
        .def("synth", [](const Emulator& e, const CplxArray& s) { return from_cplx(e.synth(to_cplx(s))); })
        .def("analyze", [](const Emulator& e, const CplxArray& w, std::size_t k) {
            return from_cplx(e.analyze(to_cplx(w), k));
        });

    m.def("gf2_rank", [](const BitArray& a) {
        if (a.ndim() != 2) throw py::value_error("expected a 2-D array");
        gf2::Matrix mat(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
        auto r = a.unchecked<2>();
        for (py::ssize_t i = 0; i < a.shape(0); ++i)
            for (py::ssize_t j = 0; j < a.shape(1); ++j) mat.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), r(i, j) & 1u);
        return gf2::rank(mat);
    });

    m.def(
        "sweep",
        [](std::vector<double> snrs, std::size_t symbols, std::vector<std::string> systems, std::uint64_t seed) {
            harness::ExperimentSpec spec;
            spec.snrs = std::move(snrs);
            spec.symbols = symbols;
            spec.systems = std::move(systems);
            spec.seed = seed;
            spec.validate();
            py::gil_scoped_release release;
            return harness::metrics_csv(harness::run_sweep(spec));
        },
        py::arg("snrs"), py::arg("symbols") = 10000, py::arg("systems") = std::vector<std::string>{"ideal", "emulated", "float"},
        py::arg("seed") = 1, "Runs a symbol-level sweep and returns the metrics CSV text.");

    m.def(
        "selftest",
        [](std::size_t probes) {
            harness::SelftestOptions opt;
            opt.probes = probes;
            const auto r = harness::selftest(opt);
            return py::make_tuple(r.passed(), r.text());
        },
        py::arg("probes") = 200);
}
