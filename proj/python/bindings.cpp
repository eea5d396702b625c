#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wittlift/cli.hpp"
#include "wittlift/errors.hpp"
#include "wittlift/flag_calc.hpp"
#include "wittlift/witt.hpp"

namespace py = pybind11;

namespace {

class PyWitt {
public:
    PyWitt(wl::i64 p, int r) : W_(wl::FiniteRing::integers_mod(p), r, p) {}
    std::string add(const std::string& a, const std::string& b) const { return show(W_.add(W_.parse(a), W_.parse(b))); }
    std::string mul(const std::string& a, const std::string& b) const { return show(W_.mul(W_.parse(a), W_.parse(b))); }
    std::string neg(const std::string& a) const { return show(W_.neg(W_.parse(a))); }
    std::string frobenius(const std::string& a) const { return show(W_.frobenius(W_.parse(a))); }
    std::string verschiebung(const std::string& a) const { return show(W_.verschiebung(W_.parse(a))); }
    std::string teichmuller(wl::i64 a) const { return show(W_.teichmuller(W_.base().from_int(a))); }
    wl::i64 to_integer(const std::string& a) const { return wl::witt_to_integer(W_, W_.parse(a)); }

private:
    std::string show(const wl::WittVec& x) const { return W_.to_string(x); }
    wl::WittRing W_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "wittlift C++ core";

    static py::exception<wl::Error> err(m, "WittliftError");
    py::register_exception_translator([](std::exception_ptr ptr) {
        try {
            if (ptr) std::rethrow_exception(ptr);
        } catch (const wl::Error& e) {
            PyErr_SetString(err.ptr(), (std::string(wl::kind_name(e.kind())) + ": " + e.what()).c_str());
        }
    });

    py::class_<PyWitt>(m, "WittRing")
        .def(py::init<wl::i64, int>(), py::arg("p"), py::arg("r"))
        .def("add", &PyWitt::add)
        .def("mul", &PyWitt::mul)
        .def("neg", &PyWitt::neg)
        .def("frobenius", &PyWitt::frobenius)
        .def("verschiebung", &PyWitt::verschiebung)
        .def("teichmuller", &PyWitt::teichmuller)
        .def("to_integer", &PyWitt::to_integer);

    m.def("h0", [](const std::vector<wl::i64>& a, wl::i64 p) { return wl::h0_oracle(a, p); });
    m.def(
        "flag_vanish",
        [](const std::vector<wl::i64>& a, int degree, wl::i64 p) {
            return std::string(wl::verdict_name(wl::devissage_decide(a, degree, p).verdict));
        },
        py::arg("weights"), py::arg("degree") = 0, py::arg("p") = 2);
    m.def("qminus1", [](int b, wl::i64 p) { return wl::qminus1_dimension(b, p).value; });

    // Same dispatcher as the command-line tool: (exit code, report JSON text).
    m.def(
        "run",
        [](const std::string& command, const std::string& input) {
            wl::cli::JobSpec job;
            job.command = command;
            job.budget = wl::cli::budget_from_env();
            try {
                job.input = wl::cli::json::parse(input);
            } catch (const wl::cli::json::exception& e) {
                throw wl::Error(wl::ErrorKind::Parse, "cli.json", e.what());
            }
            auto res = wl::cli::run(job);
            return py::make_tuple(res.exit_code, res.report.dump());
        },
        py::arg("command"), py::arg("input") = "{}");
}
