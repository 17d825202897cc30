#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fext/cli.hpp"
#include "fext/funlang.hpp"
#include "fext/hyper.hpp"
#include "fext/oracle.hpp"
#include "fext/transfer.hpp"

namespace py = pybind11;
using namespace fext;

namespace {

py::int_ to_py(const Nat& n) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(n.to_string().c_str(), nullptr, 10))); }

Nat from_py(const py::int_& v) {
    std::string s = py::repr(v);
    if (!s.empty() && s[0] == '-') throw py::value_error("naturals only");
    return Nat::parse(s);
}

Hyperpoint point_of(const std::string& seq) {
    ParseOptions opts{.variables = {{"n", FnExpr::var()}, {"x", FnExpr::var()}}};
    return {parse_fn(seq, opts), ""};
}

}  // namespace

PYBIND11_MODULE(_fext, m) {
    m.doc() = "Ultrapower of N over a lazily decided ultrafilter";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<SyntaxError>(m, "SyntaxError", base.ptr());
    py::register_exception<Undecidable>(m, "Undecidable", base.ptr());
    py::register_exception<ConsistencyViolation>(m, "ConsistencyViolation", base.ptr());
    py::register_exception<ReplayMismatch>(m, "ReplayMismatch", base.ptr());

    py::class_<FnExpr>(m, "Fn")
        .def(py::init([](const std::string& src) { return parse_fn(src); }), py::arg("source"))
        .def("__call__", [](const FnExpr& f, const py::int_& x) { return to_py(f.eval(from_py(x))); })
        .def("__str__", [](const FnExpr& f) { return f.to_string(); })
        .def("__repr__", [](const FnExpr& f) { return "Fn('" + f.to_string() + "')"; })
        .def("__eq__", [](const FnExpr& a, const FnExpr& b) { return a == b; })
        .def("compose", [](const FnExpr& outer, const FnExpr& inner) { return compose(outer, inner); },
             py::arg("inner"), "self . inner");

    py::class_<Hyperpoint>(m, "Point")
        .def(py::init([](const std::string& seq, const std::string& name) {
                 Hyperpoint p = point_of(seq);
                 p.name = name;
                 return p;
             }),
             py::arg("seq"), py::arg("name") = "")
        .def_static("standard", [](const py::int_& x) { return Model::standard(from_py(x)); })
        .def_static("omega", &Model::omega)
        .def("at", [](const Hyperpoint& p, const py::int_& n) { return to_py(p.at(from_py(n))); })
        .def("star", [](const Hyperpoint& p, const FnExpr& f) { return Model::star_apply(f, p); }, py::arg("f"))
        .def_property_readonly("text", &Hyperpoint::text)
        .def("__repr__", [](const Hyperpoint& p) { return p.label(); });

    py::class_<Oracle>(m, "Oracle")
        .def(py::init([](std::uint64_t horizon, std::optional<std::uint64_t> floor, const std::string& tiebreak) {
                 return Oracle(OracleConfig{horizon, floor, TieBreak::parse(tiebreak)});
             }),
             py::arg("horizon") = 10000, py::arg("floor") = py::none(), py::arg("tiebreak") = "least")
        .def_property_readonly("survivor_count", &Oracle::survivor_count)
        .def_property_readonly("query_count", &Oracle::query_count)
        .def_property_readonly("representative", &Oracle::representative)
        .def("log_text", [](const Oracle& o) { return o.log().to_text(o.config()); });

    py::class_<Model>(m, "Model")
        .def(py::init<Oracle&>(), py::arg("oracle"), py::keep_alive<1, 2>())
        .def("eq", &Model::eq)
        .def("member", [](const Model& md, const Hyperpoint& xi, const FnExpr& indicator) {
            return md.member(xi, StarSet{indicator, ""});
        }, py::arg("xi"), py::arg("indicator"))
        .def("standard_part", [](const Model& md, const Hyperpoint& xi) -> py::object {
            auto v = md.standard_part(xi);
            return v ? py::object(to_py(*v)) : py::none();
        })
        .def("eval", [](const Model& md, const std::string& formula, const std::map<std::string, Hyperpoint>& env) {
            HyperEnv h(env.begin(), env.end());
            return eval_hyper(md, parse_formula(formula), h);
        }, py::arg("formula"), py::arg("env") = std::map<std::string, Hyperpoint>{});

    m.def("eval_base", [](const std::string& formula, const std::map<std::string, py::int_>& env) {
        BaseEnv b;
        for (const auto& [k, v] : env) b.emplace(k, from_py(v));
        return eval_base(parse_formula(formula), b);
    }, py::arg("formula"), py::arg("env") = std::map<std::string, py::int_>{});

    m.def("run", [](const std::filesystem::path& scenario, std::vector<std::string> suites,
                    std::optional<std::uint64_t> horizon, std::optional<std::uint64_t> seed, bool strict,
                    std::optional<std::filesystem::path> replay, std::filesystem::path out) {
        RunOptions opts{scenario, std::move(suites), horizon, seed, strict, std::move(replay), std::move(out)};
        RunResult r;
        {
            py::gil_scoped_release release;
            r = fext::run(opts);
        }
        py::dict d;
        d["exit_code"] = r.exit_code;
        d["report"] = r.report;
        d["log"] = r.log;
        d["error"] = r.error;
        return d;
    }, py::arg("scenario"), py::arg("suites") = std::vector<std::string>{}, py::arg("horizon") = py::none(),
       py::arg("seed") = py::none(), py::arg("strict") = false, py::arg("replay") = py::none(),
       py::arg("out") = std::filesystem::path{},
       "Run scenario suites; returns exit_code, report, log and error.");
}
