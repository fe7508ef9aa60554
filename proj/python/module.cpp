#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stowave/errors.hpp"
#include "stowave/io.hpp"
#include "stowave/runner.hpp"
#include "stowave/sampling.hpp"

namespace py = pybind11;
using namespace stowave;

namespace {

Field to_field(const Grid& g, const py::array_t<double>& a) {
    if (static_cast<std::size_t>(a.size()) != g.cell_count())
        throw py::value_error("array length does not match the grid");
    Field f(g);
    auto r = a.unchecked<1>();
    for (py::ssize_t i = 0; i < a.size(); ++i) f[static_cast<std::size_t>(i)] = r(i);
    return f;
}

py::array_t<double> from_values(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

std::string run_json(const std::string& name, const std::string& config_json,
                     std::optional<std::string> out_dir, std::optional<std::uint64_t> seed,
                     std::optional<int> threads) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse: ") + e.what());
    }
    const RunConfig cfg = parse_config(std::move(doc), seed, std::move(out_dir), threads);
    return run_subcommand(name, cfg).dump();
}

}  // namespace

PYBIND11_MODULE(stowave, mod) {
    mod.doc() = "pathwise solver and estimate checker for a damped stochastic wave model";

    py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);
    py::register_exception<CheckFailure>(mod, "CheckFailure", PyExc_RuntimeError);

    py::class_<Params>(mod, "Params")
        .def(py::init<>())
        .def_readwrite("alpha", &Params::alpha)
        .def_readwrite("beta", &Params::beta)
        .def_readwrite("delta", &Params::delta)
        .def_readwrite("epsilon", &Params::epsilon)
        .def_readwrite("p", &Params::p)
        .def_readwrite("c1", &Params::c1)
        .def_readwrite("c2", &Params::c2)
        .def_readwrite("c3", &Params::c3)
        .def_readwrite("m", &Params::m)
        .def("u_norm_weight", &Params::u_norm_weight)
        .def("is_valid", [](const Params& pr) { return is_valid(pr); })
        .def("sigma", [](const Params& pr) { return decay_rate_sigma(pr); })
        .def("epsilon_max", [](const Params& pr) { return max_noise_intensity(pr); });

    mod.def("canonical_params", &canonical_params);
    mod.def("validate", [](const Params& pr) {
        std::vector<std::pair<std::string, double>> out;
        for (const ParamViolation& v : validate(pr)) out.emplace_back(v.constraint, v.margin);
        return out;
    });

    py::class_<Grid>(mod, "Grid")
        .def(py::init<int, double, int>(), py::arg("n"), py::arg("L"), py::arg("N"))
        .def_readonly("dim", &Grid::dim)
        .def_readonly("half_width", &Grid::half_width)
        .def_readonly("cells_per_axis", &Grid::cells_per_axis)
        .def("spacing", &Grid::spacing)
        .def("cell_count", &Grid::cell_count)
        .def("centers", [](const Grid& g) {
            std::vector<double> xs(g.cell_count());
            for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = g.center(i)[0];
            return from_values(xs);
        });

    mod.def("laplacian", [](const Grid& g, const py::array_t<double>& u) {
        return from_values(laplacian(to_field(g, u)).values);
    });
    mod.def("norm_l2",
            [](const Grid& g, const py::array_t<double>& u) { return norm_l2(to_field(g, u)); });
    mod.def("norm_lp", [](const Grid& g, const py::array_t<double>& u, double p) {
        return norm_lp(to_field(g, u), p);
    });
    mod.def("grad_sq_norm",
            [](const Grid& g, const py::array_t<double>& u) { return grad_sq_norm(to_field(g, u)); });
    mod.def("gaussian_mode", [](const Grid& g, double amplitude, double width) {
        return from_values(gaussian_mode(g, amplitude, width).values);
    }, py::arg("grid"), py::arg("amplitude") = 1.0, py::arg("width") = 1.0);
    mod.def("bump_mode", [](const Grid& g, double amplitude, double radius) {
        return from_values(bump_mode(g, amplitude, radius).values);
    }, py::arg("grid"), py::arg("amplitude") = 1.0, py::arg("radius") = 2.0);

    mod.def("derive_seed", &derive_seed);
    mod.def("sample_path_increments",
            [](std::int64_t seed, double t_min, double t_max, double dt, int m) {
                return from_values(sample_path(seed, t_min, t_max, dt, m).increments);
            });
    mod.def("ou_samples", [](std::int64_t seed, double t_min, double t_max, double dt, int m,
                             double delta) {
        return from_values(ou_trajectory(sample_path(seed, t_min, t_max, dt, m), delta).z);
    });

    mod.def("e_norm", [](const Grid& g, const Params& pr, const py::array_t<double>& u,
                         const py::array_t<double>& v) {
        const Nonlinearity nl{pr.p, false};
        return e_norm(State(to_field(g, u), to_field(g, v)), pr, nl);
    });
    mod.def("energy_q", [](const Grid& g, const Params& pr, const py::array_t<double>& u,
                           const py::array_t<double>& v) {
        const Nonlinearity nl{pr.p, false};
        return energy_q(State(to_field(g, u), to_field(g, v)), pr, nl);
    });
    mod.def("sample_state", [](const Grid& g, const Params& pr, double target, std::uint64_t seed) {
        const Nonlinearity nl{pr.p, false};
        const State s = sample_state(g, pr, nl, target, seed);
        return py::make_tuple(from_values(s.u.values), from_values(s.v.values));
    });

    mod.def("run", &run_json, py::arg("subcommand"), py::arg("config_json"),
            py::arg("out_dir") = std::nullopt, py::arg("seed") = std::nullopt,
            py::arg("threads") = std::nullopt,
            "Execute a CLI subcommand in-process; returns the summary JSON string.");
    mod.def("canonical_config_json", [] { return canonical_config().dump(); });
}
