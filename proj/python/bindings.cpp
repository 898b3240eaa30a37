#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "circjoin/circulant.hpp"
#include "circjoin/graphs.hpp"
#include "circjoin/join.hpp"
#include "circjoin/kuramoto.hpp"
#include "circjoin/smalldense.hpp"

namespace py = pybind11;
using namespace circjoin;

namespace {

py::object origin_to_py(const Origin& o) {
    if (o.condensed()) return py::none();
    return py::int_(*o.block);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectra of joins of circulant matrices";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    auto precondition = py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", numerical.ptr());
    py::register_exception<IllConditionedError>(m, "IllConditionedError", numerical.ptr());
    (void)error;
    (void)precondition;

    py::class_<CirculantMatrix>(m, "CirculantMatrix")
        .def(py::init<std::vector<Complex>>(), py::arg("defining_vector"))
        .def_property_readonly("size", &CirculantMatrix::size)
        .def_property_readonly("defining_vector", &CirculantMatrix::defining_vector)
        .def("is_symmetric", &CirculantMatrix::is_symmetric)
        .def("__len__", &CirculantMatrix::size)
        .def("__repr__", [](const CirculantMatrix& c) {
            return "CirculantMatrix(k=" + std::to_string(c.size()) + ")";
        });

    m.def("fourier_vector", &fourier_vector, py::arg("k"), py::arg("j"));
    m.def("dft_matrix", &dft_matrix, py::arg("k"));
    m.def("row_sum", &row_sum, py::arg("c"));
    m.def("expand_dense", &expand_dense, py::arg("c"));
    m.def(
        "circulant_eigenpairs",
        [](const CirculantMatrix& c) {
            std::vector<std::pair<Complex, CVector>> out;
            for (auto& p : circulant_eigenpairs(c)) out.emplace_back(p.eigenvalue, p.eigenvector);
            return out;
        },
        py::arg("c"), "List of (eigenvalue, eigenvector) ordered by Fourier index.");

    py::class_<JoinSpec>(m, "JoinSpec")
        .def(py::init<std::vector<CirculantMatrix>, CMatrix>(), py::arg("blocks"), py::arg("couplings"))
        .def_static("uniform", &JoinSpec::uniform, py::arg("blocks"), py::arg("coupling") = Complex(1.0))
        .def_property_readonly("block_count", &JoinSpec::block_count)
        .def_property_readonly("dimension", &JoinSpec::dimension)
        .def_property_readonly("blocks", &JoinSpec::blocks)
        .def_property_readonly("couplings", &JoinSpec::couplings)
        .def_property_readonly("block_sizes", &JoinSpec::block_sizes);

    m.def("expand_join_dense", &expand_join_dense, py::arg("join"), py::arg("cap") = kDefaultDenseCap);
    m.def("condensed_matrix", &condensed_matrix, py::arg("join"));
    m.def("reduced_char_poly", &reduced_char_poly, py::arg("join"),
          "Monic characteristic polynomial of the condensed matrix, highest degree first.");
    m.def(
        "tensor_expand",
        [](const CVector& v, const std::vector<std::size_t>& sizes) { return tensor_expand(v, sizes); },
        py::arg("v"), py::arg("sizes"));
    m.def(
        "circulant_eigenpairs_of_join",
        [](const JoinSpec& j) {
            py::list out;
            for (auto& p : circulant_eigenpairs_of_join(j)) {
                out.append(py::make_tuple(p.block, p.fourier_index, p.eigenvalue, p.eigenvector));
            }
            return out;
        },
        py::arg("join"), "List of (block, j, eigenvalue, eigenvector).");

    py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
        .def_readonly("diagonalizable", &SpectralDecomposition::diagonalizable)
        .def_readonly("condensed", &SpectralDecomposition::condensed)
        .def_readonly("block_sizes", &SpectralDecomposition::block_sizes)
        .def_property_readonly("dimension", &SpectralDecomposition::dimension)
        .def_property_readonly("eigenvalues",
                               [](const SpectralDecomposition& s) {
                                   py::list out;
                                   for (const auto& e : s.eigenvalues()) {
                                       out.append(py::make_tuple(e.value, e.multiplicity, origin_to_py(e.origin)));
                                   }
                                   return out;
                               },
                               "Sorted (value, multiplicity, block or None for condensed).")
        .def_property_readonly("eigenvalue_multiset", &SpectralDecomposition::eigenvalue_multiset)
        .def_property_readonly("chains",
                               [](const SpectralDecomposition& s) {
                                   py::list out;
                                   for (const auto& c : s.chains()) {
                                       out.append(py::make_tuple(c.eigenvalue, origin_to_py(c.origin), c.vectors));
                                   }
                                   return out;
                               })
        .def("condensed_basis", &SpectralDecomposition::condensed_basis);

    m.def(
        "full_spectrum",
        [](const JoinSpec& j, double cluster_tol, double null_tol) {
            SpectralOptions o;
            o.dense.cluster_tol = cluster_tol;
            o.dense.null_tol = null_tol;
            return full_spectrum(j, o);
        },
        py::arg("join"), py::arg("cluster_tol") = 1e-7, py::arg("null_tol") = 1e-8);
    m.def("eigenbasis_matrix", &eigenbasis_matrix, py::arg("spectrum"));

    m.def(
        "eigenvalues",
        [](const CMatrix& mat) {
            std::vector<std::pair<Complex, std::size_t>> out;
            for (const auto& c : eigenvalues(mat)) out.emplace_back(c.value, c.multiplicity);
            return out;
        },
        py::arg("matrix"), "Clustered eigenvalues as (value, multiplicity).");
    m.def(
        "jordan_chains",
        [](const CMatrix& mat, Complex lambda, std::size_t mult) {
            std::vector<std::vector<CVector>> out;
            for (auto& c : jordan_chains(mat, lambda, mult)) out.push_back(std::move(c.vectors));
            return out;
        },
        py::arg("matrix"), py::arg("eigenvalue"), py::arg("multiplicity"));

    auto g = m.def_submodule("graphs", "Circulant graphs and their joins");
    py::class_<graphs::CirculantGraph>(g, "CirculantGraph")
        .def(py::init<std::vector<int>, bool>(), py::arg("connections"), py::arg("directed"))
        .def_property_readonly("size", &graphs::CirculantGraph::size)
        .def_property_readonly("connections", &graphs::CirculantGraph::connections)
        .def_property_readonly("directed", &graphs::CirculantGraph::directed)
        .def("adjacency", &graphs::CirculantGraph::adjacency);
    g.def("complete_graph", &graphs::complete_graph, py::arg("n"));
    g.def("directed_cycle", &graphs::directed_cycle, py::arg("k"));
    g.def("ring_graph", &graphs::ring_graph, py::arg("k"), py::arg("m"));
    g.def("complement", &graphs::complement, py::arg("graph"));
    g.def("join", &graphs::join, py::arg("parts"));
    g.def("remove_cycle_from_complete", &graphs::remove_cycle_from_complete, py::arg("n"), py::arg("k"),
          py::arg("directed"));
    g.def("ring_join_condensed_eigenvalues", &graphs::ring_join_condensed_eigenvalues);
    g.def("cycle_removal_condensed_eigenvalues", &graphs::cycle_removal_condensed_eigenvalues, py::arg("n"),
          py::arg("k"), py::arg("directed"));

    auto k = m.def_submodule("kuramoto", "Kuramoto oscillators on join networks");
    py::class_<kuramoto::KuramotoSystem>(k, "KuramotoSystem")
        .def(py::init<JoinSpec, double, std::vector<double>>(), py::arg("network"), py::arg("epsilon"),
             py::arg("omega") = std::vector<double>{})
        .def_property_readonly("size", &kuramoto::KuramotoSystem::size)
        .def_property_readonly("epsilon", &kuramoto::KuramotoSystem::epsilon)
        .def_property_readonly("adjacency", &kuramoto::KuramotoSystem::adjacency);
    k.def("rhs", &kuramoto::rhs, py::arg("system"), py::arg("theta"));
    k.def("reduce_phases", &kuramoto::reduce_phases, py::arg("theta"));
    k.def(
        "build_twisted_equilibrium",
        [](const kuramoto::KuramotoSystem& s, std::size_t j, const std::vector<double>& phis) {
            return kuramoto::build_twisted_equilibrium(s, j, phis).theta;
        },
        py::arg("system"), py::arg("j"), py::arg("phis"));
    k.def(
        "check_equilibrium",
        [](const kuramoto::KuramotoSystem& s, const RVector& theta, std::optional<double> tol) {
            const auto c = kuramoto::check_equilibrium(s, theta, tol);
            return py::make_tuple(c.is_equilibrium, c.residual, c.tolerance);
        },
        py::arg("system"), py::arg("theta"), py::arg("tol") = py::none(),
        "Returns (is_equilibrium, residual, tolerance).");
    k.def("eigenvector_equilibrium", &kuramoto::eigenvector_equilibrium, py::arg("system"), py::arg("v"),
          py::arg("eigenvalue"));
    k.def(
        "integrate",
        [](const kuramoto::KuramotoSystem& s, const RVector& theta0, double dt, std::size_t steps) {
            const auto traj = kuramoto::integrate(s, theta0, dt, steps);
            RMatrix out(static_cast<Eigen::Index>(traj.states.size()), theta0.size());
            for (std::size_t i = 0; i < traj.states.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = traj.states[i];
            return out;
        },
        py::arg("system"), py::arg("theta0"), py::arg("dt"), py::arg("steps"),
        "Unreduced phases, one row per step including the initial state.");
}
