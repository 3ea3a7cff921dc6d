// SPDX-License-Identifier: Apache-2.0
//
// rismp — multiport-network RIS uplink simulator and CSI-free optimizer

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rismp/errors.hpp"
#include "rismp/evaluator.hpp"
#include "rismp/experiments.hpp"
#include "rismp/optimizer.hpp"
#include "rismp/ris_response.hpp"
#include "rismp/scenario.hpp"

namespace py = pybind11;
using namespace rismp;

PYBIND11_MODULE(_rismp, m) {
    m.doc() = "Multiport-network RIS uplink simulator and CSI-free optimizer";

    py::register_exception<DegenerateDirection>(m, "DegenerateDirection");
    py::register_exception<UncertaintyTooLarge>(m, "UncertaintyTooLarge");
    py::register_exception<GeometryOverlap>(m, "GeometryOverlap");
    py::register_exception<SingularNetwork>(m, "SingularNetwork");
    py::register_exception<PhaseAtBranchPoint>(m, "PhaseAtBranchPoint");

    py::class_<ArraySpec>(m, "ArraySpec")
        .def(py::init<>())
        .def_readwrite("n_horizontal", &ArraySpec::n_horizontal)
        .def_readwrite("n_vertical", &ArraySpec::n_vertical)
        .def_readwrite("spacing_x", &ArraySpec::spacing_x)
        .def_readwrite("spacing_z", &ArraySpec::spacing_z)
        .def_readwrite("center", &ArraySpec::center)
        .def_readwrite("element_length", &ArraySpec::element_length)
        .def_readwrite("element_radius", &ArraySpec::element_radius)
        .def("count", &ArraySpec::count);

    py::class_<UeSpec>(m, "UeSpec")
        .def(py::init<>())
        .def_readwrite("nominal_position", &UeSpec::nominal_position)
        .def_readwrite("uncertainty_radius", &UeSpec::uncertainty_radius)
        .def_readwrite("tx_power", &UeSpec::tx_power);

    py::class_<ScenarioGeometry>(m, "ScenarioGeometry")
        .def(py::init<>())
        .def_readwrite("bs", &ScenarioGeometry::bs)
        .def_readwrite("ris", &ScenarioGeometry::ris)
        .def_readwrite("ues", &ScenarioGeometry::ues)
        .def_readwrite("wavelength", &ScenarioGeometry::wavelength);

    py::class_<RicianSpec>(m, "RicianSpec")
        .def(py::init<>())
        .def_readwrite("k_ris_ue", &RicianSpec::k_ris_ue)
        .def_readwrite("k_bs_ris", &RicianSpec::k_bs_ris)
        .def_readwrite("nlos_spread", &RicianSpec::nlos_spread)
        .def_readwrite("nlos_spread_bs", &RicianSpec::nlos_spread_bs);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("geometry", &Scenario::geometry)
        .def_readwrite("rician", &Scenario::rician)
        .def_readwrite("z0", &Scenario::z0)
        .def_readwrite("r0", &Scenario::r0);

    py::class_<ImpedanceNetwork>(m, "ImpedanceNetwork")
        .def(py::init<>())
        .def_readwrite("z_ss", &ImpedanceNetwork::z_ss)
        .def_readwrite("s", &ImpedanceNetwork::s)
        .def_readwrite("t", &ImpedanceNetwork::t)
        .def_readwrite("z0", &ImpedanceNetwork::z0)
        .def_readwrite("r0", &ImpedanceNetwork::r0)
        .def_readwrite("y0", &ImpedanceNetwork::y0);

    py::class_<ChannelStatistics>(m, "ChannelStatistics")
        .def_readonly("r_x", &ChannelStatistics::r_x)
        .def_readonly("r_w", &ChannelStatistics::r_w)
        .def_readonly("u", &ChannelStatistics::u)
        .def_readonly("d", &ChannelStatistics::d)
        .def_readonly("rank", &ChannelStatistics::rank);

    py::class_<ChannelRealization>(m, "ChannelRealization")
        .def_readonly("s_e", &ChannelRealization::s_e)
        .def_readonly("t_e", &ChannelRealization::t_e)
        .def_readonly("true_positions", &ChannelRealization::true_positions);

    py::enum_<RisModel>(m, "RisModel")
        .value("MP", RisModel::MP)
        .value("CT", RisModel::CT);

    py::enum_<SnrReference>(m, "SnrReference")
        .value("PerAntenna", SnrReference::PerAntenna)
        .value("PostCombining", SnrReference::PostCombining);

    py::class_<AoConfig>(m, "AoConfig")
        .def(py::init<>())
        .def_readwrite("epsilon", &AoConfig::epsilon)
        .def_readwrite("max_iterations", &AoConfig::max_iterations)
        .def_readwrite("mse_tolerance", &AoConfig::mse_tolerance)
        .def_readwrite("mu_bisection_tol", &AoConfig::mu_bisection_tol)
        .def_readwrite("model", &AoConfig::model)
        .def_readwrite("seed", &AoConfig::seed)
        .def_readwrite("starts", &AoConfig::starts);

    py::class_<AoIterate>(m, "AoIterate")
        .def_readonly("iteration", &AoIterate::iteration)
        .def_readonly("mse", &AoIterate::mse)
        .def_readonly("rate_bound", &AoIterate::rate_bound)
        .def_readonly("trust_radius", &AoIterate::trust_radius)
        .def_readonly("accepted", &AoIterate::accepted);

    py::class_<AoResult>(m, "AoResult")
        .def_readonly("b", &AoResult::b)
        .def_readonly("lambda_", &AoResult::lambda)
        .def_readonly("mse", &AoResult::mse)
        .def_readonly("rate_bound", &AoResult::rate_bound)
        .def_readonly("iterations", &AoResult::iterations)
        .def_readonly("converged", &AoResult::converged)
        .def_readonly("trace", &AoResult::trace);

    py::class_<CalibrationOptions>(m, "CalibrationOptions")
        .def(py::init<>())
        .def_readwrite("target_snr_db", &CalibrationOptions::target_snr_db)
        .def_readwrite("n_random_configs", &CalibrationOptions::n_random_configs)
        .def_readwrite("seed", &CalibrationOptions::seed)
        .def_readwrite("reference", &CalibrationOptions::reference);

    py::class_<EvaluationReport>(m, "EvaluationReport")
        .def_readonly("mean_rate", &EvaluationReport::mean_rate)
        .def_readonly("stderr_rate", &EvaluationReport::stderr_rate)
        .def_readonly("rate_samples", &EvaluationReport::rate_samples)
        .def_readonly("rate_bound", &EvaluationReport::rate_bound)
        .def_readonly("n_trials", &EvaluationReport::n_trials);

    m.def("paper_default", &paper_default, py::arg("dx_fraction") = 0.5,
          py::arg("sigma") = 0.0,
          py::arg("ue_azimuths") =
              std::vector<double>{constants::pi / 8, constants::pi / 4, 3 * constants::pi / 8},
          py::arg("ue_distance") = 10.0);
    m.def("load_scenario", &load_scenario);
    m.def("scenario_to_json", &scenario_to_json);
    m.def("scenario_hash", &scenario_hash);

    m.def("element_positions", &element_positions);
    m.def("azimuth_of", &azimuth_of);
    m.def("angular_spread", &angular_spread);

    m.def(
        "assemble_network",
        [](const ScenarioGeometry& g, double z0, double r0) {
            NetworkOptions opt;
            opt.z0 = z0;
            opt.r0 = r0;
            return assemble_network(g, opt);
        },
        py::arg("geometry"), py::arg("z0") = 50.0, py::arg("r0") = 0.1);
    m.def("bs_combiner", &bs_combiner);
    m.def("mutual_impedance", &mutual_impedance);

    m.def(
        "delta_mp",
        [](const ImpedanceNetwork& net, const RVec& b) {
            return delta_mp(net, RisState::from_reactances(b, net.z0));
        },
        py::arg("network"), py::arg("b"));
    m.def(
        "delta_ct",
        [](const RVec& phi, double z0, double y0) {
            return delta_ct(RisState::from_phases(phi, z0), z0, y0);
        },
        py::arg("phi"), py::arg("z0") = 50.0, py::arg("y0") = 0.02);
    m.def("phase_to_reactance", &phase_to_reactance, py::arg("phi"), py::arg("z0") = 50.0,
          py::arg("guard") = kPhaseGuard);
    m.def("reactance_to_phase", &reactance_to_phase, py::arg("b"), py::arg("z0") = 50.0);

    m.def("steering_vector", &steering_vector);
    m.def("build_statistics", &build_statistics);
    m.def("sample_realization", &sample_realization);

    m.def("expected_sinr", &expected_sinr);
    m.def("lmmse_filter", &lmmse_filter);
    m.def("mse_given_filter", &mse_given_filter);
    m.def("effective_channel", &effective_channel);
    m.def("ao_optimize", &ao_optimize, py::arg("network"), py::arg("stats"), py::arg("v"),
          py::arg("noise_variance"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    m.def("calibrate_noise", &calibrate_noise, py::arg("network"), py::arg("geometry"),
          py::arg("v"), py::arg("options") = CalibrationOptions{});
    m.def("instantaneous_rate", &instantaneous_rate);
    m.def("monte_carlo_rate",
          [](const Scenario& sc, const ImpedanceNetwork& net, const RVec& b, const CVec& v,
             double noise, int trials, std::uint64_t seed) {
              return monte_carlo_rate(sc, net, b, v, noise, trials, seed);
          },
          py::arg("scenario"), py::arg("network"), py::arg("b"), py::arg("v"),
          py::arg("noise_variance"), py::arg("n_trials"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());
    m.def("beampattern", &beampattern, py::arg("network"), py::arg("geometry"), py::arg("b"),
          py::arg("v"), py::arg("angle_grid"), py::arg("distance"),
          py::arg("probe_power") = 0.1, py::call_guard<py::gil_scoped_release>());
}
