#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fedmimo/baseline.hpp"
#include "fedmimo/channel.hpp"
#include "fedmimo/config.hpp"
#include "fedmimo/oracle.hpp"
#include "fedmimo/rates.hpp"
#include "fedmimo/sca.hpp"

namespace py = pybind11;
using namespace fedmimo;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Joint power and computing-frequency allocation for massive MIMO "
              "serving federated-learning and downlink users";

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<>())
        .def_readwrite("m", &SystemConfig::m)
        .def_readwrite("l", &SystemConfig::l)
        .def_readwrite("k", &SystemConfig::k)
        .def_readwrite("bandwidth_hz", &SystemConfig::bandwidth_hz)
        .def_readwrite("tau_c", &SystemConfig::tau_c)
        .def_readwrite("tau_dp", &SystemConfig::tau_dp)
        .def_readwrite("tau_1p", &SystemConfig::tau_1p)
        .def_readwrite("tau_2p", &SystemConfig::tau_2p)
        .def_readwrite("tau_up", &SystemConfig::tau_up)
        .def_readwrite("tau_3p", &SystemConfig::tau_3p)
        .def_readwrite("p_d_watt", &SystemConfig::p_d_watt)
        .def_readwrite("p_u_watt", &SystemConfig::p_u_watt)
        .def_readwrite("p_p_watt", &SystemConfig::p_p_watt)
        .def_readwrite("noise_dbm", &SystemConfig::noise_dbm)
        .def_readonly("rho_d", &SystemConfig::rho_d)
        .def_readonly("rho_u", &SystemConfig::rho_u)
        .def_readonly("rho_p", &SystemConfig::rho_p)
        .def_readwrite("s_d_bits", &SystemConfig::s_d_bits)
        .def_readwrite("s_u_bits", &SystemConfig::s_u_bits)
        .def_readwrite("n_c", &SystemConfig::n_c)
        .def_readwrite("d_bar_samples", &SystemConfig::d_bar_samples)
        .def_readwrite("c_bar_cycles", &SystemConfig::c_bar_cycles)
        .def_readwrite("f_min", &SystemConfig::f_min)
        .def_readwrite("f_max", &SystemConfig::f_max)
        .def_readwrite("t_qos_s", &SystemConfig::t_qos_s)
        .def_readwrite("d_side_m", &SystemConfig::d_side_m)
        .def_readwrite("d_min_m", &SystemConfig::d_min_m)
        .def_readwrite("shadow_sigma_db", &SystemConfig::shadow_sigma_db)
        .def("noise_watt", &SystemConfig::noise_watt)
        .def("compute_cycles", &SystemConfig::compute_cycles)
        .def("finalize", &SystemConfig::finalize);

    m.def("default_config", &default_config);
    m.def("load_config", &load_config, py::arg("path"));
    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("validate", &validate, py::arg("cfg"));
    m.def("format_config", &format_config, py::arg("cfg"));

    py::class_<ChannelState>(m, "ChannelState")
        .def_readonly("beta_fl", &ChannelState::beta_fl)
        .def_readonly("beta_nfl", &ChannelState::beta_nfl)
        .def_readonly("sigma2_d", &ChannelState::sigma2_d)
        .def_readonly("sigma2_u", &ChannelState::sigma2_u)
        .def_readonly("sigma2_1", &ChannelState::sigma2_1)
        .def_readonly("sigma2_2", &ChannelState::sigma2_2)
        .def_readonly("sigma2_3", &ChannelState::sigma2_3)
        .def_readonly("positions", &ChannelState::positions)
        .def_readonly("seed", &ChannelState::seed);

    m.def("pathloss_beta", &pathloss_beta, py::arg("distance_m"), py::arg("shadow_db"),
          py::arg("d_min_m") = 35.0);
    m.def("mmse_variance", &mmse_variance, py::arg("rho_p"), py::arg("tau"), py::arg("beta"));
    m.def("sample_layout", &sample_layout, py::arg("cfg"), py::arg("seed"));

    py::class_<Allocation>(m, "Allocation")
        .def(py::init<>())
        .def_static("zeros", &Allocation::zeros, py::arg("l"), py::arg("k"))
        .def_readwrite("eta_d", &Allocation::eta_d)
        .def_readwrite("zeta_1", &Allocation::zeta_1)
        .def_readwrite("zeta_2", &Allocation::zeta_2)
        .def_readwrite("eta_u", &Allocation::eta_u)
        .def_readwrite("zeta_3", &Allocation::zeta_3)
        .def_readwrite("f", &Allocation::f);

    py::class_<SinrParts>(m, "SinrParts")
        .def_readonly("numerator", &SinrParts::numerator)
        .def_readonly("denominator", &SinrParts::denominator)
        .def("value", &SinrParts::value);

    m.def("sinr_s1_fl", &sinr_s1_fl);
    m.def("sinr_s1_nfl", &sinr_s1_nfl);
    m.def("sinr_s2", &sinr_s2);
    m.def("sinr_s3_ul", &sinr_s3_ul);
    m.def("sinr_s3_dl", &sinr_s3_dl);
    m.def("rate_from_sinr", &rate_from_sinr, py::arg("gamma"), py::arg("tau_pilot"),
          py::arg("cfg"), py::arg("half_band"));

    py::class_<RateReport>(m, "RateReport")
        .def_readonly("r_d_fl", &RateReport::r_d_fl)
        .def_readonly("r_d_group", &RateReport::r_d_group)
        .def_readonly("r_1", &RateReport::r_1)
        .def_readonly("r_2", &RateReport::r_2)
        .def_readonly("r_u_fl", &RateReport::r_u_fl)
        .def_readonly("r_u_group", &RateReport::r_u_group)
        .def_readonly("r_3", &RateReport::r_3)
        .def_readonly("t_d", &RateReport::t_d)
        .def_readonly("t_c", &RateReport::t_c)
        .def_readonly("t_u", &RateReport::t_u)
        .def_readonly("d_1", &RateReport::d_1)
        .def_readonly("d_2", &RateReport::d_2)
        .def_readonly("d_3", &RateReport::d_3)
        .def_readonly("eff_rate", &RateReport::eff_rate)
        .def_readonly("min_eff_rate", &RateReport::min_eff_rate)
        .def("round_time", &RateReport::round_time);

    m.def("evaluate", &evaluate, py::arg("allocation"), py::arg("channel"), py::arg("cfg"));

    py::class_<Violation>(m, "Violation")
        .def_readonly("constraint", &Violation::constraint)
        .def_readonly("residual", &Violation::residual);
    m.def("check_feasibility", &check_feasibility, py::arg("allocation"), py::arg("channel"),
          py::arg("cfg"), py::arg("tol") = 1e-12);

    py::class_<BaselineResult>(m, "BaselineResult")
        .def_readonly("allocation", &BaselineResult::allocation)
        .def_readonly("feasible", &BaselineResult::feasible);
    m.def("bl_allocation", &bl_allocation, py::arg("channel"), py::arg("cfg"));

    py::enum_<ScaStatus>(m, "ScaStatus")
        .value("converged", ScaStatus::converged)
        .value("max_iter", ScaStatus::max_iter)
        .value("infeasible_instance", ScaStatus::infeasible_instance)
        .value("solver_failure", ScaStatus::solver_failure);

    py::class_<ScaOptions>(m, "ScaOptions")
        .def(py::init<>())
        .def_readwrite("max_iter", &ScaOptions::max_iter)
        .def_readwrite("rel_tol", &ScaOptions::rel_tol);

    py::class_<SolveReport>(m, "SolveReport")
        .def_readonly("allocation", &SolveReport::allocation)
        .def_readonly("z_trace", &SolveReport::z_trace)
        .def_readonly("min_eff_rate", &SolveReport::min_eff_rate)
        .def_readonly("iterations", &SolveReport::iterations)
        .def_readonly("status", &SolveReport::status)
        .def_readonly("wall_time_s", &SolveReport::wall_time_s);

    m.def(
        "run",
        [](const ChannelState& ch, const SystemConfig& cfg, const ScaOptions& opts) {
            return run(ch, cfg, opts);
        },
        py::arg("channel"), py::arg("cfg"), py::arg("opts") = ScaOptions{});
    m.def("epigraph_ratio", &epigraph_ratio, py::arg("allocation"), py::arg("channel"),
          py::arg("cfg"));

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<>())
        .def_readwrite("steps", &GridSpec::steps)
        .def_readwrite("rounds", &GridSpec::rounds);

    py::class_<OracleResult>(m, "OracleResult")
        .def_readonly("allocation", &OracleResult::allocation)
        .def_readonly("objective", &OracleResult::objective)
        .def_readonly("feasible", &OracleResult::feasible)
        .def_readonly("evaluated", &OracleResult::evaluated);
    m.def("grid_search", &grid_search, py::arg("channel"), py::arg("cfg"),
          py::arg("grid") = GridSpec{});
}
