#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qwave/checkpoint.hpp"
#include "qwave/errors.hpp"
#include "qwave/grid_cdf.hpp"
#include "qwave/jump_law.hpp"
#include "qwave/metrics.hpp"
#include "qwave/mfm.hpp"
#include "qwave/particle_system.hpp"
#include "qwave/rate_profile.hpp"
#include "qwave/rng.hpp"
#include "qwave/tws.hpp"

namespace py = pybind11;
using namespace qwave;

PYBIND11_MODULE(_qwave, m) {
    m.doc() = "Quantile-interacting particle system, its mean-field flow, "
              "and the traveling-wave fixed point";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<WindowTooSmall>(m, "WindowTooSmall", PyExc_RuntimeError);
    py::register_exception<SchemeUnstable>(m, "SchemeUnstable", PyExc_RuntimeError);

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def_static("derive", &Rng::derive, py::arg("master"), py::arg("stream"))
        .def("uniform", &Rng::uniform)
        .def("normal", &Rng::normal)
        .def("below", &Rng::below, py::arg("n"));

    py::class_<RateProfile>(m, "RateProfile")
        .def_static("linear", &RateProfile::linear)
        .def_static("power", &RateProfile::power, py::arg("p"))
        .def_static("table", &RateProfile::table, py::arg("nu"), py::arg("eta"))
        .def("eta", &RateProfile::eta, py::arg("nu"))
        .def("antiderivative", &RateProfile::antiderivative, py::arg("nu"))
        .def("eta_n", &RateProfile::eta_n, py::arg("n"), py::arg("nu"))
        .def("speed", &RateProfile::speed)
        .def("describe", &RateProfile::describe)
        .def("__repr__", &RateProfile::describe);

    py::class_<JumpLaw>(m, "JumpLaw")
        .def_static("exponential", &JumpLaw::exponential, py::arg("rate"),
                    py::arg("normalize") = true)
        .def_static("gamma", &JumpLaw::gamma, py::arg("shape"), py::arg("rate"),
                    py::arg("normalize") = true)
        .def_static("uniform", &JumpLaw::uniform, py::arg("a"), py::arg("b"),
                    py::arg("normalize") = true)
        .def_static("table", &JumpLaw::table, py::arg("x"), py::arg("cdf"),
                    py::arg("normalize") = true)
        .def("cdf", &JumpLaw::cdf, py::arg("y"))
        .def("ccdf", &JumpLaw::ccdf, py::arg("y"))
        .def("density", &JumpLaw::density, py::arg("y"))
        .def("sample", &JumpLaw::sample, py::arg("rng"))
        .def("moment", &JumpLaw::moment, py::arg("ell"))
        .def("ccdf_antideriv", &JumpLaw::ccdf_antideriv, py::arg("y"))
        .def("satisfies_density_condition", &JumpLaw::satisfies_density_condition)
        .def("describe", &JumpLaw::describe)
        .def("__repr__", &JumpLaw::describe);

    py::class_<GridCDF>(m, "GridCDF")
        .def_readonly("x0", &GridCDF::x0)
        .def_readonly("dx", &GridCDF::dx)
        .def_readonly("F", &GridCDF::F)
        .def("cells", &GridCDF::cells)
        .def("x", &GridCDF::x, py::arg("k"))
        .def("value_at", &GridCDF::value_at, py::arg("x"))
        .def("mean", &GridCDF::mean)
        .def("tail_left", &GridCDF::tail_left)
        .def("tail_right", &GridCDF::tail_right)
        .def("translate", &GridCDF::translate, py::arg("c"))
        .def("validate", &GridCDF::validate);

    m.def("grid_from_cdf", &grid_from_cdf, py::arg("cdf"), py::arg("x0"),
          py::arg("dx"), py::arg("cells"), py::arg("eps_tail") = 1e-6);
    m.def("grid_from_dirac", &grid_from_dirac, py::arg("a"), py::arg("x0"),
          py::arg("dx"), py::arg("cells"), py::arg("eps_tail") = 1e-6);
    m.def("grid_from_uniform", &grid_from_uniform, py::arg("a"), py::arg("b"),
          py::arg("x0"), py::arg("dx"), py::arg("cells"),
          py::arg("eps_tail") = 1e-6);
    m.def("grid_from_empirical", &grid_from_empirical, py::arg("points"),
          py::arg("x0"), py::arg("dx"), py::arg("cells"),
          py::arg("eps_tail") = 1e-6);

    py::class_<UrgeEvent>(m, "UrgeEvent")
        .def_readonly("time", &UrgeEvent::time)
        .def_readonly("particle_rank", &UrgeEvent::particle_rank)
        .def_readonly("accepted", &UrgeEvent::accepted)
        .def_readonly("jump_size", &UrgeEvent::jump_size);

    py::class_<ParticleState>(m, "ParticleState")
        .def(py::init<std::vector<double>>(), py::arg("positions"))
        .def_property_readonly("positions", &ParticleState::positions)
        .def_property_readonly("clock", &ParticleState::clock)
        .def("size", &ParticleState::size)
        .def("mean", &ParticleState::mean)
        .def("propose", &ParticleState::propose, py::arg("profile"),
             py::arg("law"), py::arg("rng"))
        .def("step", &ParticleState::step, py::arg("profile"), py::arg("law"),
             py::arg("rng"))
        .def("run", &ParticleState::run, py::arg("profile"), py::arg("law"),
             py::arg("horizon"), py::arg("rng"))
        .def_static("restore", &ParticleState::restore,
                    py::arg("sorted_positions"), py::arg("clock"));

    py::class_<CenteredState>(m, "CenteredState")
        .def_readonly("w", &CenteredState::w);

    m.def("recenter",
          static_cast<CenteredState (*)(std::vector<double>)>(&recenter),
          py::arg("positions"));
    m.def("v_n", &v_n, py::arg("profile"), py::arg("n"));
    m.def("zeta_bar", &zeta_bar, py::arg("state"), py::arg("profile"));
    m.def("lyapunov_G", &lyapunov_G, py::arg("state"), py::arg("profile"),
          py::arg("chi"));
    m.def("enumerate_urge_outcome", &enumerate_urge_outcome, py::arg("state"),
          py::arg("profile"), py::arg("law"), py::arg("max_block") = 12);
    m.def("default_burn_in", &default_burn_in, py::arg("n"), py::arg("speed"));

    py::class_<StationarySpec>(m, "StationarySpec")
        .def(py::init<>())
        .def_readwrite("burn_in", &StationarySpec::burn_in)
        .def_readwrite("spacing", &StationarySpec::spacing)
        .def_readwrite("count", &StationarySpec::count)
        .def_readwrite("chi", &StationarySpec::chi);

    py::class_<StationaryRun>(m, "StationaryRun")
        .def_readonly("samples", &StationaryRun::samples)
        .def_readonly("sample_times", &StationaryRun::sample_times)
        .def_readonly("phi_one", &StationaryRun::phi_one)
        .def_readonly("phi_one_chi", &StationaryRun::phi_one_chi)
        .def_readonly("lyapunov", &StationaryRun::lyapunov)
        .def_readonly("burn_in_used", &StationaryRun::burn_in_used);

    m.def(
        "stationary_sample",
        [](const StationarySpec& spec, int n, const RateProfile& profile,
           const JumpLaw& law, Rng& rng) {
            return stationary_sample(spec, n, profile, law, rng);
        },
        py::arg("spec"), py::arg("n"), py::arg("profile"), py::arg("law"),
        py::arg("rng"));

    py::class_<MfmParams>(m, "MfmParams")
        .def(py::init<>())
        .def_readwrite("dx", &MfmParams::dx)
        .def_readwrite("dt", &MfmParams::dt)
        .def_readwrite("half_width", &MfmParams::half_width)
        .def_readwrite("integrator", &MfmParams::integrator)
        .def_readwrite("eps_tail", &MfmParams::eps_tail)
        .def_readwrite("repair_limit", &MfmParams::repair_limit)
        .def_readwrite("midpoint_kernel", &MfmParams::midpoint_kernel);

    py::class_<MfmSolver>(m, "MfmSolver")
        .def(py::init<RateProfile, JumpLaw, MfmParams>(), py::arg("profile"),
             py::arg("law"), py::arg("params"))
        .def("make_window", &MfmSolver::make_window, py::arg("cdf"),
             py::arg("center"))
        .def(
            "solve",
            [](MfmSolver& self, GridCDF& F, double T,
               const std::vector<double>& snapshot_times,
               const std::function<void(double, const GridCDF&)>& on_snapshot) {
                self.solve(F, T, snapshot_times, on_snapshot);
                return F;
            },
            py::arg("F"), py::arg("T"),
            py::arg("snapshot_times") = std::vector<double>{},
            py::arg("on_snapshot") = nullptr)
        .def("max_repair", &MfmSolver::max_repair);

    m.def("mfm_rhs", &mfm_rhs, py::arg("F"), py::arg("profile"), py::arg("law"),
          py::arg("midpoint_kernel") = true);
    m.def("mass_transport_defect", &mass_transport_defect, py::arg("F0"),
          py::arg("Ft"), py::arg("t"), py::arg("speed"));

    py::class_<TwsParams>(m, "TwsParams")
        .def(py::init<>())
        .def_readwrite("mfm", &TwsParams::mfm)
        .def_readwrite("tau", &TwsParams::tau)
        .def_readwrite("tol_fix", &TwsParams::tol_fix)
        .def_readwrite("max_iters", &TwsParams::max_iters)
        .def_readwrite("refine_factors", &TwsParams::refine_factors);

    py::class_<TravelingWave>(m, "TravelingWave")
        .def_readonly("shape", &TravelingWave::shape)
        .def_readonly("speed", &TravelingWave::speed)
        .def_readonly("residual", &TravelingWave::residual)
        .def_readonly("iterations", &TravelingWave::iterations)
        .def_readonly("density_condition", &TravelingWave::density_condition);

    m.def("wave_speed", &wave_speed, py::arg("profile"));
    m.def("tws_solve", &tws_solve, py::arg("profile"), py::arg("law"),
          py::arg("params"), py::arg("start") = std::nullopt);
    m.def("tws_residual", &tws_residual, py::arg("phi"), py::arg("profile"),
          py::arg("law"));
    m.def("tws_attraction_curve", &tws_attraction_curve, py::arg("f0"),
          py::arg("profile"), py::arg("law"), py::arg("phi"), py::arg("times"),
          py::arg("params"));

    m.def("wasserstein1",
          static_cast<double (*)(const GridCDF&, const GridCDF&, double)>(
              &wasserstein1),
          py::arg("F"), py::arg("G"), py::arg("mismatch_tol") = 1e-6);
    m.def("wasserstein1",
          static_cast<double (*)(const std::vector<double>&, const GridCDF&,
                                 double)>(&wasserstein1),
          py::arg("points"), py::arg("G"), py::arg("mismatch_tol") = 1e-6);
    m.def("wasserstein1",
          static_cast<double (*)(const std::vector<double>&,
                                 const std::vector<double>&)>(&wasserstein1),
          py::arg("a"), py::arg("b"));

    py::class_<MomentReport>(m, "MomentReport")
        .def_readonly("order", &MomentReport::order)
        .def_readonly("value", &MomentReport::value)
        .def_readonly("tail_allowance", &MomentReport::tail_allowance)
        .def_readonly("method", &MomentReport::method);

    m.def("absolute_moment",
          static_cast<MomentReport (*)(const std::vector<double>&, double)>(
              &absolute_moment),
          py::arg("w"), py::arg("ell"));
    m.def("absolute_moment",
          static_cast<MomentReport (*)(const GridCDF&, double)>(&absolute_moment),
          py::arg("g"), py::arg("ell"));

    py::class_<BatchMeans>(m, "BatchMeans")
        .def_readonly("mean", &BatchMeans::mean)
        .def_readonly("se", &BatchMeans::se)
        .def_readonly("batches", &BatchMeans::batches);

    m.def(
        "batch_means",
        [](const std::vector<double>& series, int batch_count) {
            return batch_means(series, batch_count);
        },
        py::arg("series"), py::arg("batch_count"));
}
