// cubesim command-line front end: drag tables, capability spaces, surface
// energies, trajectory planning, closed-loop simulation and benchmarking
// for cube-lattice underwater vehicles.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubesim/capability/mie.hpp"
#include "cubesim/capability/spaces.hpp"
#include "cubesim/control/allocation.hpp"
#include "cubesim/core/errors.hpp"
#include "cubesim/harness/benchmark.hpp"
#include "cubesim/harness/runner.hpp"
#include "cubesim/harness/scenario.hpp"
#include "cubesim/harness/svg.hpp"
#include "cubesim/hydro/drag_lut.hpp"
#include "cubesim/model/assembly_json.hpp"
#include "cubesim/morph/harmonics.hpp"
#include "cubesim/morph/surface.hpp"
#include "cubesim/plan/min_snap.hpp"

namespace {

using nlohmann::json;
using namespace cubesim;

std::ofstream open_out(const std::string &path) {
    std::ofstream os(path);
    if (!os) {
        throw ConfigError("cannot write " + path);
    }
    return os;
}

json load_json(const std::string &path) {
    std::ifstream is(path);
    if (!is) {
        throw ConfigError("cannot open " + path);
    }
    json j;
    try {
        is >> j;
    } catch (const json::parse_error &e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

json space_to_json(const capability::WrenchSpace &space, double vmie) {
    json dirs = json::array(), extents = json::array();
    for (int i = 0; i < space.directions.size(); ++i) {
        const Vec3 &d = space.directions[i];
        dirs.push_back(json::array({d.x(), d.y(), d.z()}));
        extents.push_back(space.extents[static_cast<std::size_t>(i)]);
    }
    return json{{"kind", "wrench"},
                {"mode", space.mode == capability::WrenchMode::force ? "force" : "torque"},
                {"directions", dirs},
                {"extents", extents},
                {"V_MIE", vmie}};
}

json space_to_json(const capability::PowerSpace &space) {
    json dirs = json::array(), power = json::array(), attain = json::array();
    for (int i = 0; i < space.directions.size(); ++i) {
        const Vec3 &d = space.directions[i];
        dirs.push_back(json::array({d.x(), d.y(), d.z()}));
        power.push_back(space.power[static_cast<std::size_t>(i)]);
        attain.push_back(static_cast<bool>(space.attainable[static_cast<std::size_t>(i)]));
    }
    return json{{"kind", "power"},
                {"mode", space.mode == capability::WrenchMode::force ? "force" : "torque"},
                {"directions", dirs},
                {"power", power},
                {"attainable", attain},
                {"P_W", capability::total_power(space)}};
}

void read_space_json(const json &j, hydro::DirectionSet *dirs, std::vector<double> *radii) {
    if (!j.contains("directions")) {
        throw ConfigError("space JSON missing directions");
    }
    for (const auto &d : j["directions"]) {
        dirs->directions.emplace_back(d[0].get<double>(), d[1].get<double>(),
                                      d[2].get<double>());
    }
    const char *key = j.value("kind", "wrench") == std::string("power") ? "power" : "extents";
    for (const auto &r : j.at(key)) {
        radii->push_back(r.get<double>());
    }
}

capability::WrenchMode parse_mode(const std::string &mode) {
    if (mode == "force") {
        return capability::WrenchMode::force;
    }
    if (mode == "torque") {
        return capability::WrenchMode::torque;
    }
    throw ConfigError("mode must be force or torque");
}

int run_cli(int argc, char **argv) {
    CLI::App app{"cube-lattice underwater vehicle toolkit"};
    app.require_subcommand(1);

    // ---- config validate ----------------------------------------------
    auto *config = app.add_subcommand("config", "configuration utilities");
    auto *validate = config->add_subcommand("validate", "validate a scenario or assembly file");
    std::string validate_path;
    validate->add_option("file", validate_path, "JSON file")->required();

    // ---- draglut -------------------------------------------------------
    auto *draglut = app.add_subcommand("draglut", "drag lookup table utilities");
    auto *lut_build = draglut->add_subcommand("build", "build a LUT from an assembly");
    std::string lut_assembly, lut_out = "draglut.csv";
    int lut_ns = 200, lut_samples = 20000;
    std::uint64_t lut_seed = 1;
    double lut_rho = 1000.0, lut_cd = 1.05, lut_alpha = 0.0;
    lut_build->add_option("--assembly", lut_assembly, "assembly JSON")->required();
    lut_build->add_option("--out", lut_out, "output CSV path");
    lut_build->add_option("--ns", lut_ns, "number of directions");
    lut_build->add_option("--samples", lut_samples, "Monte-Carlo samples per module");
    lut_build->add_option("--seed", lut_seed, "sampling seed");
    lut_build->add_option("--rho", lut_rho, "fluid density [kg/m^3]");
    lut_build->add_option("--cd", lut_cd, "drag coefficient");
    lut_build->add_option("--alpha", lut_alpha, "alpha-shape parameter [m], 0 = auto");

    auto *lut_show = draglut->add_subcommand("show", "print LUT header and area stats");
    std::string lut_in, lut_svg;
    lut_show->add_option("--in", lut_in, "LUT CSV path")->required();
    lut_show->add_option("--svg", lut_svg, "optional SVG slice plot");

    // ---- wrench / power --------------------------------------------------
    std::string cap_assembly, cap_out, cap_svg, cap_mode = "force";
    int cap_ns = 200;
    auto *wrench = app.add_subcommand("wrench", "reachable wrench space");
    wrench->add_option("--assembly", cap_assembly, "assembly JSON")->required();
    wrench->add_option("--mode", cap_mode, "force|torque");
    wrench->add_option("--ns", cap_ns, "number of directions");
    wrench->add_option("--out", cap_out, "output JSON");
    wrench->add_option("--svg", cap_svg, "optional SVG slice plot");

    auto *power = app.add_subcommand("power", "unit-wrench power space");
    power->add_option("--assembly", cap_assembly, "assembly JSON")->required();
    power->add_option("--mode", cap_mode, "force|torque");
    power->add_option("--ns", cap_ns, "number of directions");
    power->add_option("--out", cap_out, "output JSON");
    power->add_option("--svg", cap_svg, "optional SVG slice plot");

    // ---- morph -----------------------------------------------------------
    auto *morph_cmd = app.add_subcommand("morph", "surface energies of a space JSON");
    std::string morph_in, morph_out, morph_mesh;
    int morph_lmax = 10;
    morph_cmd->add_option("--space", morph_in, "space JSON from wrench/power")->required();
    morph_cmd->add_option("--lmax", morph_lmax, "max harmonic degree");
    morph_cmd->add_option("--out", morph_out, "output JSON");
    morph_cmd->add_option("--mesh", morph_mesh, "optional OFF mesh export");

    // ---- plan ------------------------------------------------------------
    auto *plan_cmd = app.add_subcommand("plan", "minimum-snap trajectory through waypoints");
    std::string plan_in, plan_out, plan_csv;
    double plan_dt = 0.02;
    plan_cmd->add_option("--waypoints", plan_in, "waypoints JSON")->required();
    plan_cmd->add_option("--out", plan_out, "plan JSON output");
    plan_cmd->add_option("--csv", plan_csv, "sampled reference CSV output");
    plan_cmd->add_option("--dt", plan_dt, "sampling step [s]");

    // ---- simulate ----------------------------------------------------------
    auto *simulate = app.add_subcommand("simulate", "closed-loop scenario run");
    std::string sim_scenario, sim_outdir = ".";
    bool sim_svg = false;
    std::uint64_t sim_seed = 0;
    bool sim_seed_set = false;
    simulate->add_option("--scenario", sim_scenario, "scenario JSON")->required();
    simulate->add_option("--out-dir", sim_outdir, "output directory");
    simulate->add_flag("--svg", sim_svg, "emit SVG plots");
    simulate->add_option("--seed", sim_seed, "override scenario seed")
        ->each([&](const std::string &) { sim_seed_set = true; });

    // ---- bench ---------------------------------------------------------------
    auto *bench = app.add_subcommand("bench", "capability metric table for assemblies");
    std::vector<std::string> bench_configs;
    std::string bench_out;
    int bench_ns = 200;
    bool bench_table = false, bench_norm = false;
    bench->add_option("configs", bench_configs, "assembly JSON files")->required();
    bench->add_option("--ns", bench_ns, "number of directions");
    bench->add_option("--out", bench_out, "output JSON");
    bench->add_flag("--table", bench_table, "print the aligned text table");
    bench->add_flag("--normalize-power", bench_norm, "normalize wrench extents by mean power");

    CLI11_PARSE(app, argc, argv);

    if (*validate) {
        const json j = load_json(validate_path);
        if (j.contains("modules")) {
            assembly_from_json(j);
            std::cout << "assembly OK: " << validate_path << "\n";
        } else {
            harness::scenario_from_json(
                j, std::filesystem::path(validate_path).parent_path().string());
            std::cout << "scenario OK: " << validate_path << "\n";
        }
        return 0;
    }

    if (*lut_build) {
        const Assembly assembly = load_assembly_file(lut_assembly);
        hydro::DragLutParams params;
        params.n_s = lut_ns;
        params.samples_per_module = lut_samples;
        params.seed = lut_seed;
        params.rho = lut_rho;
        params.c_d = lut_cd;
        params.alpha = lut_alpha;
        const hydro::DragLut lut = hydro::build_drag_lut(assembly, params);
        auto os = open_out(lut_out);
        hydro::save_drag_lut_csv(lut, os);
        std::cout << "wrote " << lut_out << " (" << lut_ns << " directions)\n";
        return 0;
    }
    if (*lut_show) {
        std::ifstream is(lut_in);
        if (!is) {
            throw ConfigError("cannot open " + lut_in);
        }
        const hydro::DragLut lut = hydro::load_drag_lut_csv(is);
        double lo = 1e300, hi = 0.0;
        for (double a : lut.frontal_area) {
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        }
        std::cout << "n_s=" << lut.directions.size() << " rho=" << lut.rho
                  << " c_d=" << lut.c_d << " seed=" << lut.seed
                  << " samples=" << lut.samples_per_module << "\n"
                  << "frontal area range: [" << lo << ", " << hi << "] m^2\n";
        if (!lut_svg.empty()) {
            auto os = open_out(lut_svg);
            harness::svg_radial_slices(lut.directions, lut.frontal_area,
                                       "frontal area [m^2]", os);
        }
        return 0;
    }

    if (*wrench || *power) {
        const Assembly assembly = load_assembly_file(cap_assembly);
        const MassProperties props = compose_mass_properties(assembly);
        const control::AllocationModel model = control::build_allocation(assembly, props);
        if (!model.controllable) {
            std::cerr << "warning: allocation rank " << model.rank
                      << " < 6; some directions are unattainable\n";
        }
        const capability::WrenchMode mode = parse_mode(cap_mode);
        json out;
        hydro::DirectionSet dirs;
        std::vector<double> radii;
        if (*wrench) {
            const capability::WrenchSpace space =
                capability::reachable_wrench_space(model, mode, cap_ns);
            const capability::MieResult mie = capability::mie_volume(space);
            out = space_to_json(space, mie.volume);
            dirs = space.directions;
            radii = space.extents;
        } else {
            const capability::PowerSpace space = capability::power_space(model, mode, cap_ns);
            out = space_to_json(space);
            dirs = space.directions;
            radii = space.power;
        }
        if (cap_out.empty()) {
            std::cout << out.dump(2) << "\n";
        } else {
            open_out(cap_out) << out.dump(2) << "\n";
            std::cout << "wrote " << cap_out << "\n";
        }
        if (!cap_svg.empty()) {
            auto os = open_out(cap_svg);
            harness::svg_radial_slices(dirs, radii,
                                       *wrench ? "wrench extents" : "unit-wrench power", os);
        }
        return 0;
    }

    if (*morph_cmd) {
        const json j = load_json(morph_in);
        hydro::DirectionSet dirs;
        std::vector<double> radii;
        read_space_json(j, &dirs, &radii);
        const morph::DirichletResult dir_res =
            morph::dirichlet_energy(dirs, radii, morph_lmax);
        const morph::RadialSurface surface = morph::radial_surface(dirs, radii);
        const morph::WillmoreResult will = morph::willmore_energy(surface);
        json spectrum = json::array();
        for (int i = 0; i < dir_res.coefficients.size(); ++i) {
            spectrum.push_back(dir_res.coefficients(i));
        }
        const json out{{"E_W", will.energy},
                       {"E_D", dir_res.energy},
                       {"gauss_term", will.gauss_term},
                       {"total_area", will.total_area},
                       {"l_max", morph_lmax},
                       {"spectrum", spectrum}};
        if (morph_out.empty()) {
            std::cout << out.dump(2) << "\n";
        } else {
            open_out(morph_out) << out.dump(2) << "\n";
            std::cout << "wrote " << morph_out << "\n";
        }
        if (!morph_mesh.empty()) {
            auto os = open_out(morph_mesh);
            morph::save_surface_off(surface, os);
        }
        return 0;
    }

    if (*plan_cmd) {
        const json j = load_json(plan_in);
        std::vector<Vec3> waypoints;
        std::vector<double> times;
        for (const auto &p : j.at("points")) {
            waypoints.emplace_back(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
        }
        if (j.contains("times")) {
            for (const auto &t : j["times"]) {
                times.push_back(t.get<double>());
            }
        } else {
            const double duration = j.value("duration", 10.0);
            for (std::size_t i = 0; i < waypoints.size(); ++i) {
                times.push_back(duration * static_cast<double>(i) /
                                static_cast<double>(waypoints.size() - 1));
            }
        }
        const plan::TrajectoryPlan traj = plan::plan_min_snap(waypoints, times);
        json segments = json::array();
        for (const auto &seg : traj.segments) {
            json axes = json::array();
            for (int axis = 0; axis < 3; ++axis) {
                json coeffs = json::array();
                for (int i = 0; i < 8; ++i) {
                    coeffs.push_back(seg(i, axis));
                }
                axes.push_back(coeffs);
            }
            segments.push_back(axes);
        }
        json jt = json::array();
        for (double t : times) {
            jt.push_back(t);
        }
        const json out{
            {"times", jt}, {"segments", segments}, {"snap_cost", traj.snap_cost}};
        if (plan_out.empty()) {
            std::cout << out.dump(2) << "\n";
        } else {
            open_out(plan_out) << out.dump(2) << "\n";
            std::cout << "wrote " << plan_out << "\n";
        }
        if (!plan_csv.empty()) {
            auto os = open_out(plan_csv);
            os << "t,x,y,z,vx,vy,vz,ax,ay,az,yaw\n";
            os.precision(17);
            for (const auto &s : plan::sample_trajectory(traj, plan_dt)) {
                os << s.t << ',' << s.position.x() << ',' << s.position.y() << ','
                   << s.position.z() << ',' << s.velocity.x() << ',' << s.velocity.y() << ','
                   << s.velocity.z() << ',' << s.acceleration.x() << ','
                   << s.acceleration.y() << ',' << s.acceleration.z() << ',' << s.yaw << "\n";
            }
            std::cout << "wrote " << plan_csv << "\n";
        }
        return 0;
    }

    if (*simulate) {
        harness::Scenario scenario = harness::load_scenario_file(sim_scenario);
        if (sim_seed_set) {
            scenario.seed = sim_seed;
        }
        const harness::SimResult result = harness::run_scenario(scenario);
        std::filesystem::create_directories(sim_outdir);

        json metrics{{"seed", scenario.seed}, {"bodies", json::array()}};
        for (std::size_t b = 0; b < result.bodies.size(); ++b) {
            const auto &body = result.bodies[b];
            const std::string trace_path =
                (std::filesystem::path(sim_outdir) / ("trace_body" + std::to_string(b) + ".csv"))
                    .string();
            auto os = open_out(trace_path);
            sim::save_trace_csv(body.trace, os);
            metrics["bodies"].push_back(
                {{"position_rmse", body.position_rmse},
                 {"orientation_rmse", body.orientation_rmse},
                 {"energy", body.energy},
                 {"saturation_steps", body.saturation_steps},
                 {"samples", body.trace.size()}});
            if (sim_svg) {
                auto svg = open_out((std::filesystem::path(sim_outdir) /
                                     ("trajectory_body" + std::to_string(b) + ".svg"))
                                        .string());
                harness::svg_trajectory(body.trace, body.reference, svg);
            }
        }
        if (result.docked_at.has_value()) {
            metrics["docked_at"] = result.docked_at.value();
            metrics["merged"] = result.merged;
        }
        const std::string metrics_path =
            (std::filesystem::path(sim_outdir) / "metrics.json").string();
        open_out(metrics_path) << metrics.dump(2) << "\n";
        std::cout << metrics.dump(2) << "\n";
        return 0;
    }

    if (*bench) {
        std::vector<std::pair<std::string, Assembly>> configs;
        for (const auto &path : bench_configs) {
            configs.emplace_back(std::filesystem::path(path).stem().string(),
                                 load_assembly_file(path));
        }
        const harness::BenchmarkReport report =
            harness::benchmark_report(configs, bench_ns, bench_norm);
        const json out = benchmark_to_json(report);
        if (bench_out.empty()) {
            std::cout << out.dump(2) << "\n";
        } else {
            open_out(bench_out) << out.dump(2) << "\n";
            std::cout << "wrote " << bench_out << "\n";
        }
        if (bench_table) {
            std::cout << benchmark_to_table(report);
        }
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    try {
        return run_cli(argc, argv);
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError &e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
