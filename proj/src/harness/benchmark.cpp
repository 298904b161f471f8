#include "cubesim/harness/benchmark.hpp"

#include <cstdio>
#include <sstream>

#include "cubesim/control/allocation.hpp"
#include "cubesim/core/errors.hpp"
#include "cubesim/model/mass_properties.hpp"
#include "cubesim/morph/harmonics.hpp"
#include "cubesim/morph/surface.hpp"

namespace cubesim::harness {

namespace {

using capability::WrenchMode;

struct SurfaceMetrics {
    double dirichlet = 0.0;
    double willmore = 0.0;
};

SurfaceMetrics surface_metrics(const hydro::DirectionSet &dirs,
                               const std::vector<double> &radii) {
    SurfaceMetrics m;
    m.dirichlet = morph::dirichlet_energy(dirs, radii).energy;
    m.willmore = morph::willmore_energy(morph::radial_surface(dirs, radii)).energy;
    return m;
}

} // namespace

BenchmarkReport benchmark_report(const std::vector<std::pair<std::string, Assembly>> &configs,
                                 int n_s, bool normalize_power) {
    if (n_s < 121) {
        throw ArgumentError("benchmark needs n_s >= 121 for the degree-10 harmonic fit");
    }
    BenchmarkReport report;
    report.n_s = n_s;
    report.power_normalized = normalize_power;

    for (const auto &[name, assembly] : configs) {
        BenchmarkRow row;
        row.name = name;
        try {
            const MassProperties props = compose_mass_properties(assembly);
            const control::AllocationModel model = control::build_allocation(assembly, props);
            row.thrusters = model.thruster_count();

            for (const WrenchMode mode : {WrenchMode::force, WrenchMode::torque}) {
                const capability::PowerSpace power =
                    capability::power_space(model, mode, n_s);
                const capability::WrenchSpace wrench =
                    capability::reachable_wrench_space(model, mode, n_s);
                const double pw = capability::total_power(power);
                const double mean_unit_power = pw / static_cast<double>(n_s);

                std::vector<double> extents = wrench.extents;
                if (normalize_power && mean_unit_power > 0.0) {
                    for (double &e : extents) {
                        e /= mean_unit_power;
                    }
                }
                capability::WrenchSpace scaled = wrench;
                scaled.extents = extents;

                const SurfaceMetrics mp = surface_metrics(power.directions, power.power);
                const SurfaceMetrics mw = surface_metrics(wrench.directions, extents);
                const double vmie = capability::mie_volume(scaled).volume;

                if (mode == WrenchMode::force) {
                    row.ed_power_force = mp.dirichlet;
                    row.ew_power_force = mp.willmore;
                    row.pw_force = pw;
                    row.ed_wrench_force = mw.dirichlet;
                    row.ew_wrench_force = mw.willmore;
                    row.vmie_force = vmie;
                    row.sigma2_tp =
                        capability::thrust_variance(model, n_s,
                                                    capability::VarianceWeighting::power, mode)
                            .variance;
                } else {
                    row.ed_power_torque = mp.dirichlet;
                    row.ew_power_torque = mp.willmore;
                    row.pw_torque = pw;
                    row.ed_wrench_torque = mw.dirichlet;
                    row.ew_wrench_torque = mw.willmore;
                    row.vmie_torque = vmie;
                    row.sigma2_tw =
                        capability::thrust_variance(model, n_s,
                                                    capability::VarianceWeighting::wrench, mode)
                            .variance;
                }
            }
            row.ok = true;
        } catch (const std::exception &e) {
            row.ok = false;
            row.error = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

nlohmann::json benchmark_to_json(const BenchmarkReport &report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : report.rows) {
        nlohmann::json j{{"name", r.name}, {"ok", r.ok}};
        if (!r.ok) {
            j["error"] = r.error;
            rows.push_back(j);
            continue;
        }
        j["thrusters"] = r.thrusters;
        j["omega_p_force"] = {{"E_D", r.ed_power_force},
                              {"E_W", r.ew_power_force},
                              {"P_W", r.pw_force},
                              {"sigma2_T_P", r.sigma2_tp}};
        j["omega_w_force"] = {{"E_D", r.ed_wrench_force},
                              {"E_W", r.ew_wrench_force},
                              {"V_MIE", r.vmie_force}};
        j["omega_p_torque"] = {{"E_D", r.ed_power_torque},
                               {"E_W", r.ew_power_torque},
                               {"P_W", r.pw_torque},
                               {"sigma2_T_W", r.sigma2_tw}};
        j["omega_w_torque"] = {{"E_D", r.ed_wrench_torque},
                               {"E_W", r.ew_wrench_torque},
                               {"V_MIE", r.vmie_torque}};
        rows.push_back(j);
    }
    return nlohmann::json{{"n_s", report.n_s},
                          {"power_normalized", report.power_normalized},
                          {"rows", rows}};
}

std::string benchmark_to_table(const BenchmarkReport &report) {
    std::ostringstream os;
    auto fmt = [](double v) {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "%10.3e", v);
        return std::string(buf);
    };

    os << "metric                ";
    for (const auto &r : report.rows) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), " %12s", r.name.substr(0, 12).c_str());
        os << buf;
    }
    os << "\n";

    struct Line {
        const char *label;
        double BenchmarkRow::*field;
    };
    const Line lines[] = {
        {"Op{Bf}  E_D", &BenchmarkRow::ed_power_force},
        {"Op{Bf}  E_W", &BenchmarkRow::ew_power_force},
        {"Op{Bf}  P_W", &BenchmarkRow::pw_force},
        {"Op{Bf}  s2_TP", &BenchmarkRow::sigma2_tp},
        {"Ow{Bf}  E_D", &BenchmarkRow::ed_wrench_force},
        {"Ow{Bf}  E_W", &BenchmarkRow::ew_wrench_force},
        {"Ow{Bf}  V_MIE", &BenchmarkRow::vmie_force},
        {"Op{Bt}  E_D", &BenchmarkRow::ed_power_torque},
        {"Op{Bt}  E_W", &BenchmarkRow::ew_power_torque},
        {"Op{Bt}  P_W", &BenchmarkRow::pw_torque},
        {"Op{Bt}  s2_TW", &BenchmarkRow::sigma2_tw},
        {"Ow{Bt}  E_D", &BenchmarkRow::ed_wrench_torque},
        {"Ow{Bt}  E_W", &BenchmarkRow::ew_wrench_torque},
        {"Ow{Bt}  V_MIE", &BenchmarkRow::vmie_torque},
    };
    for (const auto &line : lines) {
        char label[24];
        std::snprintf(label, sizeof(label), "%-22s", line.label);
        os << label;
        for (const auto &r : report.rows) {
            os << "  " << (r.ok ? fmt(r.*line.field) : std::string(10, '-'));
        }
        os << "\n";
    }
    return os.str();
}

} // namespace cubesim::harness
