#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "cubesim/sim/plant.hpp"

namespace cubesim::sim {

struct TraceSample {
    double t = 0.0;
    BodyState state;
    Vec6 wrench = Vec6::Zero(); // applied wrench at the step start
};

using Trace = std::vector<TraceSample>;

using WrenchSource = std::function<Vec6(double t, const BodyState &)>;

/// Classical fixed-step 4th-order integration of the rigid-body dynamics,
/// quaternion renormalized each step. The trace holds every step including
/// the initial state. Throws DivergenceError naming the time at which the
/// state stopped being finite.
Trace integrate(const BodyState &initial, const PlantModel &plant, const WrenchSource &wrench,
                double dt, double t_end);

/// One RK4 step under a constant wrench.
BodyState rk4_step(const BodyState &state, const PlantModel &plant, const Vec6 &wrench,
                   double dt);

/// One RK4 step sampling the wrench source at the stage times and states
/// (4th-order accurate for smooth feedback laws).
BodyState rk4_step(const BodyState &state, const PlantModel &plant, double t,
                   const WrenchSource &wrench, double dt);

/// CSV export: t, position(3), quaternion(4 wxyz), euler(3 rpy), twist(6),
/// wrench(6).
void save_trace_csv(const Trace &trace, std::ostream &os);

} // namespace cubesim::sim
