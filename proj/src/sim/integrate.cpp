#include "cubesim/sim/integrate.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "cubesim/core/errors.hpp"

namespace cubesim::sim {

namespace {

// The 13-dimensional flat state used inside the integrator.
using Flat = Eigen::Matrix<double, 13, 1>;

Flat pack(const BodyState &s) {
    Flat x;
    x.segment<3>(0) = s.position;
    x(3) = s.orientation.w();
    x(4) = s.orientation.x();
    x(5) = s.orientation.y();
    x(6) = s.orientation.z();
    x.segment<6>(7) = s.twist;
    return x;
}

BodyState unpack(const Flat &x) {
    BodyState s;
    s.position = x.segment<3>(0);
    s.orientation = Quat(x(3), x(4), x(5), x(6));
    s.twist = x.segment<6>(7);
    return s;
}

Flat flat_derivative(const Flat &x, const PlantModel &plant, const Vec6 &wrench) {
    const BodyState s = unpack(x);
    const StateDerivative d = state_derivative(s, plant, wrench);
    Flat dx;
    dx.segment<3>(0) = d.position_dot;
    dx.segment<4>(3) = d.orientation_dot;
    dx.segment<6>(7) = d.twist_dot;
    return dx;
}

} // namespace

BodyState rk4_step(const BodyState &state, const PlantModel &plant, const Vec6 &wrench,
                   double dt) {
    return rk4_step(state, plant, 0.0, [&](double, const BodyState &) { return wrench; }, dt);
}

BodyState rk4_step(const BodyState &state, const PlantModel &plant, double t,
                   const WrenchSource &wrench, double dt) {
    // The wrench source is sampled at the stage times and states, keeping
    // 4th-order accuracy for smooth feedback laws and references.
    auto eval = [&](double ts, const Flat &x) {
        return flat_derivative(x, plant, wrench(ts, unpack(x)));
    };
    const Flat x0 = pack(state);
    const Flat k1 = eval(t, x0);
    const Flat k2 = eval(t + 0.5 * dt, x0 + 0.5 * dt * k1);
    const Flat k3 = eval(t + 0.5 * dt, x0 + 0.5 * dt * k2);
    const Flat k4 = eval(t + dt, x0 + dt * k3);
    BodyState next = unpack(x0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    next.renormalize();
    return next;
}

Trace integrate(const BodyState &initial, const PlantModel &plant, const WrenchSource &wrench,
                double dt, double t_end) {
    if (!(dt > 0.0)) {
        throw ArgumentError("dt must be positive");
    }
    plant.validate();

    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    Trace trace;
    trace.reserve(steps + 1);

    BodyState state = initial;
    double t = 0.0;
    for (std::size_t i = 0; i <= steps; ++i) {
        const Vec6 tau = wrench ? wrench(t, state) : Vec6::Zero();
        trace.push_back({t, state, tau});
        if (!state.twist.allFinite() || !state.position.allFinite() ||
            !state.orientation.coeffs().allFinite()) {
            std::ostringstream msg;
            msg << "simulation diverged at t=" << t << " s";
            throw DivergenceError(msg.str());
        }
        if (i == steps) {
            break;
        }
        if (wrench) {
            state = rk4_step(state, plant, t, wrench, dt);
        } else {
            state = rk4_step(state, plant, Vec6::Zero(), dt);
        }
        t = static_cast<double>(i + 1) * dt;
    }
    return trace;
}

void save_trace_csv(const Trace &trace, std::ostream &os) {
    os << "t,px,py,pz,qw,qx,qy,qz,roll,pitch,yaw,u,v,w,p,q,r,"
          "tau_x,tau_y,tau_z,tau_k,tau_m,tau_n\n";
    os.precision(17);
    for (const auto &s : trace) {
        const Vec3 rpy = euler_zyx(s.state.orientation);
        os << s.t << ',' << s.state.position.x() << ',' << s.state.position.y() << ','
           << s.state.position.z() << ',' << s.state.orientation.w() << ','
           << s.state.orientation.x() << ',' << s.state.orientation.y() << ','
           << s.state.orientation.z() << ',' << rpy(0) << ',' << rpy(1) << ',' << rpy(2);
        for (int i = 0; i < 6; ++i) {
            os << ',' << s.state.twist(i);
        }
        for (int i = 0; i < 6; ++i) {
            os << ',' << s.wrench(i);
        }
        os << "\n";
    }
}

} // namespace cubesim::sim
