#include "cubesim/capability/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/LU>

#include "cubesim/core/errors.hpp"

namespace cubesim::capability {

namespace {

constexpr double kTol = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Status { basic, at_lower, at_upper };

struct Tableau {
    MatX a;      // m x n constraint matrix (structural + artificial columns)
    VecX b;
    VecX cost;   // current-phase objective (maximized)
    VecX lower, upper;
    VecX x;
    std::vector<Status> status;
    std::vector<int> basis; // basis[i] = column basic in row i
    int m = 0, n = 0;

    void recompute_basics() {
        MatX bmat(m, m);
        for (int i = 0; i < m; ++i) {
            bmat.col(i) = a.col(basis[static_cast<std::size_t>(i)]);
        }
        VecX rhs = b;
        for (int j = 0; j < n; ++j) {
            if (status[static_cast<std::size_t>(j)] != Status::basic) {
                rhs -= a.col(j) * x(j);
            }
        }
        const VecX xb = bmat.fullPivLu().solve(rhs);
        for (int i = 0; i < m; ++i) {
            x(basis[static_cast<std::size_t>(i)]) = xb(i);
        }
    }

    // One phase of simplex iterations over the first `n_entering` columns
    // (phase 2 must not re-enter artificial columns); returns false if
    // unbounded.
    bool run(int n_entering) {
        for (int iter = 0;; ++iter) {
            if (iter > 50000) {
                throw NumericalError("simplex iteration cap exceeded");
            }
            MatX bmat(m, m);
            for (int i = 0; i < m; ++i) {
                bmat.col(i) = a.col(basis[static_cast<std::size_t>(i)]);
            }
            Eigen::FullPivLU<MatX> lu(bmat);
            VecX cb(m);
            for (int i = 0; i < m; ++i) {
                cb(i) = cost(basis[static_cast<std::size_t>(i)]);
            }
            const VecX y = lu.transpose().solve(cb);

            // Entering column: Bland's rule over signed reduced costs.
            int enter = -1;
            double dir = 0.0;
            for (int j = 0; j < n_entering; ++j) {
                if (status[static_cast<std::size_t>(j)] == Status::basic) {
                    continue;
                }
                const double d = cost(j) - y.dot(a.col(j));
                if (status[static_cast<std::size_t>(j)] == Status::at_lower && d > kTol) {
                    enter = j;
                    dir = 1.0;
                    break;
                }
                if (status[static_cast<std::size_t>(j)] == Status::at_upper && d < -kTol) {
                    enter = j;
                    dir = -1.0;
                    break;
                }
            }
            if (enter < 0) {
                return true; // optimal for this phase
            }

            const VecX w = lu.solve(a.col(enter)); // basic deltas: x_B -= w * t * dir

            // Ratio test: entering variable moves by t >= 0 in direction dir.
            double t_max = upper(enter) == kInf && lower(enter) == -kInf
                               ? kInf
                               : upper(enter) - lower(enter); // bound-to-bound flip
            int leave_row = -1; // -1 with finite t_max: entering flips bound
            for (int i = 0; i < m; ++i) {
                const int bj = basis[static_cast<std::size_t>(i)];
                const double delta = -w(i) * dir; // d(x_bj)/dt
                double limit = kInf;
                if (delta > kTol) {
                    if (upper(bj) < kInf) {
                        limit = (upper(bj) - x(bj)) / delta;
                    }
                } else if (delta < -kTol) {
                    limit = (lower(bj) - x(bj)) / delta;
                } else {
                    continue;
                }
                if (limit < t_max - kTol ||
                    (limit < t_max + kTol &&
                     (leave_row < 0 || bj < basis[static_cast<std::size_t>(leave_row)]))) {
                    t_max = std::min(t_max, std::max(limit, 0.0));
                    leave_row = i;
                }
            }
            if (t_max == kInf) {
                return false; // unbounded ray
            }

            // Apply the step.
            x(enter) += dir * t_max;
            for (int i = 0; i < m; ++i) {
                const int bj = basis[static_cast<std::size_t>(i)];
                x(bj) -= w(i) * dir * t_max;
            }
            if (leave_row < 0) {
                // Entering variable flipped to its other bound; basis unchanged.
                status[static_cast<std::size_t>(enter)] =
                    dir > 0 ? Status::at_upper : Status::at_lower;
            } else {
                const int out = basis[static_cast<std::size_t>(leave_row)];
                const double dist_lo = std::abs(x(out) - lower(out));
                const double dist_hi =
                    upper(out) < kInf ? std::abs(x(out) - upper(out)) : kInf;
                status[static_cast<std::size_t>(out)] =
                    dist_lo <= dist_hi ? Status::at_lower : Status::at_upper;
                x(out) = dist_lo <= dist_hi ? lower(out) : upper(out);
                basis[static_cast<std::size_t>(leave_row)] = enter;
                status[static_cast<std::size_t>(enter)] = Status::basic;
                recompute_basics();
            }
        }
    }
};

} // namespace

LpResult solve_box_lp_max(const VecX &c, const MatX &a, const VecX &b, const VecX &lower,
                          const VecX &upper) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    if (c.size() != n || b.size() != m || lower.size() != n || upper.size() != n) {
        throw ArgumentError("LP dimension mismatch");
    }
    for (int j = 0; j < n; ++j) {
        if (lower(j) > upper(j) || lower(j) == -kInf) {
            throw ArgumentError("LP lower bounds must be finite and <= upper bounds");
        }
    }

    // Phase 1: structural variables at lower bound, artificials close the
    // residual, minimize their sum.
    Tableau tab;
    tab.m = m;
    tab.n = n + m;
    tab.a.resize(m, tab.n);
    tab.a.leftCols(n) = a;
    tab.b = b;
    tab.lower.resize(tab.n);
    tab.upper.resize(tab.n);
    tab.lower.head(n) = lower;
    tab.upper.head(n) = upper;
    tab.lower.tail(m).setZero();
    tab.upper.tail(m).setConstant(kInf);
    tab.x = VecX::Zero(tab.n);
    tab.status.assign(static_cast<std::size_t>(tab.n), Status::at_lower);
    tab.basis.resize(static_cast<std::size_t>(m));

    VecX residual = b - a * lower;
    for (int i = 0; i < m; ++i) {
        tab.a.col(n + i) = VecX::Unit(m, i) * (residual(i) >= 0.0 ? 1.0 : -1.0);
        tab.basis[static_cast<std::size_t>(i)] = n + i;
        tab.status[static_cast<std::size_t>(n + i)] = Status::basic;
        tab.x(n + i) = std::abs(residual(i));
    }
    for (int j = 0; j < n; ++j) {
        tab.x(j) = lower(j);
    }
    tab.cost = VecX::Zero(tab.n);
    tab.cost.tail(m).setConstant(-1.0); // maximize -(sum of artificials)

    LpResult res;
    if (!tab.run(tab.n)) {
        throw NumericalError("phase-1 LP unbounded (should be impossible)");
    }
    double infeas = 0.0;
    for (int i = 0; i < m; ++i) {
        infeas += tab.x(n + i);
    }
    if (infeas > 1e-7) {
        res.feasible = false;
        return res;
    }

    // Freeze any artificial still basic at zero by fixing its bounds.
    for (int i = n; i < tab.n; ++i) {
        tab.upper(i) = 0.0;
        if (tab.status[static_cast<std::size_t>(i)] != Status::basic) {
            tab.status[static_cast<std::size_t>(i)] = Status::at_lower;
            tab.x(i) = 0.0;
        }
    }

    // Phase 2.
    tab.cost.setZero();
    tab.cost.head(n) = c;
    const bool bounded = tab.run(n);
    res.feasible = true;
    res.bounded = bounded;
    res.x = tab.x.head(n);
    res.objective = c.dot(res.x);
    return res;
}

} // namespace cubesim::capability
