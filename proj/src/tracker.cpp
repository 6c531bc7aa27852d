#include "copos/tracker.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

namespace copos {

namespace {

double max_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double e : v) m = std::max(m, std::fabs(e));
    return m;
}

struct NewtonOutcome {
    bool converged = false;
    bool overflow = false;
    bool singular = false;
    int iters = 0;
    double residual = 0.0;
};

// Newton iteration on z = (tau, y) at fixed s. Requires a monotonically
// decreasing residual and, when `strict` is set, a first-step contraction
// below 0.5; both are step-acceptance rules of the corrector.
NewtonOutcome newton_correct(const ParameterHomotopy& ph, double s, std::vector<double>& z,
                             double tol, int max_iters, bool strict) {
    NewtonOutcome out;
    const int n = ph.sys.n;
    std::vector<double> y(z.begin() + 1, z.end());
    HomotopyEval ev = eval_homotopy(ph, s, z[0], y);
    if (ev.overflow) {
        out.overflow = true;
        return out;
    }
    double res = max_norm(ev.residual);
    double first_res = res;
    for (int it = 0; it < max_iters; ++it) {
        if (res <= tol) {
            out.converged = true;
            out.residual = res;
            return out;
        }
        HomotopyJacobian jac = jac_homotopy(ph, s, z[0], y);
        if (jac.overflow) {
            out.overflow = true;
            return out;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(jac.j);
        if (!lu.isInvertible()) {
            out.singular = true;
            out.residual = res;
            return out;
        }
        Eigen::VectorXd rhs(n + 1);
        for (int i = 0; i <= n; ++i) rhs(i) = -ev.residual[i];
        Eigen::VectorXd dz = lu.solve(rhs);
        for (int i = 0; i <= n; ++i) z[i] += dz(i);
        for (int i = 0; i < n; ++i) y[i] = z[i + 1];
        ++out.iters;
        ev = eval_homotopy(ph, s, z[0], y);
        if (ev.overflow) {
            out.overflow = true;
            return out;
        }
        double next = max_norm(ev.residual);
        if (next > tol) {
            if (next >= res) {
                out.residual = next;
                return out;  // non-monotone: reject
            }
            if (strict && it == 0 && next > 0.5 * first_res) {
                out.residual = next;
                return out;  // weak first contraction: reject
            }
        }
        res = next;
    }
    out.converged = res <= tol;
    out.residual = res;
    return out;
}

}  // namespace

const char* track_failure_name(TrackFailure f) {
    switch (f) {
        case TrackFailure::None: return "none";
        case TrackFailure::StepUnderflow: return "step-underflow";
        case TrackFailure::SingularJacobian: return "singular-jacobian";
        case TrackFailure::Overflow: return "overflow";
        case TrackFailure::MaxSteps: return "max-steps";
    }
    return "unknown";
}

TrackResult track_single_path(const ParameterHomotopy& ph, const TrackerConfig& cfg) {
    TrackResult res;
    const int n = ph.sys.n;
    std::vector<double> z(n + 1, 0.0);  // (tau, y) = 0 <=> (t, x) = (1, 1)

    std::ofstream trace;
    if (!cfg.trace_path.empty()) {
        trace.open(cfg.trace_path);
        trace << "s,step,newton_iters,tau";
        for (int i = 0; i < n; ++i) trace << ",y" << i + 1;
        trace << "\n";
    }

    double s = 0.0;
    double ds = cfg.initial_step;
    int easy_streak = 0;
    while (s < 1.0) {
        if (res.steps_taken >= cfg.max_steps) {
            res.failure_reason = TrackFailure::MaxSteps;
            break;
        }
        double step = std::min(ds, 1.0 - s);

        std::vector<double> y(z.begin() + 1, z.end());
        HomotopyJacobian jac = jac_homotopy(ph, s, z[0], y);
        if (jac.overflow) {
            res.failure_reason = TrackFailure::Overflow;
            break;
        }
#ifndef NDEBUG
        assert(jac.j(0, 0) < 0 && "d f_t / d t must be negative along the path");
#endif
        Eigen::FullPivLU<Eigen::MatrixXd> lu(jac.j);
        if (!lu.isInvertible()) {
            res.failure_reason = TrackFailure::SingularJacobian;
            break;
        }
        Eigen::VectorXd dzds = lu.solve(-jac.dh_ds);

        std::vector<double> z_try = z;
        for (int i = 0; i <= n; ++i) z_try[i] += step * dzds(i);
        NewtonOutcome nw =
            newton_correct(ph, s + step, z_try, cfg.newton_tol, cfg.newton_max_iters, true);
        res.newton_iters_total += nw.iters;
        if (nw.converged) {
            z = z_try;
            s += step;
            ++res.steps_taken;
            if (trace.is_open()) {
                trace << s << "," << step << "," << nw.iters << "," << z[0];
                for (int i = 0; i < n; ++i) trace << "," << z[i + 1];
                trace << "\n";
            }
            easy_streak = nw.iters <= 2 ? easy_streak + 1 : 0;
            if (easy_streak >= 2) {
                ds = std::min(ds * cfg.step_expand, cfg.max_step);
                easy_streak = 0;
            }
        } else {
            ds *= cfg.step_shrink;
            easy_streak = 0;
            if (ds < cfg.min_step) {
                res.failure_reason = nw.overflow     ? TrackFailure::Overflow
                                     : nw.singular   ? TrackFailure::SingularJacobian
                                                     : TrackFailure::StepUnderflow;
                break;
            }
        }
    }

    // final polish at s = 1 to 1e-13 or best effort
    if (s >= 1.0) {
        NewtonOutcome polish = newton_correct(ph, 1.0, z, 1e-13, 24, false);
        res.newton_iters_total += polish.iters;
        std::vector<double> y(z.begin() + 1, z.end());
        HomotopyEval ev = eval_homotopy(ph, 1.0, z[0], y);
        res.final_residual = ev.overflow ? std::numeric_limits<double>::infinity()
                                         : max_norm(ev.residual);
        res.converged = res.final_residual <= cfg.newton_tol;
        if (!res.converged && res.failure_reason == TrackFailure::None)
            res.failure_reason = TrackFailure::StepUnderflow;
    } else {
        res.converged = false;
    }

    res.tau = z[0];
    res.y.assign(z.begin() + 1, z.end());
    res.t_star = std::exp(res.tau);
    res.x_star.resize(n);
    for (int i = 0; i < n; ++i) res.x_star[i] = std::exp(res.y[i]);
    return res;
}

namespace {

HeightFunction carry_heights(const Signomial& from, const HeightFunction& h, const Signomial& to,
                             const AffineLatticeMap& map) {
    HeightFunction out;
    out.h.assign(to.num_terms(), 0);
    for (int i = 0; i < to.num_terms(); ++i) {
        LatticePoint original = map.inverse(to.support.point(i));
        int src = from.support.index_of(original);
        if (src < 0) throw std::logic_error("carry_heights: point lost during reduction");
        out.h[i] = h.at(src);
    }
    return out;
}

Signomial map_signomial(const Signomial& f, const AffineLatticeMap& map) {
    std::vector<std::pair<LatticePoint, Rational>> terms;
    for (int i = 0; i < f.num_terms(); ++i)
        terms.emplace_back(map.forward(f.support.point(i)), f.exact_coeff(i));
    Signomial g = Signomial::from_exact_terms(static_cast<int>(map.basis.size()), terms);
    for (int i = 0; i < f.num_terms(); ++i) {
        int idx = g.support.index_of(map.forward(f.support.point(i)));
        g.coeff[idx] = f.coeff[i];
    }
    if (!f.exact) g.exact.reset();
    return g;
}

}  // namespace

ReducedProblem reduce_problem(const Signomial& f, const HeightFunction& h) {
    Precheck pre = sign_precheck(f);
    if (pre != Precheck::NeedsCriterion)
        throw std::invalid_argument("reduce_problem: input is decided by the sign precheck");

    ReducedProblem rp;
    std::vector<LatticePoint> minus_pts(f.support.minus.begin(), f.support.minus.end());
    rp.gamma = smallest_face_containing(f.support, minus_pts);
    rp.faces_j = truncation_face_set_J(rp.gamma, f.support);

    Signomial truncated = truncate(f, rp.gamma);
    HeightFunction h_trunc = HeightFunction::uniform(truncated.support);
    for (int i = 0; i < truncated.num_terms(); ++i) {
        int src = f.support.index_of(truncated.support.point(i));
        h_trunc.h[i] = h.at(src);
    }

    auto [map, reduced_support] = reduce_to_full_dim(truncated.support);
    rp.map = map;
    rp.reduced = map.is_identity() ? truncated : map_signomial(truncated, map);
    rp.reduced_heights = map.is_identity() ? h_trunc
                                           : carry_heights(truncated, h_trunc, rp.reduced, map);
    return rp;
}

PreparedTrack prepare_from_reduced(const ReducedProblem& rp) {
    PreparedTrack prep;
    prep.gamma = rp.gamma;
    prep.faces_j = rp.faces_j;
    prep.reduced = rp.reduced;
    prep.map = rp.map;
    prep.reduced_heights = rp.reduced_heights;
    prep.c_hat = starting_coefficients(prep.reduced.support);
    prep.homotopy.sys = build_critical_system(prep.reduced, prep.reduced_heights);
    prep.homotopy.c_target = prep.homotopy.sys.c;
    prep.homotopy.c_start.resize(prep.c_hat.size());
    for (std::size_t i = 0; i < prep.c_hat.size(); ++i)
        prep.homotopy.c_start[i] = to_double(prep.c_hat[i]);
    return prep;
}

PreparedTrack prepare_single_path(const Signomial& f, const HeightFunction& h) {
    ReducedProblem rp = reduce_problem(f, h);
    auto nsep = is_nonseparable(rp.reduced.support);
    if (!nsep.nonseparable)
        throw std::invalid_argument("prepare_single_path: support is separable (" + nsep.reason +
                                    "); use the non-exhaustive fallback");
    return prepare_from_reduced(rp);
}

TrackResult solve_tstar_nonseparable(const Signomial& f, const HeightFunction& h,
                                     const TrackerConfig& cfg) {
    PreparedTrack prep = prepare_single_path(f, h);
    return track_single_path(prep.homotopy, cfg);
}

std::vector<FallbackCandidate> fallback_multistart(const Signomial& f, const HeightFunction& h,
                                                   const std::vector<Face>& faces_j,
                                                   const TrackerConfig& cfg, int n_starts,
                                                   std::uint64_t seed) {
    std::vector<FallbackCandidate> out;
    for (std::size_t fi = 0; fi < faces_j.size(); ++fi) {
        const Face& face = faces_j[fi];
        if (face.dim < 1) continue;  // a vertex system has no positive zero
        Signomial truncated = truncate(f, face);
        HeightFunction h_trunc = HeightFunction::uniform(truncated.support);
        for (int i = 0; i < truncated.num_terms(); ++i)
            h_trunc.h[i] = h.at(f.support.index_of(truncated.support.point(i)));
        auto [map, reduced_support] = reduce_to_full_dim(truncated.support);
        Signomial reduced = map.is_identity() ? truncated : map_signomial(truncated, map);
        HeightFunction h_red = map.is_identity()
                                   ? h_trunc
                                   : carry_heights(truncated, h_trunc, reduced, map);

        ParameterHomotopy face_sys;
        face_sys.sys = build_critical_system(reduced, h_red);
        face_sys.c_target = face_sys.sys.c;
        face_sys.c_start = face_sys.sys.c;  // s plays no role for the face search
        const int dim = face_sys.dim();

        std::vector<FallbackCandidate> local;
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (fi + 1)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int start = 0; start < n_starts; ++start) {
            std::vector<double> z(dim);
            for (auto& v : z) v = gauss(rng);
            NewtonOutcome nw = newton_correct(face_sys, 1.0, z, cfg.newton_tol, 60, false);
            if (!nw.converged) continue;
            bool fresh = true;
            for (const auto& c : local) {
                double dist = std::fabs(c.tau - z[0]);
                for (int i = 1; i < dim; ++i) dist = std::max(dist, std::fabs(c.y[i - 1] - z[i]));
                if (dist <= 1e-6) {
                    fresh = false;
                    break;
                }
            }
            if (!fresh) continue;
            FallbackCandidate cand;
            cand.face_index = static_cast<int>(fi);
            cand.tau = z[0];
            cand.t = std::exp(z[0]);
            cand.y.assign(z.begin() + 1, z.end());
            cand.residual = nw.residual;
            cand.face_system = face_sys;
            local.push_back(std::move(cand));
        }
        std::sort(local.begin(), local.end(),
                  [](const FallbackCandidate& a, const FallbackCandidate& b) { return a.t < b.t; });
        for (auto& c : local) out.push_back(std::move(c));
    }
    return out;
}

}  // namespace copos
