#ifndef COPOS_TRACKER_HPP
#define COPOS_TRACKER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "copos/homotopy.hpp"
#include "copos/signomial.hpp"

namespace copos {

struct TrackerConfig {
    double initial_step = 0.05;
    double min_step = 1e-10;
    double max_step = 0.2;
    double newton_tol = 1e-12;  // residual max-norm
    int newton_max_iters = 8;
    int max_steps = 10000;
    double step_expand = 1.5;  // after 2 easy steps
    double step_shrink = 0.5;  // on corrector failure
    std::string trace_path;    // optional CSV dump of accepted steps
};

enum class TrackFailure { None, StepUnderflow, SingularJacobian, Overflow, MaxSteps };

struct TrackResult {
    double t_star = 0.0;
    std::vector<double> x_star;
    double tau = 0.0;
    std::vector<double> y;
    bool converged = false;
    int steps_taken = 0;
    int newton_iters_total = 0;
    double final_residual = 0.0;
    TrackFailure failure_reason = TrackFailure::None;
};

const char* track_failure_name(TrackFailure f);

// Tracks the unique positive solution path of H from (tau,y) = 0 at s = 0 to
// s = 1 with an Euler predictor and a full Newton corrector at fixed s.
TrackResult track_single_path(const ParameterHomotopy& ph, const TrackerConfig& cfg);

// The reduction bundle shared by the single-path and fallback routes:
// smallest face containing a_minus, the truncated polynomial mapped to full
// dimension, and the heights carried along. Requires NeedsCriterion.
struct ReducedProblem {
    Face gamma;
    std::vector<Face> faces_j;
    Signomial reduced;
    AffineLatticeMap map;
    HeightFunction reduced_heights;
};

ReducedProblem reduce_problem(const Signomial& f, const HeightFunction& h);

struct PreparedTrack {
    Face gamma;
    std::vector<Face> faces_j;
    Signomial reduced;
    AffineLatticeMap map;
    HeightFunction reduced_heights;
    ParameterHomotopy homotopy;
    std::vector<Rational> c_hat;
};

// Builds the homotopy on an already-reduced problem without re-running the
// nonseparability test (for callers that assert it).
PreparedTrack prepare_from_reduced(const ReducedProblem& rp);

// Throws std::invalid_argument when the (reduced) support is separable or the
// sign precheck does not yield NeedsCriterion.
PreparedTrack prepare_single_path(const Signomial& f, const HeightFunction& h);

TrackResult solve_tstar_nonseparable(const Signomial& f, const HeightFunction& h,
                                     const TrackerConfig& cfg);

// Non-exhaustive search over the face systems of J: Newton from random
// log-space starts. Candidates are deduplicated by clustering; the list makes
// no completeness claim.
struct FallbackCandidate {
    int face_index = 0;            // index into faces_j
    double t = 0.0;
    double tau = 0.0;
    std::vector<double> y;         // log coordinates on the reduced face system
    double residual = 0.0;
    ParameterHomotopy face_system; // s = 1 slice is the face critical system
};

std::vector<FallbackCandidate> fallback_multistart(const Signomial& f, const HeightFunction& h,
                                                   const std::vector<Face>& faces_j,
                                                   const TrackerConfig& cfg, int n_starts,
                                                   std::uint64_t seed);

}  // namespace copos

#endif
