#include "copos/pipeline.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "copos/parse.hpp"

namespace copos {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double row_scaled_det(const Eigen::MatrixXd& j) {
    Eigen::MatrixXd scaled = j;
    for (int i = 0; i < scaled.rows(); ++i) {
        double m = scaled.row(i).cwiseAbs().maxCoeff();
        if (m > 0) scaled.row(i) /= m;
    }
    return std::fabs(scaled.determinant());
}

}  // namespace

HeightFunction heights_from_options(const SignedSupport& support, const CheckOptions& options) {
    if (options.height_levels)
        return HeightFunction::from_minus_levels(support, *options.height_levels);
    return HeightFunction::uniform(support, options.uniform_height);
}

int exit_code_for(const Verdict& v) {
    switch (v.kind) {
        case VerdictKind::Copositive:
        case VerdictKind::TriviallyCopositive: return 0;
        case VerdictKind::NotCopositive:
        case VerdictKind::TriviallyNegative: return 1;
        case VerdictKind::Inconclusive: return 2;
    }
    return 2;
}

Report run_check(const Signomial& f, const CheckOptions& options) {
    auto t_start = Clock::now();
    Report rep;
    rep.input_echo = signomial_to_text(f);

    if (options.enforce_size_limits) {
        if (f.dim() > 8 || f.num_terms() > 40)
            throw std::invalid_argument(
                "input exceeds the size guardrails (n <= 8, <= 40 terms); "
                "re-run with the size limit disabled to proceed");
    }

    Precheck pre = sign_precheck(f);
    if (pre == Precheck::TriviallyCopositive) {
        rep.support_class = "trivial+";
        rep.verdict.kind = VerdictKind::TriviallyCopositive;
        rep.verdict.certified = true;
        rep.verdict.details = "a_minus is empty";
        rep.ms_total = ms_since(t_start);
        return rep;
    }
    if (pre == Precheck::TriviallyNegative) {
        rep.support_class = "trivial-";
        rep.verdict.kind = VerdictKind::TriviallyNegative;
        rep.verdict.certified = true;
        rep.verdict.details = "a hull vertex of conv(A) carries a negative coefficient";
        rep.ms_total = ms_since(t_start);
        return rep;
    }

    HeightFunction h = heights_from_options(f.support, options);

    auto t_geom = Clock::now();
    ReducedProblem rp = reduce_problem(f, h);
    rep.gamma_points = static_cast<int>(rp.gamma.point_indices.size());
    rep.j_faces = static_cast<int>(rp.faces_j.size());
    bool nonseparable = true;
    if (options.assume_nonseparable) {
        rep.warnings.push_back("nonseparability asserted by caller; detection skipped");
    } else {
        auto nsep = is_nonseparable(rp.reduced.support);
        nonseparable = nsep.nonseparable;
        if (!nonseparable && !nsep.reason.empty()) rep.warnings.push_back(nsep.reason);
    }
    rep.support_class = nonseparable ? "nonseparable" : "separable";
    rep.ms_geometry = ms_since(t_geom);

    if (nonseparable) {
        rep.method = "single-path";
        PreparedTrack prep = prepare_from_reduced(rp);
        auto t_track = Clock::now();
        TrackResult tr = track_single_path(prep.homotopy, options.tracker);
        rep.ms_track = ms_since(t_track);
        rep.steps = tr.steps_taken;
        rep.newton_iters = tr.newton_iters_total;
        if (!tr.converged) {
            rep.verdict.kind = VerdictKind::Inconclusive;
            rep.verdict.certified = false;
            rep.verdict.details = std::string("path tracking failed: ") +
                                  track_failure_name(tr.failure_reason);
            rep.ms_total = ms_since(t_start);
            return rep;
        }
        rep.t_star = tr.t_star;
        {
            HomotopyJacobian jac = jac_homotopy(prep.homotopy, 1.0, tr.tau, tr.y);
            if (!jac.overflow) rep.det_scaled = row_scaled_det(jac.j);
        }
        if (options.certify) {
            auto t_cert = Clock::now();
            std::vector<double> z;
            z.push_back(tr.tau);
            z.insert(z.end(), tr.y.begin(), tr.y.end());
            CertifiedBox box = krawczyk_certify(prep.homotopy, z);
            rep.ms_certify = ms_since(t_cert);
            if (box.unique) rep.t_interval = box.t_interval;
            rep.verdict = verdict_from_interval(
                box.unique ? std::optional<Interval>(box.t_interval) : std::nullopt,
                box.unique ? "" : "Krawczyk certification did not isolate the solution");
        } else {
            rep.verdict.certified = false;
            if (tr.t_star > 1.0 + 1e-12)
                rep.verdict.kind = VerdictKind::Copositive;
            else if (tr.t_star < 1.0 - 1e-12)
                rep.verdict.kind = VerdictKind::NotCopositive;
            else
                rep.verdict.kind = VerdictKind::Inconclusive;
            rep.verdict.details = "numerical verdict only (certification disabled)";
        }
        rep.ms_total = ms_since(t_start);
        return rep;
    }

    // Separable branch: non-exhaustive multistart over the face systems of J.
    rep.method = "fallback";
    rep.warnings.push_back(
        "NON-EXHAUSTIVE: separable support; candidate list makes no completeness claim");
    auto t_track = Clock::now();
    auto candidates =
        fallback_multistart(f, h, rp.faces_j, options.tracker, options.fallback_starts, options.seed);
    rep.ms_track = ms_since(t_track);
    for (const auto& c : candidates) rep.fallback_candidates.emplace_back(c.face_index, c.t);
    if (!candidates.empty()) {
        double tmin = candidates.front().t;
        for (const auto& c : candidates) tmin = std::min(tmin, c.t);
        rep.t_star = tmin;
    }

    if (options.certify) {
        auto t_cert = Clock::now();
        // only a certified candidate below 1 can decide anything here
        std::vector<const FallbackCandidate*> below;
        for (const auto& c : candidates)
            if (c.t < 1.0) below.push_back(&c);
        std::sort(below.begin(), below.end(),
                  [](const FallbackCandidate* a, const FallbackCandidate* b) { return a->t < b->t; });
        for (const FallbackCandidate* c : below) {
            std::vector<double> z;
            z.push_back(c->tau);
            z.insert(z.end(), c->y.begin(), c->y.end());
            CertifiedBox box = krawczyk_certify(c->face_system, z);
            if (box.unique && box.t_interval.hi < 1.0) {
                rep.t_interval = box.t_interval;
                rep.verdict.kind = VerdictKind::NotCopositive;
                rep.verdict.certified = true;
                rep.verdict.details =
                    "certified singular zero of a truncated system with t < 1 (face " +
                    std::to_string(c->face_index) + " of J)";
                rep.ms_certify = ms_since(t_cert);
                rep.ms_total = ms_since(t_start);
                return rep;
            }
        }
        rep.ms_certify = ms_since(t_cert);
    }
    rep.verdict.kind = VerdictKind::Inconclusive;
    rep.verdict.certified = false;
    rep.verdict.details =
        "separable support: the non-exhaustive search produced no certified t* < 1; "
        "copositivity cannot be concluded";
    rep.ms_total = ms_since(t_start);
    return rep;
}

nlohmann::json report_to_json(const Report& r) {
    nlohmann::json j;
    j["input"] = r.input_echo;
    j["support_class"] = r.support_class;
    j["gamma_points"] = r.gamma_points;
    j["j_faces"] = r.j_faces;
    j["method"] = r.method;
    if (r.t_star) j["t_star"] = *r.t_star;
    if (r.t_interval) j["t_interval"] = {r.t_interval->lo, r.t_interval->hi};
    j["verdict"] = verdict_name(r.verdict.kind);
    j["certified"] = r.verdict.certified;
    j["details"] = r.verdict.details;
    j["warnings"] = r.warnings;
    if (!r.fallback_candidates.empty()) {
        nlohmann::json cands = nlohmann::json::array();
        for (const auto& [face, t] : r.fallback_candidates) cands.push_back({{"face", face}, {"t", t}});
        j["fallback_candidates"] = cands;
    }
    j["stats"] = {{"steps", r.steps},
                  {"newton_iters", r.newton_iters},
                  {"det_scaled", r.det_scaled}};
    j["timing_ms"] = {{"geometry", r.ms_geometry},
                      {"track", r.ms_track},
                      {"certify", r.ms_certify},
                      {"total", r.ms_total}};
    return j;
}

std::string report_to_text(const Report& r) {
    std::ostringstream out;
    out.precision(15);
    out << "input:    " << r.input_echo << "\n";
    out << "support:  " << r.support_class << " (|Gamma| = " << r.gamma_points
        << " points, |J| = " << r.j_faces << " faces)\n";
    out << "method:   " << r.method << "\n";
    if (r.t_star) out << "t*:       " << *r.t_star << "\n";
    if (r.t_interval)
        out << "interval: [" << r.t_interval->lo << ", " << r.t_interval->hi << "]\n";
    if (!r.fallback_candidates.empty()) {
        out << "candidates (non-exhaustive):\n";
        for (const auto& [face, t] : r.fallback_candidates)
            out << "  face " << face << ": t = " << t << "\n";
    }
    out << "verdict:  " << verdict_name(r.verdict.kind)
        << (r.verdict.certified ? " (certified)" : " (not certified)") << "\n";
    if (!r.verdict.details.empty()) out << "          " << r.verdict.details << "\n";
    for (const auto& w : r.warnings) out << "warning:  " << w << "\n";
    out << "time:     " << r.ms_total << " ms (geometry " << r.ms_geometry << ", track "
        << r.ms_track << ", certify " << r.ms_certify << ")\n";
    return out.str();
}

nlohmann::json certificate_to_json(const SoncCertificate& cert) {
    nlohmann::json j;
    nlohmann::json circuits = nlohmann::json::array();
    for (const auto& q : cert.circuits) {
        nlohmann::json qj;
        nlohmann::json plus = nlohmann::json::array();
        for (std::size_t v = 0; v < q.positive_points.size(); ++v)
            plus.push_back({{"e", q.positive_points[v]}, {"c", to_double(q.positive_coeffs[v])}});
        qj["plus"] = plus;
        if (q.negative_point)
            qj["minus"] = {{"e", q.negative_point->first},
                           {"c", to_double(q.negative_point->second)}};
        circuits.push_back(qj);
    }
    j["circuits"] = circuits;
    j["residual"] = cert.residual;
    j["margins"] = cert.per_circuit_margin;
    j["warnings"] = cert.warnings;
    if (cert.t_star) j["t_star"] = *cert.t_star;
    if (cert.t_interval) j["t_interval"] = {cert.t_interval->lo, cert.t_interval->hi};
    VerifyReport vr = verify_certificate(cert);
    j["verification"] = {{"pass", vr.pass}, {"residual", vr.residual}, {"details", vr.details}};
    return j;
}

nlohmann::json support_info(const Signomial& f) {
    nlohmann::json j;
    j["n"] = f.dim();
    std::vector<LatticePoint> all;
    for (int i = 0; i < f.num_terms(); ++i) all.push_back(f.support.point(i));
    j["hull_vertices"] = hull_vertices(all);
    if (f.support.minus.empty()) {
        j["classification"] = "trivially copositive support";
        return j;
    }
    if (sign_precheck(f) == Precheck::TriviallyNegative) {
        j["classification"] = "trivially negative support";
        return j;
    }
    HeightFunction h = HeightFunction::uniform(f.support);
    ReducedProblem rp = reduce_problem(f, h);
    j["gamma_points"] = rp.gamma.point_indices;
    j["j_faces"] = static_cast<int>(rp.faces_j.size());
    auto nsep = is_nonseparable(rp.reduced.support);
    j["nonseparable"] = nsep.nonseparable;
    if (nsep.nonseparable) {
        j["classification"] = "nonseparable";
        CellWitness witness = find_cell_witness(rp.reduced.support);
        SimplexFamily family = simplices_containing_cell(rp.reduced.support, witness);
        j["lambda_size"] = static_cast<int>(family.simplices.size());
    } else {
        j["classification"] = "separable";
        j["reason"] = nsep.reason;
        if (nsep.violation) {
            nlohmann::json v;
            v["spanning_indices"] = nsep.violation->spanning_indices;
            std::vector<std::string> normal;
            for (const auto& e : nsep.violation->normal) normal.push_back(rational_to_string(e));
            v["normal"] = normal;
            v["offset"] = rational_to_string(nsep.violation->offset);
            v["minus_signs"] = nsep.violation->minus_signs;
            j["violating_hyperplane"] = v;
        }
    }
    return j;
}

}  // namespace copos
