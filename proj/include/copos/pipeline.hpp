#ifndef COPOS_PIPELINE_HPP
#define COPOS_PIPELINE_HPP

#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "copos/krawczyk.hpp"
#include "copos/sonc.hpp"
#include "copos/tracker.hpp"

namespace copos {

struct CheckOptions {
    std::optional<std::vector<int>> height_levels;  // per a_minus point, canonical order
    int uniform_height = 1;
    bool assume_nonseparable = false;  // skip the detection step
    bool certify = true;
    TrackerConfig tracker;
    int fallback_starts = 200;
    std::uint64_t seed = 0;
    bool enforce_size_limits = true;  // n <= 8, <= 40 terms
};

struct Report {
    std::string input_echo;
    std::string support_class;  // trivial+ | trivial- | nonseparable | separable
    int gamma_points = 0;       // points of A on the smallest face containing a_minus
    int j_faces = 0;
    std::string method = "none";  // none | single-path | fallback
    std::optional<double> t_star;
    std::optional<Interval> t_interval;
    Verdict verdict;
    std::vector<std::string> warnings;
    std::vector<std::pair<int, double>> fallback_candidates;  // (face index in J, t)
    double det_scaled = 0.0;  // |det J| of the final system after row scaling
    int steps = 0;
    int newton_iters = 0;
    double ms_geometry = 0.0, ms_track = 0.0, ms_certify = 0.0, ms_total = 0.0;
};

Report run_check(const Signomial& f, const CheckOptions& options = {});

// Exit codes: 0 copositive, 1 not copositive, 2 inconclusive.
int exit_code_for(const Verdict& v);

nlohmann::json report_to_json(const Report& r);
std::string report_to_text(const Report& r);

// Support classification for the `support` subcommand: hull vertices, the
// face Gamma, J, nonseparability, and the simplex-family size.
nlohmann::json support_info(const Signomial& f);

// Machine-readable certificate, with the verification report embedded.
nlohmann::json certificate_to_json(const SoncCertificate& cert);

HeightFunction heights_from_options(const SignedSupport& support, const CheckOptions& options);

}  // namespace copos

#endif
