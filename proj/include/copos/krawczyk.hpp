#ifndef COPOS_KRAWCZYK_HPP
#define COPOS_KRAWCZYK_HPP

#include <optional>
#include <string>
#include <vector>

#include "copos/homotopy.hpp"
#include "copos/interval.hpp"

namespace copos {

// Result of the interval-Newton certification: when unique is set, the box
// center +- radius contains exactly one zero of the s = 1 system and
// t_interval encloses its t-coordinate.
struct CertifiedBox {
    std::vector<double> center;  // (tau, y)
    std::vector<double> radius;
    bool unique = false;
    Interval t_interval;
};

// Krawczyk operator K(B) = z - Y H(z) + (I - Y J(B))(B - z) around the
// tracked solution; success iff K(B) is strictly interior to B. On failure
// the radius is rescaled (x4, then x1/4, ...) for up to six attempts.
CertifiedBox krawczyk_certify(const ParameterHomotopy& ph, const std::vector<double>& center,
                              double initial_radius = 1e-13);

enum class VerdictKind { Copositive, NotCopositive, Inconclusive, TriviallyCopositive, TriviallyNegative };

const char* verdict_name(VerdictKind k);

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    bool certified = false;
    std::optional<Interval> t_interval;
    std::string details;
};

// lo > 1: certified copositive; hi < 1: certified not copositive; an interval
// containing 1 (or no interval at all) is inconclusive.
Verdict verdict_from_interval(const std::optional<Interval>& t_interval, const std::string& context);

}  // namespace copos

#endif
