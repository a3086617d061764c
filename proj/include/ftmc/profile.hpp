#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ftmc {

/// Geometric evaluation grid.  The canonical form is ratio-2 spacing
/// ("dyadic"); arbitrary geometric spacing is produced when the requested
/// count does not match a power-of-two span.
struct DyadicGrid {
    std::vector<double> points; // in construction order (may be decreasing)

    static DyadicGrid geometric(double start, double end, int count) {
        if (count < 1) throw std::domain_error("DyadicGrid: count must be >= 1");
        if (!(start > 0) || !(end > 0))
            throw std::domain_error("DyadicGrid: endpoints must be positive");
        DyadicGrid g;
        g.points.resize(count);
        if (count == 1) {
            g.points[0] = start;
            return g;
        }
        const double span = std::log2(end / start);
        const double dyadic_span = double(count - 1) * (span < 0 ? -1.0 : 1.0);
        if (std::abs(span - dyadic_span) < 1e-9 * double(count)) {
            for (int k = 0; k < count; ++k)
                g.points[k] = start * std::pow(2.0, (span < 0 ? -k : k));
        } else {
            for (int k = 0; k < count; ++k)
                g.points[k] = start * std::pow(end / start, double(k) / double(count - 1));
        }
        g.points.back() = end;
        return g;
    }

    /// Parse "dyadic:<start>..<end>:<count>".
    static DyadicGrid parse(const std::string& text) {
        const std::string prefix = "dyadic:";
        if (text.rfind(prefix, 0) != 0)
            throw std::invalid_argument("grid syntax: expected dyadic:<start>..<end>:<count>, got '" +
                                        text + "'");
        const auto body = text.substr(prefix.size());
        const auto dots = body.find("..");
        const auto colon = body.rfind(':');
        if (dots == std::string::npos || colon == std::string::npos || colon < dots)
            throw std::invalid_argument("grid syntax: expected dyadic:<start>..<end>:<count>, got '" +
                                        text + "'");
        double start = std::stod(body.substr(0, dots));
        double end = std::stod(body.substr(dots + 2, colon - dots - 2));
        int count = std::stoi(body.substr(colon + 1));
        return geometric(start, end, count);
    }
};

/// Ordered samples (argument, value) of a modulus or tail.  Arguments are
/// stored strictly increasing; `role` records whether they are tail
/// thresholds t or modulus steps epsilon (with epsilon = 1/t bookkeeping
/// applied by the exponent fitter).
struct DecayProfile {
    enum class Role { T, Epsilon };

    Role role = Role::T;
    std::vector<std::pair<double, double>> points;

    DecayProfile() = default;
    DecayProfile(Role r, std::vector<std::pair<double, double>> pts)
        : role(r), points(std::move(pts)) {
        std::sort(points.begin(), points.end());
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!(points[i].first > 0) || !std::isfinite(points[i].second) ||
                points[i].second < 0)
                throw std::invalid_argument("DecayProfile: arguments must be positive and values"
                                            " finite nonnegative");
            if (i > 0 && !(points[i].first > points[i - 1].first))
                throw std::invalid_argument("DecayProfile: arguments must be strictly increasing");
        }
    }

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

} // namespace ftmc
