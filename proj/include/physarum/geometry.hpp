#pragma once

#include <cmath>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "physarum/errors.hpp"

namespace physarum {

constexpr double kPi = 3.141592653589793238462643383279502884;

inline double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

// normalize into [0, 360)
inline double wrap_deg(double deg) {
    deg = std::fmod(deg, 360.0);
    if (deg < 0.0) deg += 360.0;
    return deg;
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Vec2&) const = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

using PointSet = std::vector<Vec2>;

// Whitespace-separated "x y" pairs, one point per line or packed; '#' starts
// a comment. Duplicate points are rejected because every consumer (hull,
// proximity graphs, Steiner) requires pairwise-distinct input.
inline PointSet parse_points(std::istream& in) {
    PointSet points;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        double x, y;
        while (row >> x) {
            if (!(row >> y))
                throw ValidationError("points: dangling coordinate '" + line + "'");
            points.push_back({x, y});
        }
        if (!row.eof())
            throw ValidationError("points: unparsable token in '" + line + "'");
    }
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw ValidationError("points: duplicate point at rows " +
                                      std::to_string(i) + " and " + std::to_string(j));
    return points;
}

} // namespace physarum
