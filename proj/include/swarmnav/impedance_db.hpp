#pragma once

#include <array>
#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "swarmnav/error.hpp"
#include "swarmnav/scene.hpp"

namespace swarmnav {

struct LinkParams {
    double mass = 0.0;       // kg
    double stiffness = 0.0;  // N/m
    double damping = 0.0;    // N*s/m

    bool operator==(const LinkParams& o) const {
        return mass == o.mass && stiffness == o.stiffness && damping == o.damping;
    }
};

// One database row: the validated safe parameter set for a single obstacle
// class, covering both interaction kinds plus the path parameters.
struct ImpedanceProfile {
    LinkParams drone_drone;
    LinkParams drone_obstacle;
    double separation = 0.0;      // m, clearance kept when planning past this class
    double deflection = 0.0;      // m, radius at which obstacle impedance engages
    double path_tolerance = 0.0;  // m, waypoint acceptance radius

    void validate() const {
        auto check = [](const LinkParams& p, const char* kind) {
            if (p.mass <= 0.0 || p.stiffness <= 0.0 || p.damping <= 0.0)
                throw MalformedConfig(std::string("non-positive ") + kind + " impedance parameter");
        };
        check(drone_drone, "drone-drone");
        check(drone_obstacle, "drone-obstacle");
        if (separation <= 0.0) throw MalformedConfig("separation distance must be > 0");
        if (deflection <= 0.0) throw MalformedConfig("obstacle deflection must be > 0");
        if (path_tolerance <= 0.0) throw MalformedConfig("path tolerance must be > 0");
    }
};

class ImpedanceDb {
public:
    // Validated-safe defaults per obstacle class.
    //                         drone-drone      drone-obstacle   sep   defl  tol
    ImpedanceDb() {
        set(ObstacleClass::Cylinder, {{1.0, 7.0, 3.0}, {1.0, 9.0, 5.0},   0.50, 0.65, 0.3});
        set(ObstacleClass::Chair,    {{1.0, 7.0, 3.0}, {0.8, 10.0, 5.5},  0.50, 0.80, 0.4});
        set(ObstacleClass::Trolley,  {{0.8, 7.0, 3.0}, {0.8, 5.0, 3.0},   0.55, 1.20, 0.5});
        set(ObstacleClass::Gate,     {{1.0, 7.0, 3.0}, {1.2, 8.0, 5.0},   0.40, 0.45, 0.5});
        set(ObstacleClass::Human,    {{5.0, 1.0, 2.0}, {1.0, 16.0, 4.0},  0.55, 1.00, 0.5});
    }

    const ImpedanceProfile& lookup(ObstacleClass cls) const {
        return profiles_[index(cls)];
    }

    void set(ObstacleClass cls, const ImpedanceProfile& p) {
        p.validate();
        profiles_[index(cls)] = p;
    }

    // Keyword classifier over a synonym table; stands in for a learned
    // semantic classifier. Case-insensitive substring match, first hit wins.
    static ObstacleClass classify(const std::string& label) {
        static const std::vector<std::pair<const char*, ObstacleClass>> synonyms = {
            {"human", ObstacleClass::Human},     {"person", ObstacleClass::Human},
            {"people", ObstacleClass::Human},    {"pedestrian", ObstacleClass::Human},
            {"woman", ObstacleClass::Human},     {"man", ObstacleClass::Human},
            {"cylinder", ObstacleClass::Cylinder}, {"cylindrical", ObstacleClass::Cylinder},
            {"pole", ObstacleClass::Cylinder},   {"pillar", ObstacleClass::Cylinder},
            {"column", ObstacleClass::Cylinder}, {"chair", ObstacleClass::Chair},
            {"stool", ObstacleClass::Chair},     {"seat", ObstacleClass::Chair},
            {"trolley", ObstacleClass::Trolley}, {"cart", ObstacleClass::Trolley},
            {"gate", ObstacleClass::Gate},       {"doorway", ObstacleClass::Gate},
            {"door", ObstacleClass::Gate},       {"arch", ObstacleClass::Gate},
        };
        std::string lower;
        lower.reserve(label.size());
        for (char ch : label) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        for (const auto& [word, cls] : synonyms) {
            if (lower.find(word) != std::string::npos) return cls;
        }
        throw UnknownClass("no obstacle class matches label: " + label);
    }

    // Inter-drone link parameters for the current context. Near a human the
    // soft link row applies; otherwise the hard-obstacle default, taken from
    // the nearest hard obstacle's class (they differ only in the trolley's
    // mass). An obstacle-free scene falls back to the cylinder row.
    LinkParams drone_drone_params(const Scene& scene, const Vec2& position, bool near_human,
                                  double t = 0.0) const {
        if (near_human) return lookup(ObstacleClass::Human).drone_drone;
        ObstacleClass nearest = ObstacleClass::Cylinder;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& o : scene.obstacles) {
            if (o.softness() != Softness::Hard) continue;
            const double d = distance(position, o.position_at(t)) - o.radius;
            if (d < best) {
                best = d;
                nearest = o.cls;
            }
        }
        return lookup(nearest).drone_drone;
    }

private:
    static std::size_t index(ObstacleClass cls) { return static_cast<std::size_t>(cls); }

    std::array<ImpedanceProfile, 5> profiles_{};
};

}  // namespace swarmnav
