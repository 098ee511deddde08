#pragma once

#include <stdexcept>
#include <string>

namespace sed {

// Physical constants of the active unit system.
struct UnitSystem {
    std::string name;
    double e;      // elementary charge
    double m;      // electron mass
    double hbar;
    double c;
    double erg_per_ev;  // energy conversion; 1.0 in natural units
};

inline UnitSystem natural_units() {
    return {"natural", 1.0, 1.0, 1.0, 1.0, 1.0};
}

inline UnitSystem gaussian_cgs_units() {
    return {"gaussian-cgs",
            4.80320471e-10,   // esu
            9.1093837015e-28, // g
            1.054571817e-27,  // erg s
            2.99792458e10,    // cm/s
            1.602176634e-12}; // erg per eV
}

inline UnitSystem units_by_name(const std::string& name) {
    if (name == "natural") return natural_units();
    if (name == "gaussian-cgs") return gaussian_cgs_units();
    throw std::invalid_argument("unknown unit system: " + name);
}

}  // namespace sed
