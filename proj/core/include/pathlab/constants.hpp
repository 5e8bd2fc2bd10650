#pragma once

#include "pathlab/errors.hpp"

namespace pathlab {

/// Physical constants of a run. Natural units (hbar = mass = 1) are the
/// default everywhere in the tools.
struct PhysicalConstants {
    double hbar = 1.0;
    double mass = 1.0;

    void validate() const {
        if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
        if (!(mass > 0.0)) throw ValidationError("mass must be positive");
    }
};

}  // namespace pathlab
