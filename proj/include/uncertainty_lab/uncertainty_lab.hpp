#pragma once

#include "uncertainty_lab/errors.hpp"
#include "uncertainty_lab/linalg.hpp"
#include "uncertainty_lab/fock.hpp"
#include "uncertainty_lab/moments.hpp"
#include "uncertainty_lab/symplectic.hpp"
#include "uncertainty_lab/relations.hpp"
#include "uncertainty_lab/dynamics.hpp"
#include "uncertainty_lab/minimize.hpp"
#include "uncertainty_lab/explorer.hpp"
#include "uncertainty_lab/format.hpp"
#include "uncertainty_lab/state_spec.hpp"

namespace uncertainty_lab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace uncertainty_lab
