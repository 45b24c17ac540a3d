#pragma once

#include "merolocus/angle_math.hpp"
#include "merolocus/angles.hpp"
#include "merolocus/catalog.hpp"
#include "merolocus/error.hpp"
#include "merolocus/export.hpp"
#include "merolocus/function_model.hpp"
#include "merolocus/locus_function.hpp"
#include "merolocus/phase_gain.hpp"
#include "merolocus/special_functions.hpp"
#include "merolocus/spec_io.hpp"
#include "merolocus/tracer.hpp"
#include "merolocus/verification.hpp"
