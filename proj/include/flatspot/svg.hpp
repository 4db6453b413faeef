#pragma once

#include <iosfwd>

#include "flatspot/density.hpp"
#include "flatspot/montecarlo.hpp"

namespace flatspot::svg {

// Minimal static renderings: axes plus a step polyline. No styling
// dependencies; output is deterministic.
void write_step_plot(const density::StepFunction& f, std::ostream& os);
void write_histogram_plot(const montecarlo::Histogram& h, std::ostream& os);

}  // namespace flatspot::svg
