#pragma once

#include <istream>
#include <string>

#include "heatwave/solver.hpp"

// Plain-text run files: one `key = value` per line, '#' starts a comment.
//
//   domain        = 0 1
//   n_cells       = 2000
//   cfl           = 0.9
//   t_end         = 0.2
//   gamma         = 1.4
//   c_v           = 1.5
//   kappa         = 1
//   K             = 1e-3
//   tau           = asymptotic        # or a constant, e.g. 0.01
//   scheme        = hyperbolic        # or euler_fourier
//   limiter       = minmod            # or none
//   bc            = transmissive      # or periodic
//   reconstruction = conserved        # or primitive
//   relaxation    = on                # or off
//   ic            = sod_heat          # or  0.5: 1,0,1,0 | 0.1,0,0.1,0
//   output_times  = 0.1, 0.2
//
// A named ic starts from that case's full configuration; the other keys
// override it.

namespace heatwave {

struct ParsedRun {
  /// The ic case name, or `fallback_name` for explicit states.
  std::string name;
  RunConfig config;
};

/// Throws ConfigError naming the line for malformed values and unknown keys.
ParsedRun parse_run_config(std::istream& in, const std::string& fallback_name);

}  // namespace heatwave
