#pragma once

#include <optional>
#include <string>

#include "gasim/rom.hpp"

namespace gasim {

// Built-in benchmark functions, each decomposed as y = gamma(alpha + beta):
//   f1  x^3 - 15x^2 + 500        single variable; alpha = 0, gamma = identity;
//                                two's-complement domain (-2^(h-1) .. 2^(h-1)-1)
//   f2  8x - 4y + 1020           alpha = 8x, beta = -4y + 1020, gamma = identity;
//                                two's-complement domain
//   f3  sqrt(x^2 + y^2)          alpha = x^2, beta = y^2, gamma = sqrt;
//                                unsigned domain (0 .. 2^h - 1)
enum class Preset { f1, f2, f3 };

std::optional<Preset> preset_from_name(const std::string& name);
std::string preset_name(Preset p);

/// Whether the preset optimizes a single variable (held in the low half).
bool preset_single_variable(Preset p);

/// Real-valued reference function on decoded variables, for oracles and
/// quantization checks. Single-variable presets ignore the first argument.
double preset_reference(Preset p, double x, double y);

/// Builds the quantized ROM set for the preset at chromosome width m.
FfmTables build_preset_tables(Preset p, int m, const TableFormats& formats = {},
                              std::int64_t gamma_cap = kDefaultGammaCap);

/// Domain maps the preset installs for the (upper, lower) variable halves.
DomainMap preset_hi_map(Preset p);
DomainMap preset_lo_map(Preset p);

} // namespace gasim
