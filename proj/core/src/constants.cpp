#include "pairgen/constants.hpp"

namespace pairgen {

double vacuum_wavelength(double omega) { return kTwoPi * PhysicalConstants::c / omega; }

double angular_frequency(double wavelength) { return kTwoPi * PhysicalConstants::c / wavelength; }

}  // namespace pairgen
