#include "wbnet/units.hpp"

#include <string>

namespace wbnet {

void check_constants(const PhysicalConstants& c) {
  if (!(c.reference_bandwidth_hz > 0.0)) {
    throw std::invalid_argument("reference bandwidth must be > 0");
  }
  if (!(c.carrier_hz > 0.0)) {
    throw std::invalid_argument("carrier frequency must be > 0");
  }
  if (c.planck != kPlanck) {
    throw std::invalid_argument("Planck constant is fixed at " + std::to_string(kPlanck));
  }
}

}  // namespace wbnet
