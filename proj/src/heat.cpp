#include "dirmbo/heat.hpp"

#include "dirmbo/sphere_spectral.hpp"
#include "dirmbo/torus_spectral.hpp"

namespace dirmbo {

std::unique_ptr<HeatOperator> make_heat_operator(DomainPtr domain, double tau) {
  if (!domain) throw std::invalid_argument("heat operator needs a domain");
  if (domain->is_torus())
    return std::make_unique<TorusHeat>(std::make_shared<const SpectralMultiplier>(domain, tau));
  return std::make_unique<SphereHeat>(std::make_shared<const ShtPlan>(domain), tau);
}

}  // namespace dirmbo
