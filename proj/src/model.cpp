#include "proca/model.hpp"

#include <algorithm>
#include <cmath>

#include "proca/scheme.hpp"

namespace proca {

double ProcaState::max_abs() const {
  double m = 0.0;
  for (const ScalarField* f : fields()) {
    m = std::max(m, linf_norm(*f));
  }
  return m;
}

ProcaState continuum_rhs(const ProcaState& u, const Params& p,
                         const LambdaField& lambda) {
  // The canonical right-hand side with central differences is exactly the
  // SPS spatial operator; share one assembly path.
  LinearStepSystem sys{SchemeKind::sps, p, lambda};
  return apply_L(sys, u, lambda.at(u.time));
}

}  // namespace proca
