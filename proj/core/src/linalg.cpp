#include "pflin/linalg.hpp"

namespace pflin {
template class DenseLu<CMatrix>;
template class DenseLu<RMatrix>;
}  // namespace pflin
