#include "mlv/indval.hpp"

namespace mlv {
template class inductive_valuation<qt_rank2_field>;
}
